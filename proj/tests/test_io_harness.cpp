// SPDX-License-Identifier: Apache-2.0

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <doctest.h>
#include "ommi/field_io.hpp"
#include "ommi/harness.hpp"
#include "ommi/sampling.hpp"
#include "test_util.hpp"

using namespace ommi;

TEST_CASE("field file round trip is bit exact")
{
  const Mesh mesh = build_mesh(test::small_config());
  const FieldHeader h = field_header(mesh, 2);
  CHECK(h.count() == 7u * 7u * 2u * 4u);
  std::mt19937_64 rng(1);
  Eigen::VectorXd v = test::random_vector(static_cast<Eigen::Index>(h.count()), rng);
  v(0) = 1e-300;
  v(1) = -0.0;
  std::stringstream buf;
  write_field(buf, h, v);
  const FieldFile back = read_field(buf);
  CHECK(back.header == h);
  CHECK(std::memcmp(back.values.data(), v.data(), h.count() * sizeof(double)) == 0);

  CHECK_THROWS(write_field(buf, h, Eigen::VectorXd::Zero(3)));
  std::stringstream bad("OMMI-FIELD 7\nend\n");
  CHECK_THROWS(read_field(bad));
  std::stringstream shortfile(buf.str().substr(0, buf.str().size() - 8));
  CHECK_THROWS(read_field(shortfile));
}

TEST_CASE("field CSV lists node positions")
{
  FieldHeader h{1, 1, 1, 4, 2.0, 3.0};
  std::stringstream out;
  write_field_csv(out, h, Eigen::Vector4d(1, 2, 3, 4));
  std::string line;
  std::getline(out, line);
  CHECK(line == "group,ix,iy,local,x,y,value");
  std::vector<std::string> rows;
  while (std::getline(out, line))
    rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "0,0,0,0,0,0,1");
  CHECK(rows[3] == "0,0,0,3,2,3,4");
}

TEST_CASE("samplers are reproducible and stay in range")
{
  const Interval r1{7.5, 12.5}, r2{0.5, 1.0};
  for (const Sampler s : {Sampler::Uniform, Sampler::LatinHypercube, Sampler::Grid})
  {
    const auto a = sample_parameters(s, 16, 99, r1, r2);
    const auto b = sample_parameters(s, 16, 99, r1, r2);
    REQUIRE(a.points.size() == 16);
    for (std::size_t i = 0; i < 16; i++)
    {
      CHECK(a.points[i].theta1 == b.points[i].theta1);
      CHECK(a.points[i].theta2 == b.points[i].theta2);
      CHECK(r1.contains(a.points[i].theta1));
      CHECK(r2.contains(a.points[i].theta2));
    }
    CHECK(sampler_from_string(to_string(s)) == s);
  }
  const auto c = sample_parameters(Sampler::Uniform, 4, 100, r1, r2);
  const auto d = sample_parameters(Sampler::Uniform, 4, 99, r1, r2);
  CHECK(c.points[0].theta1 != d.points[0].theta1);

  // one point per stratum in each coordinate
  const auto lhs = sample_parameters(Sampler::LatinHypercube, 10, 3, r1, r2);
  std::vector<int> hit1(10, 0), hit2(10, 0);
  for (const auto &p : lhs.points)
  {
    hit1[std::min(9, static_cast<int>((p.theta1 - 7.5) / 0.5))]++;
    hit2[std::min(9, static_cast<int>((p.theta2 - 0.5) / 0.05))]++;
  }
  CHECK(std::count(hit1.begin(), hit1.end(), 1) == 10);
  CHECK(std::count(hit2.begin(), hit2.end(), 1) == 10);

  CHECK_THROWS(sample_parameters(Sampler::Grid, 5, 1, r1, r2));
  CHECK_THROWS(sampler_from_string("sobol"));
}

TEST_CASE("relative error on a two-entry field")
{
  const Eigen::Vector2d ref(3.0, 4.0);
  const Eigen::Vector2d approx(3.0, 5.0);
  CHECK(relative_l2_error(approx, ref) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(relative_l2_error(ref, ref) == 0.0);
  const Eigen::VectorXd pw = pointwise_relative_error(approx, ref);
  CHECK(pw(0) == 0.0);
  CHECK(pw(1) == doctest::Approx(0.25));
  CHECK(relative_l2_error(Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero()) == 0.0);
}

TEST_CASE("eval CSV schema round trip")
{
  EvalReport rep;
  for (int i = 0; i < 3; i++)
  {
    EvalPoint p;
    p.index = i;
    p.theta = {8.0 + 0.1 * i, 0.6 + 0.01 * i};
    p.rel_l2_error = 1e-3 / (i + 1);
    p.fom_time_s = 0.25;
    p.rom_time_s = 1e-5 * (i + 1);
    p.speedup = p.fom_time_s / p.rom_time_s;
    p.fom_sweeps = 30 + i;
    p.rom_sweeps = 0;
    rep.points.push_back(p);
  }
  std::stringstream out;
  write_eval_csv(out, rep);
  std::string header;
  std::getline(out, header);
  CHECK(header == "point_index,theta1,theta2,rel_l2_error,fom_time_s,rom_time_s,speedup,"
                  "fom_sweeps,rom_sweeps");
  out.seekg(0);
  const auto back = read_eval_csv(out);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; i++)
  {
    CHECK(back[i].index == i);
    CHECK(back[i].theta.theta1 == rep.points[i].theta.theta1);
    CHECK(back[i].rel_l2_error == rep.points[i].rel_l2_error);
    CHECK(back[i].speedup == rep.points[i].speedup);
    CHECK(back[i].fom_sweeps == rep.points[i].fom_sweeps);
  }
  CHECK(out.str().find("\nmean,") != std::string::npos);
  std::stringstream wrong("a,b,c\n");
  CHECK_THROWS(read_eval_csv(wrong));
}

TEST_CASE("median of timings")
{
  int calls = 0;
  const double t = median_seconds(3, [&] { ++calls; });
  CHECK(calls == 3);
  CHECK(t >= 0.0);
}

TEST_CASE("evaluate and compare on a small library")
{
  const ProblemConfig c = test::small_config();
  const auto train =
      sample_parameters(Sampler::LatinHypercube, 9, 4, c.theta1_range, c.theta2_range).points;
  const RomLibrary lib = build_library(c, train);
  const auto test_pts =
      sample_parameters(Sampler::Uniform, 2, 5, c.theta1_range, c.theta2_range).points;

  const auto dir = std::filesystem::temp_directory_path() / "ommi_test_eval_fields";
  std::filesystem::remove_all(dir);
  EvalOptions opt;
  opt.repetitions = 1;
  opt.field_dir = dir.string();
  opt.csv_fields = true;
  const EvalReport rep = evaluate(c, lib, test_pts, opt);
  REQUIRE(rep.points.size() == 2);
  for (const auto &p : rep.points)
  {
    CHECK(p.rom_sweeps == 0);
    CHECK(p.fom_sweeps > 1);
    CHECK(p.rel_l2_error < 0.1);
  }
  CHECK(rep.max_error >= rep.mean_error);
  const FieldFile fom = read_field((dir / "fom_000.field").string());
  CHECK(fom.header == field_header(build_mesh(c), c.n_groups));
  CHECK(std::filesystem::exists(dir / "err_001.field"));
  CHECK(std::filesystem::exists(dir / "rom_001.csv"));
  std::filesystem::remove_all(dir);

  CHECK_THROWS(evaluate(c, lib, {}, opt));

  const CompareReport cmp = compare(c, lib, test_pts[0], 3);
  CHECK(cmp.fom_self_error == 0.0);
  CHECK(cmp.ommi_sweeps == 0);
  CHECK(cmp.mi_sweeps == static_cast<std::size_t>(lib.rank() + 1));
  CHECK(cmp.ommi_time_s < cmp.mi_time_s);
  CHECK(cmp.ommi_time_s < cmp.fom_time_s);
  CHECK(cmp.mi_error <= cmp.ommi_error * (1 + 1e-8) + 1e-12);
}
