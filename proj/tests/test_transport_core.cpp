// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <sstream>
#include <doctest.h>
#include "ommi/config.hpp"
#include "ommi/errors.hpp"

using namespace ommi;
constexpr double kPi = std::numbers::pi;

TEST_CASE("build_mesh cell counts follow cells_per_block")
{
  ProblemConfig c = default_config();
  c.cells_per_block = 1;
  Mesh m1 = build_mesh(c);
  CHECK(m1.nx() == 7);
  CHECK(m1.ny() == 7);
  CHECK(m1.num_cells() == 49);

  c.cells_per_block = 3;
  Mesh m3 = build_mesh(c);
  CHECK(m3.nx() == 21);
  CHECK(m3.num_cells() == 441);
  CHECK(m3.width() == doctest::Approx(7.0));
  CHECK(m3.height() == doctest::Approx(7.0));
}

TEST_CASE("build_mesh maps blocks to cells with the top layout row at the top")
{
  ProblemConfig c = default_config();
  c.cells_per_block = 3;
  const Mesh m = build_mesh(c);
  // Source block sits in the middle.
  for (int iy = 9; iy < 12; iy++)
    for (int ix = 9; ix < 12; ix++)
      CHECK(m.material(ix, iy) == kSource);
  // Block row 5 from the top is block y = 1 from the bottom: absorbers at x = 1, 5 only.
  CHECK(m.material(1 * 3 + 1, 1 * 3 + 1) == kAbsorber);
  CHECK(m.material(3 * 3 + 1, 1 * 3 + 1) == kScatterer);
  CHECK(m.material(3 * 3 + 1, 5 * 3 + 1) == kAbsorber);

  int absorbers = 0;
  for (int mat : build_mesh(default_config()).materials())
    absorbers += mat == kAbsorber;
  CHECK(absorbers == 11 * 9);
}

TEST_CASE("build_mesh is deterministic")
{
  const ProblemConfig c = default_config();
  CHECK(build_mesh(c).materials() == build_mesh(c).materials());
}

TEST_CASE("mesh validation")
{
  CHECK_THROWS_AS(Mesh(0, 1, 1.0, 1.0, {}, 3), ConfigError);
  CHECK_THROWS_AS(Mesh(1, 1, 0.0, 1.0, {0}, 3), ConfigError);
  CHECK_THROWS_AS(Mesh(1, 1, 1.0, -1.0, {0}, 3), ConfigError);
  CHECK_THROWS_AS(Mesh(1, 1, 1.0, 1.0, {5}, 3), ConfigError);

  ProblemConfig c = default_config();
  c.layout[0][0] = 7;
  CHECK_THROWS_AS(build_mesh(c), ConfigError);
  c = default_config();
  c.cells_per_block = 0;
  CHECK_THROWS_AS(build_mesh(c), ConfigError);
}

TEST_CASE("quadrature invariants hold for every constructed order")
{
  for (int np : {1, 2, 3, 4, 8})
  {
    for (int na : {4, 8, 12, 16, 32})
    {
      const Quadrature q = build_quadrature(np, na);
      CHECK(q.size() == static_cast<std::size_t>(np * na));
      double sw = 0, smu = 0, seta = 0;
      for (const auto &d : q)
      {
        CHECK(d.weight > 0.0);
        CHECK(d.mu != 0.0);
        CHECK(d.eta != 0.0);
        CHECK(d.mu * d.mu + d.eta * d.eta <= 1.0 + 1e-15);
        sw += d.weight;
        smu += d.weight * d.mu;
        seta += d.weight * d.eta;
      }
      CHECK(std::abs(sw - 4 * kPi) <= 1e-12 * 4 * kPi);
      CHECK(std::abs(smu) <= 1e-12);
      CHECK(std::abs(seta) <= 1e-12);
    }
  }
}

TEST_CASE("n_polar=2, n_azimuthal=4 enumerates two directions per quadrant")
{
  // Tabulated 4-point Gauss-Legendre positive nodes and weights.
  const double xi[2] = {0.3399810435848563, 0.8611363115940526};
  const double wxi[2] = {0.6521451548625461, 0.3478548451374538};
  const Quadrature q = build_quadrature(2, 4);
  REQUIRE(q.size() == 8);
  std::size_t a = 0;
  for (int p = 0; p < 2; p++)
  {
    for (int j = 0; j < 4; j++, a++)
    {
      const double phi = kPi / 4 + j * kPi / 2;
      const double s = std::sqrt(1 - xi[p] * xi[p]);
      CHECK(q[a].mu == doctest::Approx(s * std::cos(phi)).epsilon(1e-14));
      CHECK(q[a].eta == doctest::Approx(s * std::sin(phi)).epsilon(1e-14));
      CHECK(q[a].weight == doctest::Approx(kPi * wxi[p]).epsilon(1e-14));
    }
  }
  int quadrant_count[4] = {0, 0, 0, 0};
  for (const auto &d : q)
    quadrant_count[(d.mu < 0) + 2 * (d.eta < 0)]++;
  for (int c : quadrant_count)
    CHECK(c == 2);
}

TEST_CASE("quadrature rejects axis-aligned directions")
{
  CHECK_THROWS_AS(build_quadrature(2, 6), ConfigError);
  CHECK_THROWS_AS(build_quadrature(2, 2), ConfigError);
  CHECK_THROWS_AS(build_quadrature(2, 3), ConfigError);
  CHECK_THROWS_AS(build_quadrature(0, 4), ConfigError);
  CHECK_THROWS_AS(Quadrature({{0.0, 0.5, 1.0}}), ConfigError);
}

TEST_CASE("checkerboard cross sections")
{
  const CrossSections xs = make_cross_sections(7.5, 0.5);
  REQUIRE(xs.n_groups == 2);
  const auto &s = xs[kScatterer];
  CHECK(s.sigma_s(0, 0) == 0.5);
  CHECK(s.sigma_s(0, 1) == 0.5);
  CHECK(s.sigma_s(1, 0) == 0.0);
  CHECK(s.sigma_s(1, 1) == 1.0);
  CHECK(xs[kAbsorber].sigma_t(0) == 7.5);
  CHECK(xs[kAbsorber].sigma_t(1) == 7.5);
  CHECK(xs[kAbsorber].sigma_s.isZero());
  CHECK(xs[kSource].q_ext(0) == 1.0);
  CHECK(xs[kSource].q_ext(1) == 0.0);
  CHECK(xs[kSource].sigma_s == s.sigma_s);

  const CrossSections xs1 = make_cross_sections(10.0, 1.0);
  CHECK(xs1[kScatterer].sigma_s(0, 0) == 0.0);
  CHECK(xs1[kScatterer].sigma_s(0, 1) == 1.0);

  CHECK_THROWS_AS(make_cross_sections(0.0, 0.5), ConfigError);
  CHECK_THROWS_AS(make_cross_sections(1.0, 1.5), ConfigError);
}

TEST_CASE("scatterer has zero absorption for any theta2")
{
  for (double t2 : {0.0, 0.1, 0.5, 0.77, 1.0})
  {
    const CrossSections xs = make_cross_sections(9.0, t2);
    for (int g = 0; g < 2; g++)
    {
      CHECK(xs[kScatterer].sigma_a(g) == 0.0);
      CHECK(xs[kSource].sigma_a(g) == 0.0);
    }
    // Downscatter only.
    CHECK(xs[kScatterer].sigma_s(1, 0) == 0.0);
  }
}

TEST_CASE("config parsing")
{
  std::ostringstream warn;
  const ProblemConfig c =
      parse_config(R"({"theta1": 8.0, "cells_per_block": 2, "colour": "blue"})", &warn);
  CHECK(c.theta.theta1 == 8.0);
  CHECK(c.cells_per_block == 2);
  CHECK(c.layout == default_checkerboard_layout());
  CHECK(warn.str().find("colour") != std::string::npos);

  try
  {
    parse_config(R"({"gmres_tol": "tight"})");
    FAIL("expected ConfigError");
  }
  catch (const ConfigError &e)
  {
    CHECK(e.key() == "gmres_tol");
  }
  try
  {
    parse_config(R"({"n_azimuthal": 6})");
    FAIL("expected ConfigError");
  }
  catch (const ConfigError &e)
  {
    CHECK(e.key() == "n_azimuthal");
  }
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);

  // Round trip through the writer.
  const ProblemConfig back = parse_config(config_to_json(c));
  CHECK(back.fingerprint() == c.fingerprint());
  CHECK(back.theta == c.theta);
}

TEST_CASE("fingerprint ignores theta and seed but not discretization")
{
  ProblemConfig a = default_config(), b = default_config();
  b.theta = {12.0, 0.6};
  b.seed = 7;
  CHECK(a.fingerprint() == b.fingerprint());
  b.cells_per_block = 2;
  CHECK(a.fingerprint() != b.fingerprint());
}

TEST_CASE("extrapolation flag")
{
  const ProblemConfig c = default_config();
  CHECK_FALSE(c.is_extrapolation({7.5, 0.5}));
  CHECK_FALSE(c.is_extrapolation({12.5, 1.0}));
  CHECK(c.is_extrapolation({13.0, 0.7}));
  CHECK(c.is_extrapolation({10.0, 0.4}));
}
