// SPDX-License-Identifier: Apache-2.0

#include "ommi/library.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include "ommi/errors.hpp"
#include "ommi/fom.hpp"
#include "ommi/parallel.hpp"
#include "ommi/spd_manifold.hpp"
#include "ommi/sweep.hpp"

namespace ommi
{

static_assert(std::endian::native == std::endian::little,
              "library files are written in host byte order, which must be little-endian");

namespace
{

constexpr char kMagic[8] = {'O', 'M', 'M', 'I', 'L', 'I', 'B', '\0'};
constexpr std::uint32_t kVersion = 1;

Eigen::MatrixXd normalized_centers(const std::vector<ReducedSystem<double>> &systems,
                                   const ParameterBox &box)
{
  Eigen::MatrixXd c(static_cast<Eigen::Index>(systems.size()), 2);
  for (std::size_t i = 0; i < systems.size(); i++)
  {
    c.row(static_cast<Eigen::Index>(i)) = box.normalize(systems[i].param).transpose();
  }
  return c;
}

class Writer
{
public:
  explicit Writer(std::ostream &out) : out_(out) {}

  template <typename T>
  void pod(T v)
  {
    out_.write(reinterpret_cast<const char *>(&v), sizeof(T));
  }
  void str(const std::string &s)
  {
    pod<std::uint64_t>(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  template <typename Derived>
  void dense(const Eigen::PlainObjectBase<Derived> &m)
  {
    pod<std::uint64_t>(m.rows());
    pod<std::uint64_t>(m.cols());
    out_.write(reinterpret_cast<const char *>(m.data()),
               static_cast<std::streamsize>(m.size() * sizeof(double)));
  }

private:
  std::ostream &out_;
};

class Reader
{
public:
  explicit Reader(std::istream &in) : in_(in) {}

  template <typename T>
  T pod()
  {
    T v;
    in_.read(reinterpret_cast<char *>(&v), sizeof(T));
    check();
    return v;
  }
  std::string str()
  {
    const auto n = pod<std::uint64_t>();
    if (n > (1u << 26))
    {
      throw std::runtime_error("library file: implausible string length");
    }
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    check();
    return s;
  }
  Eigen::MatrixXd dense()
  {
    const auto rows = pod<std::uint64_t>();
    const auto cols = pod<std::uint64_t>();
    if (rows > (1u << 28) || cols > (1u << 20) || rows * cols > (1ull << 31))
    {
      throw std::runtime_error("library file: implausible matrix dimensions");
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    in_.read(reinterpret_cast<char *>(m.data()),
             static_cast<std::streamsize>(m.size() * sizeof(double)));
    check();
    return m;
  }

private:
  void check()
  {
    if (!in_)
    {
      throw std::runtime_error("library file: truncated");
    }
  }
  std::istream &in_;
};

}  // namespace

ParameterBox ParameterBox::bounding(const std::vector<Parameter> &params)
{
  ParameterBox box;
  if (params.empty())
  {
    return box;
  }
  box.theta1 = {params.front().theta1, params.front().theta1};
  box.theta2 = {params.front().theta2, params.front().theta2};
  for (const auto &p : params)
  {
    box.theta1.lo = std::min(box.theta1.lo, p.theta1);
    box.theta1.hi = std::max(box.theta1.hi, p.theta1);
    box.theta2.lo = std::min(box.theta2.lo, p.theta2);
    box.theta2.hi = std::max(box.theta2.hi, p.theta2);
  }
  return box;
}

Eigen::Vector2d ParameterBox::normalize(const Parameter &p) const
{
  // A degenerate axis carries no information; it maps to 0.
  const auto unit = [](double v, const Interval &iv)
  { return iv.width() > 0.0 ? (v - iv.lo) / iv.width() : 0.0; };
  return {unit(p.theta1, theta1), unit(p.theta2, theta2)};
}

RomLibrary::RomLibrary(Data data) : data_(std::move(data))
{
  const auto &d = data_;
  if (d.systems.empty())
  {
    throw std::invalid_argument("library: no reduced systems");
  }
  const Eigen::Index r = d.basis.rank;
  if (r < 1 || d.basis.modes.cols() != r)
  {
    throw std::invalid_argument("library: inconsistent basis rank");
  }
  for (const auto &s : d.systems)
  {
    if (s.matrix.rows() != r || s.matrix.cols() != r || s.rhs.size() != r)
    {
      throw std::invalid_argument("library: reduced system rank differs from the basis");
    }
    if (s.projection != d.projection)
    {
      throw std::invalid_argument("library: mixed projections");
    }
  }
  if (d.projection == Projection::PetrovGalerkin && d.tangents.size() != d.systems.size())
  {
    throw std::invalid_argument("library: missing tangent matrices");
  }

  const Eigen::MatrixXd centers = normalized_centers(d.systems, d.bounds);
  for (Eigen::Index i = 0; i < centers.rows(); i++)
  {
    for (Eigen::Index j = i + 1; j < centers.rows(); j++)
    {
      if ((centers.row(i) - centers.row(j)).norm() <= 1e-12)
      {
        std::ostringstream msg;
        msg << "library: training parameters " << i << " and " << j
            << " coincide (theta1=" << d.systems[i].param.theta1
            << ", theta2=" << d.systems[i].param.theta2 << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  rbf_ = GaussianRbf<double>(centers, d.shape, d.ridge);

  const bool manifold = d.projection == Projection::PetrovGalerkin;
  Eigen::MatrixXd values(centers.rows(), r * r + r);
  for (std::size_t i = 0; i < d.systems.size(); i++)
  {
    const Eigen::MatrixXd &a = manifold ? d.tangents[i] : d.systems[i].matrix;
    const auto row = static_cast<Eigen::Index>(i);
    values.row(row).head(r * r) = Eigen::Map<const Eigen::RowVectorXd>(a.data(), r * r);
    values.row(row).tail(r) = d.systems[i].rhs.transpose();
  }
  coefficients_ = rbf_.coefficients(values);
}

std::vector<Parameter> RomLibrary::params() const
{
  std::vector<Parameter> p;
  p.reserve(data_.systems.size());
  for (const auto &s : data_.systems)
  {
    p.push_back(s.param);
  }
  return p;
}

RomLibrary make_library(std::string fingerprint, ReducedBasis<double> basis,
                        std::vector<ReducedSystem<double>> systems, double ridge, double shape)
{
  RomLibrary::Data d;
  d.fingerprint = std::move(fingerprint);
  d.projection = systems.empty() ? Projection::PetrovGalerkin : systems.front().projection;
  d.basis = std::move(basis);
  std::vector<Parameter> params;
  for (const auto &s : systems)
  {
    params.push_back(s.param);
    d.offline_sweeps += s.sweep_count;
    if (d.projection == Projection::PetrovGalerkin)
    {
      d.tangents.push_back(spd_log(s.matrix));
    }
  }
  d.systems = std::move(systems);
  d.bounds = ParameterBox::bounding(params);
  d.ridge = ridge;
  if (shape > 0.0)
  {
    d.shape = shape;
  }
  else
  {
    d.shape = GaussianRbf<double>::default_shape(normalized_centers(d.systems, d.bounds));
  }
  return RomLibrary(std::move(d));
}

RomLibrary build_library(const ProblemConfig &config, const std::vector<Parameter> &train,
                         const LibraryOptions &options, LibraryBuildLog *log)
{
  if (train.size() < 2)
  {
    throw std::invalid_argument("build_library: at least two training points are required");
  }
  if (const auto *by_rank = std::get_if<RankCriterion>(&options.truncation);
      by_rank && by_rank->rank > static_cast<Eigen::Index>(train.size()))
  {
    throw std::invalid_argument("build_library: rank " + std::to_string(by_rank->rank) +
                                " exceeds the " + std::to_string(train.size()) +
                                " training snapshots");
  }
  const ParameterBox box = ParameterBox::bounding(train);
  for (std::size_t i = 0; i < train.size(); i++)
  {
    for (std::size_t j = i + 1; j < train.size(); j++)
    {
      if ((box.normalize(train[i]) - box.normalize(train[j])).norm() <= 1e-12)
      {
        throw std::invalid_argument("build_library: duplicate training parameter at indices " +
                                    std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }

  std::size_t fom_sweeps = 0;
  const SnapshotMatrix x = collect_snapshots(config, train, options.threads, &fom_sweeps);
  ReducedBasis<double> basis = pod_basis(x.columns, options.truncation);

  std::vector<ReducedSystem<double>> systems(train.size());
  parallel_for(train.size(), options.threads,
               [&](std::size_t i)
               {
                 const TransportOperator op(make_problem(config, train[i]));
                 systems[i] = assemble_reduced<double>(
                     basis.modes, [&op](const Eigen::VectorXd &v) { return op.apply(v); },
                     [&op] { return op.rhs(); }, options.projection, train[i]);
               });

  std::size_t assembly_sweeps = 0;
  for (const auto &s : systems)
  {
    assembly_sweeps += s.sweep_count;
  }
  if (log)
  {
    log->fom_sweeps = fom_sweeps;
    log->assembly_sweeps = assembly_sweeps;
  }

  RomLibrary lib = make_library(config.fingerprint(), std::move(basis), std::move(systems),
                                options.ridge, options.shape);
  RomLibrary::Data d = lib.data();
  d.offline_sweeps = fom_sweeps + assembly_sweeps;
  return RomLibrary(std::move(d));
}

ReducedSystem<double> interpolate_system(const RomLibrary &library, const Parameter &query,
                                         std::ostream *warnings)
{
  if (warnings && !library.bounds().contains(query))
  {
    *warnings << "warning: query (" << query.theta1 << ", " << query.theta2
              << ") lies outside the training box; extrapolating\n";
  }
  const Eigen::VectorXd v =
      library.rbf().evaluate(library.bounds().normalize(query), library.coefficients());
  const Eigen::Index r = library.rank();

  ReducedSystem<double> out;
  out.param = query;
  out.projection = library.projection();
  out.rhs = v.tail(r);
  const Eigen::MatrixXd blend = Eigen::Map<const Eigen::MatrixXd>(v.data(), r, r);
  if (library.projection() == Projection::PetrovGalerkin)
  {
    out.matrix = sym_exp(0.5 * (blend + blend.transpose()));
  }
  else
  {
    out.matrix = blend;
  }
  return out;
}

void save_library(const RomLibrary &library, std::ostream &out)
{
  const auto &d = library.data();
  Writer w(out);
  out.write(kMagic, sizeof(kMagic));
  w.pod<std::uint32_t>(kVersion);
  w.str(d.fingerprint);
  w.pod<std::int32_t>(static_cast<std::int32_t>(d.projection));
  w.pod<std::int64_t>(d.basis.rank);
  w.pod<double>(d.basis.information);
  w.dense(d.basis.modes);
  w.dense(Eigen::MatrixXd(d.basis.singular_values));
  w.pod<std::uint64_t>(d.systems.size());
  for (std::size_t i = 0; i < d.systems.size(); i++)
  {
    const auto &s = d.systems[i];
    w.pod<double>(s.param.theta1);
    w.pod<double>(s.param.theta2);
    w.pod<std::uint64_t>(s.sweep_count);
    w.dense(s.matrix);
    w.dense(Eigen::MatrixXd(s.rhs));
    w.pod<std::uint8_t>(d.tangents.empty() ? 0 : 1);
    if (!d.tangents.empty())
    {
      w.dense(d.tangents[i]);
    }
  }
  w.pod<double>(d.bounds.theta1.lo);
  w.pod<double>(d.bounds.theta1.hi);
  w.pod<double>(d.bounds.theta2.lo);
  w.pod<double>(d.bounds.theta2.hi);
  w.pod<double>(d.shape);
  w.pod<double>(d.ridge);
  w.pod<std::uint64_t>(d.offline_sweeps);
  out.write(kMagic, sizeof(kMagic));
  if (!out)
  {
    throw std::runtime_error("library file: write failed");
  }
}

void save_library(const RomLibrary &library, const std::string &path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  save_library(library, out);
}

RomLibrary load_library(std::istream &in, const std::string &expected_fingerprint)
{
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
  {
    throw std::runtime_error("library file: bad magic");
  }
  Reader r(in);
  const auto version = r.pod<std::uint32_t>();
  if (version != kVersion)
  {
    throw std::runtime_error("library file: unsupported version " + std::to_string(version));
  }
  RomLibrary::Data d;
  d.fingerprint = r.str();
  if (!expected_fingerprint.empty() && expected_fingerprint != d.fingerprint)
  {
    throw ConfigError("fingerprint", "library was built for a different problem "
                                     "configuration");
  }
  const auto proj = r.pod<std::int32_t>();
  if (proj != 0 && proj != 1)
  {
    throw std::runtime_error("library file: unknown projection tag");
  }
  d.projection = static_cast<Projection>(proj);
  d.basis.rank = r.pod<std::int64_t>();
  d.basis.information = r.pod<double>();
  d.basis.modes = r.dense();
  d.basis.singular_values = r.dense();
  const auto n = r.pod<std::uint64_t>();
  if (n > (1u << 20))
  {
    throw std::runtime_error("library file: implausible system count");
  }
  for (std::uint64_t i = 0; i < n; i++)
  {
    ReducedSystem<double> s;
    s.projection = d.projection;
    s.param.theta1 = r.pod<double>();
    s.param.theta2 = r.pod<double>();
    s.sweep_count = r.pod<std::uint64_t>();
    s.matrix = r.dense();
    s.rhs = r.dense();
    if (r.pod<std::uint8_t>())
    {
      d.tangents.push_back(r.dense());
    }
    d.systems.push_back(std::move(s));
  }
  d.bounds.theta1.lo = r.pod<double>();
  d.bounds.theta1.hi = r.pod<double>();
  d.bounds.theta2.lo = r.pod<double>();
  d.bounds.theta2.hi = r.pod<double>();
  d.shape = r.pod<double>();
  d.ridge = r.pod<double>();
  d.offline_sweeps = r.pod<std::uint64_t>();
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
  {
    throw std::runtime_error("library file: missing trailer");
  }
  return RomLibrary(std::move(d));
}

RomLibrary load_library(const std::string &path, const std::string &expected_fingerprint)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  return load_library(in, expected_fingerprint);
}

}  // namespace ommi
