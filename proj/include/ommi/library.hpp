// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_LIBRARY_HPP
#define OMMI_LIBRARY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>
#include <Eigen/Dense>
#include "ommi/config.hpp"
#include "ommi/pod.hpp"
#include "ommi/rbf.hpp"
#include "ommi/rom.hpp"

namespace ommi
{

// Affine map of the training bounding box onto the unit square.
struct ParameterBox
{
  Interval theta1{0.0, 1.0};
  Interval theta2{0.0, 1.0};

  static ParameterBox bounding(const std::vector<Parameter> &params);
  Eigen::Vector2d normalize(const Parameter &p) const;
  bool contains(const Parameter &p) const
  {
    return theta1.contains(p.theta1) && theta2.contains(p.theta2);
  }
};

//
// Offline library of reduced systems sharing one global POD basis. For Petrov-Galerkin
// libraries the matrix logarithm of every A_r is stored so that online interpolation is a
// weighted sum of tangent matrices followed by one exponential.
//
class RomLibrary
{
public:
  struct Data
  {
    std::string fingerprint;
    Projection projection = Projection::PetrovGalerkin;
    ReducedBasis<double> basis;
    std::vector<ReducedSystem<double>> systems;
    std::vector<Eigen::MatrixXd> tangents;  // log A_r; empty for Galerkin
    ParameterBox bounds;
    double shape = 1.0;
    double ridge = 1e-12;
    std::uint64_t offline_sweeps = 0;
  };

  // Validates the data and factorizes the RBF kernel.
  explicit RomLibrary(Data data);

  const std::string &fingerprint() const { return data_.fingerprint; }
  Projection projection() const { return data_.projection; }
  const ReducedBasis<double> &basis() const { return data_.basis; }
  Eigen::Index rank() const { return data_.basis.rank; }
  std::size_t size() const { return data_.systems.size(); }
  const std::vector<ReducedSystem<double>> &systems() const { return data_.systems; }
  const std::vector<Eigen::MatrixXd> &tangents() const { return data_.tangents; }
  const ParameterBox &bounds() const { return data_.bounds; }
  const GaussianRbf<double> &rbf() const { return rbf_; }
  // RBF coefficients of the interpolated entries: columns are vec(log A_r) (vec(A_r) for
  // Galerkin) followed by b_r.
  const Eigen::MatrixXd &coefficients() const { return coefficients_; }
  std::uint64_t offline_sweeps() const { return data_.offline_sweeps; }
  std::vector<Parameter> params() const;
  const Data &data() const { return data_; }

private:
  Data data_;
  GaussianRbf<double> rbf_;
  Eigen::MatrixXd coefficients_;
};

struct LibraryOptions
{
  Truncation truncation = RankCriterion{5};
  Projection projection = Projection::PetrovGalerkin;
  int threads = 1;
  double ridge = 1e-12;
  double shape = 0.0;  // 0 selects the mean-distance default
};

struct LibraryBuildLog
{
  std::size_t fom_sweeps = 0;
  std::size_t assembly_sweeps = 0;
};

// Snapshots, global POD basis, then one minimally invasive assembly per training point.
RomLibrary build_library(const ProblemConfig &config, const std::vector<Parameter> &train,
                         const LibraryOptions &options = {}, LibraryBuildLog *log = nullptr);

// Library from precomputed pieces; systems must already be assembled against `basis`.
RomLibrary make_library(std::string fingerprint, ReducedBasis<double> basis,
                        std::vector<ReducedSystem<double>> systems, double ridge = 1e-12,
                        double shape = 0.0);

// Online reduced system at `query`: Gaussian-RBF weights on normalized parameters,
// log-Euclidean blend of the stored A_r (entrywise for Galerkin libraries), entrywise blend
// of b_r. Queries outside the training box are extrapolated with a note to `warnings`.
ReducedSystem<double> interpolate_system(const RomLibrary &library, const Parameter &query,
                                         std::ostream *warnings = nullptr);

void save_library(const RomLibrary &library, const std::string &path);
void save_library(const RomLibrary &library, std::ostream &out);

// Throws std::runtime_error on format errors, ConfigError when `expected_fingerprint` is
// non-empty and differs from the stored one.
RomLibrary load_library(const std::string &path, const std::string &expected_fingerprint = {});
RomLibrary load_library(std::istream &in, const std::string &expected_fingerprint = {});

}  // namespace ommi

#endif  // OMMI_LIBRARY_HPP
