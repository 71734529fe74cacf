// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_SWEEP_HPP
#define OMMI_SWEEP_HPP

#include <atomic>
#include <cstddef>
#include <vector>
#include <Eigen/Dense>
#include "ommi/config.hpp"
#include "ommi/dg.hpp"

namespace ommi
{

// Scalar flux: group-major, then cell (row-major in y, x), then local node.
using MomentField = Eigen::VectorXd;

// Angular flux or angular source: group, then direction, then cell, then local node. Only
// the verification paths build one of these in full.
using AngularFlux = Eigen::VectorXd;

struct BalanceTerms
{
  double source = 0.0;
  double absorption = 0.0;
  double leakage = 0.0;

  // |source − absorption − leakage| / source, or 0 when there is no source.
  double residual() const;
};

//
// Matrix-free discrete-ordinates operators for the fixed-source problem
//
//   L ψ = M S φ + Q_e,   φ = D ψ,
//
// reduced to the scalar-flux system (I − D L⁻¹ M S) φ = D L⁻¹ Q_e. L⁻¹ is applied by a
// sweep: each (group, direction) pair is solved cell by cell in downstream order with
// vacuum inflow on the domain boundary.
//
class TransportOperator
{
public:
  explicit TransportOperator(Problem problem);

  TransportOperator(const TransportOperator &other);
  TransportOperator &operator=(const TransportOperator &) = delete;

  const Problem &problem() const { return problem_; }
  int num_groups() const { return problem_.xs.n_groups; }
  std::size_t num_cells() const { return problem_.mesh.num_cells(); }
  std::size_t num_directions() const { return problem_.quadrature.size(); }

  // Moment-space and angular-space vector lengths.
  Eigen::Index size() const;
  Eigen::Index angular_size() const;

  // φ − D L⁻¹ M S φ. One sweep.
  void apply(const MomentField &phi, MomentField &out) const;
  MomentField apply(const MomentField &phi) const;
  MomentField operator()(const MomentField &phi) const { return apply(phi); }

  // D L⁻¹ Q_e. One sweep.
  MomentField rhs() const;

  // L⁻¹ q for a full angular source. One sweep.
  AngularFlux sweep(const AngularFlux &q) const;

  // φ = Σ_a w_a ψ_a.
  MomentField discrete_to_moment(const AngularFlux &psi) const;

  // (M S φ)[g, a, c, k] = (1/4π) Σ_g' σ_s(g' → g) φ[g', c, k], identical for every a.
  AngularFlux scatter_source(const MomentField &phi) const;

  // Q_e / 4π in angular layout.
  AngularFlux external_source() const;

  // Global balance for a scalar-flux solution. Leakage comes from one additional sweep
  // driven by M S φ + Q_e.
  BalanceTerms balance(const MomentField &phi) const;

  // Total sweeps performed by this instance.
  std::size_t sweep_count() const { return sweeps_.load(); }
  void reset_sweep_count() const { sweeps_.store(0); }

  // Number of angular-flux values a sweep holds at any one time.
  std::size_t angular_workspace_size() const { return num_cells() * kLocalDofs; }

  const CellMatrices &cell() const { return cell_; }

private:
  struct DirectionOperators
  {
    Eigen::Matrix4d source;  // A⁻¹ M
    Eigen::Matrix4d from_x;  // A⁻¹ |μ| C_x
    Eigen::Matrix4d from_y;  // A⁻¹ |η| C_y
  };

  const DirectionOperators &ops(int g, std::size_t a, int m) const
  {
    return ops_[(static_cast<std::size_t>(g) * num_directions() + a) *
                    problem_.xs.num_materials() +
                m];
  }

  // Group source per cell node (isotropic). Writes ψ for direction a into psi.
  void sweep_direction(int g, std::size_t a, const double *source, double *psi,
                       double *leakage) const;

  void isotropic_group_source(int g, const MomentField &phi, bool with_scatter,
                              bool with_external, Eigen::VectorXd &q) const;

  Problem problem_;
  CellMatrices cell_;
  std::vector<DirectionOperators> ops_;
  mutable std::atomic<std::size_t> sweeps_{0};
};

}  // namespace ommi

#endif  // OMMI_SWEEP_HPP
