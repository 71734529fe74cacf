// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_DENSE_ORACLE_HPP
#define OMMI_DENSE_ORACLE_HPP

#include <cstddef>
#include <Eigen/Dense>
#include "ommi/config.hpp"
#include "ommi/sweep.hpp"

namespace ommi::oracle
{

// Largest angular system (groups × directions × cells × local nodes) the oracle assembles.
inline constexpr std::size_t kMaxAngularSize = 20000;

//
// Explicit matrices of the discretized transport problem, assembled element by element
// with Gauss quadrature on physical-coordinate basis functions. Shares no code with the
// sweep. Rows and columns follow the canonical AngularFlux / MomentField orderings.
//
//   loss ψ = mass (M S φ + Q),  φ = D ψ
//
struct DenseTransport
{
  Eigen::MatrixXd loss;     // upwind DG streaming + collision, angular × angular
  Eigen::MatrixXd mass;     // block-diagonal element mass, angular × angular
  Eigen::MatrixXd scatter;  // M S, angular × moment
  Eigen::MatrixXd moment;   // D, moment × angular
  Eigen::VectorXd source;   // Q_e / 4π, angular
};

// Throws std::length_error above kMaxAngularSize.
DenseTransport assemble_dense(const Problem &problem);
Eigen::MatrixXd assemble_dense_L(const Problem &problem);

// loss⁻¹ mass q.
Eigen::VectorXd dense_apply_Linv(const DenseTransport &t, const Eigen::VectorXd &q);

// I − D L⁻¹ M S in moment space.
Eigen::MatrixXd assemble_full_operator(const DenseTransport &t);
Eigen::MatrixXd assemble_full_operator(const Problem &problem);

// D L⁻¹ Q_e.
Eigen::VectorXd dense_rhs(const DenseTransport &t);

// Columns op.apply(e_j); the cross-check route for assemble_full_operator.
Eigen::MatrixXd probe_operator(const TransportOperator &op);

// LU solve; throws NumericalError when A is singular.
Eigen::VectorXd dense_solve(const Eigen::MatrixXd &a, const Eigen::VectorXd &b);

}  // namespace ommi::oracle

#endif  // OMMI_DENSE_ORACLE_HPP
