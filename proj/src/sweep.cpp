// SPDX-License-Identifier: Apache-2.0

#include "ommi/sweep.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include "ommi/errors.hpp"

namespace ommi
{

namespace
{

constexpr double kInvFourPi = 0.25 / std::numbers::pi;

}  // namespace

double BalanceTerms::residual() const
{
  if (source == 0.0)
  {
    return 0.0;
  }
  return std::abs(source - absorption - leakage) / std::abs(source);
}

TransportOperator::TransportOperator(Problem problem)
  : problem_(std::move(problem)),
    cell_(cell_matrices(problem_.mesh.cell_width(), problem_.mesh.cell_height()))
{
  const auto &xs = problem_.xs;
  if (xs.num_materials() < problem_.mesh.num_materials())
  {
    throw ConfigError("materials", "mesh references more materials than the cross-section "
                                   "table provides");
  }
  const int n_mat = xs.num_materials();
  ops_.resize(static_cast<std::size_t>(xs.n_groups) * num_directions() * n_mat);
  for (int g = 0; g < xs.n_groups; g++)
  {
    for (std::size_t a = 0; a < num_directions(); a++)
    {
      const Direction &d = problem_.quadrature[a];
      const Eigen::Matrix4d cx = inflow_coupling_x(cell_, d.mu);
      const Eigen::Matrix4d cy = inflow_coupling_y(cell_, d.eta);
      for (int m = 0; m < n_mat; m++)
      {
        const Eigen::Matrix4d a_loc =
            local_transport_matrix(cell_, d.mu, d.eta, xs[m].sigma_t(g));
        Eigen::FullPivLU<Eigen::Matrix4d> lu(a_loc);
        if (!lu.isInvertible())
        {
          throw NumericalError("singular local cell matrix for group " + std::to_string(g) +
                               ", direction " + std::to_string(a) + ", material " +
                               std::to_string(m));
        }
        auto &o = ops_[(static_cast<std::size_t>(g) * num_directions() + a) * n_mat + m];
        o.source = lu.solve(cell_.mass);
        o.from_x = lu.solve(cx);
        o.from_y = lu.solve(cy);
      }
    }
  }
}

TransportOperator::TransportOperator(const TransportOperator &other)
  : problem_(other.problem_), cell_(other.cell_), ops_(other.ops_),
    sweeps_(other.sweeps_.load())
{
}

Eigen::Index TransportOperator::size() const
{
  return static_cast<Eigen::Index>(num_groups() * num_cells() * kLocalDofs);
}

Eigen::Index TransportOperator::angular_size() const
{
  return static_cast<Eigen::Index>(num_directions()) * size();
}

void TransportOperator::sweep_direction(int g, std::size_t a, const double *source,
                                        double *psi, double *leakage) const
{
  const Mesh &mesh = problem_.mesh;
  const Direction &d = problem_.quadrature[a];
  const int nx = mesh.nx(), ny = mesh.ny();
  const int sx = d.mu > 0.0 ? 1 : -1;
  const int sy = d.eta > 0.0 ? 1 : -1;
  const int x0 = sx > 0 ? 0 : nx - 1, x1 = sx > 0 ? nx : -1;
  const int y0 = sy > 0 ? 0 : ny - 1, y1 = sy > 0 ? ny : -1;
  const int last_x = x1 - sx, last_y = y1 - sy;

  // Outflow face nodes: x-face nodes share ix, y-face nodes share iy.
  const int out_ix = sx > 0 ? 1 : 0, out_iy = sy > 0 ? 1 : 0;
  double leak = 0.0;

  using Vec4 = Eigen::Matrix<double, 4, 1>;
  for (int iy = y0; iy != y1; iy += sy)
  {
    for (int ix = x0; ix != x1; ix += sx)
    {
      const std::size_t c = mesh.cell_index(ix, iy);
      const DirectionOperators &o = ops(g, a, mesh.material(c));
      Eigen::Map<Vec4> psi_c(psi + kLocalDofs * c);
      psi_c.noalias() = o.source * Eigen::Map<const Vec4>(source + kLocalDofs * c);
      if (ix != x0)
      {
        psi_c.noalias() +=
            o.from_x * Eigen::Map<const Vec4>(psi + kLocalDofs * mesh.cell_index(ix - sx, iy));
      }
      if (iy != y0)
      {
        psi_c.noalias() +=
            o.from_y * Eigen::Map<const Vec4>(psi + kLocalDofs * mesh.cell_index(ix, iy - sy));
      }
      if (leakage)
      {
        if (ix == last_x)
        {
          leak += std::abs(d.mu) * 0.5 * mesh.cell_height() *
                  (psi_c(out_ix) + psi_c(out_ix + 2));
        }
        if (iy == last_y)
        {
          leak += std::abs(d.eta) * 0.5 * mesh.cell_width() *
                  (psi_c(2 * out_iy) + psi_c(2 * out_iy + 1));
        }
      }
    }
  }
  if (leakage)
  {
    *leakage = leak;
  }
}

void TransportOperator::isotropic_group_source(int g, const MomentField &phi,
                                               bool with_scatter, bool with_external,
                                               Eigen::VectorXd &q) const
{
  const Mesh &mesh = problem_.mesh;
  const auto &xs = problem_.xs;
  const Eigen::Index block = static_cast<Eigen::Index>(num_cells()) * kLocalDofs;
  q.setZero(block);
  for (std::size_t c = 0; c < num_cells(); c++)
  {
    const MaterialData &mat = xs[mesh.material(c)];
    auto qc = q.segment<kLocalDofs>(kLocalDofs * c);
    if (with_scatter)
    {
      for (int gp = 0; gp < xs.n_groups; gp++)
      {
        const double s = mat.sigma_s(gp, g);
        if (s != 0.0)
        {
          qc += s * phi.segment<kLocalDofs>(gp * block + kLocalDofs * c);
        }
      }
    }
    if (with_external)
    {
      qc.array() += mat.q_ext(g);
    }
    qc *= kInvFourPi;
  }
}

void TransportOperator::apply(const MomentField &phi, MomentField &out) const
{
  if (phi.size() != size())
  {
    throw std::invalid_argument("moment field has wrong length");
  }
  const Eigen::Index block = static_cast<Eigen::Index>(num_cells()) * kLocalDofs;
  MomentField result(size());
  Eigen::VectorXd q, psi(block), acc(block);
  for (int g = 0; g < num_groups(); g++)
  {
    isotropic_group_source(g, phi, true, false, q);
    acc.setZero();
    for (std::size_t a = 0; a < num_directions(); a++)
    {
      sweep_direction(g, a, q.data(), psi.data(), nullptr);
      acc += problem_.quadrature[a].weight * psi;
    }
    result.segment(g * block, block) = phi.segment(g * block, block) - acc;
  }
  out = std::move(result);
  ++sweeps_;
}

MomentField TransportOperator::apply(const MomentField &phi) const
{
  MomentField out;
  apply(phi, out);
  return out;
}

MomentField TransportOperator::rhs() const
{
  const Eigen::Index block = static_cast<Eigen::Index>(num_cells()) * kLocalDofs;
  MomentField result(size());
  const MomentField none;
  Eigen::VectorXd q, psi(block), acc(block);
  for (int g = 0; g < num_groups(); g++)
  {
    isotropic_group_source(g, none, false, true, q);
    acc.setZero();
    for (std::size_t a = 0; a < num_directions(); a++)
    {
      sweep_direction(g, a, q.data(), psi.data(), nullptr);
      acc += problem_.quadrature[a].weight * psi;
    }
    result.segment(g * block, block) = acc;
  }
  ++sweeps_;
  return result;
}

AngularFlux TransportOperator::sweep(const AngularFlux &q) const
{
  if (q.size() != angular_size())
  {
    throw std::invalid_argument("angular source has wrong length");
  }
  const Eigen::Index block = static_cast<Eigen::Index>(num_cells()) * kLocalDofs;
  AngularFlux psi(angular_size());
  for (int g = 0; g < num_groups(); g++)
  {
    for (std::size_t a = 0; a < num_directions(); a++)
    {
      const Eigen::Index off = (g * static_cast<Eigen::Index>(num_directions()) + a) * block;
      sweep_direction(g, a, q.data() + off, psi.data() + off, nullptr);
    }
  }
  ++sweeps_;
  return psi;
}

MomentField TransportOperator::discrete_to_moment(const AngularFlux &psi) const
{
  if (psi.size() != angular_size())
  {
    throw std::invalid_argument("angular flux has wrong length");
  }
  const Eigen::Index block = static_cast<Eigen::Index>(num_cells()) * kLocalDofs;
  const auto n_dir = static_cast<Eigen::Index>(num_directions());
  MomentField phi = MomentField::Zero(size());
  for (int g = 0; g < num_groups(); g++)
  {
    for (Eigen::Index a = 0; a < n_dir; a++)
    {
      phi.segment(g * block, block) +=
          problem_.quadrature[a].weight * psi.segment((g * n_dir + a) * block, block);
    }
  }
  return phi;
}

AngularFlux TransportOperator::scatter_source(const MomentField &phi) const
{
  if (phi.size() != size())
  {
    throw std::invalid_argument("moment field has wrong length");
  }
  const Eigen::Index block = static_cast<Eigen::Index>(num_cells()) * kLocalDofs;
  const auto n_dir = static_cast<Eigen::Index>(num_directions());
  AngularFlux q(angular_size());
  Eigen::VectorXd qg;
  for (int g = 0; g < num_groups(); g++)
  {
    isotropic_group_source(g, phi, true, false, qg);
    for (Eigen::Index a = 0; a < n_dir; a++)
    {
      q.segment((g * n_dir + a) * block, block) = qg;
    }
  }
  return q;
}

AngularFlux TransportOperator::external_source() const
{
  const Eigen::Index block = static_cast<Eigen::Index>(num_cells()) * kLocalDofs;
  const auto n_dir = static_cast<Eigen::Index>(num_directions());
  AngularFlux q(angular_size());
  Eigen::VectorXd qg;
  for (int g = 0; g < num_groups(); g++)
  {
    isotropic_group_source(g, MomentField(), false, true, qg);
    for (Eigen::Index a = 0; a < n_dir; a++)
    {
      q.segment((g * n_dir + a) * block, block) = qg;
    }
  }
  return q;
}

BalanceTerms TransportOperator::balance(const MomentField &phi) const
{
  if (phi.size() != size())
  {
    throw std::invalid_argument("moment field has wrong length");
  }
  const Mesh &mesh = problem_.mesh;
  const auto &xs = problem_.xs;
  const double area = mesh.cell_width() * mesh.cell_height();
  const Eigen::Index block = static_cast<Eigen::Index>(num_cells()) * kLocalDofs;

  BalanceTerms terms;
  Eigen::VectorXd q, psi(block);
  for (int g = 0; g < num_groups(); g++)
  {
    for (std::size_t c = 0; c < num_cells(); c++)
    {
      const MaterialData &mat = xs[mesh.material(c)];
      terms.source += mat.q_ext(g) * area;
      // ∫ b_k = area / 4 for every bilinear nodal basis function.
      terms.absorption += mat.sigma_a(g) * 0.25 * area *
                          phi.segment<kLocalDofs>(g * block + kLocalDofs * c).sum();
    }
    isotropic_group_source(g, phi, true, true, q);
    for (std::size_t a = 0; a < num_directions(); a++)
    {
      double leak = 0.0;
      sweep_direction(g, a, q.data(), psi.data(), &leak);
      terms.leakage += problem_.quadrature[a].weight * leak;
    }
  }
  ++sweeps_;
  return terms;
}

}  // namespace ommi
