// SPDX-License-Identifier: Apache-2.0

#include "ommi/dense_oracle.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include "ommi/errors.hpp"

namespace ommi::oracle
{

namespace
{

// Two-point Gauss rule on [0, 1]; exact for the cubic integrands that appear here.
constexpr double kG = 0.21132486540518711775;  // (1 − 1/√3) / 2
constexpr std::array<double, 2> kPts = {kG, 1.0 - kG};
constexpr std::array<double, 2> kWts = {0.5, 0.5};

struct CellGeometry
{
  double x0, y0, w, h;

  // Lagrange basis of node k at physical point (x, y) and its gradient.
  double value(int k, double x, double y) const
  {
    const double s = (x - x0) / w, t = (y - y0) / h;
    const double fx = (k & 1) ? s : 1.0 - s;
    const double fy = (k & 2) ? t : 1.0 - t;
    return fx * fy;
  }
  double dx(int k, double, double y) const
  {
    const double t = (y - y0) / h;
    const double fy = (k & 2) ? t : 1.0 - t;
    return ((k & 1) ? 1.0 : -1.0) / w * fy;
  }
  double dy(int k, double x, double) const
  {
    const double s = (x - x0) / w;
    const double fx = (k & 1) ? s : 1.0 - s;
    return ((k & 2) ? 1.0 : -1.0) / h * fx;
  }
};

std::size_t checked_angular_size(const Problem &p)
{
  const std::size_t n = static_cast<std::size_t>(p.xs.n_groups) * p.quadrature.size() *
                        p.mesh.num_cells() * 4;
  if (n > kMaxAngularSize)
  {
    throw std::length_error("dense oracle: angular system of size " + std::to_string(n) +
                            " exceeds the limit of " + std::to_string(kMaxAngularSize));
  }
  return n;
}

}  // namespace

DenseTransport assemble_dense(const Problem &problem)
{
  const Mesh &mesh = problem.mesh;
  const Quadrature &quad = problem.quadrature;
  const CrossSections &xs = problem.xs;
  const auto n_ang = static_cast<Eigen::Index>(checked_angular_size(problem));
  const int n_g = xs.n_groups;
  const auto n_dir = static_cast<Eigen::Index>(quad.size());
  const auto n_cell = static_cast<Eigen::Index>(mesh.num_cells());
  const Eigen::Index n_mom = n_g * n_cell * 4;
  const double w = mesh.cell_width(), h = mesh.cell_height();

  DenseTransport t;
  t.loss = Eigen::MatrixXd::Zero(n_ang, n_ang);
  t.mass = Eigen::MatrixXd::Zero(n_ang, n_ang);
  t.scatter = Eigen::MatrixXd::Zero(n_ang, n_mom);
  t.moment = Eigen::MatrixXd::Zero(n_mom, n_ang);
  t.source = Eigen::VectorXd::Zero(n_ang);

  const auto ang = [&](int g, Eigen::Index a, Eigen::Index c, int k)
  { return ((g * n_dir + a) * n_cell + c) * 4 + k; };
  const auto mom = [&](int g, Eigen::Index c, int k) { return (g * n_cell + c) * 4 + k; };
  const auto geom = [&](int ix, int iy) { return CellGeometry{ix * w, iy * h, w, h}; };

  for (int g = 0; g < n_g; g++)
  {
    for (Eigen::Index a = 0; a < n_dir; a++)
    {
      const double mu = quad[a].mu, eta = quad[a].eta;
      for (int iy = 0; iy < mesh.ny(); iy++)
      {
        for (int ix = 0; ix < mesh.nx(); ix++)
        {
          const auto c = static_cast<Eigen::Index>(mesh.cell_index(ix, iy));
          const MaterialData &mat = xs[mesh.material(c)];
          const CellGeometry cg = geom(ix, iy);

          // Volume terms: −(Ω·∇b_i) b_j + σ_t b_i b_j.
          for (int qy = 0; qy < 2; qy++)
          {
            for (int qx = 0; qx < 2; qx++)
            {
              const double x = cg.x0 + kPts[qx] * w, y = cg.y0 + kPts[qy] * h;
              const double jw = kWts[qx] * kWts[qy] * w * h;
              for (int i = 0; i < 4; i++)
              {
                const double bi = cg.value(i, x, y);
                const double stream_i = mu * cg.dx(i, x, y) + eta * cg.dy(i, x, y);
                for (int j = 0; j < 4; j++)
                {
                  const double bj = cg.value(j, x, y);
                  t.loss(ang(g, a, c, i), ang(g, a, c, j)) +=
                      jw * (-stream_i * bj + mat.sigma_t(g) * bi * bj);
                  t.mass(ang(g, a, c, i), ang(g, a, c, j)) += jw * bi * bj;
                }
              }
            }
          }

          // Face terms. Outflow uses the interior trace; inflow the upstream neighbour's
          // trace, or zero on the vacuum boundary.
          struct FaceDef
          {
            double nx, ny;
            int dix, diy;
          };
          const std::array<FaceDef, 4> faces = {
              FaceDef{-1.0, 0.0, -1, 0}, FaceDef{1.0, 0.0, 1, 0}, FaceDef{0.0, -1.0, 0, -1},
              FaceDef{0.0, 1.0, 0, 1}};
          for (const auto &f : faces)
          {
            const double on = mu * f.nx + eta * f.ny;
            const int jx = ix + f.dix, jy = iy + f.diy;
            const bool interior = jx >= 0 && jx < mesh.nx() && jy >= 0 && jy < mesh.ny();
            if (on < 0.0 && !interior)
            {
              continue;
            }
            const double len = f.nx != 0.0 ? h : w;
            const CellGeometry ng = on > 0.0 ? cg : geom(jx, jy);
            const Eigen::Index cn =
                on > 0.0 ? c : static_cast<Eigen::Index>(mesh.cell_index(jx, jy));
            for (int qp = 0; qp < 2; qp++)
            {
              double x, y;
              if (f.nx != 0.0)
              {
                x = cg.x0 + (f.nx > 0.0 ? w : 0.0);
                y = cg.y0 + kPts[qp] * h;
              }
              else
              {
                x = cg.x0 + kPts[qp] * w;
                y = cg.y0 + (f.ny > 0.0 ? h : 0.0);
              }
              const double jw = kWts[qp] * len;
              for (int i = 0; i < 4; i++)
              {
                for (int j = 0; j < 4; j++)
                {
                  t.loss(ang(g, a, c, i), ang(g, a, cn, j)) +=
                      jw * on * cg.value(i, x, y) * ng.value(j, x, y);
                }
              }
            }
          }

          for (int k = 0; k < 4; k++)
          {
            t.source(ang(g, a, c, k)) = mat.q_ext(g) / (4.0 * std::numbers::pi);
            t.moment(mom(g, c, k), ang(g, a, c, k)) = quad[a].weight;
            for (int gp = 0; gp < n_g; gp++)
            {
              t.scatter(ang(g, a, c, k), mom(gp, c, k)) =
                  mat.sigma_s(gp, g) / (4.0 * std::numbers::pi);
            }
          }
        }
      }
    }
  }
  return t;
}

Eigen::MatrixXd assemble_dense_L(const Problem &problem)
{
  return assemble_dense(problem).loss;
}

Eigen::VectorXd dense_apply_Linv(const DenseTransport &t, const Eigen::VectorXd &q)
{
  return dense_solve(t.loss, t.mass * q);
}

Eigen::MatrixXd assemble_full_operator(const DenseTransport &t)
{
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(t.loss);
  const Eigen::MatrixXd k = t.moment * lu.solve(t.mass * t.scatter);
  return Eigen::MatrixXd::Identity(k.rows(), k.cols()) - k;
}

Eigen::MatrixXd assemble_full_operator(const Problem &problem)
{
  return assemble_full_operator(assemble_dense(problem));
}

Eigen::VectorXd dense_rhs(const DenseTransport &t)
{
  return t.moment * dense_apply_Linv(t, t.source);
}

Eigen::MatrixXd probe_operator(const TransportOperator &op)
{
  const Eigen::Index n = op.size();
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; j++)
  {
    a.col(j) = op.apply(Eigen::VectorXd::Unit(n, j));
  }
  return a;
}

Eigen::VectorXd dense_solve(const Eigen::MatrixXd &a, const Eigen::VectorXd &b)
{
  if (a.rows() != a.cols() || a.rows() != b.size())
  {
    throw std::invalid_argument("dense_solve: dimension mismatch");
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(lu.rcond() > 1e-14))
  {
    throw NumericalError("dense_solve: matrix is singular");
  }
  return lu.solve(b);
}

}  // namespace ommi::oracle
