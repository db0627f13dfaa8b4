#pragma once

#include <Eigen/Dense>

#include "bo2d/radial_grid.hpp"

namespace bo2d::detail {

// Dense nodal matrix of the Hankel-multiplier route: (G h)_i = sum_j G_ij h_j.
inline Eigen::MatrixXd g1_matrix(const RadialGrid& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  const auto z = g.z();
  const auto w = g.z_weights();
  const auto nrm = g.norms();
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> p(g.legendre_table().data(), n, n);
  Eigen::VectorXd lam(n), right(n), left(n);
  for (Eigen::Index l = 0; l < n; ++l) lam(l) = (static_cast<double>(l) + 0.5) / nrm[static_cast<std::size_t>(l)];
  for (Eigen::Index i = 0; i < n; ++i) {
    const double omz = 1.0 - z[static_cast<std::size_t>(i)];
    right(i) = w[static_cast<std::size_t>(i)] / std::sqrt(omz);
    left(i) = omz * std::sqrt(omz) / g.scale();
  }
  Eigen::MatrixXd pr = p * right.asDiagonal();
  Eigen::MatrixXd out = p.transpose() * lam.asDiagonal() * pr;
  return left.asDiagonal() * out;
}

}  // namespace bo2d::detail
