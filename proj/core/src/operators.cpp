#include "mgeom/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mgeom/normalize.hpp"

namespace mgeom {

namespace {

void require_distance_matrix(const Matrix& d2, std::string_view what) {
  if (d2.rows() != d2.cols() || d2.rows() == 0) {
    throw DimensionError(std::string(what) + ": squared distances must be a square matrix");
  }
  if (!d2.allFinite()) throw DomainError(std::string(what) + ": non-finite squared distance");
  for (Index i = 0; i < d2.rows(); ++i) {
    if (d2(i, i) != 0.0) throw DomainError(std::string(what) + ": D^2 diagonal must be zero");
    for (Index j = 0; j < i; ++j) {
      if (d2(i, j) != d2(j, i)) throw DomainError(std::string(what) + ": D^2 must be symmetric");
    }
  }
}

}  // namespace

KernelMatrix rbf_kernel(const Matrix& d2, Beta beta) {
  require_distance_matrix(d2, "rbf_kernel");
  return {(-beta.value() * d2).array().exp().matrix(), beta.value()};
}

std::pair<Matrix, Matrix> directional_kernels(const Bidivergence& bidiv, Beta beta) {
  return {(-beta.value() * bidiv.fwd).array().exp().matrix(),
          (-beta.value() * bidiv.bwd).array().exp().matrix()};
}

StochasticOperator attention_forward(const Bidivergence& bidiv, Beta beta) {
  return softmax_rows(-beta.value() * bidiv.fwd);
}

StochasticOperator attention_backward(const Bidivergence& bidiv, Beta beta) {
  return softmax_cols(-beta.value() * bidiv.bwd);
}

StochasticOperator attention_bistochastic(const Bidivergence& bidiv, Beta beta, Direction dir,
                                          const SolverOptions& opts) {
  const Matrix& d = dir == Direction::fwd ? bidiv.fwd : bidiv.bwd;
  return sinkhorn(-beta.value() * d, opts).first;
}

StochasticOperator dmap(const Matrix& d2, Beta beta) {
  require_distance_matrix(d2, "dmap");
  return softmax_rows(-beta.value() * d2);
}

StochasticOperator dmap_from_kernel(const KernelMatrix& kernel) {
  const Vector z = kernel.values.rowwise().sum();
  return {z.cwiseInverse().asDiagonal() * kernel.values, StochasticKind::row};
}

LaplacianPair laplacians(const KernelMatrix& kernel) {
  const Matrix& p = kernel.values;
  if (p.rows() != p.cols()) throw DimensionError("laplacians: kernel must be square");
  if (!(p.minCoeff() > 0.0)) throw DomainError("laplacians: kernel must be strictly positive");
  const Index n = p.rows();
  LaplacianPair out;
  out.degrees = p.rowwise().sum();
  out.combinatorial = -p;
  // Diagonal is set from the off-diagonal sum so each row cancels without the
  // rounding of z_i - P_ii.
  for (Index i = 0; i < n; ++i) {
    double off = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (j != i) off += p(i, j);
    }
    out.combinatorial(i, i) = off;
  }
  const StochasticOperator p_plus = dmap_from_kernel(kernel);
  out.random_walk = Matrix::Identity(n, n) - p_plus.values;
  return out;
}

StochasticOperator dmap_bistochastic(const Matrix& d2, Beta beta, const SolverOptions& opts) {
  require_distance_matrix(d2, "dmap_bistochastic");
  return sinkhorn(-beta.value() * d2, opts).first;
}

ComplexOperator magnetic_operator(const StochasticOperator& p_plus, const Matrix& theta) {
  if (theta.rows() != p_plus.size() || theta.cols() != p_plus.size()) {
    throw DimensionError("magnetic_operator: phase field does not match operator size");
  }
  if (!theta.allFinite()) throw DomainError("magnetic_operator: non-finite phase");
  const double defect = (theta + theta.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-12) {
    throw DomainError("magnetic_operator: phase field is not antisymmetric (defect " +
                      std::to_string(defect) + ")");
  }
  return {p_plus, theta};
}

double median_inverse_bandwidth(const Matrix& d2) {
  std::vector<double> off;
  off.reserve(static_cast<std::size_t>(d2.rows() * (d2.rows() - 1) / 2));
  for (Index j = 1; j < d2.cols(); ++j) {
    for (Index i = 0; i < j; ++i) off.push_back(d2(i, j));
  }
  if (off.empty()) throw DomainError("median bandwidth needs at least two samples");
  const auto mid = off.begin() + static_cast<std::ptrdiff_t>(off.size() / 2);
  std::nth_element(off.begin(), mid, off.end());
  double median = *mid;
  if (off.size() % 2 == 0) {
    const double lower = *std::max_element(off.begin(), mid);
    median = 0.5 * (median + lower);
  }
  if (!(median > 0.0)) throw DomainError("median squared distance is not positive");
  return 1.0 / median;
}

}  // namespace mgeom
