#include "mgeom/normalize.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mgeom {

namespace {

struct ScalingResult {
  Vector log_u;
  Vector log_v;
  int iterations = 0;
  double residual = 0.0;
};

// Finds log_u, log_v such that exp(L + log_u 1^T + 1 log_v^T) has row sums
// exp(log_a) and column sums exp(log_b). One iteration is a column pass
// followed by a row pass, so on return the row sums are exact to rounding and
// the residual sits in the column sums.
ScalingResult scale_log_domain(const Matrix& log_k, const Vector& log_a, const Vector& log_b,
                               const SolverOptions& opts, std::string_view what) {
  const Index n = log_k.rows();
  const Index m = log_k.cols();
  const Vector a = log_a.array().exp();
  const Vector b = log_b.array().exp();

  ScalingResult s{Vector::Zero(n), Vector::Zero(m), 0, std::numeric_limits<double>::infinity()};
  Vector scratch_row(m);
  Vector scratch_col(n);

  auto row_pass = [&] {
    for (Index i = 0; i < n; ++i) {
      scratch_row = log_k.row(i).transpose() + s.log_v;
      s.log_u(i) = log_a(i) - log_sum_exp(scratch_row);
    }
  };
  auto col_pass = [&] {
    for (Index j = 0; j < m; ++j) {
      scratch_col = log_k.col(j) + s.log_u;
      s.log_v(j) = log_b(j) - log_sum_exp(scratch_col);
    }
  };
  auto residual = [&] {
    Vector rows = Vector::Zero(n);
    Vector cols = Vector::Zero(m);
    for (Index j = 0; j < m; ++j) {
      for (Index i = 0; i < n; ++i) {
        const double x = std::exp(log_k(i, j) + s.log_u(i) + s.log_v(j));
        rows(i) += x;
        cols(j) += x;
      }
    }
    return std::max((rows - a).cwiseAbs().maxCoeff(), (cols - b).cwiseAbs().maxCoeff());
  };

  for (int it = 1; it <= opts.max_iter; ++it) {
    col_pass();
    row_pass();
    s.iterations = it;
    s.residual = residual();
    if (!std::isfinite(s.residual)) {
      throw ConvergenceError(std::string(what) + " diverged", s.residual, it);
    }
    if (s.residual <= opts.tol) {
      const double shift = s.log_u.mean();
      s.log_u.array() -= shift;
      s.log_v.array() += shift;
      return s;
    }
  }
  throw ConvergenceError(std::string(what) + " did not converge", s.residual, s.iterations);
}

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + " requires a non-empty square matrix");
  }
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) throw DomainError(std::string(what) + ": non-finite entry in input");
}

}  // namespace

double log_sum_exp(const Eigen::Ref<const Vector>& x) {
  const double mx = x.maxCoeff();
  if (!std::isfinite(mx)) return mx;
  return mx + std::log((x.array() - mx).exp().sum());
}

StochasticOperator softmax_rows(const Matrix& z) {
  require_finite(z, "softmax_rows");
  Matrix out(z.rows(), z.cols());
  for (Index i = 0; i < z.rows(); ++i) {
    const double mx = z.row(i).maxCoeff();
    out.row(i) = (z.row(i).array() - mx).exp();
    out.row(i) /= out.row(i).sum();
  }
  return {std::move(out), StochasticKind::row};
}

StochasticOperator softmax_cols(const Matrix& z) {
  require_finite(z, "softmax_cols");
  Matrix out(z.rows(), z.cols());
  for (Index j = 0; j < z.cols(); ++j) {
    const double mx = z.col(j).maxCoeff();
    out.col(j) = (z.col(j).array() - mx).exp();
    out.col(j) /= out.col(j).sum();
  }
  return {std::move(out), StochasticKind::column};
}

StochasticOperator poe_combine(const StochasticOperator& a, const StochasticOperator& b,
                               Vector* normalizer) {
  if (a.kind != b.kind || a.kind == StochasticKind::bi) {
    throw DomainError("poe_combine needs two row-stochastic or two column-stochastic operators");
  }
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols()) {
    throw DimensionError("poe_combine operands differ in shape");
  }
  Matrix h = a.values.cwiseProduct(b.values);
  const bool rows = a.kind == StochasticKind::row;
  const Vector sums = rows ? Vector(h.rowwise().sum()) : Vector(h.colwise().sum().transpose());
  for (Index k = 0; k < sums.size(); ++k) {
    if (!(sums(k) > 0.0)) {
      throw DomainError("poe_combine: experts have disjoint support on " +
                        std::string(rows ? "row " : "column ") + std::to_string(k));
    }
  }
  const Vector m = sums.cwiseInverse();
  if (rows) {
    h = m.asDiagonal() * h;
  } else {
    h = h * m.asDiagonal();
  }
  if (normalizer != nullptr) *normalizer = m;
  return {std::move(h), a.kind};
}

std::pair<StochasticOperator, ScalingPotentials> sinkhorn(const Matrix& z,
                                                          const SolverOptions& opts) {
  require_square(z, "sinkhorn");
  require_finite(z, "sinkhorn");
  const Index n = z.rows();
  ScalingResult s = scale_log_domain(z, Vector::Zero(n), Vector::Zero(n), opts, "sinkhorn");
  Matrix out(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) out(i, j) = std::exp(z(i, j) + s.log_u(i) + s.log_v(j));
  }
  return {StochasticOperator{std::move(out), StochasticKind::bi},
          ScalingPotentials::from_log(std::move(s.log_u), std::move(s.log_v), s.iterations,
                                      s.residual)};
}

void require_probability_vector(const Vector& p, std::string_view name, double sum_tol) {
  if (p.size() == 0) throw DomainError(std::string(name) + " is empty");
  if (!p.allFinite()) throw DomainError(std::string(name) + " has non-finite entries");
  for (Index k = 0; k < p.size(); ++k) {
    if (!(p(k) > 0.0)) {
      throw DomainError(std::string(name) + " must be strictly positive; entry " +
                        std::to_string(k) + " is " + std::to_string(p(k)));
    }
  }
  const double gap = std::abs(p.sum() - 1.0);
  if (gap > sum_tol) {
    throw DomainError(std::string(name) + " sums to 1 + " + std::to_string(p.sum() - 1.0));
  }
}

ScalingPotentials schrodinger_solve_log(const Matrix& log_kernel, const Vector& mu_plus,
                                        const Vector& mu_minus, const SolverOptions& opts) {
  require_square(log_kernel, "schrodinger_solve");
  require_finite(log_kernel, "schrodinger_solve");
  if (mu_plus.size() != log_kernel.rows() || mu_minus.size() != log_kernel.cols()) {
    throw DimensionError("marginals do not match the kernel size");
  }
  require_probability_vector(mu_plus, "mu_plus");
  require_probability_vector(mu_minus, "mu_minus");
  ScalingResult s =
      scale_log_domain(log_kernel, mu_plus.array().log(), mu_minus.array().log(), opts,
                       "schrodinger iterations");
  return ScalingPotentials::from_log(std::move(s.log_u), std::move(s.log_v), s.iterations,
                                     s.residual);
}

ScalingPotentials schrodinger_solve(const Matrix& kernel, const Vector& mu_plus,
                                    const Vector& mu_minus, const SolverOptions& opts) {
  if (!kernel.allFinite() || !(kernel.minCoeff() > 0.0)) {
    throw DomainError("schrodinger_solve: kernel must be finite and strictly positive");
  }
  return schrodinger_solve_log(kernel.array().log().matrix(), mu_plus, mu_minus, opts);
}

Matrix scaled_coupling(const Matrix& log_kernel, const ScalingPotentials& potentials) {
  const Index n = log_kernel.rows();
  const Index m = log_kernel.cols();
  Matrix out(n, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < n; ++i) {
      out(i, j) = std::exp(log_kernel(i, j) + potentials.log_u(i) + potentials.log_v(j));
    }
  }
  return out;
}

}  // namespace mgeom
