#include "mgeom/bridges.hpp"

#include <cmath>
#include <string>

#include "mgeom/geometry.hpp"
#include "mgeom/normalize.hpp"

namespace mgeom {

namespace {

void require_row_operator(const StochasticOperator& p, std::string_view what) {
  if (p.values.rows() != p.values.cols() || p.values.rows() == 0) {
    throw DimensionError(std::string(what) + ": operator must be square");
  }
  if (p.kind == StochasticKind::column) {
    throw DomainError(std::string(what) + ": needs a row-stochastic operator");
  }
}

void require_size(const Vector& v, Index n, std::string_view what) {
  if (v.size() != n) throw DimensionError(std::string(what) + ": vector size mismatch");
}

BridgeSolution assemble_bridge(const Matrix& log_kernel, ScalingPotentials potentials,
                               const Vector& mu_plus, const Vector& mu_minus) {
  BridgeSolution sol;
  sol.coupling = scaled_coupling(log_kernel, potentials);
  sol.potentials = std::move(potentials);
  sol.mu_plus = mu_plus;
  sol.mu_minus = mu_minus;
  sol.forward = {mu_plus.cwiseInverse().asDiagonal() * sol.coupling, StochasticKind::row};
  return sol;
}

}  // namespace

BridgeSolution solve_bridge_log(const Matrix& log_kernel, const Vector& mu_plus,
                                const Vector& mu_minus, const SolverOptions& opts) {
  ScalingPotentials pot = schrodinger_solve_log(log_kernel, mu_plus, mu_minus, opts);
  return assemble_bridge(log_kernel, std::move(pot), mu_plus, mu_minus);
}

BridgeSolution solve_bridge(const Matrix& kernel, const Vector& mu_plus, const Vector& mu_minus,
                            const SolverOptions& opts) {
  if (!kernel.allFinite() || !(kernel.minCoeff() > 0.0)) {
    throw DomainError("solve_bridge: kernel must be finite and strictly positive");
  }
  return solve_bridge_log(kernel.array().log().matrix(), mu_plus, mu_minus, opts);
}

BridgeSolution dmap_as_bridge(const Matrix& d2, Beta beta) {
  const KernelMatrix kernel = rbf_kernel(d2, beta);
  const Vector z = kernel.values.rowwise().sum();
  const Vector pi = z / z.sum();
  const StochasticOperator p_plus = dmap(d2, beta);

  BridgeSolution sol;
  sol.coupling = pi.asDiagonal() * p_plus.values;
  sol.mu_plus = pi;
  sol.mu_minus = pi;

  const Index n = pi.size();
  Vector log_u = (pi.array() / z.array()).log();
  const double residual =
      std::max((sol.coupling.rowwise().sum() - pi).cwiseAbs().maxCoeff(),
               (sol.coupling.colwise().sum().transpose() - pi).cwiseAbs().maxCoeff());
  sol.potentials = ScalingPotentials::from_log(std::move(log_u), Vector::Zero(n), 0, residual);
  sol.forward = {pi.cwiseInverse().asDiagonal() * sol.coupling, StochasticKind::row};
  return sol;
}

StochasticOperator doob_transform(const StochasticOperator& p_plus, const Vector& h) {
  require_row_operator(p_plus, "doob_transform");
  require_size(h, p_plus.size(), "doob_transform");
  if (!h.allFinite() || !(h.minCoeff() > 0.0)) {
    throw DomainError("doob_transform: h must be finite and strictly positive");
  }
  if (h.maxCoeff() == h.minCoeff()) return {p_plus.values, StochasticKind::row};
  Matrix out = p_plus.values * h.asDiagonal();
  const Vector norm = out.rowwise().sum();
  out = norm.cwiseInverse().asDiagonal() * out;
  return {std::move(out), StochasticKind::row};
}

StochasticOperator doob_transform_log(const StochasticOperator& p_plus, const Vector& log_h) {
  require_row_operator(p_plus, "doob_transform_log");
  require_size(log_h, p_plus.size(), "doob_transform_log");
  if (!log_h.allFinite()) throw DomainError("doob_transform_log: non-finite log h");
  if (log_h.maxCoeff() == log_h.minCoeff()) return {p_plus.values, StochasticKind::row};
  if (!(p_plus.values.minCoeff() > 0.0)) {
    throw DomainError("doob_transform_log: operator must be strictly positive");
  }
  Matrix logits = p_plus.values.array().log().matrix();
  logits.rowwise() += log_h.transpose();
  return softmax_rows(logits);
}

Vector stationary_distribution(const StochasticOperator& p, const SolverOptions& opts) {
  require_row_operator(p, "stationary_distribution");
  const Index n = p.size();
  RowVector pi = RowVector::Constant(n, 1.0 / static_cast<double>(n));
  RowVector next(n);
  double residual = 0.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    next.noalias() = pi * p.values;
    residual = (next - pi).cwiseAbs().maxCoeff();
    pi = next / next.sum();
    if (residual <= opts.tol) return pi.transpose();
  }
  throw ConvergenceError("stationary distribution did not converge", residual, opts.max_iter);
}

Matrix currents(const StochasticOperator& p, const Vector& rho) {
  require_row_operator(p, "currents");
  require_size(rho, p.size(), "currents");
  const Matrix flow = rho.asDiagonal() * p.values;
  return flow - flow.transpose();
}

RegimeReport classify_regime(const StochasticOperator& p, const Vector& mu_plus,
                             const Vector& mu_minus, double tol) {
  require_row_operator(p, "classify_regime");
  require_size(mu_plus, p.size(), "classify_regime");
  require_size(mu_minus, p.size(), "classify_regime");

  RegimeReport report;
  report.marginal_gap = (mu_plus - mu_minus).cwiseAbs().maxCoeff();
  const RowVector pushed = mu_plus.transpose() * p.values;
  report.stationarity_residual = (pushed - mu_plus.transpose()).cwiseAbs().maxCoeff();
  report.currents = currents(p, mu_plus);
  report.max_current = report.currents.cwiseAbs().maxCoeff();
  const Matrix flow = mu_plus.asDiagonal() * p.values;
  report.current_threshold = kCurrentRelativeThreshold * flow.cwiseAbs().maxCoeff();

  if (report.marginal_gap > tol) {
    report.regime = Regime::NE;
    return report;
  }
  if (report.stationarity_residual <= tol) report.stationary = mu_plus;
  report.regime = report.max_current <= report.current_threshold ? Regime::EQ : Regime::NESS;
  return report;
}

SbFactorizationReport sb_factorization_check(const Bidivergence& bidiv, Beta beta) {
  const StochasticOperator a_plus = attention_forward(bidiv, beta);
  const StochasticOperator a_minus = attention_backward(bidiv, beta);
  const Index n = bidiv.size();

  // log z-_j, kept in log form since exp(-beta bwd) may exceed the double range.
  const Matrix neg_bwd = -beta.value() * bidiv.bwd;
  Vector log_z_minus(n);
  for (Index j = 0; j < n; ++j) log_z_minus(j) = log_sum_exp(neg_bwd.col(j));
  const double top = log_z_minus.maxCoeff();
  const Vector z_scaled = (log_z_minus.array() - top).exp();

  Matrix rhs = a_plus.values.cwiseProduct(a_minus.values) * z_scaled.asDiagonal();
  const Vector row_norm = rhs.rowwise().sum();
  rhs = row_norm.cwiseInverse().asDiagonal() * rhs;

  const StochasticOperator p_plus = dmap(squared_distance(bidiv), beta);
  SbFactorizationReport report;
  report.deviation = (rhs - p_plus.values).cwiseAbs().maxCoeff();
  report.log_z_minus_spread = top - log_z_minus.minCoeff();
  return report;
}

StochasticOperator poe_factorization(const Bidivergence& bidiv, Beta beta, Vector* normalizer) {
  const StochasticOperator fwd_expert = softmax_rows(-beta.value() * bidiv.fwd);
  const StochasticOperator bwd_expert = softmax_rows(-beta.value() * bidiv.bwd);
  return poe_combine(fwd_expert, bwd_expert, normalizer);
}

BridgeSolution attention_bridge(const Bidivergence& bidiv, Beta beta, const Vector& mu_plus,
                                const Vector& mu_minus, const SolverOptions& opts) {
  return solve_bridge_log(-beta.value() * bidiv.fwd, mu_plus, mu_minus, opts);
}

StochasticOperator column_biased_attention(const Bidivergence& bidiv, Beta beta,
                                           const Vector& psi) {
  require_size(psi, bidiv.size(), "column_biased_attention");
  Matrix logits = -beta.value() * bidiv.fwd;
  logits.rowwise() += psi.transpose();
  return softmax_rows(logits);
}

MagneticFlux magnetic_flux(const Vector& pi, const ComplexOperator& op) {
  const Matrix& mag = op.magnitudes.values;
  require_size(pi, mag.rows(), "magnetic_flux");
  const Index n = mag.rows();
  MagneticFlux out{ComplexMatrix(n, n), Matrix(n, n)};
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double weight = pi(i) * mag(i, j);
      const double theta = op.phases(i, j);
      out.flux(i, j) = {weight * std::cos(theta), weight * std::sin(theta)};
      out.current(i, j) = weight * std::sin(theta);
    }
  }
  return out;
}

Matrix attention_gauge(const Vector& pi_plus, const StochasticOperator& a_plus) {
  require_row_operator(a_plus, "attention_gauge");
  require_size(pi_plus, a_plus.size(), "attention_gauge");
  if (!(pi_plus.minCoeff() > 0.0) || !(a_plus.values.minCoeff() > 0.0)) {
    throw DomainError("attention_gauge: operator and distribution must be strictly positive");
  }
  Matrix log_flow = a_plus.values.array().log().matrix();
  log_flow.colwise() += pi_plus.array().log().matrix();
  return log_flow - log_flow.transpose();
}

}  // namespace mgeom
