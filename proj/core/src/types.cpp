#include "mgeom/types.hpp"

#include <cmath>
#include <string>

namespace mgeom {

Beta::Beta(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("beta must be a positive finite number, got " + std::to_string(value));
  }
}

DataCloud::DataCloud(Matrix points) : points_(std::move(points)) {
  if (points_.rows() < 2) throw DomainError("data cloud needs at least 2 samples");
  if (points_.cols() < 1) throw DomainError("data cloud needs at least 1 feature");
  if (!points_.allFinite()) throw DomainError("data cloud contains non-finite entries");
}

InteractionWeights InteractionWeights::identity(Index dim) {
  return InteractionWeights(Matrix::Identity(dim, dim), false);
}

InteractionWeights InteractionWeights::from_matrix(Matrix w) {
  if (w.rows() != w.cols()) throw DimensionError("interaction weights must be square");
  if (w.rows() < 1) throw DimensionError("interaction weights must be non-empty");
  if (!w.allFinite()) throw DomainError("interaction weights contain non-finite entries");
  return InteractionWeights(std::move(w), false);
}

InteractionWeights InteractionWeights::from_factors(const Matrix& w_query, const Matrix& w_key) {
  if (w_query.rows() != w_key.rows() || w_query.cols() != w_key.cols()) {
    throw DimensionError("query and key factors must have the same D x d shape");
  }
  if (!w_query.allFinite() || !w_key.allFinite()) {
    throw DomainError("interaction factors contain non-finite entries");
  }
  return InteractionWeights(w_query * w_key.transpose(), true);
}

ComplexMatrix HermitianPartition::combined() const {
  ComplexMatrix v(symmetric.rows(), symmetric.cols());
  v.real() = symmetric;
  v.imag() = antisymmetric;
  return v;
}

std::string_view to_string(StochasticKind kind) noexcept {
  switch (kind) {
    case StochasticKind::row: return "row";
    case StochasticKind::column: return "column";
    case StochasticKind::bi: return "bi";
  }
  return "?";
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::EQ: return "EQ";
    case Regime::NESS: return "NESS";
    case Regime::NE: return "NE";
  }
  return "?";
}

double StochasticOperator::marginal_residual() const {
  double residual = 0.0;
  if (kind == StochasticKind::row || kind == StochasticKind::bi) {
    residual = std::max(residual, (values.rowwise().sum().array() - 1.0).abs().maxCoeff());
  }
  if (kind == StochasticKind::column || kind == StochasticKind::bi) {
    residual = std::max(residual, (values.colwise().sum().array() - 1.0).abs().maxCoeff());
  }
  return residual;
}

ScalingPotentials ScalingPotentials::from_log(Vector log_u, Vector log_v, int iterations,
                                              double residual) {
  ScalingPotentials p;
  p.u = log_u.array().exp();
  p.v = log_v.array().exp();
  p.log_u = std::move(log_u);
  p.log_v = std::move(log_v);
  p.iterations = iterations;
  p.residual = residual;
  return p;
}

ComplexMatrix ComplexOperator::assemble() const {
  const Matrix& m = magnitudes.values;
  ComplexMatrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      out(i, j) = std::polar(m(i, j), phases(i, j));
    }
  }
  return out;
}

}  // namespace mgeom
