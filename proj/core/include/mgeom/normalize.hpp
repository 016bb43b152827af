// Softmax normalizations, product-of-experts combination, Sinkhorn scaling
// and Schrodinger iterations. Every reduction runs through log-sum-exp.

#pragma once

#include <utility>

#include "mgeom/types.hpp"

namespace mgeom {

// log(sum(exp(x))) with max subtraction.
double log_sum_exp(const Eigen::Ref<const Vector>& x);

// out(i, j) = exp(z(i, j)) / sum_k exp(z(i, k)).
StochasticOperator softmax_rows(const Matrix& z);

// out(i, j) = exp(z(i, j)) / sum_k exp(z(k, j)).
StochasticOperator softmax_cols(const Matrix& z);

// Hadamard product renormalized along the shared stochastic axis. For a, b
// built by softmax this equals the softmax of the summed logits.
// `normalizer`, when given, receives m_i (rows) or m_j (columns), the
// reciprocal of the pre-normalization sums.
StochasticOperator poe_combine(const StochasticOperator& a, const StochasticOperator& b,
                               Vector* normalizer = nullptr);

// Bistochastic rescaling Z(i, j) = exp(z(i, j) + log_u(i) + log_v(j)) of a
// square logit matrix. Throws ConvergenceError if `opts.max_iter` is reached.
std::pair<StochasticOperator, ScalingPotentials> sinkhorn(const Matrix& z,
                                                          const SolverOptions& opts = {});

// Potentials (u+, u-) with u+_i sum_j K_ij u-_j = mu+_i and
// u-_j sum_i K_ij u+_i = mu-_j. `kernel` must be strictly positive.
// Gauge: u+ has unit geometric mean.
ScalingPotentials schrodinger_solve(const Matrix& kernel, const Vector& mu_plus,
                                    const Vector& mu_minus, const SolverOptions& opts = {});

// Same problem with the kernel given as log K; use this when K spans more
// than the double range (large beta).
ScalingPotentials schrodinger_solve_log(const Matrix& log_kernel, const Vector& mu_plus,
                                        const Vector& mu_minus, const SolverOptions& opts = {});

// diag(u+) K diag(u-) assembled in log space.
Matrix scaled_coupling(const Matrix& log_kernel, const ScalingPotentials& potentials);

// Throws DomainError unless p is a strictly positive probability vector
// (sum within `sum_tol` of 1).
void require_probability_vector(const Vector& p, std::string_view name, double sum_tol = 1e-12);

}  // namespace mgeom
