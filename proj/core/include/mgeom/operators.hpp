// Named Markov and kernel operators built on a bidivergence: RBF kernel,
// directional kernels, attention maps, diffusion maps, Laplacians and the
// magnetic (phase-decorated) diffusion operator.

#pragma once

#include <utility>

#include "mgeom/types.hpp"

namespace mgeom {

enum class Direction { fwd, bwd };

// P = exp(-beta * D^2). d2 must be square, symmetric and zero on the diagonal.
KernelMatrix rbf_kernel(const Matrix& d2, Beta beta);

// (exp(-beta * fwd), exp(-beta * bwd)). Their Hadamard product is the RBF
// kernel of fwd + bwd. Entries exceed 1 wherever the divergence is negative.
std::pair<Matrix, Matrix> directional_kernels(const Bidivergence& bidiv, Beta beta);

// A+ = softmax over j of -beta * fwd (queries -> keys).
StochasticOperator attention_forward(const Bidivergence& bidiv, Beta beta);

// A- = softmax over i of -beta * bwd (keys -> queries).
StochasticOperator attention_backward(const Bidivergence& bidiv, Beta beta);

// Sinkhorn(-beta * fwd) or Sinkhorn(-beta * bwd).
StochasticOperator attention_bistochastic(const Bidivergence& bidiv, Beta beta, Direction dir,
                                          const SolverOptions& opts = {});

// P+ = softmax over j of -beta * D^2.
StochasticOperator dmap(const Matrix& d2, Beta beta);

// Degree-normalization route to the same operator: diag(1/rowsum(P)) P.
StochasticOperator dmap_from_kernel(const KernelMatrix& kernel);

LaplacianPair laplacians(const KernelMatrix& kernel);

StochasticOperator dmap_bistochastic(const Matrix& d2, Beta beta, const SolverOptions& opts = {});

// P~+ = P+ (.) exp(i Theta). Rejects theta whose antisymmetry defect exceeds
// 1e-12.
ComplexOperator magnetic_operator(const StochasticOperator& p_plus, const Matrix& theta);

// Bandwidth heuristic: 1 / median of the strictly upper-triangular D^2 entries.
// Throws DomainError when that median is not positive.
double median_inverse_bandwidth(const Matrix& d2);

}  // namespace mgeom
