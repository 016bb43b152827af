// Spectral decomposition of reversible (and magnetic) Markov operators via
// the pi^(1/2) similarity transform, and diffusion coordinates.

#pragma once

#include "mgeom/types.hpp"

namespace mgeom {

// Largest |pi_i P_ij - pi_j P_ji| accepted before conjugation is refused.
inline constexpr double kDetailedBalanceTolerance = 1e-8;

// S = diag(pi^(1/2)) P diag(pi^(-1/2)). Throws DomainError when (P, pi)
// violates detailed balance beyond kDetailedBalanceTolerance.
Matrix conjugate_symmetrize(const StochasticOperator& p_plus, const Vector& pi);

// H = diag(pi^(1/2)) P~ diag(pi^(-1/2)). Same check on the magnitudes.
ComplexMatrix conjugate_hermitize(const ComplexOperator& op, const Vector& pi);

// Eigenpairs of the conjugated operator mapped back to right (pi^(-1/2) v)
// and left (pi^(1/2) v) eigenvectors of the original operator. Eigenvalues
// descend; each eigenvector is rotated so its first non-negligible component
// is real and positive.
SpectralDecomposition decompose(const Matrix& sym, const Vector& pi);
SpectralDecomposition decompose(const ComplexMatrix& herm, const Vector& pi);

// Column c is lambda_{c+1}^t psi_{c+1}, skipping the top eigenpair.
// Requires 1 <= k <= N - 1. A negative eigenvalue with non-integer t is
// rejected.
Embedding diffusion_embedding(const SpectralDecomposition& dec, double t, Index k);

}  // namespace mgeom
