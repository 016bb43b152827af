#include "mgeom/spectral.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

namespace mgeom {

namespace {

constexpr double kDegeneracyGap = 1e-10;

void check_detailed_balance(const Matrix& p, const Vector& pi, std::string_view what) {
  if (p.rows() != p.cols() || pi.size() != p.rows()) {
    throw DimensionError(std::string(what) + ": operator and distribution sizes differ");
  }
  if (!(pi.minCoeff() > 0.0)) {
    throw DomainError(std::string(what) + ": distribution must be strictly positive");
  }
  const Matrix flow = pi.asDiagonal() * p;
  const double violation = (flow - flow.transpose()).cwiseAbs().maxCoeff();
  if (violation > kDetailedBalanceTolerance) {
    throw DomainError(std::string(what) + ": operator is not in detailed balance with pi (max " +
                      "current " + std::to_string(violation) + "); non-equilibrium operators " +
                      "cannot be symmetrized");
  }
}

// Rotates every column so its first component above 1e-10 * max|column| is
// real and positive.
void fix_phase(ComplexMatrix& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    const double scale = vectors.col(c).cwiseAbs().maxCoeff();
    for (Index r = 0; r < vectors.rows(); ++r) {
      const std::complex<double> x = vectors(r, c);
      if (std::abs(x) > 1e-10 * scale) {
        vectors.col(c) *= std::conj(x) / std::abs(x);
        vectors(r, c) = std::abs(x);
        break;
      }
    }
  }
}

SpectralDecomposition assemble(const Vector& ascending_values, ComplexMatrix ascending_vectors,
                               const Vector& pi, bool is_complex) {
  const Index n = ascending_values.size();
  SpectralDecomposition dec;
  dec.is_complex = is_complex;
  dec.eigenvalues = ascending_values.reverse();
  ComplexMatrix v = ascending_vectors.rowwise().reverse();
  fix_phase(v);
  if (!is_complex) v.imag().setZero();

  const Vector sqrt_pi = pi.cwiseSqrt();
  dec.right_vectors = sqrt_pi.cwiseInverse().asDiagonal() * v;
  dec.left_vectors = sqrt_pi.asDiagonal() * v;
  for (Index k = 0; k + 1 < n; ++k) {
    if (dec.eigenvalues(k) - dec.eigenvalues(k + 1) < kDegeneracyGap) dec.degenerate = true;
  }
  return dec;
}

}  // namespace

Matrix conjugate_symmetrize(const StochasticOperator& p_plus, const Vector& pi) {
  check_detailed_balance(p_plus.values, pi, "conjugate_symmetrize");
  const Vector sqrt_pi = pi.cwiseSqrt();
  return sqrt_pi.asDiagonal() * p_plus.values * sqrt_pi.cwiseInverse().asDiagonal();
}

ComplexMatrix conjugate_hermitize(const ComplexOperator& op, const Vector& pi) {
  const Matrix& mag = op.magnitudes.values;
  check_detailed_balance(mag, pi, "conjugate_hermitize");
  const Index n = mag.rows();
  const Vector sqrt_pi = pi.cwiseSqrt();
  ComplexMatrix h(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      h(i, j) = std::polar(sqrt_pi(i) * mag(i, j) / sqrt_pi(j), op.phases(i, j));
    }
  }
  return h;
}

SpectralDecomposition decompose(const Matrix& sym, const Vector& pi) {
  if (sym.rows() != sym.cols() || pi.size() != sym.rows()) {
    throw DimensionError("decompose: operator and distribution sizes differ");
  }
  const Matrix averaged = 0.5 * (sym + sym.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(averaged);
  if (solver.info() != Eigen::Success) throw Error("decompose: symmetric eigensolver failed");
  return assemble(solver.eigenvalues(), solver.eigenvectors().cast<std::complex<double>>(), pi,
                  false);
}

SpectralDecomposition decompose(const ComplexMatrix& herm, const Vector& pi) {
  if (herm.rows() != herm.cols() || pi.size() != herm.rows()) {
    throw DimensionError("decompose: operator and distribution sizes differ");
  }
  const ComplexMatrix averaged = 0.5 * (herm + herm.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(averaged);
  if (solver.info() != Eigen::Success) throw Error("decompose: Hermitian eigensolver failed");
  return assemble(solver.eigenvalues(), solver.eigenvectors(), pi, true);
}

Embedding diffusion_embedding(const SpectralDecomposition& dec, double t, Index k) {
  const Index n = dec.eigenvalues.size();
  if (k < 1 || k > n - 1) {
    throw DomainError("diffusion_embedding: k must lie in [1, " + std::to_string(n - 1) + "]");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("diffusion_embedding: t must be a finite nonnegative number");
  }
  Embedding emb;
  emb.time = t;
  emb.retained = k;
  emb.is_complex = dec.is_complex;
  emb.coordinates.resize(n, k);
  for (Index c = 0; c < k; ++c) {
    const double lambda = dec.eigenvalues(c + 1);
    if (lambda < 0.0 && t != std::floor(t)) {
      throw DomainError("diffusion_embedding: negative eigenvalue with non-integer time");
    }
    emb.coordinates.col(c) = std::pow(lambda, t) * dec.right_vectors.col(c + 1);
  }
  return emb;
}

}  // namespace mgeom
