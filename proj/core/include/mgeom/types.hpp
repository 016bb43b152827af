// Core value types shared by every module of the library.
//
// All matrices are dense Eigen matrices in double precision. Types that carry
// invariants validate them on construction and throw mgeom::DomainError.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string_view>

#include "mgeom/errors.hpp"

namespace mgeom {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Inverse temperature. Always supplied explicitly; never defaulted.
class Beta {
 public:
  explicit Beta(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// Stopping rule shared by every fixed-point solver in the library.
struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 10000;
};

// N x D sample matrix, one sample per row.
class DataCloud {
 public:
  explicit DataCloud(Matrix points);

  const Matrix& points() const noexcept { return points_; }
  Index size() const noexcept { return points_.rows(); }
  Index dim() const noexcept { return points_.cols(); }

 private:
  Matrix points_;
};

// D x D query-key interaction matrix. When built from factors the product
// W_Q * W_K^T is materialized and used downstream.
class InteractionWeights {
 public:
  static InteractionWeights identity(Index dim);
  static InteractionWeights from_matrix(Matrix w);
  static InteractionWeights from_factors(const Matrix& w_query, const Matrix& w_key);

  const Matrix& matrix() const noexcept { return w_; }
  Index dim() const noexcept { return w_.rows(); }
  bool factored() const noexcept { return factored_; }

 private:
  InteractionWeights(Matrix w, bool factored) : w_(std::move(w)), factored_(factored) {}
  Matrix w_;
  bool factored_ = false;
};

struct HermitianPartition {
  Matrix symmetric;      // S = (W + W^T) / 2
  Matrix antisymmetric;  // A = (W - W^T) / 2, the imaginary part of V

  // V = S + iA, Hermitian by construction.
  ComplexMatrix combined() const;
};

enum class GramKind { plain, generalized };

struct GramMatrix {
  Matrix values;
  GramKind kind = GramKind::plain;
};

// Signed pair whose sum is the squared distance. Both parts have zero diagonal.
struct Bidivergence {
  Matrix fwd;
  Matrix bwd;

  Index size() const noexcept { return fwd.rows(); }
};

enum class StochasticKind { row, column, bi };

std::string_view to_string(StochasticKind kind) noexcept;

// Nonnegative square matrix tagged with the axis (or axes) it is normalized
// along.
struct StochasticOperator {
  Matrix values;
  StochasticKind kind = StochasticKind::row;

  Index size() const noexcept { return values.rows(); }

  // Largest |sum - 1| over the axes implied by `kind`.
  double marginal_residual() const;
};

// Positive scaling vectors of a diagonal rescaling diag(u) K diag(v).
// The log forms are authoritative; u and v are exp of them and may overflow
// for extreme kernels, which is why both are carried.
struct ScalingPotentials {
  Vector u;
  Vector v;
  Vector log_u;
  Vector log_v;
  int iterations = 0;
  double residual = 0.0;

  static ScalingPotentials from_log(Vector log_u, Vector log_v, int iterations, double residual);
};

struct KernelMatrix {
  Matrix values;
  double beta = 0.0;
};

// Complex operator stored as magnitude and phase so that |entry| equals the
// magnitude bit-for-bit.
struct ComplexOperator {
  StochasticOperator magnitudes;
  Matrix phases;

  ComplexMatrix assemble() const;
};

struct LaplacianPair {
  Matrix combinatorial;  // diag(z) - P
  Matrix random_walk;    // I - P+
  Vector degrees;        // z_i = sum_j P_ij
};

struct BridgeSolution {
  Matrix coupling;
  ScalingPotentials potentials;
  Vector mu_plus;
  Vector mu_minus;
  StochasticOperator forward;
};

enum class Regime { EQ, NESS, NE };

std::string_view to_string(Regime regime) noexcept;

struct RegimeReport {
  std::optional<Vector> stationary;
  Matrix currents;
  double max_current = 0.0;
  double current_threshold = 0.0;
  double stationarity_residual = 0.0;
  double marginal_gap = 0.0;
  Regime regime = Regime::NE;
};

struct SpectralDecomposition {
  Vector eigenvalues;          // descending
  ComplexMatrix right_vectors; // columns; imaginary part is zero when !is_complex
  ComplexMatrix left_vectors;
  bool is_complex = false;
  bool degenerate = false;     // some retained eigenvalues coincide to 1e-10

  Matrix right_real() const { return right_vectors.real(); }
  Matrix left_real() const { return left_vectors.real(); }
};

struct Embedding {
  ComplexMatrix coordinates;  // N x k
  double time = 0.0;
  Index retained = 0;
  bool is_complex = false;

  Matrix real() const { return coordinates.real(); }
};

}  // namespace mgeom
