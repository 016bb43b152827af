// Discrete one-step Schrodinger bridges, Doob transforms, stationary
// distributions, probability currents and regime classification, plus the
// exact identities tying diffusion maps and attention to bridges.

#pragma once

#include "mgeom/operators.hpp"
#include "mgeom/types.hpp"

namespace mgeom {

// KL-closest coupling to a strictly positive kernel with marginals
// (mu_plus, mu_minus). Throws ConvergenceError or DomainError.
BridgeSolution solve_bridge(const Matrix& kernel, const Vector& mu_plus, const Vector& mu_minus,
                            const SolverOptions& opts = {});

// Same, with the kernel given in log form.
BridgeSolution solve_bridge_log(const Matrix& log_kernel, const Vector& mu_plus,
                                const Vector& mu_minus, const SolverOptions& opts = {});

// Diffusion map as an equilibrium bridge, assembled in closed form:
// pi = Z / sum(Z) with Z the RBF row sums, Pi = diag(pi) P+,
// u+ = pi / Z and u- = 1. No iterations are run (potentials.iterations == 0)
// and the closed-form potentials are reported without gauge fixing.
BridgeSolution dmap_as_bridge(const Matrix& d2, Beta beta);

// out(i, j) = P(i, j) h(j) / sum_k P(i, k) h(k). A constant h returns `p_plus`
// unchanged.
StochasticOperator doob_transform(const StochasticOperator& p_plus, const Vector& h);

// Same transform with h = exp(log_h), evaluated as a row softmax of
// log P + log h.
StochasticOperator doob_transform_log(const StochasticOperator& p_plus, const Vector& log_h);

// Left fixed point pi = pi P by power iteration from the uniform vector.
Vector stationary_distribution(const StochasticOperator& p, const SolverOptions& opts = {});

// J(i, j) = rho_i P(i, j) - rho_j P(j, i); exactly antisymmetric.
Matrix currents(const StochasticOperator& p, const Vector& rho);

// Relative threshold under which the largest current counts as zero.
inline constexpr double kCurrentRelativeThreshold = 1e-9;

RegimeReport classify_regime(const StochasticOperator& p, const Vector& mu_plus,
                             const Vector& mu_minus, double tol = 1e-10);

struct SbFactorizationReport {
  double deviation = 0.0;        // max |RHS - dmap|
  double log_z_minus_spread = 0.0;  // max log z- minus min log z-
};

// Rebuilds P+ from the forward/backward attention maps and the column
// partition sums z-_j = sum_l exp(-beta bwd(l, j)):
//   P+(i, j) = A+(i, j) A-(i, j) z-_j / sum_l z-_l A+(i, l) A-(i, l)
// and compares it against dmap(fwd + bwd, beta).
SbFactorizationReport sb_factorization_check(const Bidivergence& bidiv, Beta beta);

// Row-normalized product of the two row-softmax experts of -beta fwd and
// -beta bwd. `normalizer` receives m+_i.
StochasticOperator poe_factorization(const Bidivergence& bidiv, Beta beta,
                                     Vector* normalizer = nullptr);

// Bridge over the forward directional kernel exp(-beta fwd).
BridgeSolution attention_bridge(const Bidivergence& bidiv, Beta beta, const Vector& mu_plus,
                                const Vector& mu_minus, const SolverOptions& opts = {});

// softmax over j of (-beta fwd(i, j) + psi_j).
StochasticOperator column_biased_attention(const Bidivergence& bidiv, Beta beta,
                                           const Vector& psi);

struct MagneticFlux {
  ComplexMatrix flux;  // pi_i P+_ij exp(i Theta_ij)
  Matrix current;      // imaginary part, pi_i P+_ij sin Theta_ij
};

MagneticFlux magnetic_flux(const Vector& pi, const ComplexOperator& op);

// Theta(i, j) = log(pi_i A(i, j)) - log(pi_j A(j, i)); exactly antisymmetric
// and zero iff (A, pi) is in detailed balance. Phases are not wrapped.
Matrix attention_gauge(const Vector& pi_plus, const StochasticOperator& a_plus);

}  // namespace mgeom
