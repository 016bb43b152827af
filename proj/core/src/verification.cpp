#include "mgeom/verification.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "mgeom/bridges.hpp"
#include "mgeom/geometry.hpp"
#include "mgeom/normalize.hpp"
#include "mgeom/operators.hpp"
#include "mgeom/spectral.hpp"

namespace mgeom {

namespace {

constexpr int kBatteryClouds = 10;
constexpr double kBetas[] = {0.1, 1.0, 10.0};

CheckResult at_most(std::string name, double value, double tol) {
  return {std::move(name), value, tol, true, value <= tol, {}};
}

CheckResult above(std::string name, double value, double floor) {
  return {std::move(name), value, floor, false, value > floor, {}};
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Batch of seeded clouds, the user cloud (if any) first.
std::vector<DataCloud> battery(const VerificationInput& in, int count, std::uint64_t salt) {
  std::vector<DataCloud> clouds;
  if (in.cloud) clouds.push_back(*in.cloud);
  for (int c = 0; c < count; ++c) {
    const std::uint64_t seed = in.seed + salt * 1000 + static_cast<std::uint64_t>(c);
    const Index n = 5 + c % 6;
    const Index d = 1 + c % 4;
    clouds.emplace_back(random_normal(n, d, seed));
  }
  return clouds;
}

Matrix pairwise_sq_norms(const Matrix& r) {
  const Index n = r.rows();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out(i, j) = (r.row(i) - r.row(j)).squaredNorm();
  }
  return out;
}

InteractionWeights asymmetric_weights(const VerificationInput& in, Index dim, std::uint64_t seed) {
  if (in.weights && in.weights->dim() == dim) {
    const Matrix& w = in.weights->matrix();
    if (max_abs(w - w.transpose()) > 1e-6) return *in.weights;
  }
  return InteractionWeights::from_matrix(random_normal(dim, dim, seed));
}

CriterionResult bidivergence_identity(const VerificationInput& in) {
  CriterionResult c{1, "bidivergence sum equals pairwise squared distance", {}};
  double split = 0.0;
  double oracle = 0.0;
  double self_zero = 0.0;
  auto clouds = battery(in, 20, 1);
  for (const auto& cloud : clouds) {
    const Bidivergence b = bidivergence(gram(cloud));
    const Matrix d2 = squared_distance(b);
    split = std::max(split, max_abs(b.fwd + b.bwd - d2));
    oracle = std::max(oracle, max_abs(d2 - pairwise_sq_norms(cloud.points())));
    self_zero = std::max({self_zero, b.fwd.diagonal().cwiseAbs().maxCoeff(),
                          b.bwd.diagonal().cwiseAbs().maxCoeff()});
  }
  c.checks.push_back(at_most("fwd + bwd - D^2", split, 1e-12));
  c.checks.push_back(at_most("D^2 - pairwise norm oracle", oracle, 1e-12));
  c.checks.push_back(at_most("diagonal of both parts", self_zero, 0.0));
  return c;
}

CriterionResult attention_equivalence(const VerificationInput& in) {
  CriterionResult c{2, "forward attention equals softmax(beta Q K^T)", {}};
  double worst = 0.0;
  auto clouds = battery(in, 4, 2);
  std::uint64_t s = in.seed + 2;
  for (const auto& cloud : clouds) {
    const Index d = cloud.dim();
    const Index rank = std::max<Index>(1, std::min<Index>(2, d));
    const Matrix wq = random_normal(d, rank, ++s);
    const Matrix wk = random_normal(d, rank, ++s);
    const auto w = InteractionWeights::from_factors(wq, wk);
    const Bidivergence b = bidivergence(generalized_gram(cloud, w));
    const Matrix q = cloud.points() * wq;
    const Matrix k = cloud.points() * wk;
    for (double beta : kBetas) {
      const Matrix lhs = attention_forward(b, Beta{beta}).values;
      const Matrix rhs = softmax_rows(beta * q * k.transpose()).values;
      worst = std::max(worst, max_abs(lhs - rhs));
    }
  }
  c.checks.push_back(at_most("max |A+ - softmax(beta QK^T)|", worst, 1e-12));
  return c;
}

CriterionResult poe_theorem(const VerificationInput& in) {
  CriterionResult c{3, "product-of-experts theorem and shift invariance", {}};
  double poe_rows = 0.0;
  double poe_cols = 0.0;
  double shift = 0.0;
  for (int t = 0; t < 5; ++t) {
    const std::uint64_t s = in.seed + 3000 + 10 * static_cast<std::uint64_t>(t);
    const Matrix z = random_normal(16, 16, s);
    const Matrix y = random_normal(16, 16, s + 1);
    const Vector u = random_normal(16, 1, s + 2);
    poe_rows = std::max(poe_rows, max_abs(poe_combine(softmax_rows(z), softmax_rows(y)).values -
                                          softmax_rows(z + y).values));
    poe_cols = std::max(poe_cols, max_abs(poe_combine(softmax_cols(z), softmax_cols(y)).values -
                                          softmax_cols(z + y).values));
    Matrix row_shifted = z;
    row_shifted.colwise() += u;
    Matrix col_shifted = z;
    col_shifted.rowwise() += u.transpose();
    shift = std::max({shift, max_abs(softmax_rows(row_shifted).values - softmax_rows(z).values),
                      max_abs(softmax_cols(col_shifted).values - softmax_cols(z).values)});
  }
  c.checks.push_back(at_most("row PoE deviation", poe_rows, 1e-12));
  c.checks.push_back(at_most("column PoE deviation", poe_cols, 1e-12));
  c.checks.push_back(at_most("shift invariance", shift, 1e-15));
  return c;
}

CriterionResult kernel_factorization(const VerificationInput& in, double beta) {
  CriterionResult c{4, "RBF kernel equals Hadamard product of directional kernels", {}};
  double worst = 0.0;
  for (const auto& cloud : battery(in, kBatteryClouds, 4)) {
    const Bidivergence b = bidivergence(gram(cloud));
    for (double bt : {beta, 0.1, 1.0, 10.0}) {
      const auto [fwd, bwd] = directional_kernels(b, Beta{bt});
      worst = std::max(worst,
                       max_abs(rbf_kernel(squared_distance(b), Beta{bt}).values - fwd.cwiseProduct(bwd)));
    }
  }
  c.checks.push_back(at_most("max |P - A-> (.) A<-|", worst, 1e-12));
  return c;
}

CriterionResult sb_factorization(const VerificationInput& in, double beta) {
  CriterionResult c{5, "Schrodinger-bridge factorization of the diffusion map", {}};
  double worst = 0.0;
  for (const auto& cloud : battery(in, kBatteryClouds, 5)) {
    const Bidivergence b = bidivergence(gram(cloud));
    for (double bt : {beta, 0.1, 1.0, 10.0}) {
      worst = std::max(worst, sb_factorization_check(b, Beta{bt}).deviation);
    }
  }
  c.checks.push_back(at_most("max |RHS - P+|", worst, 1e-10));
  return c;
}

CriterionResult poe_factorization_criterion(const VerificationInput& in, double beta) {
  CriterionResult c{6, "PoE factorization of the diffusion map", {}};
  double worst = 0.0;
  for (const auto& cloud : battery(in, kBatteryClouds, 5)) {
    const Bidivergence b = bidivergence(gram(cloud));
    for (double bt : {beta, 0.1, 1.0, 10.0}) {
      worst = std::max(worst, max_abs(poe_factorization(b, Beta{bt}).values -
                                      dmap(squared_distance(b), Beta{bt}).values));
    }
  }
  c.checks.push_back(at_most("max |PoE - P+|", worst, 1e-12));
  return c;
}

CriterionResult dmap_equilibrium(const VerificationInput& in, double beta) {
  CriterionResult c{7, "diffusion map is an equilibrium pair with its degree distribution", {}};
  double stationarity = 0.0;
  double current = 0.0;
  int non_eq_count = 0;
  for (const auto& cloud : battery(in, kBatteryClouds, 7)) {
    const Matrix d2 = squared_distance(bidivergence(gram(cloud)));
    const KernelMatrix k = rbf_kernel(d2, Beta{beta});
    const Vector z = k.values.rowwise().sum();
    const Vector pi = z / z.sum();
    const StochasticOperator p = dmap(d2, Beta{beta});
    stationarity = std::max(stationarity, (pi.transpose() * p.values - pi.transpose()).cwiseAbs().maxCoeff());
    current = std::max(current, max_abs(currents(p, pi)));
    if (classify_regime(p, pi, pi).regime != Regime::EQ) ++non_eq_count;
  }
  c.checks.push_back(at_most("|pi - pi P+|", stationarity, 1e-12));
  c.checks.push_back(at_most("max |J|", current, 1e-12));
  c.checks.push_back(at_most("instances not classified EQ", non_eq_count, 0.0));
  return c;
}

CriterionResult sinkhorn_contract(const VerificationInput& in, double beta) {
  CriterionResult c{8, "Sinkhorn scaling contract", {}};
  const SolverOptions tight{1e-13, 100000};
  double residual = 0.0;
  double gauge = 0.0;
  double closure = 0.0;
  for (const auto& cloud : battery(in, 5, 8)) {
    const Matrix d2 = squared_distance(bidivergence(gram(cloud)));
    const Index n = d2.rows();
    const Matrix z = -beta * d2;
    const auto [zs, pz] = sinkhorn(z, tight);
    residual = std::max(residual, zs.marginal_residual());
    Matrix shifted = z;
    shifted.colwise() += Vector(random_normal(n, 1, in.seed + 81));
    shifted.rowwise() += Vector(random_normal(n, 1, in.seed + 82)).transpose();
    gauge = std::max(gauge, max_abs(sinkhorn(shifted, tight).first.values - zs.values));
    const auto other = sinkhorn(random_normal(n, n, in.seed + 83), tight).first;
    closure = std::max(closure, StochasticOperator{zs.values * other.values, StochasticKind::bi}
                                    .marginal_residual());
  }
  Matrix k2(2, 2);
  k2 << 2, 1, 1, 2;
  Matrix expected(2, 2);
  expected << 2.0 / 3, 1.0 / 3, 1.0 / 3, 2.0 / 3;
  const double analytic = max_abs(sinkhorn(k2.array().log().matrix(), tight).first.values - expected);
  c.checks.push_back(at_most("bistochastic residual", residual, 1e-10));
  c.checks.push_back(at_most("gauge invariance", gauge, 1e-10));
  c.checks.push_back(at_most("product of bistochastic outputs", closure, 1e-12));
  c.checks.push_back(at_most("[[2,1],[1,2]] -> [[2/3,1/3],[1/3,2/3]]", analytic, 1e-10));
  return c;
}

Vector random_simplex(Index n, std::uint64_t seed) {
  Vector p = random_normal(n, 1, seed).array().abs() + 0.2;
  return p / p.sum();
}

CriterionResult bridge_contract(const VerificationInput& in, double beta) {
  CriterionResult c{9, "Schrodinger bridge contract", {}};
  const SolverOptions tight{1e-12, 100000};
  double marginals = 0.0;
  double product = 0.0;
  double closed_form = 0.0;
  std::uint64_t s = in.seed + 9000;
  for (const auto& cloud : battery(in, 5, 9)) {
    const Matrix d2 = squared_distance(bidivergence(gram(cloud)));
    const Index n = d2.rows();
    const Vector mp = random_simplex(n, ++s);
    const Vector mm = random_simplex(n, ++s);
    const BridgeSolution sol = solve_bridge(rbf_kernel(d2, Beta{beta}).values, mp, mm, tight);
    marginals = std::max({marginals, (sol.coupling.rowwise().sum() - mp).cwiseAbs().maxCoeff(),
                          (sol.coupling.colwise().sum().transpose() - mm).cwiseAbs().maxCoeff()});
    const BridgeSolution flat = solve_bridge(Matrix::Ones(n, n), mp, mm, tight);
    product = std::max(product, max_abs(flat.coupling - mp * mm.transpose()));
    const BridgeSolution eq = dmap_as_bridge(d2, Beta{beta});
    const BridgeSolution iter =
        solve_bridge(rbf_kernel(d2, Beta{beta}).values, eq.mu_plus, eq.mu_minus, tight);
    closed_form = std::max(closed_form, max_abs(eq.coupling - iter.coupling));
  }
  c.checks.push_back(at_most("marginal residual", marginals, 1e-10));
  c.checks.push_back(at_most("flat kernel vs product coupling", product, 1e-12));
  c.checks.push_back(at_most("closed-form DMAP bridge vs iterative", closed_form, 1e-10));
  return c;
}

CriterionResult doob_criterion(const VerificationInput& in, double beta) {
  CriterionResult c{10, "Doob transform", {}};
  const SolverOptions tight{1e-12, 100000};
  double identity = 0.0;
  double bridge = 0.0;
  std::uint64_t s = in.seed + 10000;
  for (const auto& cloud : battery(in, 5, 10)) {
    const Matrix d2 = squared_distance(bidivergence(gram(cloud)));
    const Index n = d2.rows();
    const StochasticOperator p = dmap(d2, Beta{beta});
    identity = std::max(identity, max_abs(doob_transform(p, Vector::Ones(n)).values - p.values));
    const Vector mp = random_simplex(n, ++s);
    const Vector mm = random_simplex(n, ++s);
    const BridgeSolution sol = solve_bridge(rbf_kernel(d2, Beta{beta}).values, mp, mm, tight);
    bridge = std::max(bridge,
                      max_abs(sol.forward.values - doob_transform_log(p, sol.potentials.log_v).values));
  }
  c.checks.push_back(at_most("h = 1 transform", identity, 0.0));
  c.checks.push_back(at_most("bridge forward vs Doob(P+, u-)", bridge, 1e-10));
  return c;
}

CriterionResult attention_bridge_criterion(const VerificationInput& in, double beta) {
  CriterionResult c{11, "forward attention as a Schrodinger bridge", {}};
  const SolverOptions tight{1e-13, 200000};
  double matched = 0.0;
  double broken = std::numeric_limits<double>::infinity();
  double margin = std::numeric_limits<double>::infinity();
  int not_ness = 0;
  std::uint64_t s = in.seed + 11000;
  std::vector<DataCloud> clouds;
  if (in.cloud) clouds.push_back(*in.cloud);
  for (int t = 0; t < 3; ++t) clouds.emplace_back(random_normal(8, 3, ++s));
  for (const auto& cloud : clouds) {
    const auto w = asymmetric_weights(in, cloud.dim(), ++s);
    const Bidivergence b = bidivergence(generalized_gram(cloud, w));
    const Index n = cloud.size();
    const StochasticOperator a = attention_forward(b, Beta{beta});
    const Vector mp = random_simplex(n, ++s);
    const Vector mm = (mp.transpose() * a.values).transpose();
    const BridgeSolution sol = attention_bridge(b, Beta{beta}, mp, mm, tight);
    matched = std::max(matched, max_abs(sol.forward.values - a.values));

    // Move 1e-3 of mass between the two largest states: total variation 1e-3.
    Vector perturbed = mm;
    Index hi = 0;
    perturbed.maxCoeff(&hi);
    Index lo = hi == 0 ? 1 : 0;
    perturbed(hi) -= 1e-3;
    perturbed(lo) += 1e-3;
    const BridgeSolution off = attention_bridge(b, Beta{beta}, mp, perturbed, tight);
    broken = std::min(broken, max_abs(off.forward.values - a.values));

    const Vector pi_plus = stationary_distribution(a, {1e-14, 1000000});
    const BridgeSolution stat = attention_bridge(b, Beta{beta}, pi_plus, pi_plus, tight);
    const RegimeReport rep = classify_regime(stat.forward, pi_plus, pi_plus, 1e-9);
    if (rep.regime != Regime::NESS) ++not_ness;
    margin = std::min(margin, rep.max_current / rep.current_threshold);
  }
  c.checks.push_back(at_most("mu- = mu+ A+  =>  |Pi+ - A+|", matched, 1e-10));
  c.checks.push_back(above("perturbed mu- (TV 1e-3): |Pi+ - A+|", broken, 1e-5));
  c.checks.push_back(at_most("stationary bridges not classified NESS", not_ness, 0.0));
  c.checks.push_back(above("max current / EQ threshold", margin, 10.0));
  return c;
}

CriterionResult magnetic_criterion(const VerificationInput& in, double beta) {
  CriterionResult c{12, "magnetic operators", {}};
  double magnitude = 0.0;
  double hermitian = 0.0;
  double imag_eig = 0.0;
  double trivial_current = 0.0;
  double gauge_antisym = 0.0;
  double gauge_db = 0.0;
  std::uint64_t s = in.seed + 12000;
  std::vector<DataCloud> clouds;
  if (in.cloud) clouds.push_back(*in.cloud);
  for (int t = 0; t < 4; ++t) clouds.emplace_back(random_normal(6 + t, 3, ++s));
  for (const auto& cloud : clouds) {
    const auto w = asymmetric_weights(in, cloud.dim(), ++s);
    const Bidivergence b = bidivergence(generalized_gram(cloud, w));
    const Matrix d2 = squared_distance(b);
    const StochasticOperator p = dmap(d2, Beta{beta});
    const Vector z = rbf_kernel(d2, Beta{beta}).values.rowwise().sum();
    const Vector pi = z / z.sum();
    const Matrix theta = edge_phases(cloud, w, Beta{beta});
    const ComplexOperator op = magnetic_operator(p, theta);
    magnitude = std::max(magnitude, max_abs(op.magnitudes.values - p.values));
    const ComplexMatrix h = conjugate_hermitize(op, pi);
    hermitian = std::max(hermitian, (h - h.adjoint()).cwiseAbs().maxCoeff());
    Eigen::ComplexEigenSolver<ComplexMatrix> ces(h);
    imag_eig = std::max(imag_eig, ces.eigenvalues().imag().cwiseAbs().maxCoeff());
    const ComplexOperator flat = magnetic_operator(p, Matrix::Zero(p.size(), p.size()));
    trivial_current = std::max(trivial_current, max_abs(magnetic_flux(pi, flat).current));

    const StochasticOperator a = attention_forward(b, Beta{beta});
    const Vector pi_plus = stationary_distribution(a, {1e-14, 1000000});
    const Matrix g = attention_gauge(pi_plus, a);
    gauge_antisym = std::max(gauge_antisym, max_abs(g + g.transpose()));
    gauge_db = std::max(gauge_db, max_abs(attention_gauge(pi, p)));
  }
  c.checks.push_back(at_most("| |P~+| - P+ |", magnitude, 0.0));
  c.checks.push_back(at_most("|H - H^dagger|", hermitian, 1e-10));
  c.checks.push_back(at_most("imaginary part of eig(H)", imag_eig, 1e-10));
  c.checks.push_back(at_most("Theta = 0 magnetic current", trivial_current, 0.0));
  c.checks.push_back(at_most("attention gauge antisymmetry", gauge_antisym, 1e-15));
  c.checks.push_back(at_most("attention gauge under detailed balance", gauge_db, 1e-12));
  return c;
}

// Nonsymmetric spectra (attention, Doob transforms): check via a general
// eigensolver.
void general_spectrum(const Matrix& p, double& containment, double& top, double& constant) {
  Eigen::EigenSolver<Matrix> es(p);
  const Eigen::VectorXcd ev = es.eigenvalues();
  Index best = 0;
  for (Index k = 0; k < ev.size(); ++k) {
    containment = std::max(containment, std::abs(ev(k)) - 1.0);
    if (ev(k).real() > ev(best).real()) best = k;
  }
  top = std::max(top, std::abs(ev(best) - 1.0));
  Eigen::VectorXcd v = es.eigenvectors().col(best);
  v /= v(0);
  constant = std::max(constant, (v.array() - 1.0).abs().maxCoeff());
}

void reversible_spectrum(const SpectralDecomposition& dec, double& containment, double& top,
                         double& constant) {
  containment = std::max(containment, dec.eigenvalues.cwiseAbs().maxCoeff() - 1.0);
  top = std::max(top, std::abs(dec.eigenvalues(0) - 1.0));
  const Eigen::VectorXcd psi = dec.right_vectors.col(0) / dec.right_vectors(0, 0);
  constant = std::max(constant, (psi.array() - 1.0).abs().maxCoeff());
}

CriterionResult spectral_criterion(const VerificationInput& in, double beta) {
  CriterionResult c{13, "spectral invariants", {}};
  double containment = -1.0;
  double top = 0.0;
  double constant = 0.0;
  std::uint64_t s = in.seed + 13000;
  for (const auto& cloud : battery(in, 5, 13)) {
    const Matrix d2 = squared_distance(bidivergence(gram(cloud)));
    const Index n = d2.rows();
    const StochasticOperator p = dmap(d2, Beta{beta});
    const Vector z = rbf_kernel(d2, Beta{beta}).values.rowwise().sum();
    const Vector pi = z / z.sum();
    reversible_spectrum(decompose(conjugate_symmetrize(p, pi), pi), containment, top, constant);

    const StochasticOperator pb = dmap_bistochastic(d2, Beta{beta}, {1e-13, 100000});
    const Vector uniform = Vector::Constant(n, 1.0 / static_cast<double>(n));
    reversible_spectrum(decompose(Matrix(0.5 * (pb.values + pb.values.transpose())), uniform), containment,
                        top, constant);

    const auto w = asymmetric_weights(in, cloud.dim(), ++s);
    const Bidivergence b = bidivergence(generalized_gram(cloud, w));
    general_spectrum(attention_forward(b, Beta{beta}).values, containment, top, constant);
    general_spectrum(doob_transform(p, random_simplex(n, ++s) * n).values, containment, top,
                     constant);
  }

  Matrix d2(2, 2);
  d2 << 0, 1, 1, 0;
  const StochasticOperator p2 = dmap(d2, Beta{1.0});
  const Vector half = Vector::Constant(2, 0.5);
  const double lambda2 = decompose(conjugate_symmetrize(p2, half), half).eigenvalues(1);
  const double analytic = (1.0 - std::exp(-1.0)) / (1.0 + std::exp(-1.0));

  Matrix clusters(8, 2);
  clusters << 0.0, 0.0, 0.3, 0.1, -0.2, 0.25, 0.1, -0.3,
              2.0, 2.0, 2.2, 1.9, 1.8, 2.3, 2.1, 2.25;
  const Matrix cd2 = squared_distance(bidivergence(gram(DataCloud(clusters))));
  const StochasticOperator cp = dmap(cd2, Beta{1.0});
  const Vector cz = rbf_kernel(cd2, Beta{1.0}).values.rowwise().sum();
  const Vector cpi = cz / cz.sum();
  const Matrix emb = diffusion_embedding(decompose(conjugate_symmetrize(cp, cpi), cpi), 1.0, 2).real();
  int misplaced = 0;
  const double sign_a = emb(0, 0) > 0 ? 1.0 : -1.0;
  for (Index i = 0; i < 8; ++i) {
    const double expected = i < 4 ? sign_a : -sign_a;
    if (!(emb(i, 0) * expected > 0.0)) ++misplaced;
  }

  c.checks.push_back(at_most("eigenvalue modulus beyond 1", std::max(containment, 0.0), 1e-10));
  c.checks.push_back(at_most("|lambda_1 - 1|", top, 1e-10));
  c.checks.push_back(at_most("top right eigenvector non-constancy", constant, 1e-8));
  c.checks.push_back(at_most("2-point lambda_2 vs analytic", std::abs(lambda2 - analytic), 1e-12));
  c.checks.push_back(at_most("two-cluster points on the wrong side", misplaced, 0.0));
  return c;
}

CriterionResult guarded(int id, const std::string& title, const std::function<CriterionResult()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    CriterionResult c{id, title, {}};
    CheckResult failed{"evaluation", 0.0, 0.0, true, false, e.what()};
    c.checks.push_back(failed);
    return c;
  }
}

}  // namespace

bool CriterionResult::passed() const {
  if (checks.empty()) return false;
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

bool VerificationReport::all_passed() const {
  if (criteria.empty()) return false;
  for (const auto& c : criteria) {
    if (!c.passed()) return false;
  }
  return true;
}

Matrix random_normal(Index rows, Index cols, std::uint64_t seed) {
  // Box-Muller over raw mt19937_64 output so values are identical across
  // standard library implementations.
  std::mt19937_64 engine(seed);
  auto uniform = [&] {
    return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
  };
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double r = std::sqrt(-2.0 * std::log(uniform()));
      out(i, j) = r * std::cos(2.0 * std::numbers::pi * uniform());
    }
  }
  return out;
}

VerificationReport run_verification(const VerificationInput& in) {
  const double beta = Beta{in.beta}.value();
  VerificationReport report;
  auto add = [&](int id, const char* title, const std::function<CriterionResult()>& f) {
    report.criteria.push_back(guarded(id, title, f));
  };
  add(1, "bidivergence identity", [&] { return bidivergence_identity(in); });
  add(2, "attention equivalence", [&] { return attention_equivalence(in); });
  add(3, "PoE theorem", [&] { return poe_theorem(in); });
  add(4, "kernel factorization", [&] { return kernel_factorization(in, beta); });
  add(5, "SB factorization", [&] { return sb_factorization(in, beta); });
  add(6, "PoE factorization", [&] { return poe_factorization_criterion(in, beta); });
  add(7, "DMAP equilibrium", [&] { return dmap_equilibrium(in, beta); });
  add(8, "Sinkhorn contract", [&] { return sinkhorn_contract(in, beta); });
  add(9, "bridge contract", [&] { return bridge_contract(in, beta); });
  add(10, "Doob transform", [&] { return doob_criterion(in, beta); });
  add(11, "attention as SB", [&] { return attention_bridge_criterion(in, beta); });
  add(12, "magnetic operators", [&] { return magnetic_criterion(in, beta); });
  add(13, "spectral", [&] { return spectral_criterion(in, beta); });
  return report;
}

}  // namespace mgeom
