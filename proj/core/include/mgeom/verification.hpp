// Identity-verification suite: re-derives every algebraic identity the
// library relies on (bidivergence split, attention equivalence, PoE and
// bridge factorizations, Sinkhorn and bridge contracts, magnetic and
// spectral invariants) on a user cloud plus a seeded battery of random
// instances, and reports each residual next to its tolerance.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgeom/types.hpp"

namespace mgeom {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  // true: pass iff value <= tolerance. false: pass iff value > tolerance.
  bool upper_bound = true;
  bool passed = false;
  std::string note;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;

  bool passed() const;
};

struct VerificationReport {
  std::vector<CriterionResult> criteria;

  bool all_passed() const;
};

struct VerificationInput {
  std::optional<DataCloud> cloud;
  std::optional<InteractionWeights> weights;
  double beta = 1.0;
  std::uint64_t seed = 20240917;
};

VerificationReport run_verification(const VerificationInput& input);

// Seeded standard-normal matrix; shared by the verification battery,
// the benchmarks and the CLI fixtures.
Matrix random_normal(Index rows, Index cols, std::uint64_t seed);

}  // namespace mgeom
