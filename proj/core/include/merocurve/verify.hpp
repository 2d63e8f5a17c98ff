#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "merocurve/meropoly.hpp"

namespace merocurve {

// Tally of one checked identity across a suite run.
struct PropertyCount {
  std::string name;
  long checks = 0;
  long failures = 0;
  std::string note;  // first failure site, for diagnosis
};

// family selects the instance generator: "tr3" (single-segment curves
// Y^d + c X^e), "tr4" (nested two-level curves (Y^2 - X^odd)^2 - c X^e Y),
// "tr5" (mixed-degree curves Y^(n+2) + c X^a Y^n + k' Y + k), each with
// random perturbation monomials. n scales the family; count is the number
// of instances; every draw is a deterministic function of seed.
struct SuiteOptions {
  std::string family = "tr3";
  std::uint64_t seed = 1;
  long n = 3;
  long count = 40;
};

struct SuiteResult {
  std::string family;
  std::uint64_t seed = 0;
  long instances = 0;  // draws that ran the full battery
  long skipped = 0;    // draws rejected as degenerate or out of hypothesis
  std::vector<PropertyCount> properties;

  bool ok() const;  // ran and recorded no failures
  long total_checks() const;
};

// Runs the identity battery on count generated instances: factorization
// roundtrip, level-data integrality and edge deformation, contact
// ultrametric and intersection identities, bud edge behavior, strength,
// slice degree bookkeeping, the slice-calculus lemma set, derivative and
// jacobian reports, and resultant-vs-root intersection agreement.
SuiteResult run_suite(const SuiteOptions& opt);

}  // namespace merocurve
