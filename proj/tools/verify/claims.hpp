#pragma once

#include "halo/io.hpp"
#include "halo/positivity.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace halo::verify {

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct ClaimOptions {
  std::uint64_t seed = 20240611;
  SearchBudget budget;
  /// Largest n for the MPO reduction identity.
  std::size_t n_max = 3;
  std::size_t max_dim = kDefaultMaxDim;
};

struct ClaimReport {
  std::string id;
  std::string anchor;
  Verdict verdict = Verdict::Fail;
  Json witness;  // null when absent
  std::string detail;
  long long runtime_ms = 0;
  long long limit_ms = 0;
};

struct Claim {
  std::string id;
  std::string anchor;
  long long limit_ms = 0;
  std::function<ClaimReport(const ClaimOptions&)> run;
};

/// The acceptance criteria in order.
const std::vector<Claim>& claims();

/// Runs one claim, timing it and turning exceptions into verdicts
/// (ResourceLimit: inconclusive, anything else: fail).
ClaimReport run_claim(const Claim& c, const ClaimOptions& opts);

/// {"claim-id", "paper-anchor", "verdict", "witness"?, "runtime-ms"} plus detail.
Json to_json(const ClaimReport& r);

}  // namespace halo::verify
