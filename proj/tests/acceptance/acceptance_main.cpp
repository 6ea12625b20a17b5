// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// With claim ids as arguments only those run. Exit status is 0 iff every
// criterion that ran passed.

#include "verify/claims.hpp"

#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>

using namespace halo::verify;

int main(int argc, char** argv) {
  std::set<std::string> only(argv + 1, argv + argc);
  ClaimOptions opts;
  if (const char* s = std::getenv("HALO_SEED")) opts.seed = std::strtoull(s, nullptr, 10);

  bool all = true;
  std::size_t index = 0, ran = 0;
  for (const Claim& c : claims()) {
    ++index;
    if (!only.empty() && !only.count(c.id)) continue;
    ++ran;
    const ClaimReport r = run_claim(c, opts);
    const bool pass = r.verdict == Verdict::Pass;
    all = all && pass;
    std::printf("%s %02zu %s (%lld ms, limit %lld ms)%s%s\n", pass ? "PASS" : "FAIL", index, c.id.c_str(),
                r.runtime_ms, r.limit_ms, r.detail.empty() ? "" : ": ", r.detail.c_str());
    if (!pass && !r.witness.is_null()) std::printf("  witness: %s\n", r.witness.dump().c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no matching criterion\n");
    return 2;
  }
  return all ? 0 : 1;
}
