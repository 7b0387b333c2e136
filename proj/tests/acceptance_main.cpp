// Runs the full verification suite and prints one line per criterion.
// Exit status 0 iff every criterion passes.

#include <cstdio>

#include "mfwr/verify.hpp"

int main() {
  const auto results = mfwr::verify::run_acceptance();
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-18s observed %.3e  tolerance %.3e  (%.2fs)  %s\n",
                r.pass ? "PASS" : "FAIL", r.id, r.key.c_str(), r.observed, r.tolerance,
                r.seconds, r.description.c_str());
    all = all && r.pass;
  }
  std::printf("%s: %zu criteria\n", all ? "ALL PASS" : "FAILURES PRESENT", results.size());
  return all ? 0 : 1;
}
