#pragma once

#include <map>
#include <string>
#include <vector>

namespace mfwr::verify {

struct CriterionResult {
  int id;                   // 1-based, stable ordering
  std::string key;          // machine name, also the tolerance-override key
  std::string description;  // one line, human oriented
  double tolerance;         // pass iff observed <= tolerance
  double observed;
  bool pass;
  double seconds;           // wall time of this criterion
};

// Runs the whole verification suite. Overrides replace the default
// tolerance of the criteria named by their key.
std::vector<CriterionResult> run_acceptance(
    const std::map<std::string, double>& tolerance_overrides = {});

}  // namespace mfwr::verify
