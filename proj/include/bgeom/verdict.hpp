#pragma once

#include <string>
#include <vector>

#include "bgeom/space.hpp"

namespace bgeom {

/// Outcome of a finite-level property test: pass iff defect <= threshold.
struct Verdict {
  bool pass = false;
  double defect = 0.0;
  double threshold = 0.0;
  /// False when a smooth ball was replaced by a polytope or by samples.
  bool exact = true;
  std::string detail;
  std::vector<Vec> witness;

  static Verdict from_defect(double defect, double threshold, bool exact = true) {
    Verdict v;
    v.defect = defect;
    v.threshold = threshold;
    v.pass = defect <= threshold;
    v.exact = exact;
    return v;
  }
};

}  // namespace bgeom
