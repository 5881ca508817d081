#pragma once

#include <string>
#include <vector>

namespace drinfeld {

struct GoldenCheck {
  std::string group;
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

// Worked examples with closed-form expected values, evaluated at one q.
// Tree and Hecke items need a prime of degree 3 and run for every q; the
// heavier ones (Eisenstein index, deg-3 Hecke identities) only for q <= 3.
std::vector<GoldenCheck> paper_examples(unsigned q, int jobs = 1);

}  // namespace drinfeld
