#ifndef GAQ_TESTS_TALLY_HPP
#define GAQ_TESTS_TALLY_HPP

#include <string>

namespace gaq::test {

/// Counts cases and keeps the first failure message.
struct Tally {
  std::string name;
  int required = 100;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  bool clean() const { return failures == 0 && cases >= required; }
};

}  // namespace gaq::test

#endif  // GAQ_TESTS_TALLY_HPP
