#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chevmod {

/// Raised when an enumeration or linear-algebra size guard is exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a verification procedure is invoked outside its domain of
/// validity (for instance a defining-characteristic procedure with l != p).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Case counts and diagnostics accumulated by a verification sweep.
struct CheckReport {
  std::size_t total = 0;
  std::size_t vacuous = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;
  std::vector<std::pair<std::string, std::string>> notes;

  static constexpr std::size_t kMaxFailureMessages = 25;

  std::size_t checked() const { return total - vacuous; }
  bool ok() const { return failed == 0; }

  template <typename Describe>
  bool record(bool pass, Describe&& describe) {
    ++total;
    if (!pass) {
      ++failed;
      if (failures.size() < kMaxFailureMessages) failures.push_back(describe());
    }
    return pass;
  }
  bool record(bool pass, const char* what) {
    return record(pass, [&] { return std::string(what); });
  }

  void skip() {
    ++total;
    ++vacuous;
  }

  void note(std::string key, std::string value) { notes.emplace_back(std::move(key), std::move(value)); }

  void absorb(const CheckReport& other) {
    total += other.total;
    vacuous += other.vacuous;
    failed += other.failed;
    for (const auto& f : other.failures) {
      if (failures.size() < kMaxFailureMessages) failures.push_back(f);
    }
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }
};

}  // namespace chevmod
