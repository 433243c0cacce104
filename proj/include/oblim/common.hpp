#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oblim {

// Error taxonomy maps onto process exit codes: ParseError -> 2 (malformed input),
// BudgetError -> 3 (resource refusal), CheckError -> 4 (internal invariant broke).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail_parse(const std::string& m) { throw ParseError(m); }
[[noreturn]] inline void fail_budget(const std::string& m) { throw BudgetError(m); }
[[noreturn]] inline void fail_check(const std::string& m) { throw CheckError(m); }

// Internal consistency assertion that stays on in release builds.
inline void require(bool cond, const char* msg) {
  if (!cond) throw CheckError(msg);
}

}  // namespace oblim
