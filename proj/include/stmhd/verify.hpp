#pragma once

#include <functional>
#include <string>

namespace stmhd {

/// Runs a fast battery of oracle and invariant checks on small instances and
/// reports one "PASS name: detail" or "FAIL name: detail" line per check.
/// Returns the number of failed checks.
int run_verification(const std::function<void(const std::string&)>& report);

}  // namespace stmhd
