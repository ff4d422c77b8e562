#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zdl/double_array.hpp"
#include "zdl/types.hpp"

namespace zdl::cli {

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitViolation = 3;

/// Parses "a", "bi", "a+bi", "a-bi" with optional signs and decimal or
/// exponent forms ("2", "-i", "0.5+14.1347i", "1e-3-2.5e1i").
/// Throws zdl::Error(invalid_argument) on anything else.
ComplexPoint parse_complex(std::string_view text);

/// "a/b" or a bare integer "a". Throws zdl::Error(invalid_argument).
Aspect parse_aspect(std::string_view text);

/// Runs one subcommand. args excludes the program name. Report output goes
/// to out (or to --out); errors go to err as JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zdl::cli
