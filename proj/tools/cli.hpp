#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "fqreg/fpca.hpp"

namespace fqreg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 2;
inline constexpr int kExitUsage = 64;

/// Runs `fqreg <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Curves CSV for the `test` subcommand: one row per observation, m value
/// columns then the response. An optional header row must end in `y`. Values
/// are taken to lie on the uniform grid over [0, 1].
FunctionalDataset parse_curves_csv(std::istream& in);

}  // namespace fqreg::cli
