#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iazf::cli {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Runs one command; `args` excludes the program name. Documents go to `out`
/// (or the --output file), diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iazf::cli
