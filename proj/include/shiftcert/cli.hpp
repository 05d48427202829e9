#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shiftcert {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSeedEnv = "SHIFTCERT_SEED";
inline constexpr unsigned long long kDefaultSeed = 42;

// Command-line entry point; `args` excludes the program name. Reports go to
// `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftcert
