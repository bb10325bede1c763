#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace umbral::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Overrides the default truncation order; --order and a workspace file
/// take precedence.
inline constexpr const char* kOrderEnv = "UMBRAL_ORDER";

/// Runs one command line (args[0] is the program name). Documents go to
/// `out`, structured errors to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Aligned plain-text rendering of a result document.
void write_text(const nlohmann::json& doc, std::ostream& out);

}  // namespace umbral::cli
