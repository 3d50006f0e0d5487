// cli.hpp — Batch frontend: config parsing, dispatch to protocols/sweeps, CSV/JSON emission
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace entxfer::cli {

inline constexpr const char* kVersion = "entxfer 0.1.0";

// Merged run configuration: command plus named string values
// (defaults < config file < explicit flags).
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> values;
};

// Parses `key = value` lines; '#' starts a comment. Keys use flag spelling without dashes.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Exit codes: 0 success, 1 numerical/diagnostic failure (recorded in the manifest),
// 2 usage error. stderr carries a one-line cause on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace entxfer::cli
