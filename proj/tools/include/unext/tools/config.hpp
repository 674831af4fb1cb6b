#pragma once

// Plain key=value configuration files for sweeps. Blank lines and lines
// starting with '#' are ignored; keys match the SweepConfig field names.

#include <map>
#include <string>

#include "unext/tools/sweep.hpp"

namespace unext::tools {

/// Throws std::invalid_argument on unreadable files or malformed lines.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Sets one SweepConfig field from its textual value. Throws std::invalid_argument
/// for unknown keys or unparsable values.
void apply_sweep_setting(SweepConfig& config, const std::string& key, const std::string& value);

}  // namespace unext::tools
