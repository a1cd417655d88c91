#pragma once

#include <map>
#include <string>
#include <vector>

namespace ilap::cli {

/// Subset of TOML: key = value lines, [table] headers (keys become
/// "table.key"), basic strings, numbers, booleans, single-line arrays and
/// '#' comments.
struct TomlValue {
  enum class Type { Bool, Number, String, Array };
  Type type = Type::Number;
  bool boolean = false;
  double number = 0.0;
  std::string string;
  std::vector<TomlValue> array;
};

using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml(const std::string& text, const std::string& source = "<config>");
TomlTable read_toml(const std::string& path);

}  // namespace ilap::cli
