#include "toml_lite.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "ilap/error.hpp"
#include "ilap/io.hpp"

namespace ilap::cli {

namespace {

struct Parser {
  const std::string& line;
  std::string where;
  std::size_t pos = 0;

  [[noreturn]] void error(const std::string& msg) const { fail(ErrorKind::Parse, where + ": " + msg); }

  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= line.size() || line[pos] == '#';
  }

  std::string key() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < line.size() &&
           (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '_' ||
            line[pos] == '-' || line[pos] == '.'))
      ++pos;
    if (start == pos) error("expected a key");
    return line.substr(start, pos - start);
  }

  TomlValue value() {
    skip_ws();
    if (pos >= line.size()) error("missing value");
    TomlValue v;
    const char c = line[pos];
    if (c == '"') {
      v.type = TomlValue::Type::String;
      ++pos;
      while (true) {
        if (pos >= line.size()) error("unterminated string");
        char ch = line[pos++];
        if (ch == '"') break;
        if (ch == '\\') {
          if (pos >= line.size()) error("bad escape");
          const char e = line[pos++];
          switch (e) {
            case 'n': ch = '\n'; break;
            case 't': ch = '\t'; break;
            case '"': ch = '"'; break;
            case '\\': ch = '\\'; break;
            default: error(std::string("unsupported escape \\") + e);
          }
        }
        v.string.push_back(ch);
      }
      return v;
    }
    if (c == '[') {
      v.type = TomlValue::Type::Array;
      ++pos;
      skip_ws();
      if (pos < line.size() && line[pos] == ']') {
        ++pos;
        return v;
      }
      while (true) {
        v.array.push_back(value());
        skip_ws();
        if (pos >= line.size()) error("unterminated array");
        if (line[pos] == ',') {
          ++pos;
          skip_ws();
          if (pos < line.size() && line[pos] == ']') {
            ++pos;
            return v;
          }
          continue;
        }
        if (line[pos] == ']') {
          ++pos;
          return v;
        }
        error("expected ',' or ']' in array");
      }
    }
    if (line.compare(pos, 4, "true") == 0) {
      pos += 4;
      v.type = TomlValue::Type::Bool;
      v.boolean = true;
      return v;
    }
    if (line.compare(pos, 5, "false") == 0) {
      pos += 5;
      v.type = TomlValue::Type::Bool;
      return v;
    }
    const std::size_t start = pos;
    while (pos < line.size() && (std::isalnum(static_cast<unsigned char>(line[pos])) ||
                                 line[pos] == '.' || line[pos] == '-' || line[pos] == '+' ||
                                 line[pos] == '_'))
      ++pos;
    std::string text = line.substr(start, pos - start);
    std::erase(text, '_');
    char* end = nullptr;
    v.number = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) error("bad value '" + text + "'");
    return v;
  }
};

}  // namespace

TomlTable parse_toml(const std::string& text, const std::string& source) {
  TomlTable table;
  std::istringstream in(text);
  std::string line, prefix;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Parser p{line, source + ":" + std::to_string(lineno)};
    if (p.at_end()) continue;
    if (line[p.pos] == '[') {
      ++p.pos;
      const std::string name = p.key();
      p.skip_ws();
      if (p.pos >= line.size() || line[p.pos] != ']') p.error("expected ']'");
      ++p.pos;
      if (!p.at_end()) p.error("trailing characters after table header");
      prefix = name + ".";
      continue;
    }
    const std::string key = prefix + p.key();
    p.skip_ws();
    if (p.pos >= line.size() || line[p.pos] != '=') p.error("expected '='");
    ++p.pos;
    TomlValue v = p.value();
    if (!p.at_end()) p.error("trailing characters after value");
    if (!table.emplace(key, std::move(v)).second) p.error("duplicate key '" + key + "'");
  }
  return table;
}

TomlTable read_toml(const std::string& path) { return parse_toml(io::read_file(path), path); }

}  // namespace ilap::cli
