#include "bsz/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace bsz::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line;
};

double to_double(const std::string& key, const Entry& e) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": expected a finite number, got '" +
                          e.value + "'",
                      e.line, key);
  }
  return v;
}

int to_int(const std::string& key, const Entry& e) {
  int v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": expected an integer, got '" +
                          e.value + "'",
                      e.line, key);
  }
  return v;
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& msg) {
  const std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
  throw ConfigError(where + key + ": " + msg, line, key);
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ConfigError("format: expected csv or json, got '" + name + "'", 0, "format");
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'", lineno, "");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key", lineno, "");
    if (entries.count(key)) fail(key, lineno, "duplicate key");
    entries[key] = {value, lineno};
  }

  RunConfig cfg;
  int tau_list_line = 0;
  for (const auto& [key, e] : entries) {
    if (key == "nu") {
      cfg.nu = to_double(key, e);
    } else if (key == "symbol.family") {
      cfg.symbol.family = e.value;
    } else if (key == "symbol.beta") {
      cfg.symbol.beta = to_double(key, e);
    } else if (key == "symbol.path") {
      cfg.symbol.path = e.value;
    } else if (key == "tau_list") {
      tau_list_line = e.line;
      std::stringstream ss(e.value);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.tau_list.push_back(to_double(key, {trim(item), e.line}));
    } else if (key == "tau") {
      cfg.tau = to_double(key, e);
      if (!(*cfg.tau > 0.0)) fail(key, e.line, "must be > 0");
    } else if (key == "det_tol") {
      cfg.det_tol = to_double(key, e);
      if (!(cfg.det_tol > 0.0)) fail(key, e.line, "must be > 0");
    } else if (key == "n0") {
      cfg.n0 = to_int(key, e);
    } else if (key == "n_max") {
      cfg.n_max = to_int(key, e);
    } else if (key == "resolution") {
      cfg.resolution = to_double(key, e);
      if (!(cfg.resolution >= 1.0)) fail(key, e.line, "must be >= 1");
    } else if (key == "output_path") {
      cfg.output_path = e.value;
    } else if (key == "format") {
      try {
        cfg.format = parse_format(e.value);
      } catch (const ConfigError&) {
        fail(key, e.line, "expected csv or json, got '" + e.value + "'");
      }
    } else {
      fail(key, e.line, "unknown key");
    }
  }

  if (!entries.count("nu")) fail("nu", 0, "missing");
  if (!(cfg.nu > -1.0)) fail("nu", entries["nu"].line, "must be > -1");
  if (cfg.symbol.family.empty()) fail("symbol.family", 0, "missing");
  static const char* const kFamilies[] = {"gaussian", "lorentzian", "hat", "indicator", "table"};
  bool known = false;
  for (const char* f : kFamilies) known = known || cfg.symbol.family == f;
  if (!known) {
    fail("symbol.family", entries["symbol.family"].line,
         "unknown family '" + cfg.symbol.family + "'");
  }
  if (cfg.symbol.family == "table" && cfg.symbol.path.empty()) fail("symbol.path", 0, "required for table symbols");
  if (cfg.tau_list.empty()) fail("tau_list", tau_list_line, "missing or empty");
  for (std::size_t i = 0; i < cfg.tau_list.size(); ++i) {
    if (!(cfg.tau_list[i] > 0.0)) fail("tau_list", tau_list_line, "values must be > 0");
    if (i > 0 && !(cfg.tau_list[i] > cfg.tau_list[i - 1])) {
      fail("tau_list", tau_list_line, "values must be strictly increasing");
    }
  }
  if (cfg.n0 < 8) fail("n0", entries.count("n0") ? entries["n0"].line : 0, "must be >= 8");
  if (cfg.n_max < 2 * cfg.n0) {
    fail("n_max", entries.count("n_max") ? entries["n_max"].line : 0, "must be >= 2 * n0");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0, "");
  return parse_config(in, path);
}

}  // namespace bsz::cli
