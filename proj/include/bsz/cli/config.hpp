#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsz/symbols.hpp"

namespace bsz::cli {

/// Bad configuration, with the offending line (0 if not line-specific) and key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line, std::string field)
      : std::runtime_error(what), line_(line), field_(std::move(field)) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class Format { csv, json };

struct RunConfig {
  double nu = 0.0;
  SymbolSpec symbol;
  std::vector<double> tau_list;
  std::optional<double> tau;  ///< single-record subcommands; defaults to tau_list[0]
  double det_tol = 1e-8;
  int n0 = 16;
  int n_max = 1024;
  double resolution = 2.0;
  std::string output_path;
  Format format = Format::csv;

  double single_tau() const { return tau ? *tau : tau_list.front(); }
};

/// Parses `key = value` lines; '#' starts a comment. Throws ConfigError.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

Format parse_format(const std::string& name);

}  // namespace bsz::cli
