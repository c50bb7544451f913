#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "bsz/cli/config.hpp"
#include "bsz/cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fredholm determinants of truncated Bessel operators"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format;
  app.add_option("command", command, "verify, det, predict, trace, crosscheck or specfun-selftest")
      ->required()
      ->check(CLI::IsMember({"verify", "det", "predict", "trace", "crosscheck", "specfun-selftest"}));
  app.add_option("--config", config_path, "key = value configuration file")->required();
  app.add_option("--out", out_path, "output file (default: output_path from the config, else stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  bsz::cli::RunConfig cfg;
  try {
    cfg = bsz::cli::load_config(config_path);
    if (!format.empty()) cfg.format = bsz::cli::parse_format(format);
  } catch (const bsz::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  if (!out_path.empty()) cfg.output_path = out_path;

  if (cfg.output_path.empty()) return bsz::cli::run_command(command, cfg, std::cout, std::cerr);
  std::ofstream out(cfg.output_path);
  if (!out) {
    std::cerr << "cannot write '" << cfg.output_path << "'\n";
    return 2;
  }
  return bsz::cli::run_command(command, cfg, out, std::cerr);
}
