#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "bsz/cli/config.hpp"

namespace bsz::cli {

struct VerifyRow {
  double tau = 0.0;
  int n_final = 0;
  double logdet = 0.0;
  double trace = 0.0;
  double log_prediction = 0.0;
  double residual = 0.0;  ///< logdet - tau b^(0) + (nu/2) b(0)
  double gap = 0.0;       ///< |residual - e_term|
  bool converged = false;
};

struct CrossRow {
  double tau = 0.0;
  double logdet_bessel = 0.0;
  double logdet_wh = 0.0;
  double difference = 0.0;
  bool pass = false;
};

/// One determinant per tau, run concurrently, returned in tau order.
std::vector<VerifyRow> run_verify(const RunConfig& cfg);

/// Bessel path against the Wiener-Hopf path; nu must be -1/2 or 1/2.
std::vector<CrossRow> run_crosscheck(const RunConfig& cfg);

using Cell = std::variant<double, int, bool, std::string>;

/// Column names plus rows, printed as CSV or a JSON array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_table(const Table& table, Format format, std::ostream& out);

/// Runs a subcommand and writes its records. Returns the process exit code:
/// 0 success, 1 numerical non-convergence, 2 configuration error. Error
/// messages go to err.
int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

}  // namespace bsz::cli
