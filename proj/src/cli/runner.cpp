#include "bsz/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <json.hpp>
#include <ostream>

#include "bsz/asympt.hpp"
#include "bsz/bessel_op.hpp"
#include "bsz/errors.hpp"
#include "bsz/fredholm.hpp"
#include "bsz/specfun.hpp"
#include "bsz/symbols.hpp"
#include "bsz/wh_op.hpp"

namespace bsz::cli {
namespace {

DetOptions det_options(const RunConfig& cfg) {
  DetOptions o;
  o.tol = cfg.det_tol;
  o.n0 = cfg.n0;
  o.n_max = cfg.n_max;
  o.resolution = cfg.resolution;
  return o;
}

template <class Row, class Fn>
std::vector<Row> sweep(const std::vector<double>& taus, Fn fn) {
  std::vector<std::future<Row>> jobs;
  jobs.reserve(taus.size());
  for (double tau : taus) jobs.push_back(std::async(std::launch::async, fn, tau));
  std::vector<Row> rows;
  rows.reserve(taus.size());
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // no "-0"
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Residual {
  std::string name;
  double worst = 0.0;
  double threshold = 0.0;
};

// Identity residuals of the Bessel evaluator.
std::vector<Residual> specfun_suite() {
  const double nus[] = {-0.9, -0.5, 0.0, 0.5, 1.0, 2.5};
  Residual rec{"recurrence_relative", 0.0, 1e-10};
  Residual int1{"indefinite_integral_diagonal", 0.0, 1e-6};
  Residual int2{"indefinite_integral_offdiagonal", 0.0, 1e-6};
  Residual env{"envelope_deviation_times_z", 0.0, 10.0};
  for (double nu : nus) {
    const BesselOrder o(nu);
    const BesselOrder o1(nu + 1.0);
    const BesselOrder o2(nu + 2.0);
    for (int k = 0; k <= 200; ++k) {
      const double x = 0.01 * std::pow(5e4, k / 200.0);
      const double a = bessel_j(o, x);
      const double b = bessel_j(o2, x);
      const double c = 2.0 * (nu + 1.0) / x * bessel_j(o1, x);
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
      rec.worst = std::max(rec.worst, std::abs(a + b - c) / scale);
    }
    const double h = 1e-5;
    for (double t : {0.5, 1.0, 2.0}) {
      for (double x : {0.7, 1.3, 3.1}) {
        const auto r1 = [&](double s) {
          const BesselPair p = bessel_pair(o, s * x);
          return 0.5 * s * s *
                 (p.j * p.j + p.j_next * p.j_next - 2.0 * nu / (s * x) * p.j * p.j_next);
        };
        const double jv = bessel_j(o, t * x);
        int1.worst = std::max(int1.worst, std::abs((r1(t + h) - r1(t - h)) / (2 * h) - t * jv * jv));
        for (double y : {0.4, 2.2}) {
          const auto r2 = [&](double s) {
            const BesselPair px = bessel_pair(o, s * x);
            const BesselPair py = bessel_pair(o, s * y);
            return (s * x * px.j_next * py.j - s * y * px.j * py.j_next) / (x * x - y * y);
          };
          const double target = t * jv * bessel_j(o, t * y);
          int2.worst = std::max(int2.worst, std::abs((r2(t + h) - r2(t - h)) / (2 * h) - target));
        }
      }
    }
    for (int k = 0; k <= 300; ++k) {
      const double z = std::pow(1e3, k / 300.0);
      env.worst = std::max(env.worst, std::abs(envelope_deviation(o, z)) * z);
    }
  }
  return {rec, int1, int2, env};
}

}  // namespace

std::vector<VerifyRow> run_verify(const RunConfig& cfg) {
  const BesselOrder order(cfg.nu);
  const Symbol b = build_symbol(cfg.symbol);
  const Prediction pred = predict(order, b, cfg.tau_list.front());
  const DetOptions opts = det_options(cfg);
  return sweep<VerifyRow>(cfg.tau_list, [&](double tau) {
    const DeterminantResult det = symbol_logdet(order, b, tau, opts);
    VerifyRow row;
    row.tau = tau;
    row.n_final = det.n_final;
    row.logdet = det.logdet;
    row.trace = trace_truncated(order, b, tau);
    row.log_prediction = pred.log_value(tau);
    row.residual = det.logdet - tau * pred.linear_coeff - pred.order_term;
    row.gap = std::abs(row.residual - pred.e_term);
    row.converged = det.converged && det.sign > 0;
    return row;
  });
}

std::vector<CrossRow> run_crosscheck(const RunConfig& cfg) {
  const BesselOrder order(cfg.nu);
  const WHSign sign = WHSign::for_order(order);
  const Symbol a = exp_symbol(build_symbol(cfg.symbol));
  const DetOptions opts = det_options(cfg);
  return sweep<CrossRow>(cfg.tau_list, [&](double tau) {
    const DeterminantResult bessel = converged_logdet(
        [&](int n) { return assemble(order, a, tau, n, opts.resolution); }, opts.tol, opts.n0,
        opts.n_max);
    const DeterminantResult wh = converged_logdet(
        [&](int n) { return assemble_wh(a, sign, tau, n, opts.resolution); }, opts.tol, opts.n0,
        opts.n_max);
    CrossRow row;
    row.tau = tau;
    row.logdet_bessel = bessel.logdet;
    row.logdet_wh = wh.logdet;
    row.difference = std::abs(bessel.logdet - wh.logdet);
    row.pass = bessel.converged && wh.converged && row.difference <= 10.0 * cfg.det_tol;
    return row;
  });
}

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out << ',';
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) {
                out << format_double(v);
              } else if constexpr (std::is_same_v<T, bool>) {
                out << (v ? "true" : "false");
              } else {
                out << v;
              }
            },
            row[c]);
      }
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              // JSON has no inf/nan
              if (std::isfinite(v)) {
                obj[table.columns[c]] = v == 0.0 ? 0.0 : v;
              } else {
                obj[table.columns[c]] = nullptr;
              }
            } else {
              obj[table.columns[c]] = v;
            }
          },
          row[c]);
    }
    doc.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
  try {
    Table table;
    int status = 0;
    if (command == "verify") {
      table.columns = {"tau", "n_final", "logdet", "trace", "log_prediction", "residual", "gap",
                       "converged"};
      for (const VerifyRow& r : run_verify(cfg)) {
        table.rows.push_back({r.tau, r.n_final, r.logdet, r.trace, r.log_prediction, r.residual,
                              r.gap, r.converged});
        if (!r.converged) status = 1;
      }
    } else if (command == "crosscheck") {
      if (cfg.nu != -0.5 && cfg.nu != 0.5) {
        err << "crosscheck: nu must be -0.5 or 0.5, got " << format_double(cfg.nu) << '\n';
        return 2;
      }
      table.columns = {"tau", "logdet_bessel", "logdet_wh", "difference", "pass"};
      for (const CrossRow& r : run_crosscheck(cfg)) {
        table.rows.push_back({r.tau, r.logdet_bessel, r.logdet_wh, r.difference, r.pass});
        if (!r.pass) status = 1;
      }
    } else if (command == "det") {
      const BesselOrder order(cfg.nu);
      const Symbol b = build_symbol(cfg.symbol);
      const double tau = cfg.single_tau();
      const DeterminantResult d = symbol_logdet(order, b, tau, det_options(cfg));
      table.columns = {"tau", "n_final", "logdet", "sign", "est_error", "converged"};
      table.rows.push_back({tau, d.n_final, d.logdet, d.sign, d.est_error, d.converged});
      if (!d.converged) status = 1;
    } else if (command == "predict") {
      const BesselOrder order(cfg.nu);
      const Symbol b = build_symbol(cfg.symbol);
      const Prediction p = predict(order, b, cfg.single_tau());
      for (const auto& w : p.warnings) err << "warning: " << w << '\n';
      table.columns = {"tau", "linear_coeff", "order_term", "e_term", "log_value"};
      table.rows.push_back({p.tau, p.linear_coeff, p.order_term, p.e_term, p.log_value()});
    } else if (command == "trace") {
      const BesselOrder order(cfg.nu);
      const Symbol b = build_symbol(cfg.symbol);
      const double tau = cfg.single_tau();
      const double tr = trace_truncated(order, b, tau);
      const double asym = trace_asymptote(order, b, tau);
      table.columns = {"tau", "trace", "asymptote", "difference"};
      table.rows.push_back({tau, tr, asym, tr - asym});
    } else if (command == "specfun-selftest") {
      table.columns = {"check", "worst", "threshold", "pass"};
      for (const Residual& r : specfun_suite()) {
        const bool pass = r.worst <= r.threshold;
        table.rows.push_back({r.name, r.worst, r.threshold, pass});
        if (!pass) status = 1;
      }
    } else {
      err << "unknown command '" << command << "'\n";
      return 2;
    }
    write_table(table, cfg.format, out);
    return status;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace bsz::cli
