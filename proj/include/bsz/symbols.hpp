#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bsz {

using RealFn = std::function<double(double)>;

/// How a symbol behaves beyond its support cutoff.
enum class TailKind {
  compact,    ///< identically zero beyond the cutoff
  rapid,      ///< negligible (below 1e-14 of the scale) beyond the cutoff
  algebraic,  ///< decays like an inverse power; tails need explicit treatment
};

/// Decay of x b^(x)^2, used to place the upper limit of weighted integrals.
struct TransformDecay {
  enum class Kind { rapid, algebraic, unknown };
  Kind kind = Kind::unknown;
  /// rapid: negligible beyond this point. algebraic: start of the tail regime.
  double cutoff = 0.0;
  /// algebraic: period in x of the oscillation of x b^(x)^2, 0 if none is known.
  double period = 0.0;
};

/// Real function on [0, inf), implicitly extended evenly to the line.
///
/// Immutable once built; copies share the evaluators.
class Symbol {
 public:
  struct Parts {
    std::string name;
    RealFn eval;
    RealFn d1;  ///< optional, one-sided at breakpoints
    RealFn d2;
    std::vector<double> breakpoints;  ///< starts at 0, strictly increasing
    double support_cutoff = 0.0;
    TailKind tail = TailKind::compact;
    RealFn analytic_cosine_transform;  ///< optional x -> b^(x)
    std::optional<double> integral;    ///< optional integral over [0, inf)
    TransformDecay transform_decay;
    double scale = 0.0;  ///< sup |b|, for relative thresholds
  };

  /// Validates the parts: breakpoints sorted, cutoff finite, eval present.
  explicit Symbol(Parts parts);

  double operator()(double t) const { return parts_->eval(t); }
  const std::string& name() const { return parts_->name; }
  bool has_derivatives() const { return bool(parts_->d1) && bool(parts_->d2); }
  double d1(double t) const;
  double d2(double t) const;
  const std::vector<double>& breakpoints() const { return parts_->breakpoints; }
  double support_cutoff() const { return parts_->support_cutoff; }
  TailKind tail() const { return parts_->tail; }
  bool has_analytic_transform() const { return bool(parts_->analytic_cosine_transform); }
  double analytic_transform(double x) const;
  std::optional<double> known_integral() const { return parts_->integral; }
  const TransformDecay& transform_decay() const { return parts_->transform_decay; }
  double scale() const { return parts_->scale; }
  /// True when b vanishes identically.
  bool is_zero() const { return parts_->scale == 0.0; }

 private:
  std::shared_ptr<const Parts> parts_;
};

/// Named family plus parameters, as read from a config file.
struct SymbolSpec {
  std::string family;  ///< gaussian, lorentzian, hat, indicator, table
  double beta = 1.0;
  std::string path;  ///< table only
};

Symbol build_symbol(const SymbolSpec& spec);

/// Natural cubic spline through (t_i, b_i), zero beyond the last knot. The
/// first knot must be 0.
Symbol table_symbol(const std::vector<double>& t, const std::vector<double>& b,
                    std::string name = "table");

/// Reads two numeric columns (t, b(t)); '#' starts a comment line.
Symbol load_table_symbol(const std::string& path);

/// (1/pi) int_0^inf cos(x t) b(t) dt, through the analytic form when attached.
double cosine_transform(const Symbol& sym, double x);

/// The quadrature path, even when an analytic form exists.
double cosine_transform_numeric(const Symbol& sym, double x);

/// (1/pi) int_0^inf sin(x t) b(t) dt by quadrature.
double sine_transform(const Symbol& sym, double x);

/// int_0^inf b(t) dt, analytic when known.
double symbol_integral(const Symbol& sym);

/// a = e^b - 1, inheriting breakpoints and decay.
Symbol exp_symbol(const Symbol& b);

/// c1 * b1 + c2 * b2.
Symbol linear_combination(double c1, const Symbol& b1, double c2, const Symbol& b2);

enum class Check { yes, no, unknown };

struct HypothesisReport {
  Check continuous = Check::unknown;
  Check piecewise_c2 = Check::unknown;
  Check vanishes_at_infinity = Check::unknown;
  Check weighted_d1_integrable = Check::unknown;
  Check d2_integrable = Check::unknown;

  bool overall() const;
};

/// Numerical check of the smoothness and decay conditions on b.
HypothesisReport validate_hypotheses(const Symbol& sym);

std::string to_string(Check c);

}  // namespace bsz
