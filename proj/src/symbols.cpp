#include "bsz/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bsz/errors.hpp"
#include "bsz/quadrature.hpp"

namespace bsz {
namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw DomainError(what + " must be finite");
}

// Panels over [0, cutoff] honoring breakpoints, width at most min(1, pi/freq).
PanelScheme symbol_panels(const Symbol& sym, double frequency, int points = 20) {
  PanelScheme scheme;
  scheme.breakpoints = sym.breakpoints();
  scheme.points_per_panel = points;
  scheme.oscillation_frequency = std::max(frequency, kPi);
  return scheme;
}

double transform_numeric(const Symbol& sym, double x, bool sine) {
  x = std::abs(x);
  if (sym.is_zero()) return 0.0;
  if (sine && x == 0.0) return 0.0;
  const auto kernel = [&](double t) { return sine ? std::sin(x * t) : std::cos(x * t); };
  const double T = sym.support_cutoff();
  double sum = integrate([&](double t) { return kernel(t) * sym(t); }, 0.0, T,
                         symbol_panels(sym, x));
  if (sym.tail() == TailKind::algebraic) {
    if (x > 0.0) {
      sum += integrate_oscillatory_tail([&](double t) { return kernel(t) * sym(t); }, x, T,
                                        1e-14 * sym.scale());
    } else {
      sum += integrate_decaying_tail([&](double t) { return sym(t); }, T);
    }
  }
  return sum / kPi;
}

// The cosine transform of a cubic p(s), s = t - t0, over [t0, t0 + h].
double cubic_cosine_piece(double x, double t0, double h, double c0, double c1, double c2,
                          double c3) {
  const auto p = [&](double s) { return c0 + s * (c1 + s * (c2 + s * c3)); };
  if (x * h < 1.0) {
    const QuadRule& rule = gauss_legendre(16);
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double s = 0.5 * h * (1.0 + rule.nodes[j]);
      sum += rule.weights[j] * std::cos(x * (t0 + s)) * p(s);
    }
    return 0.5 * h * sum;
  }
  const auto antideriv = [&](double s) {
    const double t = t0 + s;
    const double d1 = c1 + s * (2.0 * c2 + 3.0 * c3 * s);
    const double d2 = 2.0 * c2 + 6.0 * c3 * s;
    const double d3 = 6.0 * c3;
    const double sn = std::sin(x * t);
    const double cs = std::cos(x * t);
    return p(s) * sn / x + d1 * cs / (x * x) - d2 * sn / (x * x * x) -
           d3 * cs / (x * x * x * x);
  };
  return antideriv(h) - antideriv(0.0);
}

Check integrable_with_decay(const Symbol& sym, const RealFn& f) {
  const double T = sym.support_cutoff();
  try {
    const double head = integrate([&](double t) { return std::abs(f(t)); }, 0.0, T,
                                  symbol_panels(sym, 0.0, 12));
    if (!std::isfinite(head)) return Check::no;
    if (sym.tail() == TailKind::compact) return Check::yes;
    // integrable tail: t |f(t)| must fall off toward zero
    double previous = std::numeric_limits<double>::infinity();
    for (double t = 1e3 * std::max(1.0, T); t <= 1e7 * std::max(1.0, T); t *= 10.0) {
      const double v = t * std::abs(f(t));
      if (!std::isfinite(v) || v > previous * 1.01 + 1e-300) return Check::no;
      previous = v;
    }
    return previous <= 1e-6 * std::max(1.0, sym.scale()) ? Check::yes : Check::no;
  } catch (const NonFiniteError&) {
    return Check::no;
  }
}

}  // namespace

Symbol::Symbol(Parts parts) : parts_(std::make_shared<const Parts>(std::move(parts))) {
  if (!parts_->eval) throw DomainError("symbol needs an evaluator");
  const auto& bp = parts_->breakpoints;
  if (bp.empty() || bp.front() != 0.0) throw DomainError("symbol breakpoints must start at 0");
  for (std::size_t i = 1; i < bp.size(); ++i) {
    if (!(bp[i] > bp[i - 1])) throw DomainError("symbol breakpoints must be increasing");
  }
  if (!(parts_->support_cutoff > 0.0) || !std::isfinite(parts_->support_cutoff)) {
    throw DomainError("symbol support cutoff must be finite and > 0");
  }
  if (!std::isfinite(parts_->scale) || parts_->scale < 0.0) {
    throw DomainError("symbol scale must be finite and >= 0");
  }
}

double Symbol::d1(double t) const {
  if (!parts_->d1) throw DomainError("symbol " + name() + " has no first derivative");
  return parts_->d1(t);
}

double Symbol::d2(double t) const {
  if (!parts_->d2) throw DomainError("symbol " + name() + " has no second derivative");
  return parts_->d2(t);
}

double Symbol::analytic_transform(double x) const {
  if (!parts_->analytic_cosine_transform) {
    throw DomainError("symbol " + name() + " has no analytic transform");
  }
  return parts_->analytic_cosine_transform(std::abs(x));
}

Symbol build_symbol(const SymbolSpec& spec) {
  const double beta = spec.beta;
  require_finite(beta, "symbol.beta");
  Symbol::Parts p;
  p.name = spec.family;
  p.scale = std::abs(beta);
  p.breakpoints = {0.0};
  if (spec.family == "gaussian") {
    p.eval = [beta](double t) { return beta * std::exp(-t * t); };
    p.d1 = [beta](double t) { return -2.0 * beta * t * std::exp(-t * t); };
    p.d2 = [beta](double t) { return beta * (4.0 * t * t - 2.0) * std::exp(-t * t); };
    // exp(-T^2) (1 + T) < 1e-16
    p.support_cutoff = 6.5;
    p.tail = TailKind::rapid;
    p.analytic_cosine_transform = [beta](double x) {
      return beta / (2.0 * std::sqrt(kPi)) * std::exp(-0.25 * x * x);
    };
    p.integral = beta * std::sqrt(kPi) / 2.0;
    p.transform_decay = {TransformDecay::Kind::rapid, 16.0, 0.0};
  } else if (spec.family == "lorentzian") {
    p.eval = [beta](double t) { return beta / (1.0 + t * t); };
    p.d1 = [beta](double t) {
      const double q = 1.0 + t * t;
      return -2.0 * beta * t / (q * q);
    };
    p.d2 = [beta](double t) {
      const double q = 1.0 + t * t;
      return beta * (6.0 * t * t - 2.0) / (q * q * q);
    };
    p.support_cutoff = 10.0;
    p.tail = TailKind::algebraic;
    p.analytic_cosine_transform = [beta](double x) { return 0.5 * beta * std::exp(-x); };
    p.integral = beta * kPi / 2.0;
    p.transform_decay = {TransformDecay::Kind::rapid, 40.0, 0.0};
  } else if (spec.family == "hat") {
    p.eval = [beta](double t) { return t < 1.0 ? beta * (1.0 - t) : 0.0; };
    p.d1 = [beta](double t) { return t < 1.0 ? -beta : 0.0; };
    p.d2 = [](double) { return 0.0; };
    p.breakpoints = {0.0, 1.0};
    p.support_cutoff = 1.0;
    p.tail = TailKind::compact;
    p.analytic_cosine_transform = [beta](double x) {
      if (x < 1e-4) return beta / (2.0 * kPi) * (1.0 - x * x / 12.0);
      const double s = std::sin(0.5 * x);
      return beta * 2.0 * s * s / (kPi * x * x);
    };
    p.integral = beta / 2.0;
    p.transform_decay = {TransformDecay::Kind::algebraic, 8.0 * kPi, 2.0 * kPi};
  } else if (spec.family == "indicator") {
    p.eval = [beta](double t) { return t <= 1.0 ? beta : 0.0; };
    p.d1 = [](double) { return 0.0; };
    p.d2 = [](double) { return 0.0; };
    p.breakpoints = {0.0, 1.0};
    p.support_cutoff = 1.0;
    p.tail = TailKind::compact;
    p.analytic_cosine_transform = [beta](double x) {
      if (x < 1e-4) return beta / kPi * (1.0 - x * x / 6.0);
      return beta / kPi * std::sin(x) / x;
    };
    p.integral = beta;
    p.transform_decay = {TransformDecay::Kind::algebraic, 8.0 * kPi, kPi};
  } else if (spec.family == "table") {
    Symbol base = load_table_symbol(spec.path);
    if (beta == 1.0) return base;
    return linear_combination(beta, base, 0.0, base);
  } else {
    throw DomainError("unknown symbol family '" + spec.family + "'");
  }
  return Symbol(std::move(p));
}

Symbol table_symbol(const std::vector<double>& t, const std::vector<double>& b, std::string name) {
  const std::size_t n = t.size();
  if (n < 2 || b.size() != n) throw DomainError("table symbol needs at least two (t, b) rows");
  if (t.front() != 0.0) throw DomainError("table symbol must start at t = 0");
  for (std::size_t i = 0; i < n; ++i) {
    require_finite(t[i], "table t");
    require_finite(b[i], "table b");
    if (i > 0 && !(t[i] > t[i - 1])) throw DomainError("table t values must be strictly increasing");
  }

  // natural spline second derivatives by the Thomas algorithm
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    std::vector<double> diag(n - 2), rhs(n - 2), upper(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = t[i] - t[i - 1];
      const double h1 = t[i + 1] - t[i];
      diag[i - 1] = (h0 + h1) / 3.0;
      upper[i - 1] = h1 / 6.0;
      rhs[i - 1] = (b[i + 1] - b[i]) / h1 - (b[i] - b[i - 1]) / h0;
    }
    for (std::size_t i = 1; i < n - 2; ++i) {
      const double lower = (t[i + 1] - t[i]) / 6.0;
      const double w = lower / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m[n - 2] = rhs[n - 3] / diag[n - 3];
    for (std::size_t i = n - 3; i-- > 0;) {
      m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
    }
  }

  struct Piece {
    double t0, h, c0, c1, c2, c3;
  };
  auto pieces = std::make_shared<std::vector<Piece>>();
  double integral = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = t[i + 1] - t[i];
    const double c1 = (b[i + 1] - b[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
    pieces->push_back({t[i], h, b[i], c1, 0.5 * m[i], (m[i + 1] - m[i]) / (6.0 * h)});
    integral += 0.5 * h * (b[i] + b[i + 1]) - h * h * h * (m[i] + m[i + 1]) / 24.0;
  }
  auto knots = std::make_shared<std::vector<double>>(t);
  const auto locate = [knots](double x) -> std::ptrdiff_t {
    if (x < 0.0 || x >= knots->back()) return -1;
    return std::upper_bound(knots->begin(), knots->end(), x) - knots->begin() - 1;
  };

  Symbol::Parts p;
  p.name = std::move(name);
  p.eval = [pieces, locate](double x) {
    const auto i = locate(x);
    if (i < 0) return 0.0;
    const Piece& q = (*pieces)[i];
    const double s = x - q.t0;
    return q.c0 + s * (q.c1 + s * (q.c2 + s * q.c3));
  };
  p.d1 = [pieces, locate](double x) {
    const auto i = locate(x);
    if (i < 0) return 0.0;
    const Piece& q = (*pieces)[i];
    const double s = x - q.t0;
    return q.c1 + s * (2.0 * q.c2 + 3.0 * q.c3 * s);
  };
  p.d2 = [pieces, locate](double x) {
    const auto i = locate(x);
    if (i < 0) return 0.0;
    const Piece& q = (*pieces)[i];
    return 2.0 * q.c2 + 6.0 * q.c3 * (x - q.t0);
  };
  p.breakpoints = t;
  p.support_cutoff = t.back();
  p.tail = TailKind::compact;
  p.analytic_cosine_transform = [pieces](double x) {
    double sum = 0.0;
    for (const Piece& q : *pieces) sum += cubic_cosine_piece(x, q.t0, q.h, q.c0, q.c1, q.c2, q.c3);
    return sum / kPi;
  };
  p.integral = integral;
  p.transform_decay = {TransformDecay::Kind::unknown, 0.0, 0.0};
  // sup of the spline, sampled densely on each piece
  for (const Piece& q : *pieces) {
    for (int k = 0; k <= 16; ++k) {
      const double s = q.h * k / 16.0;
      scale = std::max(scale, std::abs(q.c0 + s * (q.c1 + s * (q.c2 + s * q.c3))));
    }
  }
  p.scale = scale;
  return Symbol(std::move(p));
}

Symbol load_table_symbol(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open table file '" + path + "'");
  std::vector<double> t, b;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double tv = 0.0, bv = 0.0;
    if (!(row >> tv >> bv)) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    t.push_back(tv);
    b.push_back(bv);
  }
  return table_symbol(t, b, "table:" + path);
}

double cosine_transform(const Symbol& sym, double x) {
  if (sym.is_zero()) return 0.0;
  if (sym.has_analytic_transform()) return sym.analytic_transform(x);
  return transform_numeric(sym, x, false);
}

double cosine_transform_numeric(const Symbol& sym, double x) {
  return transform_numeric(sym, x, false);
}

double sine_transform(const Symbol& sym, double x) {
  const double sign = x < 0.0 ? -1.0 : 1.0;
  return sign * transform_numeric(sym, x, true);
}

double symbol_integral(const Symbol& sym) {
  if (sym.known_integral()) return *sym.known_integral();
  return kPi * transform_numeric(sym, 0.0, false);
}

Symbol exp_symbol(const Symbol& b) {
  Symbol::Parts p;
  p.name = "exp(" + b.name() + ")-1";
  p.eval = [b](double t) { return std::expm1(b(t)); };
  if (b.has_derivatives()) {
    p.d1 = [b](double t) { return std::exp(b(t)) * b.d1(t); };
    p.d2 = [b](double t) {
      const double g = b.d1(t);
      return std::exp(b(t)) * (b.d2(t) + g * g);
    };
  }
  p.breakpoints = b.breakpoints();
  p.support_cutoff = b.support_cutoff();
  p.tail = b.tail();
  p.transform_decay = {TransformDecay::Kind::unknown, 0.0, 0.0};
  p.scale = std::expm1(b.scale());
  return Symbol(std::move(p));
}

Symbol linear_combination(double c1, const Symbol& b1, double c2, const Symbol& b2) {
  require_finite(c1, "coefficient");
  require_finite(c2, "coefficient");
  Symbol::Parts p;
  p.name = "lincomb(" + b1.name() + "," + b2.name() + ")";
  p.eval = [=](double t) { return c1 * b1(t) + c2 * b2(t); };
  if (b1.has_derivatives() && b2.has_derivatives()) {
    p.d1 = [=](double t) { return c1 * b1.d1(t) + c2 * b2.d1(t); };
    p.d2 = [=](double t) { return c1 * b1.d2(t) + c2 * b2.d2(t); };
  }
  std::vector<double> bp = b1.breakpoints();
  bp.insert(bp.end(), b2.breakpoints().begin(), b2.breakpoints().end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  p.breakpoints = std::move(bp);
  p.support_cutoff = std::max(b1.support_cutoff(), b2.support_cutoff());
  const auto rank = [](TailKind k) { return static_cast<int>(k); };
  p.tail = rank(b1.tail()) > rank(b2.tail()) ? b1.tail() : b2.tail();
  if (b1.has_analytic_transform() && b2.has_analytic_transform()) {
    p.analytic_cosine_transform = [=](double x) {
      return c1 * b1.analytic_transform(x) + c2 * b2.analytic_transform(x);
    };
  }
  if (b1.known_integral() && b2.known_integral()) {
    p.integral = c1 * *b1.known_integral() + c2 * *b2.known_integral();
  }
  const TransformDecay& d1 = b1.transform_decay();
  const TransformDecay& d2 = b2.transform_decay();
  if (d1.kind == d2.kind && d1.period == d2.period && d1.kind != TransformDecay::Kind::unknown) {
    p.transform_decay = {d1.kind, std::max(d1.cutoff, d2.cutoff), d1.period};
  } else if (c2 == 0.0) {
    p.transform_decay = d1;
  } else if (c1 == 0.0) {
    p.transform_decay = d2;
  }
  p.scale = std::abs(c1) * b1.scale() + std::abs(c2) * b2.scale();
  return Symbol(std::move(p));
}

bool HypothesisReport::overall() const {
  return continuous == Check::yes && piecewise_c2 == Check::yes &&
         vanishes_at_infinity == Check::yes && weighted_d1_integrable == Check::yes &&
         d2_integrable == Check::yes;
}

std::string to_string(Check c) {
  switch (c) {
    case Check::yes: return "yes";
    case Check::no: return "no";
    default: return "unknown";
  }
}

HypothesisReport validate_hypotheses(const Symbol& sym) {
  HypothesisReport r;
  const double scale = std::max(sym.scale(), 1e-300);
  const double T = sym.support_cutoff();

  std::vector<double> joints(sym.breakpoints().begin() + 1, sym.breakpoints().end());
  if (sym.tail() == TailKind::compact) joints.push_back(T);
  r.continuous = Check::yes;
  for (double bp : joints) {
    const double eps = 1e-9 * std::max(1.0, bp);
    if (std::abs(sym(bp + eps) - sym(bp - eps)) > 1e-6 * scale) r.continuous = Check::no;
    if (!std::isfinite(sym(bp))) r.continuous = Check::no;
  }

  if (sym.tail() == TailKind::compact) {
    r.vanishes_at_infinity = Check::yes;
  } else {
    const double far = sym(1e7 * std::max(1.0, T));
    r.vanishes_at_infinity = std::abs(far) <= 1e-6 * scale ? Check::yes : Check::no;
  }

  if (!sym.has_derivatives()) return r;

  // derivatives checked against central differences inside each smooth piece
  std::vector<double> cuts = sym.breakpoints();
  const double end = sym.tail() == TailKind::compact ? T : 4.0 * T;
  if (cuts.back() < end) cuts.push_back(end);
  r.piecewise_c2 = Check::yes;
  const QuadRule& rule = gauss_legendre(6);
  for (std::size_t i = 0; i + 1 < cuts.size() && r.piecewise_c2 == Check::yes; ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const int pieces = static_cast<int>(std::ceil(hi - lo));
    for (int k = 0; k < pieces; ++k) {
      const double a = lo + (hi - lo) * k / pieces;
      const double w = (hi - lo) / pieces;
      for (double u : rule.nodes) {
        const double t = a + 0.5 * w * (1.0 + u);
        const double h = std::min(1e-5 * std::max(1.0, t), 0.2 * std::min(t - lo, hi - t));
        const double g1 = sym.d1(t);
        const double g2 = sym.d2(t);
        const double fd1 = (sym(t + h) - sym(t - h)) / (2.0 * h);
        const double fd2 = (sym.d1(t + h) - sym.d1(t - h)) / (2.0 * h);
        const bool ok = std::isfinite(g1) && std::isfinite(g2) &&
                        std::abs(fd1 - g1) <= 1e-4 * (scale + std::abs(g1)) &&
                        std::abs(fd2 - g2) <= 1e-4 * (scale + std::abs(g2));
        if (!ok) r.piecewise_c2 = Check::no;
      }
    }
  }

  r.weighted_d1_integrable =
      integrable_with_decay(sym, [&](double t) { return sym.d1(t) / std::sqrt(1.0 + t); });
  r.d2_integrable = integrable_with_decay(sym, [&](double t) { return sym.d2(t); });
  return r;
}

}  // namespace bsz
