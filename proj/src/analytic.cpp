#include "epot/analytic.hpp"

#include "epot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace epot::analytic {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kSqueezingTolerance = 1e-12;
// "gamma t >> T" is read as gamma t >= T + 3 (correction terms below e^-3 ~ 5%).
constexpr double kWindowMargin = 3.0;
// The boundary laws carry O(e^{-gamma t / 2}) corrections.
constexpr double kBoundaryWindowStart = 6.0;
// Upper edge of the "gamma t << 1" intermediate window for large cats.
constexpr double kIntermediateUpper = 0.25;

void require_time(double gamma_t) {
  if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t))
    throw ValidationError("gamma*t must be finite and non-negative");
}

void require_alpha(double alpha_abs) {
  if (!(alpha_abs >= 0.0) || !std::isfinite(alpha_abs))
    throw ValidationError("|alpha| must be finite and non-negative");
}

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p must lie in [0, 1]");
}

double eval(const CubicCoefficients& c, double x) { return ((c.c3 * x + c.c2) * x + c.c1) * x + c.c0; }
double deriv(const CubicCoefficients& c, double x) { return (3.0 * c.c3 * x + 2.0 * c.c2) * x + c.c1; }

int sign_changes(std::initializer_list<double> coeffs) {
  int changes = 0;
  double last = 0.0;
  for (double v : coeffs) {
    if (v == 0.0) continue;
    if (last != 0.0 && (v > 0.0) != (last > 0.0)) ++changes;
    last = v;
  }
  return changes;
}

std::string describe_roots(const std::array<Complex, 3>& roots) {
  std::ostringstream os;
  os.precision(17);
  os << "roots {";
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i) os << ", ";
    os << roots[i].real();
    if (roots[i].imag() != 0.0) os << (roots[i].imag() > 0 ? "+" : "") << roots[i].imag() << "i";
  }
  os << "}";
  return os.str();
}

}  // namespace

std::array<Complex, 3> cubic_roots(const CubicCoefficients& c) {
  if (c.c3 == 0.0) throw DomainError("cubic: leading coefficient is zero");
  const double a = c.c2 / c.c3;
  const double b = c.c1 / c.c3;
  const double d = c.c0 / c.c3;
  // x = t - a/3 gives t^3 + p t + q = 0
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
  const double shift = -a / 3.0;
  const double disc = 0.25 * q * q + p * p * p / 27.0;
  std::array<Complex, 3> roots;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-0.5 * q + s);
    const double v = std::cbrt(-0.5 * q - s);
    const double re = -0.5 * (u + v) + shift;
    const double im = 0.5 * std::sqrt(3.0) * (u - v);
    roots = {Complex(u + v + shift), Complex(re, im), Complex(re, -im)};
  } else if (p == 0.0) {
    roots = {Complex(shift), Complex(shift), Complex(shift)};
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double ang = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      roots[k] = Complex(r * std::cos(ang - 2.0 * std::numbers::pi * k / 3.0) + shift);
  }
  return roots;
}

double cubic_negative_root(const CubicCoefficients& c) {
  const auto roots = cubic_roots(c);
  if (c.c0 == 0.0) throw DomainError("cubic has a root at 0; " + describe_roots(roots));

  // Descartes on f(-x) bounds the number of negative roots.
  const int bound = sign_changes({-c.c3, c.c2, -c.c1, c.c0});
  double guess = std::numeric_limits<double>::quiet_NaN();
  int negative_real = 0;
  for (const auto& r : roots) {
    const double scale = std::max(1.0, std::abs(r));
    if (std::abs(r.imag()) <= 1e-9 * scale && r.real() < 0.0) {
      ++negative_real;
      guess = r.real();
    }
  }
  if (bound == 0 || (bound > 1 && negative_real != 1))
    throw DomainError("cubic has no unique negative root; " + describe_roots(roots));

  // Bracket [lo, 0] with f(lo) of opposite sign to f(0) = c0.
  const bool positive_at_zero = c.c0 > 0.0;
  double lo = (std::isfinite(guess) && guess < 0.0) ? 2.0 * guess : -1.0;
  for (int i = 0; (eval(c, lo) > 0.0) == positive_at_zero; ++i) {
    if (i > 2000) throw DomainError("cubic: failed to bracket the negative root; " + describe_roots(roots));
    lo *= 2.0;
  }
  double hi = 0.0;
  double x = (std::isfinite(guess) && guess > lo && guess < hi) ? guess : 0.5 * lo;

  for (int iter = 0; iter < 400; ++iter) {
    const double fx = eval(c, x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == positive_at_zero) hi = x; else lo = x;
    const double dfx = deriv(c, x);
    double next = (dfx != 0.0) ? x - fx / dfx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x))
      return next;
    x = next;
  }
  return x;
}

CubicCoefficients spacs_loss_cubic(double alpha_abs, double gamma_t) {
  const double e = std::exp(gamma_t);
  const double a2 = alpha_abs * alpha_abs;
  return {8.0, 4.0 - 8.0 * e * (1.0 + a2), -(6.0 + 4.0 * e * (a2 - 1.0)), 1.0};
}

CubicCoefficients mixed_loss_cubic(double alpha_abs, double p, double gamma_t) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("mixed_loss_cubic: p must lie in (0, 1]");
  const double e = std::exp(gamma_t);
  const double a2 = alpha_abs * alpha_abs;
  const double mu = e * (1.0 + a2) / p - 1.0;
  const double nu = 0.5 * a2 * e;
  return {8.0, -(4.0 + 8.0 * mu), -(2.0 - 4.0 * mu + 16.0 * nu), 1.0};
}

double ep_spacs_loss_continued(double alpha_abs, double gamma_t) {
  require_alpha(alpha_abs);
  const double chi = cubic_negative_root(spacs_loss_cubic(alpha_abs, gamma_t));
  return std::log1p(-2.0 * chi * std::exp(-gamma_t) / (1.0 + alpha_abs * alpha_abs)) / kLn2;
}

double ep_spacs_loss(double alpha_abs, double gamma_t) {
  require_time(gamma_t);
  return ep_spacs_loss_continued(alpha_abs, gamma_t);
}

double ep_fock(double gamma_t) {
  require_time(gamma_t);
  const double eta = std::exp(-gamma_t);
  const double lost = -std::expm1(-gamma_t);
  const double root = std::hypot(lost, eta);  // sqrt(1 - 2 eta + 2 eta^2)
  // eta + root - 1 = root - (1 - eta) = eta^2 / (root + 1 - eta)
  return std::log1p(eta * eta / (root + lost)) / kLn2;
}

double ep_spacs_alpha1(double gamma_t) {
  require_time(gamma_t);
  const double e = std::exp(gamma_t);
  const double ie = std::exp(-gamma_t);
  const double num = 3.0 * std::sqrt(6.0 + 3.0 * e * (12.0 + e * (16.0 * e - 3.0)));
  const double den = -14.0 + e * (33.0 + 8.0 * e * (4.0 * e - 3.0));
  const double theta = std::atan2(num, den) / 3.0;
  const double arg = 1.0 / 3.0 + ie / 6.0 -
                     std::cos(theta + 2.0 * std::numbers::pi / 3.0) / 3.0 *
                         std::sqrt(9.0 * ie * ie + (4.0 - ie) * (4.0 - ie));
  if (!(arg > 0.0) || !std::isfinite(arg))
    throw BranchError("ep_spacs_alpha1: trigonometric form left the physical branch");
  return std::log2(arg);
}

std::vector<double> ep_spacs_alpha1_curve(const std::vector<double>& gamma_ts) {
  std::vector<double> out;
  out.reserve(gamma_ts.size());
  double prev_exact = 0.0;
  for (std::size_t i = 0; i < gamma_ts.size(); ++i) {
    const double v = ep_spacs_alpha1(gamma_ts[i]);
    const double exact = ep_spacs_loss(1.0, gamma_ts[i]);
    if (i > 0) {
      const double jump = (v - out.back()) - (exact - prev_exact);
      if (std::abs(jump) > 1e-6) {
        std::ostringstream os;
        os << "ep_spacs_alpha1: branch discontinuity " << jump << " between gamma_t = "
           << gamma_ts[i - 1] << " and " << gamma_ts[i];
        throw BranchError(os.str());
      }
    }
    out.push_back(v);
    prev_exact = exact;
  }
  return out;
}

double ep_mixed_loss(double alpha_abs, double p, double gamma_t) {
  require_alpha(alpha_abs);
  require_probability(p);
  require_time(gamma_t);
  if (p == 0.0) return 0.0;
  const double tau = cubic_negative_root(mixed_loss_cubic(alpha_abs, p, gamma_t));
  return std::log1p(-2.0 * p * tau * std::exp(-gamma_t) / (1.0 + alpha_abs * alpha_abs)) / kLn2;
}

double sigma2_spacs(double alpha_abs) {
  const double a2 = alpha_abs * alpha_abs;
  return (3.0 + a2 * a2) / ((1.0 + a2) * (1.0 + a2));
}

double sigma2_mixed(double alpha_abs, double p) {
  require_probability(p);
  const double a2 = alpha_abs * alpha_abs;
  return 1.0 + 2.0 * p * (1.0 + (1.0 - 2.0 * p) * a2) / ((1.0 + a2) * (1.0 + a2));
}

double sigma2_cat(double alpha_abs, double phi) {
  // 1 - 4|a|^2 (1 + e^{2|a|^2} cos phi) / (e^{2|a|^2} + cos phi)^2, rewritten with
  // g = e^{-2|a|^2} so large amplitudes do not overflow.
  const double a2 = alpha_abs * alpha_abs;
  const double g = std::exp(-2.0 * a2);
  const double c = std::cos(phi);
  const double denom = 1.0 + g * c;
  return 1.0 - 4.0 * a2 * g * (c + g) / (denom * denom);
}

TwoModeDensity loss_reduced_state(double alpha_abs, double p, double gamma_t) {
  require_alpha(alpha_abs);
  require_probability(p);
  require_time(gamma_t);
  const double a2 = alpha_abs * alpha_abs;
  const double w = std::exp(-gamma_t) / (1.0 + a2);
  const double cross = std::sqrt(0.5) * alpha_abs * std::exp(-0.5 * gamma_t) / (1.0 + a2);
  const Complex i(0.0, 1.0);
  constexpr int k00 = 0, k01 = 1, k10 = 2;
  Matrix m = Matrix::Zero(4, 4);
  m(k10, k10) = 0.5 * w;
  m(k01, k01) = 0.5 * w;
  m(k01, k10) = 0.5 * i * w;
  m(k10, k01) = -0.5 * i * w;
  m(k00, k10) = cross;
  m(k00, k01) = -i * cross;
  m(k10, k00) = cross;
  m(k01, k00) = i * cross;
  m(k00, k00) = (-std::expm1(-gamma_t) + a2) / (1.0 + a2);
  m *= p;
  m(k00, k00) += 1.0 - p;
  return TwoModeDensity(std::move(m), 1, 1);
}

InitialSlope ep_initial_slope_spacs(double alpha_abs) {
  const double a2 = alpha_abs * alpha_abs;
  return {std::log2((2.0 + a2) / (1.0 + a2)), -(4.0 + a2) / ((2.0 + a2) * (2.0 + a2) * kLn2)};
}

std::string_view to_string(StateFamily family) {
  switch (family) {
    case StateFamily::spacs: return "spacs";
    case StateFamily::mixed_spacs: return "mixed";
    case StateFamily::cat: return "cat";
  }
  return "?";
}

std::string_view to_string(AsymptoticRegime regime) {
  switch (regime) {
    case AsymptoticRegime::squeezed_e1: return "squeezed_e1";
    case AsymptoticRegime::boundary_e32: return "boundary_e32";
    case AsymptoticRegime::nonsqueezed_e2: return "nonsqueezed_e2";
    case AsymptoticRegime::cat_intermediate: return "cat_intermediate";
  }
  return "?";
}

double initial_sigma2(StateFamily family, const StateParams& params) {
  switch (family) {
    case StateFamily::spacs: return sigma2_spacs(params.alpha_abs);
    case StateFamily::mixed_spacs: return sigma2_mixed(params.alpha_abs, params.p);
    case StateFamily::cat: return sigma2_cat(params.alpha_abs, params.phi);
  }
  return 1.0;
}

AsymptoticLaw asymptotic_ep(StateFamily family, const StateParams& params, double gamma_t) {
  require_time(gamma_t);
  require_alpha(params.alpha_abs);
  const double a2 = params.alpha_abs * params.alpha_abs;
  const double inf = std::numeric_limits<double>::infinity();
  AsymptoticLaw law;

  auto check_window = [&](double lo, double hi) {
    law.window_lo = lo;
    law.window_hi = hi;
    if (gamma_t < lo || gamma_t > hi) {
      std::ostringstream os;
      os << "asymptotic_ep: gamma_t = " << gamma_t << " lies outside the "
         << to_string(law.regime) << " window [" << lo << ", " << hi << "]";
      throw WindowError(os.str(), lo, hi);
    }
  };

  if (family == StateFamily::cat && a2 > 0.0) {
    const double lo = 1.0 / (4.0 * a2);
    if (gamma_t > lo && gamma_t <= kIntermediateUpper) {
      law.regime = AsymptoticRegime::cat_intermediate;
      law.exponent = 2.0 * a2;
      law.window_lo = lo;
      law.window_hi = kIntermediateUpper;
      law.value = std::exp(-2.0 * gamma_t * a2) /
                  ((1.0 + std::exp(-2.0 * a2) * std::cos(params.phi)) * kLn2);
      return law;
    }
  }

  double p = 1.0;
  if (family == StateFamily::mixed_spacs) {
    require_probability(params.p);
    if (params.p == 0.0) throw ValidationError("asymptotic_ep: p = 0 is a classical mixture");
    p = params.p;
  }
  const double s2 = initial_sigma2(family, params);
  const double gap = 1.0 - s2;  // > 0 squeezed

  if (std::abs(gap) <= kSqueezingTolerance) {
    law.regime = AsymptoticRegime::boundary_e32;
    law.exponent = 1.5;
    check_window(kBoundaryWindowStart, inf);
    if (family != StateFamily::cat)
      law.value = 2.0 * p / ((1.0 + a2) * kLn2) * std::sqrt(p / (8.0 * (1.0 + a2))) *
                  std::exp(-1.5 * gamma_t);
    return law;
  }

  law.regime = gap > 0.0 ? AsymptoticRegime::squeezed_e1 : AsymptoticRegime::nonsqueezed_e2;
  law.exponent = gap > 0.0 ? 1.0 : 2.0;
  double onset = 1.0;
  double distance = 0.0;  // (1 + |a|^2)/p - 2|a|^2; 1 - |a|^2 for the pure SPACS
  if (family == StateFamily::cat) {
    onset = std::max(1.0, std::log(8.0 / (gap * gap)));
  } else {
    distance = (1.0 + a2) / p - 2.0 * a2;
    onset = std::max(1.0, std::log(2.0 * (1.0 + a2) / (p * distance * distance)));
  }
  check_window(onset + kWindowMargin, inf);

  if (gap > 0.0) {
    law.value = gap / (2.0 * kLn2) * std::exp(-gamma_t);
  } else if (family != StateFamily::cat) {
    law.value = p * std::exp(-2.0 * gamma_t) / (2.0 * kLn2 * (1.0 + a2) * distance);
  }
  return law;
}

double transition_boundary(StateFamily family, const StateParams& params) {
  switch (family) {
    case StateFamily::spacs: return 1.0;
    case StateFamily::mixed_spacs:
      require_probability(params.p);
      if (params.p <= 0.5)
        throw NoBoundaryError("mixed states with p <= 1/2 never show quadrature squeezing");
      return 1.0 / std::sqrt(2.0 * params.p - 1.0);
    case StateFamily::cat:
      return std::acos(-std::exp(-2.0 * params.alpha_abs * params.alpha_abs));
  }
  return 0.0;
}

}  // namespace epot::analytic
