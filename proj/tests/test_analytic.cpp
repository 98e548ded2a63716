#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epot/analytic.hpp"
#include "epot/channels.hpp"
#include "epot/errors.hpp"
#include "epot/measures.hpp"

#include <cmath>
#include <string>

using namespace epot;
using namespace epot::analytic;

namespace {

const double kLn2 = std::log(2.0);

double eval(const CubicCoefficients& c, double x) {
  return c.c3 * x * x * x + c.c2 * x * x + c.c1 * x + c.c0;
}

// Plain bisection on [lo, hi] with f(lo) f(hi) < 0.
double bisect(const CubicCoefficients& c, double lo, double hi) {
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((eval(c, mid) > 0) == (eval(c, lo) > 0)) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double numeric_loss_ep(double alpha, double p, double t) {
  const auto rho = p == 1.0 ? SingleModeDensity::pure(pacs_state(Complex(alpha), 1))
                            : mixed_spacs(Complex(alpha), p);
  return entanglement_potential(photon_loss_evolve(rho, t));
}

double log_slope(double (*f)(double, double), double alpha, double t) {
  const double h = 1e-3;
  return (std::log(f(alpha, t + h)) - std::log(f(alpha, t - h))) / (2.0 * h);
}

}  // namespace

TEST_CASE("closed-form cubic roots") {
  // (x - 1)(x + 2)(x - 3) = x^3 - 2x^2 - 5x + 6
  auto r = cubic_roots({1.0, -2.0, -5.0, 6.0});
  std::vector<double> re;
  for (const auto& z : r) {
    CHECK(std::abs(z.imag()) < 1e-12);
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(-2.0));
  CHECK(re[1] == doctest::Approx(1.0));
  CHECK(re[2] == doctest::Approx(3.0));

  // (x + 1)(x^2 + 1)
  r = cubic_roots({2.0, 2.0, 2.0, 2.0});
  int complex_count = 0;
  for (const auto& z : r) {
    const bool real_root = std::abs(z.imag()) < 1e-12 && std::abs(z.real() + 1.0) < 1e-12;
    const bool unit_pair = std::abs(std::abs(z.imag()) - 1.0) < 1e-12 && std::abs(z.real()) < 1e-12;
    CHECK((real_root || unit_pair));
    complex_count += std::abs(z.imag()) > 0.5;
  }
  CHECK(complex_count == 2);
  CHECK_THROWS_AS(cubic_roots({0.0, 1.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("negative root refinement") {
  CHECK(cubic_negative_root({1.0, -2.0, -5.0, 6.0}) == doctest::Approx(-2.0).epsilon(1e-15));
  try {
    cubic_negative_root({1.0, -6.0, 11.0, -6.0});  // roots 1, 2, 3
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("roots") != std::string::npos);
  }
  // three negative roots: not unique
  CHECK_THROWS_AS(cubic_negative_root({1.0, 6.0, 11.0, 6.0}), DomainError);

  for (double a : {0.0, 0.3, 1.0, 1.7, 3.0})
    for (double t : {0.0, 0.5, 2.0, 8.0, 20.0}) {
      const auto c = spacs_loss_cubic(a, t);
      const double x = cubic_negative_root(c);
      CHECK(x < 0.0);
      const double ref = bisect(c, std::min(-1.0, 4.0 * x), 0.0);
      CHECK(x == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("loss cubic at t = 0") {
  const auto c1 = spacs_loss_cubic(1.0, 0.0);
  CHECK(c1.c3 == 8.0);
  CHECK(c1.c2 == -12.0);
  CHECK(c1.c1 == -6.0);
  CHECK(c1.c0 == 1.0);
  const double x = cubic_negative_root(c1);
  CHECK(std::log2(1.0 - x) == doctest::Approx(ep_spacs_alpha1(0.0)).epsilon(1e-14));
  CHECK(cubic_negative_root(spacs_loss_cubic(0.0, 0.0)) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("mixture cubic at p = 1 reduces to the pure cubic") {
  for (double a : {0.0, 0.4, 1.0, 2.5})
    for (double t : {0.0, 0.7, 3.0, 12.0}) {
      const auto pure = spacs_loss_cubic(a, t);
      const auto mixed = mixed_loss_cubic(a, 1.0, t);
      const double scale = std::abs(pure.c2) + std::abs(pure.c1) + 1.0;
      CHECK(mixed.c3 == pure.c3);
      CHECK(std::abs(mixed.c2 - pure.c2) <= 4e-16 * scale);
      CHECK(std::abs(mixed.c1 - pure.c1) <= 4e-16 * scale);
      CHECK(mixed.c0 == pure.c0);
    }
  CHECK_THROWS_AS(mixed_loss_cubic(1.0, 0.0, 1.0), ValidationError);
}

TEST_CASE("single-photon curve") {
  auto direct = [](double t) {
    const double e = std::exp(-t);
    return std::log2(e + std::sqrt(1.0 - 2.0 * e + 2.0 * e * e));
  };
  CHECK(ep_fock(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ep_fock(std::log(2.0)) == doctest::Approx(0.27155).epsilon(1e-4));
  for (double t : {0.1, 0.5, 1.0, 3.0, 6.0}) CHECK(ep_fock(t) == doctest::Approx(direct(t)).epsilon(1e-11));
  // leading behaviour e^{-2t} / (2 ln 2)
  for (double t : {15.0, 25.0})
    CHECK(ep_fock(t) * std::exp(2.0 * t) * 2.0 * kLn2 == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(ep_fock(-1.0), ValidationError);
}

TEST_CASE("pure-state loss closed form") {
  for (double t : {0.0, 0.3, 1.0, 5.0, 12.0})
    CHECK(ep_spacs_loss(0.0, t) == doctest::Approx(ep_fock(t)).epsilon(1e-12));
  CHECK(ep_spacs_loss(1.0, 0.0) == doctest::Approx(std::log2(1.5)).epsilon(1e-14));
  CHECK(ep_spacs_loss(5.0, 2.0) == doctest::Approx(std::exp(-2.0) / 26.0 / kLn2).epsilon(0.05));
  CHECK(ep_spacs_loss(5.0, 2.0) ==
        doctest::Approx(std::log2(1.0 + std::exp(-2.0) / 26.0)).epsilon(0.05));
  CHECK_THROWS_AS(ep_spacs_loss(1.0, -0.5), ValidationError);
}

TEST_CASE("trigonometric form for |alpha| = 1") {
  for (double t = 0.0; t <= 5.0 + 1e-12; t += 0.05)
    CHECK(std::abs(ep_spacs_alpha1(t) - ep_spacs_loss(1.0, t)) < 1e-10);
  CHECK(ep_spacs_alpha1(1.0) == doctest::Approx(ep_spacs_loss(1.0, 1.0)).epsilon(1e-10));
  CHECK(ep_spacs_alpha1(10.0) == doctest::Approx(std::exp(-15.0) / (4.0 * kLn2)).epsilon(0.05));
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.1 * i);
  const auto curve = ep_spacs_alpha1_curve(grid);
  CHECK(curve.size() == grid.size());
  CHECK(curve.front() == doctest::Approx(std::log2(1.5)));
}

TEST_CASE("mixture closed form") {
  for (double a : {0.0, 0.5, 1.0, 2.0})
    for (double t : {0.0, 0.5, 2.0, 9.0})
      CHECK(std::abs(ep_mixed_loss(a, 1.0, t) - ep_spacs_loss(a, t)) < 1e-12);
  CHECK(ep_mixed_loss(1.3, 0.0, 2.0) == 0.0);
  CHECK(ep_mixed_loss(2.0, 0.8, 9.0) ==
        doctest::Approx((1.0 - sigma2_mixed(2.0, 0.8)) / (2.0 * kLn2) * std::exp(-9.0)).epsilon(0.05));
  const double s = (std::log(ep_mixed_loss(0.5, 0.8, 9.5)) - std::log(ep_mixed_loss(0.5, 0.8, 8.5)));
  CHECK(s == doctest::Approx(-2.0).epsilon(0.02));
  CHECK_THROWS_AS(ep_mixed_loss(1.0, 1.2, 1.0), ValidationError);
  CHECK_THROWS_AS(ep_mixed_loss(1.0, 0.5, -1.0), ValidationError);
}

TEST_CASE("closed forms agree with the numeric pipeline") {
  for (double a : {0.0, 0.5, 1.5})
    for (double t : {0.0, 1.0, 3.0})
      CHECK(std::abs(numeric_loss_ep(a, 1.0, t) - ep_spacs_loss(a, t)) < 1e-8);
  for (double p : {0.3, 0.8})
    for (double a : {0.5, 1.2})
      for (double t : {0.5, 2.0})
        CHECK(std::abs(numeric_loss_ep(a, p, t) - ep_mixed_loss(a, p, t)) < 1e-8);
}

TEST_CASE("displacement-reduced output state") {
  for (double p : {1.0, 0.8, 0.4})
    for (double a : {0.0, 0.5, 1.0, 2.0})
      for (double t : {0.0, 0.7, 4.0}) {
        const auto rho = loss_reduced_state(a, p, t);
        CHECK(rho.cutoff_a() == 1);
        CHECK(std::abs(rho.matrix()(3, 3)) == 0.0);
        CHECK(log_negativity(rho) == doctest::Approx(ep_mixed_loss(a, p, t)).epsilon(1e-11));
        CHECK(concurrence_two_qubit(rho) ==
              doctest::Approx(p * std::exp(-t) / (1.0 + a * a)).epsilon(1e-10));
      }
}

TEST_CASE("minimal variances of the initial states") {
  CHECK(sigma2_spacs(0.0) == 3.0);
  CHECK(sigma2_spacs(1.0) == 1.0);
  CHECK(sigma2_spacs(2.0) == doctest::Approx(0.76));
  CHECK(sigma2_spacs(50.0) < 1.0);
  CHECK(sigma2_spacs(50.0) > 0.999);
  for (double a : {0.0, 0.5, 1.0, 3.0}) {
    CHECK(sigma2_mixed(a, 1.0) == doctest::Approx(sigma2_spacs(a)).epsilon(1e-15));
    CHECK(sigma2_mixed(a, 0.5) >= 1.0);
  }
  CHECK(sigma2_mixed(1.0 / std::sqrt(0.6), 0.8) == doctest::Approx(1.0).epsilon(1e-14));

  const double e2 = std::exp(2.0);
  CHECK(sigma2_cat(1.0, 0.0) == doctest::Approx(1.0 - 4.0 / (e2 + 1.0)).epsilon(1e-14));
  CHECK(sigma2_cat(1.0, 0.0) == doctest::Approx(0.5233).epsilon(1e-4));
  CHECK(sigma2_cat(1.0, M_PI) > 1.0);
  for (double a : {0.5, 1.0, 2.0}) {
    const double phi_c = std::acos(-std::exp(-2.0 * a * a));
    CHECK(sigma2_cat(a, phi_c) == doctest::Approx(1.0).epsilon(1e-14));
    for (double phi : {0.3, 2.0}) {
      const double big = std::exp(2.0 * a * a), c = std::cos(phi);
      const double direct = 1.0 - 4.0 * a * a * (1.0 + big * c) / ((big + c) * (big + c));
      CHECK(sigma2_cat(a, phi) == doctest::Approx(direct).epsilon(1e-13));
    }
  }
  CHECK(std::isfinite(sigma2_cat(30.0, 1.0)));
}

TEST_CASE("closed-form variances agree with the numeric quadrature") {
  for (double a : {0.0, 0.7, 2.0})
    CHECK(min_quadrature_variance(SingleModeDensity::pure(pacs_state(Complex(a), 1))).sigma2 ==
          doctest::Approx(sigma2_spacs(a)).epsilon(1e-11));
  CHECK(min_quadrature_variance(mixed_spacs(Complex(1.8), 0.7)).sigma2 ==
        doctest::Approx(sigma2_mixed(1.8, 0.7)).epsilon(1e-11));
  for (double phi : {0.0, 1.0, 2.5})
    CHECK(min_quadrature_variance(SingleModeDensity::pure(cat_state(Complex(1.0), phi))).sigma2 ==
          doctest::Approx(sigma2_cat(1.0, phi)).epsilon(1e-11));
}

TEST_CASE("asymptotic regimes and values") {
  auto law = asymptotic_ep(StateFamily::spacs, {2.0}, 10.0);
  CHECK(law.regime == AsymptoticRegime::squeezed_e1);
  CHECK(law.exponent == 1.0);
  CHECK(*law.value == doctest::Approx((1.0 - 0.76) / (2.0 * kLn2) * std::exp(-10.0)));

  law = asymptotic_ep(StateFamily::spacs, {0.5}, 10.0);
  CHECK(law.regime == AsymptoticRegime::nonsqueezed_e2);
  CHECK(law.exponent == 2.0);
  CHECK(*law.value == doctest::Approx(ep_spacs_loss(0.5, 10.0)).epsilon(0.05));

  law = asymptotic_ep(StateFamily::spacs, {1.0}, 10.0);
  CHECK(law.regime == AsymptoticRegime::boundary_e32);
  CHECK(law.exponent == 1.5);
  CHECK(*law.value == doctest::Approx(std::exp(-15.0) / (4.0 * kLn2)).epsilon(1e-12));

  law = asymptotic_ep(StateFamily::cat, {3.0, 1.0, 1.0}, 0.1);
  CHECK(law.regime == AsymptoticRegime::cat_intermediate);
  CHECK(*law.value ==
        doctest::Approx(std::exp(-2.0 * 0.1 * 9.0) / ((1.0 + std::exp(-18.0) * std::cos(1.0)) * kLn2)));

  law = asymptotic_ep(StateFamily::cat, {1.0, 1.0, 2.5}, 10.0);
  CHECK(law.regime == AsymptoticRegime::nonsqueezed_e2);
  CHECK_FALSE(law.value.has_value());

  try {
    asymptotic_ep(StateFamily::spacs, {0.5}, 1.0);
    FAIL("expected WindowError");
  } catch (const WindowError& e) {
    CHECK(e.lo() > 1.0);
    CHECK(std::isinf(e.hi()));
  }
  CHECK_THROWS_AS(asymptotic_ep(StateFamily::spacs, {0.999}, 10.0), WindowError);
  CHECK_THROWS_AS(asymptotic_ep(StateFamily::mixed_spacs, {1.0, 0.0}, 10.0), ValidationError);
}

TEST_CASE("asymptotic laws converge by gamma t = 10") {
  for (double a : {0.5, 1.0, 2.0}) {
    const auto law = asymptotic_ep(StateFamily::spacs, {a}, 10.0);
    CHECK(*law.value == doctest::Approx(ep_spacs_loss(a, 10.0)).epsilon(0.05));
  }
  for (double a : {1.0, 2.0}) {  // either side of 1/sqrt(0.6)
    const auto law = asymptotic_ep(StateFamily::mixed_spacs, {a, 0.8}, 10.0);
    CHECK(*law.value == doctest::Approx(ep_mixed_loss(a, 0.8, 10.0)).epsilon(0.05));
  }
  const auto law = asymptotic_ep(StateFamily::cat, {1.0, 1.0, 1.0}, 10.0);
  REQUIRE(law.value);
  const auto rho = photon_loss_evolve(SingleModeDensity::pure(cat_state(Complex(1.0), 1.0, 30)), 10.0);
  CHECK(*law.value == doctest::Approx(entanglement_potential(rho)).epsilon(0.05));
  const auto far = asymptotic_ep(StateFamily::cat, {1.0, 1.0, 2.5}, 10.0);
  CHECK(far.regime == AsymptoticRegime::nonsqueezed_e2);
}

TEST_CASE("long-time log slopes follow the regime") {
  CHECK(log_slope(ep_spacs_loss, 0.5, 10.0) == doctest::Approx(-2.0).epsilon(0.025));
  CHECK(log_slope(ep_spacs_loss, 1.0, 10.0) == doctest::Approx(-1.5).epsilon(0.033));
  CHECK(log_slope(ep_spacs_loss, 2.0, 10.0) == doctest::Approx(-1.0).epsilon(0.05));
  for (double t : {9.0, 11.0}) {
    CHECK(std::abs(log_slope(ep_spacs_loss, 0.5, t) + 2.0) < 0.05);
    CHECK(std::abs(log_slope(ep_spacs_loss, 1.0, t) + 1.5) < 0.05);
    CHECK(std::abs(log_slope(ep_spacs_loss, 2.0, t) + 1.0) < 0.05);
  }
}

TEST_CASE("entanglement potential stays positive at all finite times") {
  for (double t = 0.0; t <= 30.0; t += 1.5)
    for (double a : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      CHECK(ep_spacs_loss(a, t) > 0.0);
      CHECK(ep_mixed_loss(a, 0.3, t) > 0.0);
    }
}

TEST_CASE("transition boundaries") {
  CHECK(transition_boundary(StateFamily::spacs, {}) == 1.0);
  CHECK(transition_boundary(StateFamily::mixed_spacs, {0.0, 0.8}) ==
        doctest::Approx(1.2910).epsilon(1e-4));
  CHECK_THROWS_AS(transition_boundary(StateFamily::mixed_spacs, {0.0, 0.5}), NoBoundaryError);
  CHECK(transition_boundary(StateFamily::cat, {1.0}) == doctest::Approx(1.7066).epsilon(1e-4));
}

TEST_CASE("initial value and slope") {
  auto s = ep_initial_slope_spacs(0.0);
  CHECK(s.value == 1.0);
  CHECK(s.slope == doctest::Approx(-1.0 / kLn2));
  s = ep_initial_slope_spacs(1.0);
  CHECK(s.value == doctest::Approx(std::log2(1.5)));
  CHECK(s.slope == doctest::Approx(-5.0 / 9.0 / kLn2));
  for (double a : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double h = 1e-5;
    const double fd = (ep_spacs_loss_continued(a, h) - ep_spacs_loss_continued(a, -h)) / (2.0 * h);
    CHECK(std::abs(fd - ep_initial_slope_spacs(a).slope) < 1e-6);
    CHECK(ep_initial_slope_spacs(a).value == doctest::Approx(ep_spacs_loss(a, 0.0)).epsilon(1e-13));
  }
}

TEST_CASE("state family names") {
  CHECK(to_string(StateFamily::mixed_spacs) == "mixed");
  CHECK(to_string(AsymptoticRegime::boundary_e32) == "boundary_e32");
  CHECK(initial_sigma2(StateFamily::cat, {1.0, 1.0, 0.0}) == sigma2_cat(1.0, 0.0));
}
