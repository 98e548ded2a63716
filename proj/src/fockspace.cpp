#include "epot/fockspace.hpp"

#include "epot/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace epot {

int default_cutoff(Complex alpha, int photons_added) {
  const double a = std::abs(alpha);
  return static_cast<int>(std::ceil(a * a + 10.0 * a + 20.0)) + photons_added;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double laguerre(int m, double x) {
  if (m < 0) throw ValidationError("laguerre: order must be non-negative");
  double prev = 1.0;
  if (m == 0) return prev;
  double cur = 1.0 - x;
  for (int k = 1; k < m; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// ---------------------------------------------------------------------------

FockVector::FockVector(Vector amplitudes, TruncationReport report, double raw_norm2)
    : amplitudes_(std::move(amplitudes)), report_(report), raw_norm2_(raw_norm2) {
  if (amplitudes_.size() == 0) throw ValidationError("FockVector: empty amplitude vector");
  const double n2 = amplitudes_.squaredNorm();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "FockVector: squared norm " << n2 << " differs from 1";
    throw ValidationError(os.str());
  }
  if (report_.requested_cutoff == 0) report_.requested_cutoff = cutoff();
}

SingleModeDensity::SingleModeDensity(Matrix matrix, TruncationReport report,
                                     double hermiticity_correction)
    : matrix_(std::move(matrix)),
      report_(report),
      hermiticity_correction_(hermiticity_correction) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
    throw ValidationError("SingleModeDensity: matrix must be square and non-empty");
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermiticityTolerance) {
    std::ostringstream os;
    os << "SingleModeDensity: not Hermitian (max |rho - rho^dagger| = " << asym << ")";
    throw ValidationError(os.str());
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "SingleModeDensity: trace " << tr << " differs from 1";
    throw ValidationError(os.str());
  }
  const Matrix h = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("SingleModeDensity: eigensolver failed");
  if (es.eigenvalues().minCoeff() < kEigenvalueFloor) {
    std::ostringstream os;
    os << "SingleModeDensity: negative eigenvalue " << es.eigenvalues().minCoeff();
    throw ValidationError(os.str());
  }
  if (report_.requested_cutoff == 0) report_.requested_cutoff = cutoff();
}

SingleModeDensity SingleModeDensity::pure(const FockVector& psi) {
  const Vector& v = psi.amplitudes();
  Matrix m = v * v.adjoint();
  return SingleModeDensity(std::move(m), psi.truncation());
}

double SingleModeDensity::purity() const {
  return (matrix_ * matrix_).trace().real();
}

double SingleModeDensity::mean_photon_number() const {
  double n = 0.0;
  for (int k = 0; k < dim(); ++k) n += k * matrix_(k, k).real();
  return n;
}

SingleModeDensity SingleModeDensity::compacted(double tail_mass) const {
  int keep = dim();
  double dropped = 0.0;
  while (keep > 1) {
    const double pop = matrix_(keep - 1, keep - 1).real();
    if (dropped + pop >= tail_mass) break;
    dropped += pop;
    --keep;
  }
  if (keep == dim()) return *this;
  Matrix block = matrix_.topLeftCorner(keep, keep);
  block /= block.trace().real();
  return SingleModeDensity(std::move(block), report_, hermiticity_correction_);
}

// ---------------------------------------------------------------------------

namespace {

// Coherent-state amplitude <n|alpha> computed in log space so that n! never overflows.
Complex coherent_amplitude(Complex alpha, int n) {
  const double a = std::abs(alpha);
  if (a == 0.0) return n == 0 ? Complex(1.0) : Complex(0.0);
  const double log_mag = -0.5 * a * a + n * std::log(a) - 0.5 * log_factorial(n);
  return std::polar(std::exp(log_mag), n * std::arg(alpha));
}

// Evaluates an exact amplitude series past the cutoff until it is negligible, measures the
// tail, and returns the renormalized truncation.
template <class Amplitude>
FockVector truncate_series(Amplitude&& amplitude, int cutoff, double scale) {
  if (cutoff < 0) throw ValidationError("cutoff must be non-negative");
  constexpr int kMaxLevels = 1 << 20;
  std::vector<Complex> series;
  double total = 0.0;
  double prev_weight = 0.0;
  for (int n = 0;; ++n) {
    if (n > kMaxLevels) throw NumericError("amplitude series failed to converge");
    const Complex c = amplitude(n);
    const double w = std::norm(c);
    series.push_back(c);
    total += w;
    if (n >= cutoff && n > scale && (w + prev_weight) <= 1e-40 * total) break;
    prev_weight = w;
  }
  if (!(total > 1e-24)) throw DegenerateStateError("superposition cancels to the null vector");

  double tail = 0.0;
  for (int n = std::max(0, cutoff - kTailLevels + 1); n < static_cast<int>(series.size()); ++n)
    tail += std::norm(series[n]);
  tail /= total;
  TruncationReport report{cutoff, tail, tail < kTailTolerance};
  if (!report.adequate) throw CutoffError(cutoff, tail);

  Vector v(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) v(n) = series[n];
  v /= v.norm();
  return FockVector(std::move(v), report, total);
}

}  // namespace

FockVector coherent_state(Complex alpha, int cutoff) {
  const double mean = std::norm(alpha);
  return truncate_series([&](int n) { return coherent_amplitude(alpha, n); }, cutoff, mean);
}

FockVector coherent_state(Complex alpha) { return coherent_state(alpha, default_cutoff(alpha)); }

FockVector pacs_state(Complex alpha, int m, int cutoff) {
  if (m < 0) throw ValidationError("pacs_state: photon number m must be non-negative");
  const double mean = std::norm(alpha) + m;
  auto amp = [&](int n) -> Complex {
    if (n < m) return 0.0;
    // <n| a^dagger^m |alpha> = sqrt(n!/(n-m)!) <n-m|alpha>
    const double lift = std::exp(0.5 * (log_factorial(n) - log_factorial(n - m)));
    return lift * coherent_amplitude(alpha, n - m);
  };
  return truncate_series(amp, cutoff, mean);
}

FockVector pacs_state(Complex alpha, int m) {
  return pacs_state(alpha, m, default_cutoff(alpha, std::max(m, 0)));
}

FockVector cat_state(Complex alpha, double phi, int cutoff) {
  const Complex phase = std::polar(1.0, phi);
  auto amp = [&](int n) -> Complex {
    // <n|-alpha> = (-1)^n <n|alpha>
    const Complex sign = (n % 2 == 0) ? phase : -phase;
    return coherent_amplitude(alpha, n) * (1.0 + sign);
  };
  return truncate_series(amp, cutoff, std::norm(alpha));
}

FockVector cat_state(Complex alpha, double phi) {
  return cat_state(alpha, phi, default_cutoff(alpha));
}

SingleModeDensity mixed_spacs(Complex alpha, double p, int cutoff) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("mixed_spacs: p must lie in [0, 1]");
  const FockVector added = pacs_state(alpha, 1, cutoff);
  const FockVector coherent = coherent_state(alpha, cutoff);
  Matrix m = p * (added.amplitudes() * added.amplitudes().adjoint()) +
             (1.0 - p) * (coherent.amplitudes() * coherent.amplitudes().adjoint());
  m = 0.5 * (m + m.adjoint()).eval();
  TruncationReport report{cutoff,
                          std::max(added.truncation().tail_mass, coherent.truncation().tail_mass),
                          true};
  return SingleModeDensity(std::move(m), report);
}

SingleModeDensity mixed_spacs(Complex alpha, double p) {
  return mixed_spacs(alpha, p, default_cutoff(alpha, 1));
}

FockVector random_pure_state(int cutoff, std::uint64_t seed) {
  if (cutoff < 0) throw ValidationError("random_pure_state: cutoff must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(n) = Complex(re, im);
  }
  v /= v.norm();
  return FockVector(std::move(v), TruncationReport{cutoff, 0.0, true}, 1.0);
}

}  // namespace epot
