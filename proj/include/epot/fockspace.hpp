// fockspace.hpp: truncated number-basis states: coherent, photon-added coherent, cat, mixtures

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace epot {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Levels n > cutoff - kTailLevels count as "tail" for the adequacy check.
inline constexpr int kTailLevels = 5;
inline constexpr double kTailTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;

struct TruncationReport {
  int requested_cutoff = 0;
  double tail_mass = 0.0;  // probability of the exact state in levels n > cutoff - 5
  bool adequate = true;
};

// Default cutoff ceil(|alpha|^2 + 10|alpha| + 20) + m for states built on |alpha>.
int default_cutoff(Complex alpha, int photons_added = 0);

double log_factorial(int n);

// Laguerre polynomial L_m(x) by the three-term recurrence.
double laguerre(int m, double x);

// A normalized pure state in the number basis |0>..|cutoff>.
class FockVector {
 public:
  // Throws ValidationError unless the amplitudes are normalized within kNormTolerance.
  explicit FockVector(Vector amplitudes, TruncationReport report = {}, double raw_norm2 = 1.0);

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](int n) const { return amplitudes_(n); }
  int cutoff() const noexcept { return static_cast<int>(amplitudes_.size()) - 1; }
  const TruncationReport& truncation() const noexcept { return report_; }
  // Squared norm of the unnormalized series (all levels, before truncation).
  double raw_norm2() const noexcept { return raw_norm2_; }

 private:
  Vector amplitudes_;
  TruncationReport report_;
  double raw_norm2_;
};

// Hermitian, unit-trace, positive semidefinite single-mode density matrix.
class SingleModeDensity {
 public:
  // Validates Hermiticity (1e-12), trace (1e-12) and spectrum (>= -1e-10).
  explicit SingleModeDensity(Matrix matrix, TruncationReport report = {},
                             double hermiticity_correction = 0.0);

  static SingleModeDensity pure(const FockVector& psi);

  const Matrix& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  int cutoff() const noexcept { return dim() - 1; }
  const TruncationReport& truncation() const noexcept { return report_; }
  // Max elementwise change applied when the producing operation symmetrized the result.
  double hermiticity_correction() const noexcept { return hermiticity_correction_; }

  double purity() const;
  double mean_photon_number() const;

  // Drops trailing levels while the discarded population stays below tail_mass, then renormalizes.
  SingleModeDensity compacted(double tail_mass) const;

 private:
  Matrix matrix_;
  TruncationReport report_;
  double hermiticity_correction_;
};

FockVector coherent_state(Complex alpha, int cutoff);
FockVector coherent_state(Complex alpha);

// a^dagger^m |alpha>, normalized by m! L_m(-|alpha|^2).
FockVector pacs_state(Complex alpha, int m, int cutoff);
FockVector pacs_state(Complex alpha, int m);

// |alpha> + e^{i phi} |-alpha>, normalized by 2 + 2 e^{-2|alpha|^2} cos(phi).
FockVector cat_state(Complex alpha, double phi, int cutoff);
FockVector cat_state(Complex alpha, double phi);

// p a^dagger|alpha><alpha|a / (1+|alpha|^2) + (1-p) |alpha><alpha|.
SingleModeDensity mixed_spacs(Complex alpha, double p, int cutoff);
SingleModeDensity mixed_spacs(Complex alpha, double p);

// Haar-random pure state on the (cutoff+1)-dimensional space, reproducible for a given seed.
FockVector random_pure_state(int cutoff, std::uint64_t seed);

}  // namespace epot
