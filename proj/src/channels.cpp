#include "epot/channels.hpp"

#include "epot/errors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace epot {

void ChannelParams::validate() const {
  if (!(scaled_time >= 0.0) || !std::isfinite(scaled_time))
    throw ValidationError("channel time gamma*t must be finite and non-negative");
}

namespace {

void require_time(double gamma_t) {
  ChannelParams{ChannelKind::loss, gamma_t}.validate();
}

SingleModeDensity symmetrized(Matrix m, const SingleModeDensity& source) {
  const double correction = 0.5 * (m - m.adjoint()).cwiseAbs().maxCoeff();
  m = 0.5 * (m + m.adjoint()).eval();
  return SingleModeDensity(std::move(m), source.truncation(), correction);
}

}  // namespace

SingleModeDensity photon_loss_evolve(const SingleModeDensity& rho, double gamma_t) {
  require_time(gamma_t);
  if (gamma_t == 0.0) return rho;

  const Matrix& in = rho.matrix();
  const int d = rho.dim();
  std::vector<double> lf(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) lf[n] = log_factorial(n);
  auto log_binomial = [&](int n, int k) { return lf[n] - lf[k] - lf[n - k]; };

  const double log_transmit = -gamma_t;                       // ln e^{-gamma t}
  const double log_lost = std::log(-std::expm1(-gamma_t));    // ln (1 - e^{-gamma t})

  // rho'_{mn} = sum_k sqrt(C(m+k,k) C(n+k,k)) (1-eta)^k eta^{(m+n)/2} rho_{m+k,n+k}
  Matrix out = Matrix::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n <= m; ++n) {
      Complex sum = 0.0;
      for (int k = 0; m + k < d; ++k) {
        const double lw = 0.5 * (log_binomial(m + k, k) + log_binomial(n + k, k)) +
                          k * log_lost + 0.5 * (m + n) * log_transmit;
        sum += std::exp(lw) * in(m + k, n + k);
      }
      out(m, n) = sum;
      out(n, m) = std::conj(sum);
    }
  }
  return symmetrized(std::move(out), rho);
}

SingleModeDensity dephasing_evolve(const SingleModeDensity& rho, double gamma_t) {
  require_time(gamma_t);
  const int d = rho.dim();
  Matrix out = rho.matrix();
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l) {
      const double gap = j - l;
      out(j, l) *= std::exp(-0.5 * gamma_t * gap * gap);
    }
  return symmetrized(std::move(out), rho);
}

SingleModeDensity dephasing_stationary(const SingleModeDensity& rho) {
  Matrix out = rho.matrix().diagonal().real().cast<Complex>().asDiagonal();
  return SingleModeDensity(std::move(out), rho.truncation());
}

SingleModeDensity evolve(const SingleModeDensity& rho, const ChannelParams& params) {
  params.validate();
  return params.kind == ChannelKind::loss ? photon_loss_evolve(rho, params.scaled_time)
                                          : dephasing_evolve(rho, params.scaled_time);
}

// ---------------------------------------------------------------------------

namespace {

Matrix generator(const Matrix& r, ChannelKind kind) {
  const Eigen::Index d = r.rows();
  Matrix out(d, d);
  if (kind == ChannelKind::loss) {
    for (Eigen::Index m = 0; m < d; ++m)
      for (Eigen::Index n = 0; n < d; ++n) {
        Complex v = -0.5 * static_cast<double>(m + n) * r(m, n);
        if (m + 1 < d && n + 1 < d)
          v += std::sqrt(static_cast<double>((m + 1) * (n + 1))) * r(m + 1, n + 1);
        out(m, n) = v;
      }
  } else {
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index l = 0; l < d; ++l) {
        const double gap = static_cast<double>(j - l);
        out(j, l) = -0.5 * gap * gap * r(j, l);
      }
  }
  return out;
}

Matrix rk4_step(const Matrix& y, double h, ChannelKind kind) {
  const Matrix k1 = generator(y, kind);
  const Matrix k2 = generator(y + 0.5 * h * k1, kind);
  const Matrix k3 = generator(y + 0.5 * h * k2, kind);
  const Matrix k4 = generator(y + h * k3, kind);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

double lindblad_local_error(const SingleModeDensity& rho, const ChannelParams& params, int steps) {
  params.validate();
  if (steps <= 0) throw ValidationError("lindblad_integrate: steps must be positive");
  if (params.scaled_time == 0.0) return 0.0;
  const double h = params.scaled_time / steps;
  const Matrix& y = rho.matrix();
  const Matrix full = rk4_step(y, h, params.kind);
  const Matrix halves = rk4_step(rk4_step(y, 0.5 * h, params.kind), 0.5 * h, params.kind);
  return (full - halves).cwiseAbs().maxCoeff() / 15.0;
}

int lindblad_recommended_steps(const SingleModeDensity& rho, const ChannelParams& params) {
  params.validate();
  const double top = rho.cutoff();
  const double rate = params.kind == ChannelKind::loss ? top : 0.5 * top * top;
  const double max_step = 0.02 / std::max(rate, 1.0);
  return std::max(1, static_cast<int>(std::ceil(params.scaled_time / max_step)));
}

SingleModeDensity lindblad_integrate(const SingleModeDensity& rho, const ChannelParams& params,
                                     int steps) {
  const double estimate = lindblad_local_error(rho, params, steps);
  if (estimate > kIntegratorLocalTolerance) {
    std::ostringstream os;
    os << "lindblad_integrate: " << steps << " steps give local error estimate " << estimate
       << " > " << kIntegratorLocalTolerance;
    throw NumericError(os.str());
  }
  if (params.scaled_time == 0.0) return rho;
  const double h = params.scaled_time / steps;
  Matrix y = rho.matrix();
  for (int s = 0; s < steps; ++s) y = rk4_step(y, h, params.kind);
  y /= y.trace().real();
  return symmetrized(std::move(y), rho);
}

}  // namespace epot
