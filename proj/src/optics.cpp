#include "epot/optics.hpp"

#include "epot/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace epot {

TwoModeDensity::TwoModeDensity(Matrix matrix, int cutoff_a, int cutoff_b)
    : op_{std::move(matrix), cutoff_a, cutoff_b} {
  if (cutoff_a < 0 || cutoff_b < 0) throw ValidationError("TwoModeDensity: negative cutoff");
  const Eigen::Index d = static_cast<Eigen::Index>(op_.dim_a()) * op_.dim_b();
  if (op_.matrix.rows() != d || op_.matrix.cols() != d)
    throw ValidationError("TwoModeDensity: matrix shape does not match the mode cutoffs");
  const double asym = (op_.matrix - op_.matrix.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermiticityTolerance) {
    std::ostringstream os;
    os << "TwoModeDensity: not Hermitian (max asymmetry " << asym << ")";
    throw ValidationError(os.str());
  }
  const double tr = op_.matrix.trace().real();
  if (std::abs(tr - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "TwoModeDensity: trace " << tr << " differs from 1";
    throw ValidationError(os.str());
  }
}

std::vector<Complex> bs_coefficients(int n) {
  if (n < 0) throw ValidationError("bs_coefficients: n must be non-negative");
  static constexpr Complex kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const double log_binom = log_factorial(n) - log_factorial(j) - log_factorial(n - j);
    const double mag = std::exp(0.5 * (log_binom - n * std::numbers::ln2));
    c[j] = kPowersOfI[j % 4] * mag;
  }
  return c;
}

TwoModeDensity beam_splitter_output(const SingleModeDensity& rho_a, std::size_t memory_budget) {
  const int cutoff = rho_a.cutoff();
  const int d = rho_a.dim();
  const std::size_t dim = static_cast<std::size_t>(d) * d;
  const std::size_t bytes = dim * dim * sizeof(Complex);
  if (bytes > memory_budget) {
    std::ostringstream os;
    os << "beam_splitter_output: cutoff " << cutoff << " needs a " << dim << "x" << dim
       << " matrix (" << bytes << " bytes) over the budget of " << memory_budget << " bytes";
    throw ResourceError(os.str());
  }

  std::vector<std::vector<Complex>> coeff(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) coeff[n] = bs_coefficients(n);

  TwoModeOperator out{Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)),
                      cutoff, cutoff};
  const Matrix& in = rho_a.matrix();
  // Each (n, j, n', l) lands on a distinct entry |n-j, j><n'-l, l|.
  for (int n = 0; n < d; ++n) {
    for (int np = 0; np < d; ++np) {
      const Complex r = in(n, np);
      if (r == Complex(0.0)) continue;
      for (int j = 0; j <= n; ++j) {
        const Complex left = r * coeff[n][j];
        const Eigen::Index row = out.index(n - j, j);
        for (int l = 0; l <= np; ++l)
          out.matrix(row, out.index(np - l, l)) = left * std::conj(coeff[np][l]);
      }
    }
  }
  out.matrix = 0.5 * (out.matrix + out.matrix.adjoint()).eval();
  return TwoModeDensity(std::move(out.matrix), cutoff, cutoff);
}

Matrix beam_splitter_amplitudes(const FockVector& psi) {
  const int d = psi.cutoff() + 1;
  Matrix c = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    const Complex a = psi[n];
    if (a == Complex(0.0)) continue;
    const auto coeff = bs_coefficients(n);
    for (int j = 0; j <= n; ++j) c(n - j, j) += a * coeff[j];
  }
  return c;
}

TwoModeOperator partial_transpose(const TwoModeOperator& rho) {
  TwoModeOperator out{Matrix(rho.matrix.rows(), rho.matrix.cols()), rho.cutoff_a, rho.cutoff_b};
  for (int na = 0; na < rho.dim_a(); ++na)
    for (int nb = 0; nb < rho.dim_b(); ++nb)
      for (int ma = 0; ma < rho.dim_a(); ++ma)
        for (int mb = 0; mb < rho.dim_b(); ++mb)
          out.matrix(out.index(na, nb), out.index(ma, mb)) =
              rho.matrix(rho.index(na, mb), rho.index(ma, nb));
  return out;
}

TwoModeOperator partial_transpose(const TwoModeDensity& rho) {
  return partial_transpose(rho.as_operator());
}

SingleModeDensity partial_trace_b(const TwoModeDensity& rho) {
  Matrix out = Matrix::Zero(rho.dim_a(), rho.dim_a());
  for (int i = 0; i < rho.dim_a(); ++i)
    for (int j = 0; j < rho.dim_a(); ++j) {
      Complex s = 0.0;
      for (int k = 0; k < rho.dim_b(); ++k) s += rho.matrix()(rho.index(i, k), rho.index(j, k));
      out(i, j) = s;
    }
  out = 0.5 * (out + out.adjoint()).eval();
  return SingleModeDensity(std::move(out));
}

SingleModeDensity partial_trace_a(const TwoModeDensity& rho) {
  Matrix out = Matrix::Zero(rho.dim_b(), rho.dim_b());
  for (int i = 0; i < rho.dim_b(); ++i)
    for (int j = 0; j < rho.dim_b(); ++j) {
      Complex s = 0.0;
      for (int k = 0; k < rho.dim_a(); ++k) s += rho.matrix()(rho.index(k, i), rho.index(k, j));
      out(i, j) = s;
    }
  out = 0.5 * (out + out.adjoint()).eval();
  return SingleModeDensity(std::move(out));
}

TwoModeDensity tensor_product(const SingleModeDensity& a, const SingleModeDensity& b) {
  const Eigen::Index da = a.dim();
  const Eigen::Index db = b.dim();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return TwoModeDensity(std::move(out), a.cutoff(), b.cutoff());
}

}  // namespace epot
