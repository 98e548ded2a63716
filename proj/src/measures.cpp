#include "epot/measures.hpp"

#include "epot/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

namespace epot {

namespace {

// Groups indices of a Hermitian matrix into components connected by nonzero entries.
std::vector<std::vector<Eigen::Index>> connected_blocks(const Matrix& h) {
  const Eigen::Index n = h.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i)
      if (h(i, j) != Complex(0.0)) {
        const auto ri = find(i);
        const auto rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "Hermitian eigensolver failed on a " << h.rows() << "x" << h.cols()
       << " matrix (Frobenius norm " << h.norm() << ", max |H - H^dagger| "
       << (h - h.adjoint()).cwiseAbs().maxCoeff() << ")";
    throw NumericError(os.str());
  }
  return es.eigenvalues();
}

double clamp_noise(double value) { return value < kNegativityNoiseFloor ? 0.0 : value; }

}  // namespace

double log_negativity(const TwoModeDensity& rho) {
  TwoModeOperator pt = partial_transpose(rho);
  const Matrix h = 0.5 * (pt.matrix + pt.matrix.adjoint());
  double negative = 0.0;
  double trace = 0.0;
  for (const auto& block : connected_blocks(h)) {
    const auto n = static_cast<Eigen::Index>(block.size());
    if (n == 1) {
      const double v = h(block[0], block[0]).real();
      trace += v;
      if (v < 0.0) negative -= v;
      continue;
    }
    Matrix sub(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = h(block[i], block[j]);
    const Eigen::VectorXd ev = hermitian_eigenvalues(sub);
    for (Eigen::Index i = 0; i < n; ++i) {
      trace += ev(i);
      if (ev(i) < 0.0) negative -= ev(i);
    }
  }
  // ||rho^Gamma||_1 = tr + 2 * (sum of |negative eigenvalues|)
  return clamp_noise(std::log1p(2.0 * negative / trace) / std::numbers::ln2);
}

double entanglement_potential(const SingleModeDensity& rho_a) {
  return log_negativity(beam_splitter_output(rho_a.compacted(kCompactionTailMass)));
}

double entanglement_potential(const FockVector& psi) {
  const Matrix c = beam_splitter_amplitudes(psi);
  Eigen::BDCSVD<Matrix> svd(c);
  const double s = svd.singularValues().sum();
  return clamp_noise(2.0 * std::log2(s));
}

double concurrence_two_qubit(const TwoModeDensity& rho) {
  if (rho.cutoff_a() < 1 || rho.cutoff_b() < 1)
    throw ValidationError("concurrence_two_qubit: both modes need at least two levels");
  Matrix q(4, 4);
  const int levels[2] = {0, 1};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      q(i, j) = rho.matrix()(rho.index(levels[i / 2], levels[i % 2]),
                             rho.index(levels[j / 2], levels[j % 2]));
  const double inside = q.trace().real();
  const double leak = rho.matrix().trace().real() - inside;
  if (leak > kQubitSubspaceTolerance) {
    std::ostringstream os;
    os << "concurrence_two_qubit: population " << leak
       << " lies outside the two-qubit subspace";
    throw SubspaceViolation(os.str());
  }
  q /= inside;
  q = 0.5 * (q + q.adjoint()).eval();

  // spin flip: (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y)
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(q);
  if (es.info() != Eigen::Success) throw NumericError("concurrence_two_qubit: eigensolver failed");
  // Eigenvalues at rounding level are zeroed: their square roots would otherwise inject
  // ~1e-8 noise into an exactly rank-deficient state.
  const Eigen::VectorXd w =
      es.eigenvalues().unaryExpr([](double v) { return v < 1e-14 ? 0.0 : std::sqrt(v); });
  const Matrix root = es.eigenvectors() * w.cast<Complex>().asDiagonal() *
                      es.eigenvectors().adjoint();
  // lambda_i = sqrt(eig(sqrt(rho) rho~ sqrt(rho))) are the singular values of
  // sqrt(rho) (sy sy) sqrt(rho)^*, which avoids square roots of near-zero eigenvalues.
  Eigen::JacobiSVD<Matrix> svd(root * yy * root.conjugate());
  Eigen::VectorXd lam = svd.singularValues();
  std::sort(lam.data(), lam.data() + lam.size(), std::greater<>());
  return std::max(0.0, lam(0) - lam(1) - lam(2) - lam(3));
}

double von_neumann_entropy(const SingleModeDensity& rho) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho.matrix());
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double p = ev(i);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

QuadratureResult min_quadrature_variance(const SingleModeDensity& rho) {
  const Matrix& r = rho.matrix();
  Complex a1 = 0.0;  // <a>
  Complex a2 = 0.0;  // <a^2>
  double n1 = 0.0;   // <a^dagger a>
  for (int n = 0; n < rho.dim(); ++n) {
    n1 += n * r(n, n).real();
    if (n >= 1) a1 += std::sqrt(static_cast<double>(n)) * r(n, n - 1);
    if (n >= 2) a2 += std::sqrt(static_cast<double>(n) * (n - 1)) * r(n, n - 2);
  }
  const double number_var = n1 - std::norm(a1);  // <da^dagger da>
  const Complex pair_var = a2 - a1 * a1;          // <da^2>
  // 4 Var(x_phi) = 1 + 2 <da^dagger da> + 2 Re(e^{-2 i phi} <da^2>)
  QuadratureResult out;
  out.sigma2 = 1.0 + 2.0 * number_var - 2.0 * std::abs(pair_var);
  double phi = 0.5 * (std::arg(pair_var) + std::numbers::pi);
  phi = std::fmod(phi, std::numbers::pi);
  if (phi < 0.0) phi += std::numbers::pi;
  out.phi_min = phi;
  return out;
}

double trace_distance(const SingleModeDensity& a, const SingleModeDensity& b) {
  const int d = std::max(a.dim(), b.dim());
  Matrix diff = Matrix::Zero(d, d);
  diff.topLeftCorner(a.dim(), a.dim()) += a.matrix();
  diff.topLeftCorner(b.dim(), b.dim()) -= b.matrix();
  diff = 0.5 * (diff + diff.adjoint()).eval();
  return 0.5 * hermitian_eigenvalues(diff).cwiseAbs().sum();
}

}  // namespace epot
