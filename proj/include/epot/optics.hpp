// optics.hpp: 50:50 beam splitter with a vacuum ancilla and two-mode partial operations
//
// Two-mode index convention: |n_a, n_b> sits at row n_a * (cutoff_b + 1) + n_b (a-major).
// Partial transposition always acts on mode b.

#pragma once

#include "epot/fockspace.hpp"

#include <cstddef>
#include <vector>

namespace epot {

// Dense operator on the truncated two-mode space; not necessarily a state.
struct TwoModeOperator {
  Matrix matrix;
  int cutoff_a = 0;
  int cutoff_b = 0;

  int dim_a() const noexcept { return cutoff_a + 1; }
  int dim_b() const noexcept { return cutoff_b + 1; }
  Eigen::Index index(int na, int nb) const noexcept {
    return static_cast<Eigen::Index>(na) * dim_b() + nb;
  }
};

class TwoModeDensity {
 public:
  // Validates shape, Hermiticity (1e-12) and trace (1e-12).
  TwoModeDensity(Matrix matrix, int cutoff_a, int cutoff_b);

  const Matrix& matrix() const noexcept { return op_.matrix; }
  int cutoff_a() const noexcept { return op_.cutoff_a; }
  int cutoff_b() const noexcept { return op_.cutoff_b; }
  int dim_a() const noexcept { return op_.dim_a(); }
  int dim_b() const noexcept { return op_.dim_b(); }
  Eigen::Index index(int na, int nb) const noexcept { return op_.index(na, nb); }
  const TwoModeOperator& as_operator() const noexcept { return op_; }

 private:
  TwoModeOperator op_;
};

// Matrices above this many bytes are refused by beam_splitter_output.
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{512} << 20;

// Amplitudes c_j of |n-j, j> in U_BS (|n> (x) |0>), c_j = i^j sqrt(C(n,j) / 2^n).
std::vector<Complex> bs_coefficients(int n);

// U_BS (rho_a (x) |0><0|) U_BS^dagger with U_BS = exp(i pi/4 (a^dagger b + a b^dagger)).
// Both output modes keep the input cutoff, which holds the output exactly.
TwoModeDensity beam_splitter_output(const SingleModeDensity& rho_a,
                                    std::size_t memory_budget = kDefaultMemoryBudget);

// Pure-input variant: the output state vector U_BS (|psi> (x) |0>) as a (dim_a x dim_b)
// coefficient matrix C(n_a, n_b).
Matrix beam_splitter_amplitudes(const FockVector& psi);

TwoModeOperator partial_transpose(const TwoModeOperator& rho);
TwoModeOperator partial_transpose(const TwoModeDensity& rho);

SingleModeDensity partial_trace_b(const TwoModeDensity& rho);
SingleModeDensity partial_trace_a(const TwoModeDensity& rho);

TwoModeDensity tensor_product(const SingleModeDensity& a, const SingleModeDensity& b);

}  // namespace epot
