#include "epot/appendix_a.hpp"

#include "epot/channels.hpp"
#include "epot/errors.hpp"
#include "epot/measures.hpp"
#include "epot/optics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace epot::appendix_a {

namespace {

SingleModeDensity split_reduced(const FockVector& psi) {
  return partial_trace_b(beam_splitter_output(SingleModeDensity::pure(psi)));
}

SingleModeDensity loss_reduced(const FockVector& psi, double gamma_t) {
  return photon_loss_evolve(SingleModeDensity::pure(psi), gamma_t);
}

}  // namespace

double entropic_ep(const FockVector& psi) { return von_neumann_entropy(split_reduced(psi)); }

double mixedness_at_ln2(const FockVector& psi) {
  return von_neumann_entropy(loss_reduced(psi, std::numbers::ln2));
}

Equivalence equivalence_check(const FockVector& psi, double loss_time_offset) {
  const SingleModeDensity split = split_reduced(psi);
  const SingleModeDensity lossy = loss_reduced(psi, std::numbers::ln2 + loss_time_offset);
  Equivalence eq;
  eq.trace_distance = trace_distance(split, lossy);
  if (!(eq.trace_distance <= kIdentityTolerance)) {
    std::ostringstream os;
    os << "beam-splitter reduction and loss at gamma_t = ln 2 differ: trace distance "
       << eq.trace_distance << " exceeds " << kIdentityTolerance;
    throw IdentityViolation(os.str());
  }
  eq.lhs = von_neumann_entropy(split);
  eq.rhs = von_neumann_entropy(lossy);
  eq.gap = std::abs(eq.lhs - eq.rhs);
  return eq;
}

}  // namespace epot::appendix_a
