#include "epot/errors.hpp"

#include "epot/fockspace.hpp"

#include <sstream>

namespace epot {

CutoffError::CutoffError(int cutoff, double tail_mass)
    : Error([&] {
        std::ostringstream os;
        os << "cutoff " << cutoff << " is inadequate: tail mass " << tail_mass
           << " in the top " << kTailLevels << " levels exceeds " << kTailTolerance;
        return os.str();
      }()),
      cutoff_(cutoff),
      tail_mass_(tail_mass) {}

WindowError::WindowError(const std::string& what, double lo, double hi)
    : Error(what), lo_(lo), hi_(hi) {}

}  // namespace epot
