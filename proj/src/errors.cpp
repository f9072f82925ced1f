#include "souvlaki/errors.hpp"

#include "souvlaki/numeric.hpp"

namespace souvlaki {

BudgetExceeded::BudgetExceeded(const std::string& what, double estimate, double budget)
    : Error(what + ": estimated " + format_real(estimate) + " vertices exceeds budget " +
            format_real(budget)),
      estimate_(estimate),
      budget_(budget) {}

SolverError::SolverError(const std::string& what, double residual, long iterations)
    : Error(what + " (residual " + format_real(residual) + " after " +
            std::to_string(iterations) + " iterations)"),
      residual_(residual),
      iterations_(iterations) {}

}  // namespace souvlaki
