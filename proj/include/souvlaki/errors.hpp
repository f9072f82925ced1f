#pragma once

#include <stdexcept>
#include <string>

namespace souvlaki {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class CoordinateError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double estimate, double budget);

  double estimate() const noexcept { return estimate_; }
  double budget() const noexcept { return budget_; }

 private:
  double estimate_;
  double budget_;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual, long iterations);

  double residual() const noexcept { return residual_; }
  long iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  long iterations_;
};

}  // namespace souvlaki
