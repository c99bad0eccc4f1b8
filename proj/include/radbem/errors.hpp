#ifndef RADBEM_ERRORS_HPP
#define RADBEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace radbem {

/// Thrown when a computation fails numerically (singular matrix,
/// non-convergent iteration, non-finite intermediate value).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what, double condition_estimate = 0.0)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}

  double condition_estimate() const { return condition_estimate_; }

private:
  double condition_estimate_;
};

} // namespace radbem

#endif
