#pragma once

#include <stdexcept>
#include <string>

namespace psiroots {

// Argument within the guard radius of a pole of the function.
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Root finder exhausted its iteration budget without meeting tolerance.
class iteration_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No sign change found among the sampled points of a search bracket.
class no_sign_change_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation point coincides (within guard) with a zero used by the
// computation, or the computation is otherwise singular there.
class degenerate_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace psiroots
