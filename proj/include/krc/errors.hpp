#ifndef KRC_ERRORS_HPP_
#define KRC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace krc {

  // Malformed input or a violated precondition.
  class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // An enumeration or search exceeded its configured budget.
  class ResourceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A constructed object failed its own self-check. This always indicates a
  // bug in the construction, never bad user input.
  class VerificationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

}  // namespace krc

#endif  // KRC_ERRORS_HPP_
