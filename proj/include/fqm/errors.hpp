#ifndef FQM_ERRORS_HPP
#define FQM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fqm {

// Bad arguments surface as std::invalid_argument, mathematical domain
// violations (degree of zero, division by zero, wrong character parity) as
// std::domain_error. The two types below cover the remaining cases.

/// A computation was refused because it would exceed a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal consistency check failed. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fqm

#endif  // FQM_ERRORS_HPP
