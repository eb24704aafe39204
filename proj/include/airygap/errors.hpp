#ifndef AIRYGAP_ERRORS_HPP
#define AIRYGAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace airygap {

// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Gap endpoints too close for double precision to separate the branch points.
class degenerate_configuration : public domain_error {
public:
  using domain_error::domain_error;
};

// A numerical procedure could not produce a trustworthy value.
class numeric_failure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Two routes to the same quantity disagree beyond tolerance.
class consistency_error : public numeric_failure {
public:
  using numeric_failure::numeric_failure;
};

} // namespace airygap

#endif
