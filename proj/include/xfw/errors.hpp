#ifndef XFW_ERRORS_HPP
#define XFW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xfw {

// Each class maps onto one CLI exit status.

class error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A prime divides some generator, coefficient or denominator, or is ramified
/// where only unramified primes are supported.
class degenerate_input : public error
{
  public:
    using error::error;
};

class factorization_failure : public error
{
  public:
    using error::error;
};

/// Iteration or exponent budget exhausted.
class resource_limit : public error
{
  public:
    using error::error;
};

class checkpoint_error : public error
{
  public:
    using error::error;
};

/// An internal cross-check disagreed. Never expected to fire.
class invariant_breach : public error
{
  public:
    using error::error;
};

} // namespace xfw

#endif
