#ifndef XFW_HEIGHTS_HPP
#define XFW_HEIGHTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "xfw/prime_ideal.hpp"

namespace xfw {

/// 40 decimal digits, i.e. a mantissa of at least 128 bits.
using real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>,
                                           boost::multiprecision::et_off>;

constexpr double default_tolerance = 1e-12;

real to_real(const bigint & n);
real to_real(const rational & q);
real log_real(const bigint & n);
real log_real(const rational & q);

/// digits = 0 prints the shortest string that round-trips through a double.
std::string format_real(const real & x, int digits = 0);

/// ||x||_v normalized so that the product formula holds: N(p)^(-v_p(x)) at
/// finite places, |sigma(x)| at real places, |sigma(x)|^2 at the complex place.
struct place_value
{
    bool infinite = false;
    prime_ideal ideal;
    long exponent = 0;
    int embedding = 0;
    int weight = 1;
    real value;
    real log_value;
};

/// Every infinite place, plus the finite places where ||x||_v != 1.
std::vector<place_value> local_values(const quadratic_element & x);

/// log |N(x)| / [K:Q]
real log_norm(const quadratic_element & x);
/// log N(p) / [K:Q]
real log_norm(const prime_ideal & ideal);

real element_height(const quadratic_element & gamma);

/// (1/[K:Q]) log max(||x||_v, 1)
real lambda(const place_value & v, int degree);
/// Sum of lambda_v(gamma) over the infinite places.
real lambda_infinite(const quadratic_element & gamma);

real triple_height(const quadratic_element & x1, const quadratic_element & x2, const quadratic_element & x3);

/// Sum of log N(p)/[K:Q] over the prime ideals where the three valuations
/// are not all equal.
real radical(const quadratic_element & x1, const quadratic_element & x2, const quadratic_element & x3);

struct abc_report
{
    real height;
    real radical;
    real quality;
    /// Radical zero with positive height.
    bool infinite = false;
};

/// Requires x1 + x2 + x3 = 0 and no zero entry.
abc_report abc_quality(const quadratic_element & x1, const quadratic_element & x2, const quadratic_element & x3);

struct phi_ratio_report
{
    real log_norm;
    std::uint64_t phi = 0;
    real ratio;
    real target;
};

/// LogNorm(Phi_n(gamma)) / phi(n) and its limit, the sum of lambda_v(gamma)
/// over the infinite places.
phi_ratio_report phi_norm_ratio(const quadratic_element & gamma, std::uint64_t n);

struct totient_density_report
{
    std::uint64_t count = 0;
    double bound = 0;
};

/// |{n <= Y : phi(n) >= delta n}| against (6/pi^2 - delta) Y.
totient_density_report totient_density(std::uint32_t y, double delta);

} // namespace xfw

#endif
