#ifndef XFW_WIEFERICH_HPP
#define XFW_WIEFERICH_HPP

#include <cstdint>
#include <span>
#include <string>

#include "xfw/periods.hpp"

namespace xfw {

struct wieferich_verdict
{
    prime_ideal ideal;
    std::string base;
    /// k with gamma^(N(p)-1) = 1 + k*p mod p^2. Inert ideals encode the
    /// residue-field element k1 + k2*w as k1 + k2*p.
    bigint k;
    bool is_wieferich = false;
    /// gamma is a root of unity, so every unramified ideal qualifies.
    bool torsion_base = false;
};

/// Throws degenerate_input at ramified ideals or when v_p(gamma) != 0.
wieferich_verdict wieferich_test(const quadratic_element & gamma, const prime_ideal & ideal);
bigint fermat_quotient_residue(const quadratic_element & gamma, const prime_ideal & ideal);
bool is_alpha_wieferich(const quadratic_element & gamma, const prime_ideal & ideal);

/// Every generator satisfies a^(N(p)-1) = 1 mod p^2.
bool is_x_fw_prime(std::span<const quadratic_element> generators, const prime_ideal & ideal);

struct wall_verdict
{
    bigint pi_p;
    bigint pi_p2;
    bool equal = false;
};

/// pi(p) against pi(p^2) for the Fibonacci numbers. p = 2 and p = 5 go
/// through the brute-force path; every other prime through the order formula.
wall_verdict wall_period_test(const bigint & p);

/// F_{p - (5/p)} = 0 mod p^2, by companion-matrix exponentiation. Rejects
/// p = 2 and p = 5.
bool wss_divisibility_test(const bigint & p);

/// Unramified prime ideals of absolute norm <= norm_bound at which the
/// congruence gamma^(N(p)-1) = 1 mod p^2 fails. Ideals where gamma is not a
/// unit count as failing.
std::uint64_t count_non_wieferich(const quadratic_element & gamma, std::uint64_t norm_bound);

bool is_torsion(const quadratic_element & x);

} // namespace xfw

#endif
