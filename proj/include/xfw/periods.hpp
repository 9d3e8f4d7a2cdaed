#ifndef XFW_PERIODS_HPP
#define XFW_PERIODS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "xfw/residue.hpp"

namespace xfw {

/// (a_1..a_m, b_1..b_m) generating x_n = sum b_i a_i^n.
struct recurrence_tuple
{
    std::vector<quadratic_element> a;
    std::vector<quadratic_element> b;

    /// ((1+sqrt 5)/2, (1-sqrt 5)/2, 1/sqrt 5, -1/sqrt 5)
    static recurrence_tuple fibonacci();

    /// Throws std::invalid_argument on size mismatch, zero or repeated
    /// generators, zero coefficients or mixed fields.
    void validate() const;
    quadratic_field field() const;
    std::size_t order() const { return a.size(); }
    quadratic_element term(std::uint64_t n) const;

    /// c_0..c_{m-1} with x_{n+m} = sum c_i x_{n+i}, from prod (X - a_i).
    std::vector<quadratic_element> recurrence_coefficients() const;
};

/// One prime-power factor p^e of a modulus ideal.
struct modulus_factor
{
    prime_ideal ideal;
    unsigned e = 1;

    bigint norm() const { return pow(ideal.norm(), e); }
    std::string to_string() const;
};

/// The ideal mO_K as a product of prime-ideal powers.
std::vector<modulus_factor> factor_modulus(const quadratic_field & k, const bigint & m);

enum class period_method
{
    formula,
    brute_force,
};

struct generator_order
{
    std::size_t generator = 0;
    std::string modulus;
    bigint order;
};

struct period_report
{
    std::string modulus;
    bigint period = 1;
    std::vector<generator_order> orders;
    period_method method = period_method::formula;
};

bool is_degenerate(const recurrence_tuple & t, const prime_ideal & ideal);

/// True when two generators agree modulo the ideal. The lcm-of-orders law
/// needs the generators' Vandermonde matrix to stay invertible mod p, which
/// fails exactly here, e.g. (2, 7, 1, -1) mod 5 is identically zero.
bool generators_collide(const recurrence_tuple & t, const prime_ideal & ideal);

/// Least k >= 1 with x^k = 1, by stripping primes from the unit group order.
bigint multiplicative_order(const residue_ring & ring, const residue & x);

/// lcm of ord_{p_i^e_i}(a_j). Throws degenerate_input for ramified,
/// degenerate or colliding factors.
period_report period_formula(const recurrence_tuple & t, std::span<const modulus_factor> factors);

struct bruteforce_options
{
    /// Maximum number of steps; 0 selects 6 * |ring|^2.
    std::uint64_t budget = 0;
};

/// First return of the state window (x_n..x_{n+m-1}) to (x_0..x_{m-1}),
/// with terms evaluated from the closed form in O_K / p^e.
period_report period_bruteforce(const recurrence_tuple & t, const modulus_factor & modulus,
                                const bruteforce_options & opts = {});

/// The same over Z/m, iterating the integer recurrence. Requires rational
/// recurrence coefficients and initial terms with denominators prime to m.
period_report period_bruteforce(const recurrence_tuple & t, const bigint & m, const bruteforce_options & opts = {});

/// Pisano period of the Fibonacci numbers modulo m >= 1.
bigint pisano(const bigint & m);

struct divisibility_verdict
{
    bigint period;
    bigint group_order;
    bool divides = false;
};

/// pi_X(p) against N(p) - 1 for one prime ideal.
divisibility_verdict divisibility_check(const recurrence_tuple & t, const prime_ideal & ideal);

/// pi_X(pO_K) against p^f - 1 for a rational prime p.
divisibility_verdict divisibility_check(const recurrence_tuple & t, const bigint & p);

} // namespace xfw

#endif
