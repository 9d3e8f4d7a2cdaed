#ifndef XFW_CERTIFICATES_HPP
#define XFW_CERTIFICATES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "xfw/prime_ideal.hpp"

namespace xfw {

/// Coprime integral ideals with (gamma) = I J^-1.
struct numerator_denominator_ideals
{
    std::vector<ideal_power> numerator;
    std::vector<ideal_power> denominator;
};

numerator_denominator_ideals numerator_denominator(const quadratic_element & gamma);

/// Coefficients of Phi_n, constant term first. Memoized and thread-safe.
const std::vector<bigint> & cyclotomic_poly(std::uint64_t n);

quadratic_element evaluate_cyclotomic(std::uint64_t n, const quadratic_element & x);

/// Product of the primes dividing |n| exactly once.
bigint squarefree_part(const bigint & n);

enum class split_mode
{
    power,
    cyclotomic,
};

/// (value) = U V W^-1 with U squarefree integral, V the integral part of
/// valuation >= 2, W the denominator.
struct ideal_split
{
    std::uint64_t n = 0;
    split_mode mode = split_mode::power;
    quadratic_element value;
    std::vector<ideal_power> u_part;
    std::vector<ideal_power> v_part;
    std::vector<ideal_power> w_part;
};

/// Splits gamma^n - 1 or Phi_n(gamma).
ideal_split split_value(const quadratic_element & gamma, std::uint64_t n, split_mode mode);

struct certificate
{
    std::uint64_t n = 0;
    prime_ideal ideal;
    /// The order of gamma modulo the ideal was recomputed and equals n.
    bool order_check = false;
    /// gamma^(N(p)-1) != 1 mod p^2 was recomputed.
    bool square_check = false;
    /// Fermat quotient residue at the ideal; nonzero.
    bigint k;
};

/// One certificate per ideal that divides Phi_n(gamma) exactly once and is
/// prime to n, I and J. Ramified ideals are skipped. Each certificate is
/// re-verified; a failed check throws invariant_breach.
std::vector<certificate> certificate_for_n(const quadratic_element & gamma, std::uint64_t n);

struct certified_batch
{
    std::uint64_t n = 0;
    std::vector<certificate> certificates;
};

struct skipped_index
{
    std::uint64_t n = 0;
    std::string reason;
};

struct certified_count_report
{
    std::uint64_t n_max = 0;
    /// Distinct certified ideals of absolute norm <= B.
    std::uint64_t count = 0;
    std::vector<certified_batch> stream;
    std::vector<skipped_index> skipped;
};

/// Runs certificate_for_n for every n <= (log B - log 2) / h(gamma). An n
/// whose factorization fails is skipped, so the count stays a lower bound.
certified_count_report certified_count(const quadratic_element & gamma, const bigint & bound, int workers = 0);

} // namespace xfw

#endif
