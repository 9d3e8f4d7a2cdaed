#ifndef XFW_DYNAMICS_HPP
#define XFW_DYNAMICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "xfw/heights.hpp"
#include "xfw/periods.hpp"

namespace xfw {

struct group_report
{
    std::vector<quadratic_element> generators;
    std::vector<prime_ideal> support;
    /// valuation_matrix[i][j] = v_{support j}(generator i)
    std::vector<std::vector<long>> valuation_matrix;
    /// A basis of the integer left kernel of the valuation matrix.
    std::vector<std::vector<bigint>> kernel_basis;
    /// Independent relations whose product is a root of unity.
    std::vector<std::vector<bigint>> torsion_relations;
    std::size_t free_rank = 0;
};

/// Free rank of the multiplicative group generated by `a`. Relation
/// products are evaluated exactly; an exponent beyond `exponent_bound`
/// throws resource_limit.
group_report multiplicative_rank(std::span<const quadratic_element> a, unsigned exponent_bound = 64);

/// Sum of N(p)^-r over unramified prime ideals of norm <= y at which no
/// generator has nonzero valuation, r the free rank of `a`.
real expected_count(std::span<const quadratic_element> a, std::uint64_t y);
/// The same sum for a given r.
real expected_count(std::span<const quadratic_element> a, std::uint64_t y, std::size_t r);

struct companion_system
{
    quadratic_field field;
    /// c_0..c_{m-1} with x_{n+m} = sum c_i x_{n+i}
    std::vector<quadratic_element> coefficients;
    /// Shift rows with (c_0, ..., c_{m-1}) as the last row, so M q_i = q_{i+1}.
    std::vector<std::vector<quadratic_element>> matrix;
    /// q_0 = (x_0, ..., x_{m-1})
    std::vector<quadratic_element> initial;

    std::size_t order() const { return coefficients.size(); }
};

companion_system make_companion_system(const recurrence_tuple & t);

/// det(xI - M) by the Faddeev-LeVerrier recursion, constant term first.
std::vector<quadratic_element> characteristic_polynomial(const std::vector<std::vector<quadratic_element>> & m);

/// prod (x - a_i), constant term first.
std::vector<quadratic_element> expand_roots(std::span<const quadratic_element> roots);

/// Least k >= 1 with M^k q_0 = q_0 in O_K / p^e, confirmed by computing M^k
/// separately. Throws degenerate_input when M is not invertible there.
bigint orbit_period(const companion_system & sys, const modulus_factor & modulus);

/// The same over Z/m; needs a system with rational entries.
bigint orbit_period(const companion_system & sys, const bigint & m);

struct consistency_verdict
{
    bigint orbit;
    bigint formula;
    bool charpoly_matches = false;
};

/// Compares orbit_period with period_formula and the characteristic
/// polynomial of M with prod (x - a_i). Any disagreement throws
/// invariant_breach.
consistency_verdict eigen_consistency(const recurrence_tuple & t, const modulus_factor & modulus);

} // namespace xfw

#endif
