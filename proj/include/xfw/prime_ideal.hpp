#ifndef XFW_PRIME_IDEAL_HPP
#define XFW_PRIME_IDEAL_HPP

#include <string>
#include <vector>

#include "xfw/factor.hpp"
#include "xfw/quadratic.hpp"

namespace xfw {

/// How a rational prime behaves in the field. `rational` is the degree-one
/// case: the prime itself, residue field Z/p.
enum class prime_kind
{
    rational,
    split,
    inert,
    ramified,
};

std::string to_string(prime_kind k);

/// A prime ideal above the rational prime p. For split and ramified primes
/// `root` is the image of w in Z/p, so the ideal is (p, w - root); the two
/// split ideals are told apart by `conjugate` (false picks the smaller root).
struct prime_ideal
{
    quadratic_field field;
    bigint p;
    prime_kind kind = prime_kind::rational;
    bool conjugate = false;
    bigint root = 0;

    int inertia_degree() const { return kind == prime_kind::inert ? 2 : 1; }
    int ramification_index() const { return kind == prime_kind::ramified ? 2 : 1; }
    bigint norm() const { return inertia_degree() == 2 ? bigint(p * p) : p; }
    std::string to_string() const;

    bool operator==(const prime_ideal & o) const
    {
        return field == o.field && p == o.p && kind == o.kind && conjugate == o.conjugate;
    }
};

/// Kronecker-symbol dispatch. Throws std::invalid_argument for non-prime p.
prime_kind splitting_type(const quadratic_field & k, const bigint & p);

/// One ideal for inert, ramified and rational p; two for split p.
std::vector<prime_ideal> primes_above(const quadratic_field & k, const bigint & p);

/// The ideal above p with the given conjugate flag.
prime_ideal prime_ideal_above(const quadratic_field & k, const bigint & p, bool conjugate = false);

/// Root c of w's minimal polynomial with c^2 - t*c + n = 0 mod p^e, lifted by
/// Newton iteration from the root mod p chosen by `conjugate`. Split primes
/// accept any e; ramified primes only e = 1; inert primes are rejected.
bigint hensel_root(const quadratic_field & k, const bigint & p, unsigned e, bool conjugate = false);

/// v_p(x) for nonzero x.
long valuation(const quadratic_element & x, const prime_ideal & ideal);

struct ideal_power
{
    prime_ideal ideal;
    long exponent = 0;
};

/// The factorization of the fractional ideal (x), x != 0, ordered by rational
/// prime and then conjugate flag. Exponents are nonzero.
std::vector<ideal_power> ideal_factorization(const quadratic_element & x, const factor_options & opts = {});

/// Rational primes at which x has a nonzero valuation at some ideal.
std::vector<bigint> support_primes(const quadratic_element & x, const factor_options & opts = {});

int kronecker(const bigint & a, const bigint & p);

} // namespace xfw

#endif
