#ifndef XFW_RESIDUE_HPP
#define XFW_RESIDUE_HPP

#include <cstdint>
#include <string>

#include "xfw/prime_ideal.hpp"

namespace xfw {

/// Coordinates of a class in O_K / p^e. Rational, split and ramified moduli
/// use `u` alone (w acts as the Hensel root); inert moduli use u + v*w.
struct residue
{
    bigint u = 0;
    bigint v = 0;

    bool operator==(const residue &) const = default;
};

/// The ring O_K / p^e. Ramified ideals are accepted for e = 1 only.
class residue_ring
{
  public:
    residue_ring(prime_ideal ideal, unsigned e);

    const prime_ideal & ideal() const { return ideal_; }
    unsigned exponent() const { return e_; }
    /// p^e; the coordinate modulus (not the ideal norm).
    const bigint & modulus() const { return modulus_; }
    bool is_inert() const { return ideal_.kind == prime_kind::inert; }
    std::string to_string() const;

    residue zero() const { return {}; }
    residue one() const { return {1, 0}; }
    residue from_int(const bigint & n) const { return {mod(n, modulus_), 0}; }

    /// Ring homomorphism from the p-integral elements. Throws
    /// degenerate_input when v_p(x) < 0.
    residue reduce(const quadratic_element & x) const;

    residue add(const residue & x, const residue & y) const;
    residue sub(const residue & x, const residue & y) const;
    residue mul(const residue & x, const residue & y) const;
    residue neg(const residue & x) const;
    residue pow(const residue & x, const bigint & k) const;
    /// Throws std::domain_error for non-units.
    residue inverse(const residue & x) const;

    bool is_unit(const residue & x) const;
    bool is_zero(const residue & x) const { return sgn(x.u) == 0 && sgn(x.v) == 0; }
    bool is_one(const residue & x) const { return x.u == 1 && sgn(x.v) == 0; }

    /// |(O_K / p^e)^x| = p^((e-1) f) (p^f - 1); ramified ideals rejected.
    bigint unit_group_order() const;
    /// The same number, factored through p - 1 and p + 1 separately.
    factorization unit_group_factorization() const;

    std::string format(const residue & x) const;

  private:
    bigint reduce_int(const bigint & n) const { return mod(n, modulus_); }

    prime_ideal ideal_;
    unsigned e_;
    bigint modulus_;
    bigint root_;
    bool small_ = false;
    std::uint64_t m64_ = 0;
    std::uint64_t omega_norm64_ = 0;
};

/// Free-function spellings of the ring operations.
residue reduce(const quadratic_element & x, const residue_ring & ring);
residue residue_pow(const residue_ring & ring, const residue & x, const bigint & k);
bigint unit_group_order(const prime_ideal & ideal, unsigned e);

} // namespace xfw

#endif
