#ifndef XFW_BIGINT_HPP
#define XFW_BIGINT_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace xfw {

using bigint = mpz_class;
using rational = mpq_class;

inline bigint from_u64(std::uint64_t x)
{
    bigint r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
    return r;
}

inline bigint from_i64(std::int64_t x)
{
    bigint r = from_u64(x < 0 ? std::uint64_t(0) - std::uint64_t(x) : std::uint64_t(x));
    if (x < 0)
        r = -r;
    return r;
}

inline bool fits_u64(const bigint & x)
{
    return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const bigint & x)
{
    std::uint64_t r = 0;
    if (sgn(x) != 0)
        mpz_export(&r, nullptr, 1, sizeof(r), 0, 0, x.get_mpz_t());
    return r;
}

inline bigint pow(const bigint & b, unsigned long e)
{
    bigint r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

/// Least nonnegative residue of a modulo m (m > 0).
inline bigint mod(const bigint & a, const bigint & m)
{
    bigint r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bigint powm(const bigint & b, const bigint & e, const bigint & m)
{
    bigint r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::optional<bigint> inverse_mod(const bigint & a, const bigint & m)
{
    bigint r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        return std::nullopt;
    return r;
}

inline bigint lcm(const bigint & a, const bigint & b)
{
    bigint r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// p-adic valuation of a nonzero integer.
inline unsigned long p_valuation(const bigint & n, const bigint & p)
{
    bigint rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

inline bool divides(const bigint & d, const bigint & n)
{
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Natural log of |n| in double precision, valid far beyond the double range.
inline double log_abs(const bigint & n)
{
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    if (mant < 0)
        mant = -mant;
    return std::log(mant) + double(exp) * 0.69314718055994530942;
}

inline std::string to_string(const bigint & n) { return n.get_str(10); }

inline std::string to_string(const rational & q) { return q.get_str(10); }

} // namespace xfw

#endif
