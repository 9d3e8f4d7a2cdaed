#ifndef XFW_TEST_ORACLES_HPP
#define XFW_TEST_ORACLES_HPP

// Deliberately naive reference computations. Nothing here calls into the
// library's algorithms, only into its value types.

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "xfw/quadratic.hpp"

namespace oracle {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 pisano(u64 m)
{
    if (m == 1)
        return 1;
    u64 a = 0, b = 1, k = 0;
    do
    {
        u64 c = (a + b) % m;
        a = b;
        b = c;
        ++k;
    } while (!(a == 0 && b == 1));
    return k;
}

inline u64 fib_mod(u64 n, u64 m)
{
    u64 a = 0, b = 1 % m;
    for (u64 i = 0; i < n; ++i)
    {
        u64 c = (a + b) % m;
        a = b;
        b = c;
    }
    return a;
}

inline u64 powmod(u64 b, u64 e, u64 m)
{
    u64 r = 1 % m;
    b %= m;
    for (u64 i = 0; i < e; ++i)
        r = u64(u128(r) * b % m);
    return r;
}

/// Least k with a^k = 1 mod m by stepping through the powers.
inline u64 order(u64 a, u64 m)
{
    a %= m;
    u64 x = a, k = 1;
    while (x != 1 % m)
    {
        x = u64(u128(x) * a % m);
        if (++k > m)
            return 0;
    }
    return k;
}

inline bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::vector<u64> primes_below(u64 n)
{
    std::vector<u64> out;
    for (u64 p = 2; p < n; ++p)
        if (is_prime(p))
            out.push_back(p);
    return out;
}

inline std::map<xfw::bigint, unsigned> trial_factor(xfw::bigint n)
{
    std::map<xfw::bigint, unsigned> f;
    n = abs(n);
    for (xfw::bigint d = 2; d * d <= n; ++d)
        while (n % d == 0)
        {
            ++f[d];
            n /= d;
        }
    if (n > 1)
        ++f[n];
    return f;
}

inline u64 phi(u64 n)
{
    u64 r = 0;
    for (u64 k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1)
            ++r;
    return r;
}

inline int mobius(u64 n)
{
    int m = 1;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
        {
            n /= d;
            if (n % d == 0)
                return 0;
            m = -m;
        }
    return n > 1 ? -m : m;
}

/// Phi_n(x) as prod_{d | n} (x^d - 1)^mu(n/d).
inline xfw::quadratic_element cyclotomic_value(u64 n, const xfw::quadratic_element & x)
{
    const xfw::quadratic_element one(x.field(), 1);
    xfw::quadratic_element num = one, den = one;
    for (u64 d = 1; d <= n; ++d)
    {
        if (n % d)
            continue;
        int mu = mobius(n / d);
        xfw::quadratic_element f = x.pow(std::int64_t(d)) - one;
        if (mu == 1)
            num *= f;
        else if (mu == -1)
            den *= f;
    }
    return num / den;
}

/// Roots of x^2 - t x + n mod p by trying every residue.
inline std::vector<u64> quadratic_roots(std::int64_t t, std::int64_t n, u64 p)
{
    std::vector<u64> out;
    for (u64 c = 0; c < p; ++c)
    {
        std::int64_t v = std::int64_t(c * c) - t * std::int64_t(c) + n;
        if (((v % std::int64_t(p)) + std::int64_t(p)) % std::int64_t(p) == 0)
            out.push_back(c);
    }
    return out;
}

/// Units of Z[w]/q Z[w], w^2 = t w - n, found by searching for inverses.
/// (a + b w)(c + d w) = (ac - n bd) + (ad + bc + t bd) w; the inner loop
/// steps d and updates both coordinates by addition.
inline u64 count_units_pairs(std::int64_t t, std::int64_t n, u64 q)
{
    auto red = [q](std::int64_t v) { return u64(((v % std::int64_t(q)) + std::int64_t(q)) % std::int64_t(q)); };
    const u64 tq = red(t), nq = red(n);
    u64 count = 0;
    for (u64 a = 0; a < q; ++a)
        for (u64 b = 0; b < q; ++b)
        {
            const u64 step_re = (q - nq * b % q) % q;
            const u64 step_im = (a + tq * b) % q;
            bool unit = false;
            for (u64 c = 0; c < q && !unit; ++c)
            {
                u64 re = a * c % q, im = b * c % q;
                for (u64 d = 0; d < q; ++d)
                {
                    if (re == 1 % q && im == 0)
                    {
                        unit = true;
                        break;
                    }
                    re += step_re;
                    if (re >= q)
                        re -= q;
                    im += step_im;
                    if (im >= q)
                        im -= q;
                }
            }
            count += unit;
        }
    return count;
}

/// Units of Z/q found by searching for inverses.
inline u64 count_units_int(u64 q)
{
    u64 count = 0;
    for (u64 a = 0; a < q; ++a)
        for (u64 c = 0; c < q; ++c)
            if (a * c % q == 1 % q)
            {
                ++count;
                break;
            }
    return count;
}

/// Certified primes for a rational integer base, straight from the
/// definitions: p | Phi_n(g) exactly once, p prime to n and g.
inline std::map<xfw::bigint, u64> certified_primes(long g, u64 n_max)
{
    std::map<xfw::bigint, u64> out;
    const auto x = xfw::quadratic_element::from_int(g);
    for (u64 n = 1; n <= n_max; ++n)
    {
        xfw::bigint v = cyclotomic_value(n, x).a();
        for (const auto & [p, e] : trial_factor(v))
            if (e == 1 && xfw::bigint(n) % p != 0 && xfw::bigint(g) % p != 0)
                out.emplace(p, n);
    }
    return out;
}

class rng
{
  public:
    explicit rng(u64 seed) : gen_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }

    /// (a + b w)/den with small random coordinates in field k.
    xfw::quadratic_element element(const xfw::quadratic_field & k, long range = 30, long max_den = 6)
    {
        const long b = k.is_rational() ? 0 : uniform(-range, range);
        return {k, uniform(-range, range), b, uniform(1, max_den)};
    }

    xfw::quadratic_element nonzero(const xfw::quadratic_field & k, long range = 30, long max_den = 6)
    {
        while (true)
        {
            auto x = element(k, range, max_den);
            if (!x.is_zero())
                return x;
        }
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace oracle

#endif
