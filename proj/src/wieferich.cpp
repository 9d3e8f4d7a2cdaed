#include "xfw/wieferich.hpp"

#include <array>
#include <stdexcept>

#include "xfw/errors.hpp"
#include "xfw/kernels.hpp"

namespace xfw {

bool is_torsion(const quadratic_element & x)
{
    if (x.is_zero() || !x.is_integral())
        return false;
    // Roots of unity in a quadratic field have order 1, 2, 3, 4 or 6.
    return x.pow(12).is_one();
}

bigint fermat_quotient_residue(const quadratic_element & gamma_in, const prime_ideal & ideal)
{
    if (ideal.kind == prime_kind::ramified)
        throw degenerate_input("Fermat quotient at ramified " + ideal.to_string());
    quadratic_element gamma = gamma_in.field().is_rational() ? gamma_in.in_field(ideal.field) : gamma_in;
    if (gamma.is_zero() || valuation(gamma, ideal) != 0)
        throw degenerate_input(gamma.to_string() + " is not a unit at " + ideal.to_string());

    residue_ring ring(ideal, 2);
    residue r = ring.pow(ring.reduce(gamma), ideal.norm() - 1);
    const bigint & p = ideal.p;
    bigint u1 = r.u - 1;
    if (!divides(p, u1) || !divides(p, r.v))
        throw invariant_breach("Fermat's little theorem failed at " + ideal.to_string());
    bigint k = u1 / p;
    if (ring.is_inert())
        k += (r.v / p) * p;
    return k;
}

wieferich_verdict wieferich_test(const quadratic_element & gamma, const prime_ideal & ideal)
{
    wieferich_verdict v;
    v.ideal = ideal;
    v.base = gamma.to_string();
    v.k = fermat_quotient_residue(gamma, ideal);
    v.is_wieferich = sgn(v.k) == 0;
    v.torsion_base = is_torsion(gamma);
    return v;
}

bool is_alpha_wieferich(const quadratic_element & gamma, const prime_ideal & ideal)
{
    return sgn(fermat_quotient_residue(gamma, ideal)) == 0;
}

bool is_x_fw_prime(std::span<const quadratic_element> generators, const prime_ideal & ideal)
{
    for (const auto & a : generators)
        if (!is_alpha_wieferich(a, ideal))
            return false;
    return true;
}

namespace {

/// Least k dividing `multiple` with [[0,1],[1,1]]^k = I mod m.
std::uint64_t fibonacci_matrix_order(std::uint64_t multiple, const factorization & primes, std::uint64_t m)
{
    auto is_identity = [m](std::uint64_t k) {
        return kernels::fibonacci_mod(k, m) == 0 && kernels::fibonacci_mod(k + 1, m) == 1 % m;
    };
    if (!is_identity(multiple))
        throw invariant_breach("Fibonacci period does not divide " + std::to_string(multiple));
    std::uint64_t k = multiple;
    for (const auto & [q, e] : primes)
    {
        const std::uint64_t r = to_u64(q);
        while (k % r == 0 && is_identity(k / r))
            k /= r;
    }
    return k;
}

} // namespace

wall_verdict wall_period_test(const bigint & p)
{
    if (!is_prime(p))
        throw std::invalid_argument("wall_period_test: " + to_string(p) + " is not prime");
    static const recurrence_tuple fib = recurrence_tuple::fibonacci();
    wall_verdict v;
    if (p == 2 || p == 5)
    {
        v.pi_p = period_bruteforce(fib, p).period;
        v.pi_p2 = period_bruteforce(fib, bigint(p * p)).period;
    }
    else if (p < (bigint(1) << 31))
    {
        // The period mod p divides p - 1 or 2(p + 1); mod p^2 it divides p times that.
        const std::uint64_t q = to_u64(p);
        const bigint group = kronecker(bigint(5), p) == 1 ? bigint(p - 1) : bigint(2 * (p + 1));
        factorization f = factorize(group);
        const std::uint64_t pi_p = fibonacci_matrix_order(to_u64(group), f, q);
        f.push_back({p, 1});
        v.pi_p = from_u64(pi_p);
        v.pi_p2 = from_u64(fibonacci_matrix_order(pi_p * q, f, q * q));
    }
    else
    {
        v.pi_p = pisano(p);
        v.pi_p2 = pisano(p * p);
    }
    v.equal = v.pi_p == v.pi_p2;
    return v;
}

namespace {

bigint fibonacci_mod_big(bigint n, const bigint & m)
{
    // Symmetric powers of [[0,1],[1,1]]: [[F(k-1), F(k)], [F(k), F(k+1)]].
    std::array<bigint, 3> r{1, 0, 1}, x{0, 1, 1};
    auto step = [&](const std::array<bigint, 3> & s, const std::array<bigint, 3> & t) {
        return std::array<bigint, 3>{mod(s[0] * t[0] + s[1] * t[1], m), mod(s[0] * t[1] + s[1] * t[2], m),
                                     mod(s[1] * t[1] + s[2] * t[2], m)};
    };
    while (sgn(n) > 0)
    {
        if (mpz_odd_p(n.get_mpz_t()))
            r = step(r, x);
        x = step(x, x);
        n >>= 1;
    }
    return r[1];
}

} // namespace

bool wss_divisibility_test(const bigint & p)
{
    if (p == 2 || p == 5)
        throw std::invalid_argument("wss_divisibility_test: p = 2 and p = 5 are excluded");
    if (!is_prime(p))
        throw std::invalid_argument("wss_divisibility_test: " + to_string(p) + " is not prime");
    const bigint n = p - kronecker(bigint(5), p);
    const bigint p2 = p * p;
    if (fits_u64(p2) && p2 < (bigint(1) << 63))
        return kernels::fibonacci_mod(to_u64(n), to_u64(p2)) == 0;
    return sgn(fibonacci_mod_big(n, p2)) == 0;
}

std::uint64_t count_non_wieferich(const quadratic_element & gamma, std::uint64_t norm_bound)
{
    if (norm_bound < 2)
        return 0;
    const quadratic_field & k = gamma.field();
    const bool fast = k.is_rational() && gamma.is_integral() && sgn(gamma.a()) > 0 && fits_u64(gamma.a());
    const std::uint64_t base = fast ? to_u64(gamma.a()) : 0;

    std::uint64_t count = 0;
    for (std::uint64_t p : sieve_segment(2, norm_bound + 1))
    {
        if (fast && p < (std::uint64_t(1) << 32))
        {
            if (base % p == 0 || !kernels::wieferich_u64(base, p))
                ++count;
            continue;
        }
        for (const auto & ideal : primes_above(k, from_u64(p)))
        {
            if (ideal.kind == prime_kind::ramified || ideal.norm() > from_u64(norm_bound))
                continue;
            if (gamma.is_zero() || valuation(gamma, ideal) != 0 || !is_alpha_wieferich(gamma, ideal))
                ++count;
        }
    }
    return count;
}

} // namespace xfw
