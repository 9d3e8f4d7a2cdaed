#include <doctest.h>

#include <array>

#include "oracles.hpp"
#include "xfw/errors.hpp"
#include "xfw/kernels.hpp"
#include "xfw/wieferich.hpp"

using namespace xfw;

namespace {

const quadratic_field q = quadratic_field::rationals();
const quadratic_field q5(5);

quadratic_element golden() { return quadratic_element::parse("(1+sqrt(5))/2", q5); }

/// F_n mod m by fast doubling, independent of the matrix power in the library.
bigint fib_doubling(const bigint & n, const bigint & m)
{
    bigint a = 0, b = 1;
    for (long i = long(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1; i >= 0; --i)
    {
        bigint c = mod(a * (2 * b - a), m);
        bigint d = mod(a * a + b * b, m);
        if (mpz_tstbit(n.get_mpz_t(), mp_bitcnt_t(i)))
        {
            a = d;
            b = mod(c + d, m);
        }
        else
        {
            a = c;
            b = d;
        }
    }
    return a;
}

bool wss_oracle(const bigint & p)
{
    const bigint n = p - kronecker(bigint(5), p);
    return sgn(fib_doubling(n, p * p)) == 0;
}

} // namespace

TEST_CASE("Fermat quotient residues")
{
    auto v = wieferich_test(quadratic_element(q, 2), prime_ideal_above(q, 5));
    CHECK(v.k == 3);
    CHECK_FALSE(v.is_wieferich);
    CHECK_FALSE(v.torsion_base);
    auto one = wieferich_test(quadratic_element(q, 1), prime_ideal_above(q, 7));
    CHECK(one.k == 0);
    CHECK(one.is_wieferich);
    CHECK(one.torsion_base);
    CHECK(is_alpha_wieferich(quadratic_element(q, 2), prime_ideal_above(q, 1093)));
    CHECK(is_alpha_wieferich(quadratic_element(q, 2), prime_ideal_above(q, 3511)));
    CHECK(is_alpha_wieferich(quadratic_element(q, 3), prime_ideal_above(q, 11)));
    CHECK_FALSE(is_alpha_wieferich(quadratic_element(q, 2), prime_ideal_above(q, 1097)));
    CHECK_THROWS_AS(wieferich_test(quadratic_element(q, 10), prime_ideal_above(q, 5)), degenerate_input);
    CHECK_THROWS_AS(wieferich_test(golden(), prime_ideal_above(q5, 5)), degenerate_input);
}

TEST_CASE("Fermat quotients match the naive definition")
{
    for (oracle::u64 p : oracle::primes_below(400))
        for (oracle::u64 a = 2; a < 30; ++a)
        {
            if (a % p == 0)
                continue;
            const oracle::u64 r = oracle::powmod(a, p - 1, p * p);
            const bigint k = fermat_quotient_residue(quadratic_element(q, long(a)), prime_ideal_above(q, p));
            CHECK(k == (r - 1) / p);
        }
}

TEST_CASE("Wieferich primes to base 2 below 10^4")
{
    std::vector<oracle::u64> found;
    for (oracle::u64 p : oracle::primes_below(10000))
        if (p != 2 && is_alpha_wieferich(quadratic_element(q, 2), prime_ideal_above(q, p)))
            found.push_back(p);
    CHECK(found == std::vector<oracle::u64>{1093, 3511});
}

TEST_CASE("X-FW primes")
{
    std::array<quadratic_element, 1> two{quadratic_element(q, 2)};
    std::array<quadratic_element, 2> two_three{quadratic_element(q, 2), quadratic_element(q, 3)};
    std::array<quadratic_element, 1> unit{quadratic_element(q, 1)};
    CHECK(is_x_fw_prime(two, prime_ideal_above(q, 1093)));
    CHECK_FALSE(is_x_fw_prime(two_three, prime_ideal_above(q, 1093)));
    CHECK_FALSE(is_x_fw_prime(two_three, prime_ideal_above(q, 11)));
    for (oracle::u64 p : oracle::primes_below(200))
        CHECK(is_x_fw_prime(unit, prime_ideal_above(q, p)));
    const auto phi = golden();
    std::array<quadratic_element, 2> fib{phi, phi.conjugate()};
    for (oracle::u64 p : oracle::primes_below(500))
        if (p != 5)
            for (const auto & ideal : primes_above(q5, p))
                CHECK_FALSE(is_x_fw_prime(fib, ideal));
}

TEST_CASE("Wall periods")
{
    auto w7 = wall_period_test(7);
    CHECK(w7.pi_p == 16);
    CHECK(w7.pi_p2 == 112);
    CHECK_FALSE(w7.equal);
    auto w11 = wall_period_test(11);
    CHECK(w11.pi_p == 10);
    CHECK(w11.pi_p2 == 110);
    auto w3 = wall_period_test(3);
    CHECK(w3.pi_p == 8);
    CHECK(w3.pi_p2 == 24);
    auto w2 = wall_period_test(2);
    CHECK(w2.pi_p == 3);
    CHECK(w2.pi_p2 == 6);
    auto w5 = wall_period_test(5);
    CHECK(w5.pi_p == 20);
    CHECK(w5.pi_p2 == 100);
    CHECK_THROWS_AS(wall_period_test(9), std::invalid_argument);
    for (oracle::u64 p : oracle::primes_below(300))
    {
        auto w = wall_period_test(p);
        CHECK(w.pi_p == oracle::pisano(p));
        CHECK(w.pi_p2 == oracle::pisano(p * p));
    }
}

TEST_CASE("Wall periods against the general period formula")
{
    for (oracle::u64 p : oracle::primes_below(5000))
    {
        if (p == 2 || p == 5)
            continue;
        auto w = wall_period_test(p);
        CHECK(w.pi_p == pisano(p));
        if (p < 800)
            CHECK(w.pi_p2 == pisano(p * p));
    }
    const bigint big("2147483659");
    auto w = wall_period_test(big);
    CHECK(w.pi_p2 == big * w.pi_p);
    CHECK(divides(w.pi_p, big - kronecker(bigint(5), big)) == (kronecker(bigint(5), big) == 1));
}

TEST_CASE("Wall-Sun-Sun divisibility")
{
    CHECK(oracle::fib_mod(2, 9) == 1);
    CHECK(oracle::fib_mod(8, 49) == 21);
    CHECK(oracle::fib_mod(10, 121) == 55);
    CHECK_FALSE(wss_divisibility_test(3));
    CHECK_FALSE(wss_divisibility_test(7));
    CHECK_FALSE(wss_divisibility_test(11));
    CHECK_THROWS_AS(wss_divisibility_test(2), std::invalid_argument);
    CHECK_THROWS_AS(wss_divisibility_test(5), std::invalid_argument);
    CHECK_THROWS_AS(wss_divisibility_test(15), std::invalid_argument);
    for (oracle::u64 p : oracle::primes_below(2000))
    {
        if (p == 2 || p == 5)
            continue;
        const bigint n = bigint(p) - kronecker(bigint(5), bigint(p));
        const bool naive = oracle::fib_mod(to_u64(n), p * p) == 0;
        CHECK(wss_divisibility_test(p) == naive);
        CHECK(wall_period_test(p).equal == naive);
    }
}

TEST_CASE("Wall-Sun-Sun test beyond 64-bit squares")
{
    for (const char * s : {"4294967311", "4294967357", "18446744073709551557", "1000000000000000000000007"})
    {
        const bigint p(s);
        REQUIRE(is_prime(p));
        CHECK(wss_divisibility_test(p) == wss_oracle(p));
        CHECK(sgn(fib_doubling(p - kronecker(bigint(5), p), p)) == 0);
    }
    for (oracle::u64 p : oracle::primes_below(3000))
        if (p != 2 && p != 5)
            CHECK(wss_divisibility_test(p) == wss_oracle(p));
}

TEST_CASE("counting non-Wieferich ideals")
{
    CHECK(count_non_wieferich(quadratic_element(q, 2), 100) == 25);
    CHECK(count_non_wieferich(quadratic_element(q, 3), 100) == 24);
    CHECK(count_non_wieferich(quadratic_element(q, 2), 1) == 0);
    CHECK(count_non_wieferich(quadratic_element(q, 2), 0) == 0);
    CHECK(count_non_wieferich(quadratic_element(q, 2), 10000) == oracle::primes_below(10001).size() - 2);
    // Every unramified ideal of norm <= 50 in Z[(1+sqrt 5)/2]: 2 (4), 3 (9),
    // 7 (49), and both ideals above 11, 19, 29, 31, 41.
    CHECK(count_non_wieferich(golden(), 50) == 13);
    CHECK(count_non_wieferich(quadratic_element(q, 1), 1000) == 0);
}

TEST_CASE("golden ratio and its inverse share Wieferich ideals")
{
    const auto phi = golden();
    const auto inv = phi.inverse();
    for (oracle::u64 p : oracle::primes_below(2000))
    {
        if (p == 5)
            continue;
        for (const auto & ideal : primes_above(q5, p))
        {
            CHECK(is_alpha_wieferich(phi, ideal) == is_alpha_wieferich(inv, ideal));
            if (ideal.kind != prime_kind::inert)
                CHECK(mod(fermat_quotient_residue(phi, ideal) + fermat_quotient_residue(inv, ideal), p) == 0);
        }
    }
    CHECK(count_non_wieferich(phi, 5000) == count_non_wieferich(inv, 5000));
}

TEST_CASE("Fermat quotients are additive")
{
    oracle::rng gen(20260101);
    for (std::int64_t d : {1, 5, -1, 2})
    {
        const quadratic_field k = d == 1 ? q : quadratic_field(d);
        for (int trial = 0; trial < 200; ++trial)
        {
            const auto x = gen.nonzero(k, 20, 1);
            const auto y = gen.nonzero(k, 20, 1);
            const oracle::u64 p = oracle::primes_below(60)[gen.uniform(0, 16)];
            const auto ideal = prime_ideal_above(k, p);
            if (ideal.kind != prime_kind::split && ideal.kind != prime_kind::rational)
                continue;
            if (valuation(x, ideal) != 0 || valuation(y, ideal) != 0)
                continue;
            const bigint sum = fermat_quotient_residue(x, ideal) + fermat_quotient_residue(y, ideal);
            CHECK(mod(fermat_quotient_residue(x * y, ideal) - sum, p) == 0);
        }
    }
}

TEST_CASE("torsion detection")
{
    CHECK(is_torsion(quadratic_element(q, 1)));
    CHECK(is_torsion(quadratic_element(q, -1)));
    CHECK_FALSE(is_torsion(quadratic_element(q, 2)));
    CHECK(is_torsion(quadratic_element::parse("sqrt(-1)", quadratic_field(-1))));
    CHECK(is_torsion(quadratic_element::parse("(1+sqrt(-3))/2", quadratic_field(-3))));
    CHECK_FALSE(is_torsion(golden()));
    CHECK_FALSE(is_torsion(quadratic_element::parse("(3+4*sqrt(-1))/5", quadratic_field(-1))));
}

TEST_CASE("u64 kernel agrees with the residue rings")
{
    for (oracle::u64 p : oracle::primes_below(3000))
        for (oracle::u64 a : {2, 3, 5, 7, 10})
            if (a % p)
                CHECK(kernels::wieferich_u64(a, p) ==
                      is_alpha_wieferich(quadratic_element(q, long(a)), prime_ideal_above(q, p)));
}
