#include <doctest.h>

#include "battery.hpp"
#include "oracles.hpp"
#include "xfw/errors.hpp"
#include "xfw/periods.hpp"

using namespace xfw;

namespace {

const quadratic_field q5(5);

period_report formula_at(const recurrence_tuple & t, const prime_ideal & ideal, unsigned e)
{
    modulus_factor f{ideal, e};
    return period_formula(t, std::span(&f, 1));
}

} // namespace

TEST_CASE("degeneracy")
{
    const auto fib = recurrence_tuple::fibonacci();
    CHECK(is_degenerate(fib, prime_ideal_above(q5, 5)));
    CHECK_FALSE(is_degenerate(fib, prime_ideal_above(q5, 7)));
    const auto t = battery::make(1, {"2", "3"}, {"1", "1"});
    CHECK(is_degenerate(t, prime_ideal_above(quadratic_field::rationals(), 3)));
    CHECK_FALSE(is_degenerate(t, prime_ideal_above(quadratic_field::rationals(), 7)));
}

TEST_CASE("tuple validation")
{
    recurrence_tuple t;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    CHECK_THROWS_AS(battery::make(1, {"2", "2"}, {"1", "1"}), std::invalid_argument);
    CHECK_THROWS_AS(battery::make(1, {"2", "0"}, {"1", "1"}), std::invalid_argument);
    CHECK_THROWS_AS(battery::make(1, {"2"}, {"0"}), std::invalid_argument);
}

TEST_CASE("Fibonacci terms and recurrence coefficients")
{
    const auto fib = recurrence_tuple::fibonacci();
    const long expected[] = {0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
    for (int n = 0; n <= 10; ++n)
        CHECK(fib.term(std::uint64_t(n)) == quadratic_element(q5, expected[n]));
    auto c = fib.recurrence_coefficients();
    REQUIRE(c.size() == 2);
    CHECK(c[0] == quadratic_element(q5, 1));
    CHECK(c[1] == quadratic_element(q5, 1));
}

TEST_CASE("multiplicative orders")
{
    residue_ring r7(prime_ideal_above(quadratic_field::rationals(), 7), 1);
    CHECK(multiplicative_order(r7, r7.one()) == 1);
    CHECK(multiplicative_order(r7, r7.from_int(2)) == 3);
    residue_ring r1093(prime_ideal_above(quadratic_field::rationals(), 1093), 2);
    CHECK(multiplicative_order(r1093, r1093.from_int(2)) == 364);
    CHECK(oracle::order(2, 1093ULL * 1093) == 364);
    CHECK_THROWS(multiplicative_order(r7, r7.from_int(14)));
}

TEST_CASE("orders agree with stepping through powers")
{
    for (oracle::u64 p : oracle::primes_below(60))
        for (unsigned e = 1; e <= 2; ++e)
        {
            residue_ring r(prime_ideal_above(quadratic_field::rationals(), p), e);
            const oracle::u64 m = to_u64(r.modulus());
            for (oracle::u64 a = 1; a < std::min<oracle::u64>(m, 40); ++a)
                if (a % p)
                    CHECK(multiplicative_order(r, r.from_int(a)) == oracle::order(a, m));
        }
}

TEST_CASE("period formula")
{
    const auto fib = recurrence_tuple::fibonacci();
    CHECK(formula_at(fib, prime_ideal_above(q5, 7), 1).period == 16);
    CHECK(period_formula(fib, factor_modulus(q5, 11)).period == 10);
    CHECK(period_formula(fib, {}).period == 1);
    auto r = period_formula(fib, factor_modulus(q5, 11));
    CHECK(r.orders.size() == 4);
    CHECK(r.method == period_method::formula);
    CHECK_THROWS_AS(formula_at(fib, prime_ideal_above(q5, 5), 1), degenerate_input);
    auto t = battery::make(1, {"2", "3"}, {"1", "1"});
    CHECK_THROWS_AS(formula_at(t, prime_ideal_above(quadratic_field::rationals(), 3), 1), degenerate_input);
}

TEST_CASE("colliding generators break the lcm law")
{
    // 2 = 7 mod 5, so x_n = 2^n - 7^n vanishes mod 5 for every n.
    auto t = battery::make(1, {"2", "7"}, {"1", "-1"});
    const auto p5 = prime_ideal_above(quadratic_field::rationals(), 5);
    CHECK(generators_collide(t, p5));
    CHECK_FALSE(is_degenerate(t, p5));
    CHECK(period_bruteforce(t, bigint(5)).period == 1);
    CHECK(period_bruteforce(t, modulus_factor{p5, 1}).period == 1);
    CHECK_THROWS_AS(formula_at(t, p5, 1), degenerate_input);
    CHECK_FALSE(generators_collide(t, prime_ideal_above(quadratic_field::rationals(), 7)));
}

TEST_CASE("brute-force periods")
{
    const auto fib = recurrence_tuple::fibonacci();
    CHECK(period_bruteforce(fib, bigint(7)).period == 16);
    CHECK(period_bruteforce(fib, bigint(1)).period == 1);
    CHECK(period_bruteforce(fib, bigint(21)).period == 16);
    CHECK(period_bruteforce(fib, bigint(21)).method == period_method::brute_force);
    CHECK(period_bruteforce(fib, modulus_factor{prime_ideal_above(q5, 7), 1}).period == 16);
    CHECK_THROWS_AS(period_bruteforce(fib, bigint(1000), bruteforce_options{10}), resource_limit);
    auto mixed = battery::tuples()[4].tuple;
    CHECK_THROWS_AS(period_bruteforce(mixed, bigint(7)), std::invalid_argument);
}

TEST_CASE("Pisano periods")
{
    CHECK(pisano(7) == 16);
    CHECK(pisano(1) == 1);
    CHECK(pisano(10) == 60);
    CHECK(pisano(21) == 16);
    CHECK(pisano(49) == 112);
    CHECK(pisano(121) == 110);
    CHECK(pisano(5) == 20);
    CHECK(pisano(25) == 100);
    for (oracle::u64 m = 1; m <= 1500; ++m)
    {
        CAPTURE(m);
        CHECK(pisano(m) == oracle::pisano(m));
    }
}

TEST_CASE("lcm law and the failed product law")
{
    CHECK(pisano(21) == lcm(pisano(3), pisano(7)));
    CHECK(pisano(3) * pisano(7) == 128);
    CHECK(pisano(21) != pisano(3) * pisano(7));
    const auto ps = oracle::primes_below(80);
    for (auto p : ps)
        for (auto q : ps)
            if (p < q && p != 5 && q != 5)
                CHECK(pisano(p * q) == lcm(pisano(p), pisano(q)));
}

TEST_CASE("divisibility of periods")
{
    const auto fib = recurrence_tuple::fibonacci();
    auto v11 = divisibility_check(fib, prime_ideal_above(q5, 11));
    CHECK(v11.period == 10);
    CHECK(v11.group_order == 10);
    CHECK(v11.divides);
    auto v7 = divisibility_check(fib, bigint(7));
    CHECK(v7.period == 16);
    CHECK(v7.group_order == 48);
    CHECK(v7.divides);
    auto v29 = divisibility_check(fib, prime_ideal_above(q5, 29, true));
    CHECK(v29.period == 14);
    CHECK(v29.divides);
    for (const auto & [name, t] : battery::tuples())
        for (const auto & f : battery::moduli(t, 2000))
            if (f.e == 1)
            {
                CAPTURE(name);
                CAPTURE(f.to_string());
                CHECK(divisibility_check(t, f.ideal).divides);
            }
}

TEST_CASE("formula agrees with brute force on the battery")
{
    for (const auto & [name, t] : battery::tuples())
    {
        auto moduli = battery::moduli(t, 1000);
        CHECK(moduli.size() > 20);
        for (const auto & f : moduli)
        {
            CAPTURE(name);
            CAPTURE(f.to_string());
            CHECK(period_formula(t, std::span(&f, 1)).period == period_bruteforce(t, f).period);
        }
    }
}

TEST_CASE("rational moduli through the integer recurrence")
{
    // For rational tuples the Z/m iteration and the residue-ring closed form
    // must agree at every non-degenerate prime.
    const auto & t = battery::tuples()[1].tuple;
    for (oracle::u64 p : oracle::primes_below(300))
    {
        auto ideal = prime_ideal_above(quadratic_field::rationals(), p);
        if (is_degenerate(t, ideal) || generators_collide(t, ideal))
            continue;
        CHECK(period_bruteforce(t, from_u64(p)).period == period_bruteforce(t, modulus_factor{ideal, 1}).period);
    }
    const auto fib = recurrence_tuple::fibonacci();
    for (oracle::u64 p : oracle::primes_below(300))
    {
        if (p == 5)
            continue;
        CHECK(period_bruteforce(fib, from_u64(p)).period == oracle::pisano(p));
    }
}

TEST_CASE("stability scaling at odd primes")
{
    for (const auto & [name, t] : battery::tuples())
        for (oracle::u64 p : oracle::primes_below(50))
        {
            if (p == 2)
                continue;
            for (const auto & ideal : primes_above(t.field(), p))
            {
                if (ideal.kind == prime_kind::ramified || is_degenerate(t, ideal) || generators_collide(t, ideal))
                    continue;
                for (unsigned e = 1; e <= 2; ++e)
                {
                    bigint pe = formula_at(t, ideal, e).period, pe1 = formula_at(t, ideal, e + 1).period;
                    if (pe == pe1)
                        continue;
                    for (unsigned i = 1; i <= 3; ++i)
                    {
                        CAPTURE(name);
                        CAPTURE(ideal.to_string());
                        CHECK(formula_at(t, ideal, e + i).period == pow(bigint(p), i) * pe);
                    }
                }
            }
        }
}

TEST_CASE("stability scaling fails at p = 2")
{
    // ord(3) is 1, 2, 2 modulo 2, 4, 8: the period changes from 2 to 4 but
    // does not double again.
    auto t = battery::make(1, {"3"}, {"1"});
    const auto p2 = prime_ideal_above(quadratic_field::rationals(), 2);
    CHECK(formula_at(t, p2, 1).period == 1);
    CHECK(formula_at(t, p2, 2).period == 2);
    CHECK(formula_at(t, p2, 3).period == 2);
}

TEST_CASE("every generator returns to one after a period")
{
    for (const auto & [name, t] : battery::tuples())
        for (const auto & f : battery::moduli(t, 500))
        {
            const bigint period = period_formula(t, std::span(&f, 1)).period;
            residue_ring ring(f.ideal, f.e);
            for (const auto & a : t.a)
                CHECK(ring.is_one(ring.pow(ring.reduce(a), period)));
        }
}

TEST_CASE("factoring rational moduli into ideals")
{
    auto f = factor_modulus(q5, 2 * 2 * 5 * 11);
    REQUIRE(f.size() == 4);
    CHECK(f[0].ideal.kind == prime_kind::inert);
    CHECK(f[0].e == 2);
    CHECK(f[1].ideal.kind == prime_kind::ramified);
    CHECK(f[1].e == 2);
    CHECK(f[2].ideal.kind == prime_kind::split);
    CHECK(f[3].ideal.kind == prime_kind::split);
    CHECK(factor_modulus(q5, 1).empty());
}
