#include "xfw/periods.hpp"

#include <limits>
#include <stdexcept>

#include "xfw/errors.hpp"

namespace xfw {

namespace {

using u128 = unsigned __int128;

std::uint64_t default_budget(const bigint & ring_size, std::uint64_t requested)
{
    if (requested)
        return requested;
    bigint b = ring_size * ring_size * 6;
    return fits_u64(b) ? to_u64(b) : std::numeric_limits<std::uint64_t>::max();
}

[[noreturn]] void budget_exceeded(const std::string & where, std::uint64_t budget)
{
    throw resource_limit("no period found modulo " + where + " within " + std::to_string(budget) + " steps");
}

// Shared first-return search over a sliding window of m terms.
template <typename Value, typename Next>
std::uint64_t first_return(std::size_t m, Next next, std::uint64_t budget, const std::string & where)
{
    std::vector<Value> init(m), window(m);
    for (std::size_t j = 0; j < m; ++j)
        init[j] = window[j] = next();
    std::size_t head = 0; // window[head] is the oldest term
    for (std::uint64_t k = 1; k <= budget; ++k)
    {
        window[head] = next();
        head = (head + 1) % m;
        bool same = true;
        for (std::size_t j = 0; j < m && same; ++j)
            same = window[(head + j) % m] == init[j];
        if (same)
            return k;
    }
    budget_exceeded(where, budget);
}

bigint reduce_rational(const rational & q, const bigint & m)
{
    auto inv = inverse_mod(q.get_den(), m);
    if (!inv)
        throw degenerate_input("denominator of " + to_string(q) + " is not invertible modulo " + to_string(m));
    return mod(q.get_num() * *inv, m);
}

} // namespace

recurrence_tuple recurrence_tuple::fibonacci()
{
    quadratic_field k(5);
    quadratic_element s = quadratic_element::sqrt_d(k);
    quadratic_element one(k, 1), two(k, 2);
    return {{(one + s) / two, (one - s) / two}, {one / s, -(one / s)}};
}

quadratic_field recurrence_tuple::field() const
{
    quadratic_field k;
    for (const auto & x : a)
        k = common_field(k, x.field());
    for (const auto & x : b)
        k = common_field(k, x.field());
    return k;
}

void recurrence_tuple::validate() const
{
    if (a.empty() || a.size() != b.size())
        throw std::invalid_argument("recurrence tuple needs equally many generators and coefficients");
    (void)field();
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (a[i].is_zero() || b[i].is_zero())
            throw std::invalid_argument("recurrence tuple entries must be nonzero");
        for (std::size_t j = 0; j < i; ++j)
            if (a[i] == a[j])
                throw std::invalid_argument("recurrence tuple generators must be distinct");
    }
}

quadratic_element recurrence_tuple::term(std::uint64_t n) const
{
    quadratic_element x(field(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        x += b[i] * a[i].pow(std::int64_t(n));
    return x;
}

std::vector<quadratic_element> recurrence_tuple::recurrence_coefficients() const
{
    const quadratic_field k = field();
    std::vector<quadratic_element> poly{quadratic_element(k, 1)};
    for (const auto & root : a)
    {
        std::vector<quadratic_element> next(poly.size() + 1, quadratic_element(k, 0));
        for (std::size_t i = 0; i < poly.size(); ++i)
        {
            next[i + 1] += poly[i];
            next[i] -= poly[i] * root;
        }
        poly = std::move(next);
    }
    std::vector<quadratic_element> c;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i)
        c.push_back(-poly[i]);
    return c;
}

std::string modulus_factor::to_string() const
{
    std::string s = ideal.to_string();
    if (e > 1)
        s += "^" + std::to_string(e);
    return s;
}

std::vector<modulus_factor> factor_modulus(const quadratic_field & k, const bigint & m)
{
    if (sgn(m) <= 0)
        throw std::invalid_argument("modulus must be positive");
    std::vector<modulus_factor> out;
    for (const auto & pp : factorize(m))
        for (auto & ideal : primes_above(k, pp.p))
        {
            unsigned e = pp.e * unsigned(ideal.ramification_index());
            out.push_back({std::move(ideal), e});
        }
    return out;
}

bool is_degenerate(const recurrence_tuple & t, const prime_ideal & ideal)
{
    for (const auto & x : t.a)
        if (valuation(x, ideal) != 0)
            return true;
    for (const auto & x : t.b)
        if (valuation(x, ideal) != 0)
            return true;
    return false;
}

bool generators_collide(const recurrence_tuple & t, const prime_ideal & ideal)
{
    for (std::size_t i = 0; i < t.a.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (valuation(t.a[i] - t.a[j], ideal) > 0)
                return true;
    return false;
}

bigint multiplicative_order(const residue_ring & ring, const residue & x)
{
    if (!ring.is_unit(x))
        throw std::domain_error(ring.format(x) + " is not a unit in " + ring.to_string());
    bigint order = ring.unit_group_order();
    for (const auto & pp : ring.unit_group_factorization())
    {
        for (unsigned i = 0; i < pp.e; ++i)
        {
            bigint candidate = order / pp.p;
            if (!ring.is_one(ring.pow(x, candidate)))
                break;
            order = candidate;
        }
    }
    return order;
}

period_report period_formula(const recurrence_tuple & t, std::span<const modulus_factor> factors)
{
    t.validate();
    period_report report;
    report.method = period_method::formula;
    for (const auto & f : factors)
    {
        if (!report.modulus.empty())
            report.modulus += "*";
        report.modulus += f.to_string();
        if (f.ideal.kind == prime_kind::ramified)
            throw degenerate_input("period formula undefined at ramified " + f.ideal.to_string());
        if (is_degenerate(t, f.ideal))
            throw degenerate_input(f.ideal.to_string() + " is degenerate for the recurrence tuple");
        if (generators_collide(t, f.ideal))
            throw degenerate_input("two generators coincide modulo " + f.ideal.to_string());
        residue_ring ring(f.ideal, f.e);
        for (std::size_t j = 0; j < t.a.size(); ++j)
        {
            bigint ord = multiplicative_order(ring, ring.reduce(t.a[j]));
            report.period = lcm(report.period, ord);
            report.orders.push_back({j, f.to_string(), std::move(ord)});
        }
    }
    if (report.modulus.empty())
        report.modulus = "(1)";
    return report;
}

period_report period_bruteforce(const recurrence_tuple & t, const modulus_factor & modulus,
                                const bruteforce_options & opts)
{
    t.validate();
    residue_ring ring(modulus.ideal, modulus.e);
    const std::size_t m = t.order();
    std::vector<residue> A, B, P(m, ring.one());
    for (std::size_t i = 0; i < m; ++i)
    {
        A.push_back(ring.reduce(t.a[i]));
        B.push_back(ring.reduce(t.b[i]));
    }
    auto next = [&] {
        residue x = ring.zero();
        for (std::size_t i = 0; i < m; ++i)
        {
            x = ring.add(x, ring.mul(B[i], P[i]));
            P[i] = ring.mul(P[i], A[i]);
        }
        return x;
    };
    const std::uint64_t budget = default_budget(modulus.norm(), opts.budget);
    period_report report;
    report.method = period_method::brute_force;
    report.modulus = modulus.to_string();
    report.period = from_u64(first_return<residue>(m, next, budget, report.modulus));
    return report;
}

period_report period_bruteforce(const recurrence_tuple & t, const bigint & modulus, const bruteforce_options & opts)
{
    t.validate();
    if (sgn(modulus) <= 0)
        throw std::invalid_argument("modulus must be positive");
    const std::size_t m = t.order();
    std::vector<bigint> c, x0;
    for (const auto & ci : t.recurrence_coefficients())
    {
        if (!ci.is_rational())
            throw std::invalid_argument("rational moduli need a recurrence with rational coefficients");
        c.push_back(reduce_rational(ci.as_rational(), modulus));
    }
    for (std::size_t j = 0; j < m; ++j)
    {
        quadratic_element xj = t.term(j);
        if (!xj.is_rational())
            throw std::invalid_argument("rational moduli need rational sequence terms");
        x0.push_back(reduce_rational(xj.as_rational(), modulus));
    }

    period_report report;
    report.method = period_method::brute_force;
    report.modulus = "Z/" + to_string(modulus);
    const std::uint64_t budget = default_budget(modulus, opts.budget);

    if (mpz_sizeinbase(modulus.get_mpz_t(), 2) <= 62)
    {
        const std::uint64_t M = to_u64(modulus);
        std::vector<std::uint64_t> cc, state;
        for (const auto & v : c)
            cc.push_back(to_u64(v));
        for (const auto & v : x0)
            state.push_back(to_u64(v));
        std::size_t served = 0, head = 0;
        auto next = [&]() -> std::uint64_t {
            if (served < m)
                return state[served++];
            // state holds the last m terms in ring-buffer order from head
            u128 acc = 0;
            for (std::size_t i = 0; i < m; ++i)
                acc = (acc + u128(cc[i]) * state[(head + i) % m]) % M;
            std::uint64_t x = std::uint64_t(acc);
            state[head] = x;
            head = (head + 1) % m;
            return x;
        };
        report.period = from_u64(first_return<std::uint64_t>(m, next, budget, report.modulus));
        return report;
    }

    std::vector<bigint> state = x0;
    std::size_t served = 0, head = 0;
    auto next = [&]() -> bigint {
        if (served < m)
            return state[served++];
        bigint acc = 0;
        for (std::size_t i = 0; i < m; ++i)
            acc += c[i] * state[(head + i) % m];
        bigint x = mod(acc, modulus);
        state[head] = x;
        head = (head + 1) % m;
        return x;
    };
    report.period = from_u64(first_return<bigint>(m, next, budget, report.modulus));
    return report;
}

bigint pisano(const bigint & m)
{
    if (sgn(m) <= 0)
        throw std::invalid_argument("pisano: modulus must be positive");
    static const recurrence_tuple fib = recurrence_tuple::fibonacci();
    if (divides(bigint(5), m))
        return period_bruteforce(fib, m).period;
    auto factors = factor_modulus(fib.field(), m);
    return period_formula(fib, factors).period;
}

divisibility_verdict divisibility_check(const recurrence_tuple & t, const prime_ideal & ideal)
{
    modulus_factor f{ideal, 1};
    divisibility_verdict v;
    v.period = period_formula(t, std::span(&f, 1)).period;
    v.group_order = ideal.norm() - 1;
    v.divides = divides(v.period, v.group_order);
    return v;
}

divisibility_verdict divisibility_check(const recurrence_tuple & t, const bigint & p)
{
    auto factors = factor_modulus(t.field(), p);
    divisibility_verdict v;
    v.period = period_formula(t, factors).period;
    v.group_order = pow(p, unsigned(factors.front().ideal.inertia_degree())) - 1;
    v.divides = divides(v.period, v.group_order);
    return v;
}

} // namespace xfw
