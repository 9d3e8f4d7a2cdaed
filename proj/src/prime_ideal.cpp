#include "xfw/prime_ideal.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace xfw {

namespace {

void require_prime(const bigint & p)
{
    if (!is_prime(p))
        throw std::invalid_argument(to_string(p) + " is not prime");
}

// Tonelli-Shanks; a must be a nonzero square mod the odd prime p.
bigint sqrt_mod(const bigint & a_in, const bigint & p)
{
    bigint a = mod(a_in, p);
    if (sgn(a) == 0)
        return 0;
    if (mod(p, 4) == 3)
        return powm(a, (p + 1) / 4, p);
    bigint q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    q >>= s;
    bigint z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1)
        ++z;
    bigint c = powm(z, q, p);
    bigint r = powm(a, (q + 1) / 2, p);
    bigint t = powm(a, q, p);
    unsigned long m = s;
    while (t != 1)
    {
        unsigned long i = 0;
        bigint tt = t;
        while (tt != 1)
        {
            tt = tt * tt % p;
            ++i;
        }
        bigint b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j)
            b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

bigint min_poly_value(const quadratic_field & k, const bigint & c)
{
    return c * c - c * k.omega_trace() + k.omega_norm();
}

// Roots of w's minimal polynomial mod p, ascending.
std::vector<bigint> roots_mod_p(const quadratic_field & k, const bigint & p)
{
    std::vector<bigint> roots;
    if (p == 2)
    {
        for (int c = 0; c < 2; ++c)
            if (divides(p, min_poly_value(k, c)))
                roots.emplace_back(c);
        return roots;
    }
    bigint s = sqrt_mod(k.discriminant(), p);
    bigint inv2 = (p + 1) / 2;
    bigint r1 = mod((k.omega_trace() + s) * inv2, p);
    bigint r2 = mod((k.omega_trace() - s) * inv2, p);
    roots.push_back(r1);
    if (r2 != r1)
        roots.push_back(r2);
    std::sort(roots.begin(), roots.end());
    return roots;
}

unsigned long min_valuation(const bigint & a, const bigint & b, const bigint & p)
{
    constexpr unsigned long inf = std::numeric_limits<unsigned long>::max();
    unsigned long va = sgn(a) == 0 ? inf : p_valuation(a, p);
    unsigned long vb = sgn(b) == 0 ? inf : p_valuation(b, p);
    return std::min(va, vb);
}

} // namespace

std::string to_string(prime_kind k)
{
    switch (k)
    {
        case prime_kind::rational: return "rational";
        case prime_kind::split: return "split";
        case prime_kind::inert: return "inert";
        case prime_kind::ramified: return "ramified";
    }
    return "?";
}

std::string prime_ideal::to_string() const
{
    std::string s = "(" + xfw::to_string(p);
    if (kind == prime_kind::split || kind == prime_kind::ramified)
        s += ", w-" + xfw::to_string(root);
    s += ")";
    return s;
}

int kronecker(const bigint & a, const bigint & p)
{
    return mpz_kronecker(a.get_mpz_t(), p.get_mpz_t());
}

prime_kind splitting_type(const quadratic_field & k, const bigint & p)
{
    require_prime(p);
    if (k.is_rational())
        return prime_kind::rational;
    switch (kronecker(bigint(from_i64(k.discriminant())), p))
    {
        case 1: return prime_kind::split;
        case -1: return prime_kind::inert;
        default: return prime_kind::ramified;
    }
}

std::vector<prime_ideal> primes_above(const quadratic_field & k, const bigint & p)
{
    prime_kind kind = splitting_type(k, p);
    std::vector<prime_ideal> out;
    switch (kind)
    {
        case prime_kind::rational:
        case prime_kind::inert:
            out.push_back({k, p, kind, false, 0});
            break;
        case prime_kind::ramified:
            out.push_back({k, p, kind, false, roots_mod_p(k, p).front()});
            break;
        case prime_kind::split:
        {
            auto roots = roots_mod_p(k, p);
            out.push_back({k, p, kind, false, roots[0]});
            out.push_back({k, p, kind, true, roots[1]});
            break;
        }
    }
    return out;
}

prime_ideal prime_ideal_above(const quadratic_field & k, const bigint & p, bool conjugate)
{
    auto all = primes_above(k, p);
    if (conjugate && all.size() < 2)
        throw std::invalid_argument("only split primes have a conjugate ideal");
    return all[conjugate ? 1 : 0];
}

bigint hensel_root(const quadratic_field & k, const bigint & p, unsigned e, bool conjugate)
{
    if (e == 0)
        throw std::invalid_argument("hensel_root: precision must be at least 1");
    prime_kind kind = splitting_type(k, p);
    if (kind == prime_kind::rational)
        throw std::invalid_argument("hensel_root: the rationals have no generator to lift");
    if (kind == prime_kind::inert)
        throw std::invalid_argument(to_string(p) + " is inert in Q(sqrt " + std::to_string(k.d()) + ")");
    prime_ideal ideal = prime_ideal_above(k, p, conjugate);
    if (kind == prime_kind::ramified)
    {
        if (e >= 2)
            throw std::invalid_argument("hensel_root: ramified primes only admit precision 1");
        return ideal.root;
    }
    const bigint modulus = pow(p, e);
    bigint c = ideal.root;
    unsigned precision = 1;
    while (precision < e)
    {
        precision *= 2;
        bigint deriv = 2 * c - k.omega_trace();
        auto inv = inverse_mod(deriv, modulus);
        if (!inv)
            throw std::logic_error("hensel_root: derivative not a unit at a split prime");
        c = mod(c - min_poly_value(k, c) * *inv, modulus);
    }
    return mod(c, modulus);
}

long valuation(const quadratic_element & x, const prime_ideal & ideal)
{
    if (x.is_zero())
        throw std::invalid_argument("valuation of zero");
    const bigint & p = ideal.p;
    const long den_part = long(p_valuation(x.den(), p)) * ideal.ramification_index();
    switch (ideal.kind)
    {
        case prime_kind::rational:
            return long(p_valuation(x.a(), p)) - den_part;
        case prime_kind::inert:
            return long(min_valuation(x.a(), x.b(), p)) - den_part;
        case prime_kind::ramified:
            return long(p_valuation(x.numerator_norm(), p)) - den_part;
        case prime_kind::split:
        {
            unsigned long g = min_valuation(x.a(), x.b(), p);
            bigint pg = pow(p, g);
            bigint a = x.a() / pg, b = x.b() / pg;
            long v = long(g);
            if (divides(p, a + b * ideal.root))
            {
                quadratic_element rest(x.field(), a, b, 1);
                v += long(p_valuation(rest.numerator_norm(), p));
            }
            return v - den_part;
        }
    }
    return 0;
}

std::vector<bigint> support_primes(const quadratic_element & x, const factor_options & opts)
{
    if (x.is_zero())
        throw std::invalid_argument("support of zero");
    std::set<bigint> primes;
    bigint num = x.field().is_rational() ? x.a() : x.numerator_norm();
    for (const auto & pp : factorize(num, opts))
        primes.insert(pp.p);
    for (const auto & pp : factorize(x.den(), opts))
        primes.insert(pp.p);
    return {primes.begin(), primes.end()};
}

std::vector<ideal_power> ideal_factorization(const quadratic_element & x, const factor_options & opts)
{
    std::vector<ideal_power> out;
    for (const bigint & p : support_primes(x, opts))
        for (prime_ideal & ideal : primes_above(x.field(), p))
        {
            long v = valuation(x, ideal);
            if (v != 0)
                out.push_back({std::move(ideal), v});
        }
    return out;
}

} // namespace xfw
