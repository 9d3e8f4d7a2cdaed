#include "xfw/residue.hpp"

#include <stdexcept>

#include "xfw/errors.hpp"

namespace xfw {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return std::uint64_t(u128(a) * b % m);
}

} // namespace

residue_ring::residue_ring(prime_ideal ideal, unsigned e)
    : ideal_(std::move(ideal))
    , e_(e)
{
    if (e_ == 0)
        throw std::invalid_argument("residue ring exponent must be at least 1");
    if (ideal_.kind == prime_kind::ramified && e_ > 1)
        throw degenerate_input("powers of ramified ideals are not supported");
    modulus_ = xfw::pow(ideal_.p, e_);
    if (ideal_.kind == prime_kind::split)
        root_ = hensel_root(ideal_.field, ideal_.p, e_, ideal_.conjugate);
    else if (ideal_.kind == prime_kind::ramified)
        root_ = ideal_.root;
    if (mpz_sizeinbase(modulus_.get_mpz_t(), 2) <= 62)
    {
        small_ = true;
        m64_ = to_u64(modulus_);
        omega_norm64_ = to_u64(mod(from_i64(ideal_.field.omega_norm()), modulus_));
    }
}

std::string residue_ring::to_string() const
{
    std::string s = "O/" + ideal_.to_string();
    if (e_ > 1)
        s += "^" + std::to_string(e_);
    return s;
}

residue residue_ring::reduce(const quadratic_element & x_in) const
{
    quadratic_element x = x_in.field().is_rational() ? x_in.in_field(ideal_.field) : x_in;
    if (!(x.field() == ideal_.field))
        throw std::invalid_argument("element " + x.to_string() + " is not in the modulus' field");
    const bigint & p = ideal_.p;
    if (is_inert())
    {
        auto inv = inverse_mod(x.den(), modulus_);
        if (!inv)
            throw degenerate_input(x.to_string() + " is not integral at " + ideal_.to_string());
        return {mod(x.a() * *inv, modulus_), mod(x.b() * *inv, modulus_)};
    }
    unsigned long k = divides(p, x.den()) ? p_valuation(x.den(), p) : 0;
    if (k == 0)
    {
        auto inv = inverse_mod(x.den(), modulus_);
        return {mod((x.a() + x.b() * root_) * *inv, modulus_), 0};
    }
    // Only a split ideal can absorb p in the denominator: push the
    // numerator through the p-adic embedding at extra precision k.
    if (ideal_.kind != prime_kind::split || valuation(x, ideal_) < 0)
        throw degenerate_input(x.to_string() + " is not integral at " + ideal_.to_string());
    const bigint pk = xfw::pow(p, k);
    const bigint wide = modulus_ * pk;
    bigint c = hensel_root(ideal_.field, p, e_ + unsigned(k), ideal_.conjugate);
    bigint num = mod(x.a() + x.b() * c, wide);
    if (!divides(pk, num))
        throw invariant_breach("split reduction: numerator lost divisibility");
    num /= pk;
    bigint den = x.den() / pk;
    auto inv = inverse_mod(den, modulus_);
    return {mod(num * *inv, modulus_), 0};
}

residue residue_ring::add(const residue & x, const residue & y) const
{
    residue r{x.u + y.u, x.v + y.v};
    if (r.u >= modulus_)
        r.u -= modulus_;
    if (r.v >= modulus_)
        r.v -= modulus_;
    return r;
}

residue residue_ring::sub(const residue & x, const residue & y) const
{
    residue r{x.u - y.u, x.v - y.v};
    if (sgn(r.u) < 0)
        r.u += modulus_;
    if (sgn(r.v) < 0)
        r.v += modulus_;
    return r;
}

residue residue_ring::neg(const residue & x) const
{
    return sub(zero(), x);
}

residue residue_ring::mul(const residue & x, const residue & y) const
{
    if (!is_inert())
    {
        if (small_)
            return {from_u64(mulmod64(to_u64(x.u), to_u64(y.u), m64_)), 0};
        return {reduce_int(x.u * y.u), 0};
    }
    // (u1 + v1 w)(u2 + v2 w) with w^2 = t w - n
    const std::int64_t t = ideal_.field.omega_trace();
    if (small_)
    {
        const std::uint64_t u1 = to_u64(x.u), v1 = to_u64(x.v), u2 = to_u64(y.u), v2 = to_u64(y.v);
        const std::uint64_t vv = mulmod64(v1, v2, m64_);
        std::uint64_t u = mulmod64(u1, u2, m64_);
        std::uint64_t nvv = mulmod64(omega_norm64_, vv, m64_);
        u = u >= nvv ? u - nvv : u + (m64_ - nvv);
        std::uint64_t v = (mulmod64(u1, v2, m64_) + mulmod64(v1, u2, m64_)) % m64_;
        if (t == 1)
            v = (v + vv) % m64_;
        return {from_u64(u), from_u64(v)};
    }
    const bigint vv = x.v * y.v;
    return {reduce_int(x.u * y.u - vv * ideal_.field.omega_norm()), reduce_int(x.u * y.v + x.v * y.u + vv * t)};
}

residue residue_ring::pow(const residue & x, const bigint & k) const
{
    if (sgn(k) < 0)
        return pow(inverse(x), -k);
    if (!is_inert())
        return {powm(x.u, k, modulus_), 0};
    residue r = one(), b = x;
    const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;)
    {
        r = mul(r, r);
        if (mpz_tstbit(k.get_mpz_t(), i))
            r = mul(r, b);
    }
    return r;
}

bool residue_ring::is_unit(const residue & x) const
{
    const bigint & p = ideal_.p;
    return !divides(p, x.u) || (is_inert() && !divides(p, x.v));
}

residue residue_ring::inverse(const residue & x) const
{
    if (!is_unit(x))
        throw std::domain_error(format(x) + " is not a unit in " + to_string());
    if (!is_inert())
        return {*inverse_mod(x.u, modulus_), 0};
    const std::int64_t t = ideal_.field.omega_trace();
    bigint n = reduce_int(x.u * x.u + x.u * x.v * t + x.v * x.v * ideal_.field.omega_norm());
    bigint ninv = *inverse_mod(n, modulus_);
    return {reduce_int((x.u + x.v * t) * ninv), reduce_int(-x.v * ninv)};
}

bigint residue_ring::unit_group_order() const
{
    if (ideal_.kind == prime_kind::ramified)
        throw degenerate_input("unit group order requested at ramified " + ideal_.to_string());
    const unsigned f = unsigned(ideal_.inertia_degree());
    return xfw::pow(ideal_.p, (e_ - 1) * f) * (xfw::pow(ideal_.p, f) - 1);
}

factorization residue_ring::unit_group_factorization() const
{
    if (ideal_.kind == prime_kind::ramified)
        throw degenerate_input("unit group order requested at ramified " + ideal_.to_string());
    const unsigned f = unsigned(ideal_.inertia_degree());
    const bigint & p = ideal_.p;
    factorization out;
    if (e_ > 1)
        out.push_back({p, (e_ - 1) * f});
    out = merge(out, factorize(bigint(p - 1)));
    if (f == 2)
        out = merge(out, factorize(bigint(p + 1)));
    return out;
}

std::string residue_ring::format(const residue & x) const
{
    if (!is_inert())
        return xfw::to_string(x.u);
    return xfw::to_string(x.u) + "+" + xfw::to_string(x.v) + "w";
}

residue reduce(const quadratic_element & x, const residue_ring & ring)
{
    return ring.reduce(x);
}

residue residue_pow(const residue_ring & ring, const residue & x, const bigint & k)
{
    return ring.pow(x, k);
}

bigint unit_group_order(const prime_ideal & ideal, unsigned e)
{
    return residue_ring(ideal, e).unit_group_order();
}

} // namespace xfw
