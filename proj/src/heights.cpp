#include "xfw/heights.hpp"

#include <array>
#include <charconv>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "xfw/certificates.hpp"

namespace xfw {

real to_real(const bigint & n)
{
    real r;
    mpfr_set_z(r.backend().data(), n.get_mpz_t(), MPFR_RNDN);
    return r;
}

real to_real(const rational & q)
{
    real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

real log_real(const bigint & n)
{
    if (sgn(n) == 0)
        throw std::domain_error("log of zero");
    return log(to_real(bigint(abs(n))));
}

real log_real(const rational & q)
{
    if (sgn(q) == 0)
        throw std::domain_error("log of zero");
    return log_real(bigint(q.get_num())) - log_real(bigint(q.get_den()));
}

std::string format_real(const real & x, int digits)
{
    if (digits > 0)
        return x.str(digits);
    if (isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(x));
    return std::string(buf, res.ptr);
}

namespace {

/// x = (A + B sqrt d) / C
struct sqrt_form
{
    bigint A, B, C;
};

sqrt_form to_sqrt_form(const quadratic_element & x)
{
    if (x.field().omega_trace() == 1)
        return {2 * x.a() + x.b(), x.b(), 2 * x.den()};
    return {x.a(), x.b(), x.den()};
}

std::vector<place_value> infinite_values(const quadratic_element & x)
{
    const quadratic_field & k = x.field();
    std::vector<place_value> out;
    if (k.is_rational())
    {
        place_value v;
        v.infinite = true;
        rational q = abs(x.as_rational());
        v.value = to_real(q);
        v.log_value = log_real(q);
        out.push_back(std::move(v));
        return out;
    }
    const sqrt_form f = to_sqrt_form(x);
    const bigint m = f.A * f.A - bigint(from_i64(k.d())) * f.B * f.B;
    if (!k.is_real())
    {
        place_value v;
        v.infinite = true;
        v.weight = 2;
        rational q(m, f.C * f.C);
        q.canonicalize();
        v.value = to_real(q);
        v.log_value = log_real(q);
        out.push_back(std::move(v));
        return out;
    }
    // The embedding where A and B*sqrt(d) share a sign is computed directly;
    // the other one as the norm divided by it, which avoids cancellation.
    const real root = sqrt(real(k.d()));
    const real c = to_real(f.C);
    real s1, s2;
    if (sgn(f.A) * sgn(f.B) >= 0)
    {
        s1 = (to_real(f.A) + to_real(f.B) * root) / c;
        s2 = to_real(m) / (c * c * s1);
    }
    else
    {
        s2 = (to_real(f.A) - to_real(f.B) * root) / c;
        s1 = to_real(m) / (c * c * s2);
    }
    for (int i = 0; i < 2; ++i)
    {
        place_value v;
        v.infinite = true;
        v.embedding = i;
        v.value = abs(i == 0 ? s1 : s2);
        v.log_value = log(v.value);
        out.push_back(std::move(v));
    }
    return out;
}

std::string place_key(const place_value & v)
{
    return v.infinite ? "inf" + std::to_string(v.embedding) : v.ideal.to_string();
}

quadratic_field field_of(const quadratic_element & x1, const quadratic_element & x2, const quadratic_element & x3)
{
    return common_field(common_field(x1.field(), x2.field()), x3.field());
}

} // namespace

std::vector<place_value> local_values(const quadratic_element & x)
{
    if (x.is_zero())
        throw std::domain_error("local_values: x must be nonzero");
    std::vector<place_value> out = infinite_values(x);
    for (const auto & [ideal, e] : ideal_factorization(x))
    {
        place_value v;
        v.ideal = ideal;
        v.exponent = e;
        v.log_value = -real(e) * log_real(ideal.norm());
        v.value = exp(v.log_value);
        out.push_back(std::move(v));
    }
    return out;
}

real log_norm(const quadratic_element & x)
{
    if (x.is_zero())
        throw std::domain_error("log_norm of zero");
    return log_real(x.norm()) / x.field().degree();
}

real log_norm(const prime_ideal & ideal)
{
    return log_real(ideal.norm()) / ideal.field.degree();
}

real lambda(const place_value & v, int degree)
{
    return v.log_value > 0 ? real(v.log_value / degree) : real(0);
}

real element_height(const quadratic_element & gamma)
{
    real h = 0;
    const int deg = gamma.field().degree();
    for (const auto & v : local_values(gamma))
        h += lambda(v, deg);
    return h;
}

real lambda_infinite(const quadratic_element & gamma)
{
    if (gamma.is_zero())
        throw std::domain_error("lambda of zero");
    real s = 0;
    for (const auto & v : infinite_values(gamma))
        s += lambda(v, gamma.field().degree());
    return s;
}

real triple_height(const quadratic_element & x1, const quadratic_element & x2, const quadratic_element & x3)
{
    const quadratic_field k = field_of(x1, x2, x3);
    const quadratic_element xs[3] = {x1.in_field(k), x2.in_field(k), x3.in_field(k)};
    std::map<std::string, std::vector<real>> logs;
    int nonzero = 0;
    for (const auto & x : xs)
    {
        if (x.is_zero())
            continue;
        ++nonzero;
        for (const auto & v : local_values(x))
            logs[place_key(v)].push_back(v.log_value);
    }
    if (nonzero == 0)
        throw std::invalid_argument("triple_height: all entries are zero");
    real h = 0;
    for (const auto & [key, values] : logs)
    {
        // An entry absent from a place has ||x||_v = 1 there.
        real best = values.front();
        for (const auto & l : values)
            best = std::max(best, l);
        if (int(values.size()) < nonzero)
            best = std::max(best, real(0));
        h += best;
    }
    return h / k.degree();
}

real radical(const quadratic_element & x1, const quadratic_element & x2, const quadratic_element & x3)
{
    const quadratic_field k = field_of(x1, x2, x3);
    const quadratic_element xs[3] = {x1.in_field(k), x2.in_field(k), x3.in_field(k)};
    std::map<std::string, std::pair<prime_ideal, std::array<long, 3>>> vals;
    for (int i = 0; i < 3; ++i)
    {
        if (xs[i].is_zero())
            throw std::invalid_argument("radical: entries must be nonzero");
        for (const auto & [ideal, e] : ideal_factorization(xs[i]))
        {
            auto & slot = vals.try_emplace(ideal.to_string(), ideal, std::array<long, 3>{0, 0, 0}).first->second;
            slot.second[std::size_t(i)] = e;
        }
    }
    real r = 0;
    for (const auto & [key, entry] : vals)
    {
        const auto & v = entry.second;
        if (v[0] != v[1] || v[1] != v[2])
            r += log_norm(entry.first);
    }
    return r;
}

abc_report abc_quality(const quadratic_element & x1, const quadratic_element & x2, const quadratic_element & x3)
{
    if (x1.is_zero() || x2.is_zero() || x3.is_zero())
        throw std::invalid_argument("abc_quality: entries must be nonzero");
    if (!(x1 + x2 + x3).is_zero())
        throw std::invalid_argument("abc_quality: entries must sum to zero");
    abc_report r;
    r.height = triple_height(x1, x2, x3);
    r.radical = radical(x1, x2, x3);
    if (r.radical == 0)
    {
        r.infinite = r.height > 0;
        r.quality = r.infinite ? std::numeric_limits<real>::infinity() : real(0);
    }
    else
        r.quality = r.height / r.radical;
    return r;
}

phi_ratio_report phi_norm_ratio(const quadratic_element & gamma, std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("phi_norm_ratio: n must be positive");
    quadratic_element value = evaluate_cyclotomic(n, gamma);
    if (value.is_zero())
        throw std::domain_error("Phi_n(gamma) = 0: gamma is a root of unity");
    phi_ratio_report r;
    r.log_norm = log_norm(value);
    r.phi = euler_phi(n);
    r.ratio = r.log_norm / real(r.phi);
    r.target = lambda_infinite(gamma);
    return r;
}

totient_density_report totient_density(std::uint32_t y, double delta)
{
    if (y < 1)
        throw std::invalid_argument("totient_density: Y must be at least 1");
    const double ceiling = 6 / (std::numbers::pi * std::numbers::pi);
    if (!(delta > 0 && delta < ceiling))
        throw std::invalid_argument("totient_density: delta must lie in (0, 6/pi^2)");
    const auto phi = totient_table(y);
    totient_density_report r;
    for (std::uint32_t n = 1; n <= y; ++n)
        if (static_cast<long double>(phi[n]) >= static_cast<long double>(delta) * n)
            ++r.count;
    r.bound = (ceiling - delta) * y;
    return r;
}

} // namespace xfw
