#include "xfw/certificates.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>

#include <omp.h>

#include "xfw/errors.hpp"
#include "xfw/heights.hpp"
#include "xfw/periods.hpp"
#include "xfw/wieferich.hpp"

namespace xfw {

numerator_denominator_ideals numerator_denominator(const quadratic_element & gamma)
{
    if (gamma.is_zero())
        throw std::invalid_argument("numerator_denominator: gamma must be nonzero");
    numerator_denominator_ideals r;
    for (auto & f : ideal_factorization(gamma))
    {
        if (f.exponent > 0)
            r.numerator.push_back(f);
        else
            r.denominator.push_back({f.ideal, -f.exponent});
    }
    return r;
}

namespace {

/// Quotient of num by a monic divisor; throws unless the division is exact.
std::vector<bigint> divide_exact(std::vector<bigint> num, const std::vector<bigint> & den)
{
    const std::size_t dn = den.size() - 1;
    std::vector<bigint> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;)
    {
        const bigint c = num[i];
        q[i - dn] = c;
        if (sgn(c) == 0)
            continue;
        for (std::size_t j = 0; j <= dn; ++j)
            num[i - dn + j] -= c * den[j];
    }
    for (std::size_t i = 0; i < dn; ++i)
        if (sgn(num[i]) != 0)
            throw invariant_breach("cyclotomic division left a remainder");
    return q;
}

} // namespace

const std::vector<bigint> & cyclotomic_poly(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("cyclotomic_poly: n must be positive");
    static std::map<std::uint64_t, std::vector<bigint>> cache;
    static std::recursive_mutex lock;
    std::lock_guard guard(lock);
    if (auto it = cache.find(n); it != cache.end())
        return it->second;

    std::vector<bigint> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;
    for (std::uint64_t d : divisors(n))
        if (d < n)
            poly = divide_exact(std::move(poly), cyclotomic_poly(d));
    return cache.emplace(n, std::move(poly)).first->second;
}

quadratic_element evaluate_cyclotomic(std::uint64_t n, const quadratic_element & x)
{
    const auto & c = cyclotomic_poly(n);
    quadratic_element acc(x.field(), 0);
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * x + quadratic_element(x.field(), c[i]);
    return acc;
}

bigint squarefree_part(const bigint & n)
{
    if (sgn(n) == 0)
        throw std::invalid_argument("squarefree_part: n must be nonzero");
    bigint r = 1;
    for (const auto & [p, e] : factorize(n))
        if (e == 1)
            r *= p;
    return r;
}

ideal_split split_value(const quadratic_element & gamma, std::uint64_t n, split_mode mode)
{
    if (n == 0)
        throw std::invalid_argument("split_value: n must be positive");
    ideal_split s;
    s.n = n;
    s.mode = mode;
    s.value = mode == split_mode::power ? gamma.pow(std::int64_t(n)) - quadratic_element(gamma.field(), 1)
                                        : evaluate_cyclotomic(n, gamma);
    if (s.value.is_zero())
        throw std::domain_error("split_value: the value vanishes, gamma is a root of unity");
    for (auto & f : ideal_factorization(s.value))
    {
        if (f.exponent == 1)
            s.u_part.push_back(f);
        else if (f.exponent > 1)
            s.v_part.push_back(f);
        else
            s.w_part.push_back({f.ideal, -f.exponent});
    }
    return s;
}

std::vector<certificate> certificate_for_n(const quadratic_element & gamma, std::uint64_t n)
{
    const ideal_split s = split_value(gamma, n, split_mode::cyclotomic);
    std::vector<certificate> out;
    for (const auto & [ideal, e] : s.u_part)
    {
        if (ideal.kind == prime_kind::ramified || divides(ideal.p, from_u64(n)) || valuation(gamma, ideal) != 0)
            continue;
        certificate c;
        c.n = n;
        c.ideal = ideal;

        residue_ring r1(ideal, 1);
        c.order_check = multiplicative_order(r1, r1.reduce(gamma)) == from_u64(n);
        c.k = fermat_quotient_residue(gamma, ideal);
        residue_ring r2(ideal, 2);
        c.square_check = sgn(c.k) != 0 && !r2.is_zero(r2.reduce(s.value));
        if (!c.order_check || !c.square_check)
            throw invariant_breach("certificate at " + ideal.to_string() + " for n = " + std::to_string(n) +
                                   " failed verification");
        out.push_back(std::move(c));
    }
    return out;
}

certified_count_report certified_count(const quadratic_element & gamma, const bigint & bound, int workers)
{
    const real h = element_height(gamma);
    if (h == 0)
        throw std::invalid_argument("certified_count: gamma has height zero (a root of unity)");
    certified_count_report r;
    if (bound <= 2)
        return r;
    const real limit = (log_real(bound) - log(real(2))) / h + real(default_tolerance);
    r.n_max = limit < 1 ? 0 : static_cast<std::uint64_t>(floor(limit));

    std::vector<certified_batch> batches(r.n_max);
    std::vector<std::string> failures(r.n_max);
    std::exception_ptr error;
    const std::int64_t count = std::int64_t(r.n_max);
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i)
    {
        const std::uint64_t n = std::uint64_t(i) + 1;
        batches[std::size_t(i)].n = n;
        try
        {
            batches[std::size_t(i)].certificates = certificate_for_n(gamma, n);
        }
        catch (const factorization_failure & e)
        {
            failures[std::size_t(i)] = e.what();
        }
        catch (...)
        {
#pragma omp critical(xfw_certified_count)
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);

    std::map<std::string, std::uint64_t> seen;
    for (std::size_t i = 0; i < batches.size(); ++i)
    {
        if (!failures[i].empty())
        {
            r.skipped.push_back({batches[i].n, failures[i]});
            continue;
        }
        for (const auto & c : batches[i].certificates)
        {
            auto [it, fresh] = seen.emplace(c.ideal.to_string(), c.n);
            if (!fresh && it->second != c.n)
                throw invariant_breach("ideal " + c.ideal.to_string() + " certified by two indices");
            if (fresh && c.ideal.norm() <= bound)
                ++r.count;
        }
        r.stream.push_back(std::move(batches[i]));
    }
    return r;
}

} // namespace xfw
