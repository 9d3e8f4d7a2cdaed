#include "xfw/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "xfw/errors.hpp"
#include "xfw/wieferich.hpp"

namespace xfw {

namespace {

quadratic_field common_field_of(std::span<const quadratic_element> a)
{
    quadratic_field k;
    for (const auto & x : a)
        k = common_field(k, x.field());
    return k;
}

std::string format_vector(const std::vector<bigint> & v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

/// Rows of the integer left kernel of v (rows x cols), by unimodular row
/// operations on [v | I].
std::vector<std::vector<bigint>> left_kernel(const std::vector<std::vector<long>> & v, std::size_t cols)
{
    const std::size_t m = v.size();
    std::vector<std::vector<bigint>> left(m, std::vector<bigint>(cols)), right(m, std::vector<bigint>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
    {
        for (std::size_t j = 0; j < cols; ++j)
            left[i][j] = v[i][j];
        right[i][i] = 1;
    }
    auto axpy = [&](std::size_t dst, std::size_t src, const bigint & q) {
        for (std::size_t j = 0; j < cols; ++j)
            left[dst][j] -= q * left[src][j];
        for (std::size_t j = 0; j < m; ++j)
            right[dst][j] -= q * right[src][j];
    };
    std::size_t pivot = 0;
    for (std::size_t col = 0; col < cols && pivot < m; ++col)
    {
        while (true)
        {
            std::size_t best = m;
            for (std::size_t r = pivot; r < m; ++r)
                if (sgn(left[r][col]) != 0 && (best == m || abs(left[r][col]) < abs(left[best][col])))
                    best = r;
            if (best == m)
                break;
            bool others = false;
            for (std::size_t r = pivot; r < m; ++r)
            {
                if (r == best || sgn(left[r][col]) == 0)
                    continue;
                bigint q;
                mpz_fdiv_q(q.get_mpz_t(), left[r][col].get_mpz_t(), left[best][col].get_mpz_t());
                axpy(r, best, q);
                others = others || sgn(left[r][col]) != 0;
            }
            if (!others)
            {
                std::swap(left[pivot], left[best]);
                std::swap(right[pivot], right[best]);
                ++pivot;
                break;
            }
        }
    }
    return {right.begin() + std::ptrdiff_t(pivot), right.end()};
}

quadratic_element relation_product(std::span<const quadratic_element> a, const std::vector<bigint> & e,
                                   const quadratic_field & k, unsigned bound)
{
    quadratic_element x(k, 1);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (abs(e[i]) > bound)
            throw resource_limit("relation " + format_vector(e) + " has an exponent beyond " + std::to_string(bound));
        x *= a[i].in_field(k).pow(e[i].get_si());
    }
    return x;
}

/// log |sigma_1(x)| at the first real embedding.
real log_embedding(const quadratic_element & x)
{
    for (const auto & v : local_values(x))
        if (v.infinite && v.embedding == 0)
            return v.log_value;
    throw invariant_breach("no real embedding");
}

} // namespace

group_report multiplicative_rank(std::span<const quadratic_element> a, unsigned exponent_bound)
{
    group_report r;
    const quadratic_field k = common_field_of(a);
    for (const auto & x : a)
    {
        if (x.is_zero())
            throw std::invalid_argument("multiplicative_rank: generators must be nonzero");
        r.generators.push_back(x.in_field(k));
    }
    std::map<bigint, bool> primes;
    for (const auto & x : r.generators)
        for (const auto & p : support_primes(x))
            primes[p] = true;
    for (const auto & [p, unused] : primes)
        for (auto & ideal : primes_above(k, p))
            r.support.push_back(std::move(ideal));
    for (const auto & x : r.generators)
    {
        std::vector<long> row;
        for (const auto & ideal : r.support)
            row.push_back(valuation(x, ideal));
        r.valuation_matrix.push_back(std::move(row));
    }
    r.kernel_basis = left_kernel(r.valuation_matrix, r.support.size());

    // Kernel vectors multiply out to units. Only a real quadratic field has
    // units of infinite order, and those form a rank-one group, so the
    // relations are reduced against the log embedding like a Euclidean gcd.
    std::vector<std::vector<bigint>> rel = r.kernel_basis;
    if (k.is_real() && !k.is_rational() && !rel.empty())
    {
        std::vector<real> logs;
        for (const auto & e : rel)
        {
            real l = 0;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (sgn(e[i]) != 0)
                    l += to_real(e[i]) * log_embedding(r.generators[i]);
            logs.push_back(l);
        }
        const real eps = real(1e-25) * (1 + [&] {
                             real s = 0;
                             for (const auto & g : r.generators)
                                 s += abs(log_embedding(g));
                             return s;
                         }());
        while (true)
        {
            std::size_t best = logs.size();
            for (std::size_t j = 0; j < logs.size(); ++j)
                if (abs(logs[j]) > eps && (best == logs.size() || abs(logs[j]) < abs(logs[best])))
                    best = j;
            if (best == logs.size())
                break;
            bool reduced = false;
            for (std::size_t j = 0; j < logs.size(); ++j)
            {
                if (j == best || abs(logs[j]) <= eps)
                    continue;
                real q = round(logs[j] / logs[best]);
                bigint qi;
                mpfr_get_z(qi.get_mpz_t(), q.backend().data(), MPFR_RNDN);
                for (std::size_t i = 0; i < rel[j].size(); ++i)
                    rel[j][i] -= qi * rel[best][i];
                logs[j] -= q * logs[best];
                reduced = true;
            }
            if (!reduced)
                break;
        }
        std::vector<std::vector<bigint>> torsion;
        for (std::size_t j = 0; j < rel.size(); ++j)
            if (abs(logs[j]) <= eps)
                torsion.push_back(rel[j]);
        rel = std::move(torsion);
    }
    for (const auto & e : rel)
    {
        if (!is_torsion(relation_product(r.generators, e, k, exponent_bound)))
            throw invariant_breach("relation " + format_vector(e) + " does not multiply to a root of unity");
        r.torsion_relations.push_back(e);
    }
    r.free_rank = r.generators.size() - r.torsion_relations.size();
    return r;
}

real expected_count(std::span<const quadratic_element> a, std::uint64_t y)
{
    return expected_count(a, y, multiplicative_rank(a).free_rank);
}

real expected_count(std::span<const quadratic_element> a, std::uint64_t y, std::size_t r)
{
    const quadratic_field k = common_field_of(a);
    real sum = 0;
    if (y < 2)
        return sum;
    for (std::uint64_t p : sieve_segment(2, y + 1))
        for (const auto & ideal : primes_above(k, from_u64(p)))
        {
            if (ideal.kind == prime_kind::ramified || ideal.norm() > from_u64(y))
                continue;
            bool degenerate = false;
            for (const auto & x : a)
                degenerate = degenerate || valuation(x.in_field(k), ideal) != 0;
            if (!degenerate)
                sum += pow(to_real(ideal.norm()), -real(r));
        }
    return sum;
}

std::vector<quadratic_element> expand_roots(std::span<const quadratic_element> roots)
{
    const quadratic_field k = common_field_of(roots);
    std::vector<quadratic_element> poly{quadratic_element(k, 1)};
    for (const auto & root : roots)
    {
        std::vector<quadratic_element> next(poly.size() + 1, quadratic_element(k, 0));
        for (std::size_t i = 0; i < poly.size(); ++i)
        {
            next[i + 1] += poly[i];
            next[i] -= poly[i] * root;
        }
        poly = std::move(next);
    }
    return poly;
}

companion_system make_companion_system(const recurrence_tuple & t)
{
    t.validate();
    companion_system s;
    s.field = t.field();
    s.coefficients = t.recurrence_coefficients();
    const std::size_t m = t.order();
    const quadratic_element zero(s.field, 0), one(s.field, 1);
    s.matrix.assign(m, std::vector<quadratic_element>(m, zero));
    for (std::size_t i = 0; i + 1 < m; ++i)
        s.matrix[i][i + 1] = one;
    for (std::size_t j = 0; j < m; ++j)
        s.matrix[m - 1][j] = s.coefficients[j];
    for (std::size_t i = 0; i < m; ++i)
        s.initial.push_back(t.term(i).in_field(s.field));
    return s;
}

std::vector<quadratic_element> characteristic_polynomial(const std::vector<std::vector<quadratic_element>> & m)
{
    const std::size_t n = m.size();
    const quadratic_field k = n ? m[0][0].field() : quadratic_field{};
    const quadratic_element zero(k, 0);
    using matrix = std::vector<std::vector<quadratic_element>>;
    auto mul = [&](const matrix & x, const matrix & y) {
        matrix z(n, std::vector<quadratic_element>(n, zero));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (!x[i][l].is_zero())
                    for (std::size_t j = 0; j < n; ++j)
                        z[i][j] += x[i][l] * y[l][j];
        return z;
    };
    std::vector<quadratic_element> c(n + 1, zero);
    c[n] = quadratic_element(k, 1);
    matrix mk(n, std::vector<quadratic_element>(n, zero));
    for (std::size_t step = 1; step <= n; ++step)
    {
        for (std::size_t i = 0; i < n; ++i)
            mk[i][i] += c[n - step + 1];
        mk = mul(m, mk);
        quadratic_element tr = zero;
        for (std::size_t i = 0; i < n; ++i)
            tr += mk[i][i];
        c[n - step] = -tr / quadratic_element(k, std::int64_t(step));
    }
    return c;
}

namespace {

/// Iterates q -> M q over a ring of coordinates until q returns to q_0,
/// then confirms M^k q_0 = q_0 by square-and-multiply.
template <typename Ring>
bigint orbit_in(const Ring & ring, const companion_system & sys, const std::string & where, const bigint & size)
{
    using value = typename Ring::value;
    const std::size_t m = sys.order();
    std::vector<std::vector<value>> mat(m, std::vector<value>(m));
    std::vector<value> q0(m);
    for (std::size_t i = 0; i < m; ++i)
    {
        for (std::size_t j = 0; j < m; ++j)
            mat[i][j] = ring.reduce(sys.matrix[i][j]);
        q0[i] = ring.reduce(sys.initial[i]);
    }
    if (!ring.is_unit(ring.reduce(sys.coefficients[0])))
        throw degenerate_input("companion matrix is not invertible modulo " + where);

    auto apply = [&](const std::vector<std::vector<value>> & x, const std::vector<value> & q) {
        std::vector<value> out(m, ring.zero());
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                out[i] = ring.add(out[i], ring.mul(x[i][j], q[j]));
        return out;
    };
    auto matmul = [&](const std::vector<std::vector<value>> & x, const std::vector<std::vector<value>> & y) {
        std::vector<std::vector<value>> z(m, std::vector<value>(m, ring.zero()));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < m; ++l)
                for (std::size_t j = 0; j < m; ++j)
                    z[i][j] = ring.add(z[i][j], ring.mul(x[i][l], y[l][j]));
        return z;
    };

    bigint cap = pow(size, unsigned(m));
    const std::uint64_t budget = fits_u64(cap) ? to_u64(cap) : std::numeric_limits<std::uint64_t>::max();
    std::vector<value> q = q0;
    std::uint64_t k = 0;
    do
    {
        q = apply(mat, q);
        if (++k > budget)
            throw resource_limit("orbit modulo " + where + " exceeded " + std::to_string(budget) + " steps");
    } while (q != q0);

    std::vector<std::vector<value>> power(m, std::vector<value>(m, ring.zero())), base = mat;
    for (std::size_t i = 0; i < m; ++i)
        power[i][i] = ring.one();
    for (std::uint64_t e = k; e; e >>= 1)
    {
        if (e & 1)
            power = matmul(power, base);
        base = matmul(base, base);
    }
    if (apply(power, q0) != q0)
        throw invariant_breach("orbit period " + std::to_string(k) + " modulo " + where + " failed confirmation");
    return from_u64(k);
}

struct ideal_ring
{
    using value = residue;
    const residue_ring & r;

    value reduce(const quadratic_element & x) const { return r.reduce(x); }
    value zero() const { return r.zero(); }
    value one() const { return r.one(); }
    value add(const value & x, const value & y) const { return r.add(x, y); }
    value mul(const value & x, const value & y) const { return r.mul(x, y); }
    bool is_unit(const value & x) const { return r.is_unit(x); }
};

struct integer_ring
{
    using value = bigint;
    bigint m;

    value reduce(const quadratic_element & x) const
    {
        if (!x.is_rational())
            throw std::invalid_argument("orbit over Z/m needs a system with rational entries");
        rational q = x.as_rational();
        auto inv = inverse_mod(q.get_den(), m);
        if (!inv)
            throw degenerate_input("denominator of " + to_string(q) + " is not invertible modulo " + to_string(m));
        return mod(q.get_num() * *inv, m);
    }
    value zero() const { return 0; }
    value one() const { return mod(bigint(1), m); }
    value add(const value & x, const value & y) const { return mod(x + y, m); }
    value mul(const value & x, const value & y) const { return mod(x * y, m); }
    bool is_unit(const value & x) const { return gcd(x, m) == 1; }
};

} // namespace

bigint orbit_period(const companion_system & sys, const modulus_factor & modulus)
{
    residue_ring ring(modulus.ideal, modulus.e);
    return orbit_in(ideal_ring{ring}, sys, modulus.to_string(), modulus.norm());
}

bigint orbit_period(const companion_system & sys, const bigint & m)
{
    if (sgn(m) <= 0)
        throw std::invalid_argument("orbit_period: modulus must be positive");
    if (m == 1)
        return 1;
    return orbit_in(integer_ring{m}, sys, to_string(m), m);
}

consistency_verdict eigen_consistency(const recurrence_tuple & t, const modulus_factor & modulus)
{
    const companion_system sys = make_companion_system(t);
    consistency_verdict v;
    v.orbit = orbit_period(sys, modulus);
    v.formula = period_formula(t, std::span(&modulus, 1)).period;
    std::vector<quadratic_element> roots;
    for (const auto & a : t.a)
        roots.push_back(a.in_field(sys.field));
    v.charpoly_matches = characteristic_polynomial(sys.matrix) == expand_roots(roots);
    if (v.orbit != v.formula || !v.charpoly_matches)
        throw invariant_breach("orbit and formula disagree modulo " + modulus.to_string() + ": " +
                               to_string(v.orbit) + " vs " + to_string(v.formula));
    return v;
}

} // namespace xfw
