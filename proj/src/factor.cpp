#include "xfw/factor.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "xfw/errors.hpp"

namespace xfw {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return std::uint64_t(u128(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e)
    {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a)
{
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0)
    {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < s; ++i)
    {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

bool strong_probable_prime(const bigint & n, const bigint & a)
{
    bigint d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    bigint x = powm(a, d, n);
    bigint nm1 = n - 1;
    if (x == 1 || x == nm1)
        return true;
    for (unsigned long i = 1; i < s; ++i)
    {
        x = x * x % n;
        if (x == nm1)
            return true;
    }
    return false;
}

constexpr std::uint32_t small_bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// Pollard-Brent on a composite odd n, returning a nontrivial factor.
bigint rho_factor(const bigint & n, const factor_options & opts)
{
    for (unsigned attempt = 0; attempt < opts.rho_attempts; ++attempt)
    {
        const bigint c = attempt + 1;
        bigint y = attempt + 2, x, ys, q = 1, g = 1;
        std::uint64_t r = 1, iters = 0;
        const std::uint64_t m = 128;
        while (g == 1 && iters < opts.rho_iterations)
        {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = (y * y + c) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1)
            {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i)
                {
                    y = (y * y + c) % n;
                    bigint diff = x - y;
                    q = q * abs(diff) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            iters += r;
            r *= 2;
        }
        if (g == n)
        {
            do
            {
                ys = (ys * ys + c) % n;
                bigint diff = x - ys;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != 1 && g != n)
            return g;
    }
    throw factorization_failure("Pollard rho exhausted its budget on " + to_string(n));
}

void factor_cofactor(const bigint & n, std::map<bigint, unsigned> & out, const factor_options & opts)
{
    if (n == 1)
        return;
    if (is_prime(n))
    {
        ++out[n];
        return;
    }
    bigint d = rho_factor(n, opts);
    factor_cofactor(d, out, opts);
    factor_cofactor(bigint(n / d), out, opts);
}

} // namespace

namespace {

std::vector<std::uint32_t> eratosthenes(std::uint32_t limit)
{
    std::vector<bool> composite(limit, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i < limit; ++i)
    {
        if (composite[i])
            continue;
        primes.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j < limit; j += i)
            composite[j] = true;
    }
    return primes;
}

constexpr std::uint32_t short_limit = 1 << 12;

/// Primes covering every p < need, avoiding the large table when possible.
const std::vector<std::uint32_t> & primes_covering(const bigint & need)
{
    static const std::vector<std::uint32_t> short_table = eratosthenes(short_limit);
    return need <= short_limit ? short_table : small_primes();
}

} // namespace

const std::vector<std::uint32_t> & small_primes()
{
    static const std::vector<std::uint32_t> table = eratosthenes(1000000);
    return table;
}

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t p : small_bases)
    {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    if (n < 41 * 41)
        return true;
    // these bases are deterministic for every 64-bit n
    for (std::uint32_t a : small_bases)
        if (!strong_probable_prime(n, a))
            return false;
    return true;
}

bool is_prime(const bigint & n)
{
    if (n < 2)
        return false;
    if (fits_u64(n))
        return is_prime_u64(to_u64(n));
    for (std::uint32_t p : small_bases)
        if (divides(bigint(p), n))
            return false;
    static const bigint deterministic_limit("3317044064679887385961981");
    if (n < deterministic_limit)
    {
        for (std::uint32_t a : small_bases)
            if (!strong_probable_prime(n, bigint(a)))
                return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

factorization factorize(const bigint & n_in, const factor_options & opts)
{
    bigint n = abs(n_in);
    if (n == 0)
        throw std::invalid_argument("factorize: zero has no factorization");

    std::map<bigint, unsigned> found;
    bigint root = sqrt(n) + 1;
    const auto & primes = primes_covering(root < opts.trial_bound ? root : bigint(opts.trial_bound));
    bigint q;
    for (std::uint32_t p : primes)
    {
        if (p >= opts.trial_bound)
            break;
        if (bigint(p) * p > n)
            break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
        {
            unsigned e = 0;
            do
            {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(n.get_mpz_t(), p));
            found[bigint(p)] += e;
        }
    }
    if (n > 1)
        factor_cofactor(n, found, opts);

    factorization f;
    for (auto & [p, e] : found)
        f.push_back({p, e});
    return f;
}

factorization merge(const factorization & a, const factorization & b)
{
    std::map<bigint, unsigned> acc;
    for (const auto & pp : a)
        acc[pp.p] += pp.e;
    for (const auto & pp : b)
        acc[pp.p] += pp.e;
    factorization f;
    for (auto & [p, e] : acc)
        if (e)
            f.push_back({p, e});
    return f;
}

bigint expand(const factorization & f)
{
    bigint r = 1;
    for (const auto & pp : f)
        r *= pow(pp.p, pp.e);
    return r;
}

std::vector<std::uint64_t> sieve_segment(std::uint64_t lo, std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    if (hi <= lo)
        return out;
    lo = std::max<std::uint64_t>(lo, 2);
    if (hi <= lo)
        return out;
    constexpr std::uint64_t last = 999983;
    if (hi - 1 > last * last)
        throw std::out_of_range("sieve_segment: range exceeds the small-prime table squared");
    const auto & primes = primes_covering(sqrt(from_u64(hi)) + 1);

    std::vector<char> composite(hi - lo, 0);
    for (std::uint64_t p : primes)
    {
        if (p * p >= hi)
            break;
        std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
        for (std::uint64_t j = start; j < hi; j += p)
            composite[j - lo] = 1;
    }
    for (std::uint64_t i = 0; i < hi - lo; ++i)
        if (!composite[i])
            out.push_back(lo + i);
    return out;
}

std::vector<std::uint32_t> totient_table(std::uint32_t limit)
{
    std::vector<std::uint32_t> phi(std::size_t(limit) + 1);
    for (std::uint32_t i = 0; i <= limit; ++i)
        phi[i] = i;
    for (std::uint32_t i = 2; i <= limit; ++i)
    {
        if (phi[i] != i)
            continue;
        for (std::uint32_t j = i; j <= limit; j += i)
            phi[j] -= phi[j] / i;
    }
    return phi;
}

std::uint64_t euler_phi(std::uint64_t n)
{
    std::uint64_t result = n;
    for (const auto & pp : factorize(from_u64(n)))
    {
        std::uint64_t p = to_u64(pp.p);
        result -= result / p;
    }
    return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> d{1};
    for (const auto & pp : factorize(from_u64(n)))
    {
        std::uint64_t p = to_u64(pp.p);
        std::size_t base = d.size();
        std::uint64_t pk = 1;
        for (unsigned k = 1; k <= pp.e; ++k)
        {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

int moebius(std::uint64_t n)
{
    int mu = 1;
    for (const auto & pp : factorize(from_u64(n)))
    {
        if (pp.e > 1)
            return 0;
        mu = -mu;
    }
    return mu;
}

} // namespace xfw
