#ifndef XFW_FACTOR_HPP
#define XFW_FACTOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "xfw/bigint.hpp"

namespace xfw {

struct prime_power
{
    bigint p;
    unsigned e = 0;

    bool operator==(const prime_power &) const = default;
};

using factorization = std::vector<prime_power>;

struct factor_options
{
    /// Primes below this bound are removed by trial division.
    std::uint64_t trial_bound = 1000000;
    /// Pollard-Brent iterations per attempt before switching polynomial.
    std::uint64_t rho_iterations = 1u << 22;
    unsigned rho_attempts = 24;
};

/// All primes below 10^6, computed once.
const std::vector<std::uint32_t> & small_primes();

bool is_prime_u64(std::uint64_t n);

/// Deterministic below 3.3e24 (Miller-Rabin on the first thirteen prime
/// bases); above that GMP's BPSW-based test.
bool is_prime(const bigint & n);

/// Prime factorization of |n|, n != 0, sorted by prime. Throws
/// factorization_failure when Pollard rho gives up on a composite cofactor.
factorization factorize(const bigint & n, const factor_options & opts = {});

/// Multiplies two factorizations, merging equal primes.
factorization merge(const factorization & a, const factorization & b);

bigint expand(const factorization & f);

/// Primes in [lo, hi) by a segmented sieve over the small-prime table.
std::vector<std::uint64_t> sieve_segment(std::uint64_t lo, std::uint64_t hi);

/// Euler's totient for all n <= limit (index 0 unused).
std::vector<std::uint32_t> totient_table(std::uint32_t limit);

std::uint64_t euler_phi(std::uint64_t n);

/// Positive divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

int moebius(std::uint64_t n);

} // namespace xfw

#endif
