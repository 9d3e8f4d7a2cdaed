#include "xfw/kernels.hpp"

namespace xfw::kernels {

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

bool wieferich_u64(std::uint64_t base, std::uint64_t p)
{
    const std::uint64_t p2 = p * p;
    return powmod(base % p2, p - 1, p2) == 1;
}

std::uint64_t fibonacci_mod(std::uint64_t n, std::uint64_t m)
{
    // [[a, b], [b, c]] stays symmetric: powers of [[0,1],[1,1]] are
    // [[F(k-1), F(k)], [F(k), F(k+1)]].
    std::uint64_t ra = 1 % m, rb = 0, rc = 1 % m;
    std::uint64_t a = 0, b = 1 % m, c = 1 % m;
    while (n)
    {
        if (n & 1)
        {
            std::uint64_t na = (mulmod(ra, a, m) + mulmod(rb, b, m)) % m;
            std::uint64_t nb = (mulmod(ra, b, m) + mulmod(rb, c, m)) % m;
            std::uint64_t nc = (mulmod(rb, b, m) + mulmod(rc, c, m)) % m;
            ra = na;
            rb = nb;
            rc = nc;
        }
        std::uint64_t na = (mulmod(a, a, m) + mulmod(b, b, m)) % m;
        std::uint64_t nb = (mulmod(a, b, m) + mulmod(b, c, m)) % m;
        std::uint64_t nc = (mulmod(b, b, m) + mulmod(c, c, m)) % m;
        a = na;
        b = nb;
        c = nc;
        n >>= 1;
    }
    return rb;
}

} // namespace xfw::kernels
