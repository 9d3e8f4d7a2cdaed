#ifndef XFW_KERNELS_HPP
#define XFW_KERNELS_HPP

#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include <omp.h>

// Data-parallel building blocks for the range scans. Every parallel kernel
// has a serial twin with identical output; the tests and the benchmark
// compare them.

namespace xfw::kernels {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m);

/// base^(p-1) = 1 mod p^2 for p < 2^32 not dividing base.
bool wieferich_u64(std::uint64_t base, std::uint64_t p);

/// F_n mod m via the companion matrix [[0,1],[1,1]]^n, m < 2^63.
std::uint64_t fibonacci_mod(std::uint64_t n, std::uint64_t m);

template <typename Result, typename Test>
std::vector<Result> map_serial(std::span<const std::uint64_t> xs, Test && test)
{
    std::vector<Result> out;
    out.reserve(xs.size());
    for (std::uint64_t x : xs)
        out.push_back(test(x));
    return out;
}

/// workers <= 0 uses the OpenMP default. The first exception thrown by any
/// element is rethrown after the loop.
template <typename Result, typename Test>
std::vector<Result> map_parallel(std::span<const std::uint64_t> xs, Test && test, int workers = 0)
{
    std::vector<Result> out(xs.size());
    std::exception_ptr failure;
    const std::int64_t n = std::int64_t(xs.size());
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i)
    {
        try
        {
            out[std::size_t(i)] = test(xs[std::size_t(i)]);
        }
        catch (...)
        {
#pragma omp critical(xfw_kernel_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

} // namespace xfw::kernels

#endif
