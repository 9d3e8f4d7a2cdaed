// Serial against OpenMP timings for the range-scan kernels.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "xfw/search.hpp"

namespace {

struct timing
{
    double seconds;
    xfw::search_checkpoint result;
};

timing time_scan(const xfw::scan_predicate & pred, std::uint64_t lo, std::uint64_t hi, bool parallel, int workers)
{
    xfw::search_options o;
    o.lo = lo;
    o.hi = hi;
    o.parallel = parallel;
    o.workers = workers;
    const auto start = std::chrono::steady_clock::now();
    auto r = xfw::search_range(pred, o);
    return {std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), std::move(r)};
}

void compare(const std::string & label, const xfw::scan_predicate & pred, std::uint64_t lo, std::uint64_t hi,
             int workers)
{
    const timing serial = time_scan(pred, lo, hi, false, workers);
    const timing parallel = time_scan(pred, lo, hi, true, workers);
    const bool same = xfw::serialize_checkpoint(serial.result) == xfw::serialize_checkpoint(parallel.result);
    std::cout << label << " [" << lo << ", " << hi << "): " << serial.result.primes_scanned << " primes, serial "
              << serial.seconds << " s, parallel " << parallel.seconds << " s, speedup "
              << serial.seconds / parallel.seconds << (same ? "" : "  OUTPUTS DIFFER") << '\n';
}

} // namespace

int main(int argc, char ** argv)
{
    const int workers = argc > 1 ? std::atoi(argv[1]) : 0;
    const auto two = xfw::quadratic_element::from_int(2);
    const auto golden = xfw::quadratic_element::parse("(1+sqrt(5))/2");
    compare("wieferich base 2", xfw::wieferich_predicate(two), 2, 20000000, workers);
    compare("wieferich base (1+sqrt5)/2", xfw::wieferich_predicate(golden), 2, 300000, workers);
    compare("wall pi(p) vs pi(p^2)", xfw::wall_predicate(), 2, 300000, workers);
    compare("wss index criterion", xfw::wss_predicate(), 2, 5000000, workers);
}
