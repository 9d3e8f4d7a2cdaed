#ifndef XFW_SEARCH_HPP
#define XFW_SEARCH_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "xfw/wieferich.hpp"

namespace xfw {

/// A prime ideal above p at which the predicate holds. `all_ideals` is set
/// when every tested ideal above p qualifies.
struct search_hit
{
    std::uint64_t p = 0;
    std::string ideal;
    bool all_ideals = true;

    bool operator==(const search_hit &) const = default;
};

/// A pure per-prime test. `name` and `parameters` feed the config hash.
struct scan_predicate
{
    std::string name;
    std::string parameters;
    std::function<std::vector<search_hit>(std::uint64_t)> test;
};

/// gamma^(N(p)-1) = 1 mod p^2 at each unramified ideal above p where gamma
/// is a unit.
scan_predicate wieferich_predicate(const quadratic_element & base);
/// pi(p) = pi(p^2).
scan_predicate wall_predicate();
/// F_{p-(5/p)} = 0 mod p^2; p = 2 and p = 5 never hit.
scan_predicate wss_predicate();

struct search_checkpoint
{
    static constexpr int current_version = 1;

    int version = current_version;
    std::string config_hash;
    std::string predicate;
    std::string parameters;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    /// Every prime below the cursor has been tested.
    std::uint64_t cursor = 0;
    std::vector<search_hit> hits;
    std::uint64_t primes_scanned = 0;
    std::uint64_t segments = 0;
    /// Measured for this process only; not part of the record, so resumed
    /// and uninterrupted runs write identical files.
    double wall_seconds = 0;

    bool complete() const { return cursor == hi; }
};

struct search_options
{
    std::uint64_t lo = 2;
    std::uint64_t hi = 2;
    std::uint64_t segment_size = 1 << 16;
    /// Append a record after every this many segments (counted from lo) and
    /// once at the end.
    std::uint32_t checkpoint_every = 8;
    /// Empty: keep the state in memory only.
    std::filesystem::path checkpoint;
    bool resume = false;
    /// Stop without writing after this many segments in this call; 0 runs
    /// to the end. Simulates a crash for resume tests.
    std::uint64_t stop_after_segments = 0;
    bool parallel = true;
    int workers = 0;
};

std::string config_hash(const scan_predicate & pred, const search_options & opts);

/// Scans the primes of [lo, hi). An existing checkpoint file is an error
/// unless `resume` is set; a resumed file must carry the same config hash and
/// range, and its hits are re-verified. A torn final line is discarded.
search_checkpoint search_range(const scan_predicate & pred, const search_options & opts);

std::string serialize_checkpoint(const search_checkpoint & c);
/// Throws checkpoint_error on malformed records.
search_checkpoint parse_checkpoint(std::string_view line);

/// Union of two completed scans of adjacent ranges with the same config
/// hash. Associative and commutative.
search_checkpoint merge_checkpoints(const search_checkpoint & a, const search_checkpoint & b);

} // namespace xfw

#endif
