#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "xfw/errors.hpp"
#include "xfw/search.hpp"
#include "xfw/wieferich.hpp"

using namespace xfw;
namespace fs = std::filesystem;

namespace {

const quadratic_field q = quadratic_field::rationals();

struct scratch_dir
{
    fs::path path;
    scratch_dir()
    {
        path = fs::temp_directory_path() / ("xfw-search-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~scratch_dir() { fs::remove_all(path); }
    fs::path file(const std::string & name) const { return path / name; }
};

std::string slurp(const fs::path & p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path & p, const std::string & s)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << s;
}

std::vector<std::uint64_t> hit_primes(const search_checkpoint & c)
{
    std::vector<std::uint64_t> out;
    for (const auto & h : c.hits)
        out.push_back(h.p);
    return out;
}

search_options small_run(std::uint64_t hi, const fs::path & file = {})
{
    search_options o;
    o.lo = 2;
    o.hi = hi;
    o.segment_size = 700;
    o.checkpoint_every = 2;
    o.checkpoint = file;
    return o;
}

} // namespace

TEST_CASE("Wieferich search finds 1093 and 3511")
{
    auto pred = wieferich_predicate(quadratic_element(q, 2));
    search_options o;
    o.lo = 2;
    o.hi = 10000;
    auto c = search_range(pred, o);
    CHECK(hit_primes(c) == std::vector<std::uint64_t>{1093, 3511});
    CHECK(c.complete());
    CHECK(c.primes_scanned == 1229);
    CHECK(c.hits[0].ideal == "(1093)");

    o.lo = o.hi = 50;
    auto empty = search_range(pred, o);
    CHECK(empty.hits.empty());
    CHECK(empty.primes_scanned == 0);
    o.lo = 60;
    CHECK_THROWS_AS(search_range(pred, o), std::invalid_argument);
    CHECK_THROWS_AS(wieferich_predicate(quadratic_element(q, 0)), std::invalid_argument);
}

TEST_CASE("base 3 and the golden ratio")
{
    search_options o;
    o.lo = 2;
    o.hi = 20000;
    CHECK(hit_primes(search_range(wieferich_predicate(quadratic_element(q, 3)), o)) == std::vector<std::uint64_t>{11});
    const quadratic_field q5(5);
    const auto phi = quadratic_element::parse("(1+sqrt(5))/2", q5);
    o.hi = 3000;
    auto c = search_range(wieferich_predicate(phi), o);
    std::vector<std::uint64_t> direct;
    for (std::uint64_t p : sieve_segment(2, 3000))
        for (const auto & ideal : primes_above(q5, from_u64(p)))
            if (ideal.kind != prime_kind::ramified && is_alpha_wieferich(phi, ideal))
            {
                direct.push_back(p);
                break;
            }
    CHECK(hit_primes(c) == direct);
}

TEST_CASE("Wall and WSS scans are empty below 10^5")
{
    search_options o;
    o.lo = 2;
    o.hi = 100000;
    CHECK(search_range(wall_predicate(), o).hits.empty());
    CHECK(search_range(wss_predicate(), o).hits.empty());
    CHECK(search_range(wss_predicate(), o).primes_scanned == 9592);
}

TEST_CASE("serial and parallel scans agree")
{
    for (const auto & pred : {wieferich_predicate(quadratic_element(q, 2)), wieferich_predicate(quadratic_element(q, 5)),
                              wss_predicate(), wieferich_predicate(quadratic_element::parse("1+sqrt(2)", quadratic_field(2)))})
    {
        auto o = small_run(30000);
        o.parallel = false;
        auto serial = search_range(pred, o);
        o.parallel = true;
        o.workers = 3;
        auto parallel = search_range(pred, o);
        CHECK(serialize_checkpoint(serial) == serialize_checkpoint(parallel));
    }
}

TEST_CASE("checkpoint records round-trip")
{
    auto c = search_range(wieferich_predicate(quadratic_element(q, 2)), small_run(5000));
    const std::string line = serialize_checkpoint(c);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(serialize_checkpoint(parse_checkpoint(line)) == line);
    CHECK(line.find("wall") == std::string::npos);
    CHECK_THROWS_AS(parse_checkpoint("{"), checkpoint_error);
    CHECK_THROWS_AS(parse_checkpoint("[1,2]"), checkpoint_error);
    std::string bad = line;
    bad.replace(bad.find("\"version\":1"), 11, "\"version\":9");
    CHECK_THROWS_AS(parse_checkpoint(bad), checkpoint_error);
}

TEST_CASE("config hash covers the parameters")
{
    auto p2 = wieferich_predicate(quadratic_element(q, 2));
    auto p3 = wieferich_predicate(quadratic_element(q, 3));
    auto o = small_run(1000);
    CHECK(config_hash(p2, o) != config_hash(p3, o));
    auto o2 = o;
    o2.segment_size = 800;
    CHECK(config_hash(p2, o) != config_hash(p2, o2));
    o2 = o;
    o2.hi = 2000;
    CHECK(config_hash(p2, o) == config_hash(p2, o2));
    CHECK(config_hash(p2, o).size() == 16);
}

TEST_CASE("resumed scans write byte-identical files")
{
    scratch_dir dir;
    auto pred = wieferich_predicate(quadratic_element(q, 2));
    const auto reference = dir.file("full.jsonl");
    search_range(pred, small_run(12000, reference));
    const std::string expected = slurp(reference);
    CHECK(std::count(expected.begin(), expected.end(), '\n') == 9);

    for (std::uint64_t cut : {1, 2, 3, 5, 8, 17, 18})
    {
        CAPTURE(cut);
        const auto file = dir.file("cut" + std::to_string(cut) + ".jsonl");
        auto o = small_run(12000, file);
        o.stop_after_segments = cut;
        auto partial = search_range(pred, o);
        CHECK(partial.complete() == (cut >= 18));
        o.stop_after_segments = 0;
        o.resume = true;
        auto done = search_range(pred, o);
        CHECK(done.complete());
        CHECK(slurp(file) == expected);
        // A second resume of a finished file is a no-op.
        search_range(pred, o);
        CHECK(slurp(file) == expected);
    }
}

TEST_CASE("several crashes in a row")
{
    scratch_dir dir;
    auto pred = wss_predicate();
    const auto reference = dir.file("full.jsonl");
    search_range(pred, small_run(20000, reference));
    const auto file = dir.file("steps.jsonl");
    auto o = small_run(20000, file);
    o.resume = true;
    o.stop_after_segments = 3;
    for (int i = 0; i < 40 && !search_range(pred, o).complete(); ++i)
    {
    }
    CHECK(slurp(file) == slurp(reference));
}

TEST_CASE("torn trailing line is discarded")
{
    scratch_dir dir;
    auto pred = wieferich_predicate(quadratic_element(q, 2));
    const auto reference = dir.file("full.jsonl");
    search_range(pred, small_run(12000, reference));

    const auto file = dir.file("torn.jsonl");
    auto o = small_run(12000, file);
    o.stop_after_segments = 5;
    search_range(pred, o);
    std::string content = slurp(file);
    spit(file, content + "{\"version\":\"1\",\"config_ha");
    o.stop_after_segments = 0;
    o.resume = true;
    search_range(pred, o);
    CHECK(slurp(file) == slurp(reference));
}

TEST_CASE("checkpoint errors")
{
    scratch_dir dir;
    auto p2 = wieferich_predicate(quadratic_element(q, 2));
    const auto file = dir.file("c.jsonl");
    auto o = small_run(12000, file);
    o.stop_after_segments = 4;
    search_range(p2, o);
    const std::string content = slurp(file);

    SUBCASE("existing file without resume")
    {
        o.stop_after_segments = 0;
        CHECK_THROWS_AS(search_range(p2, o), checkpoint_error);
    }
    SUBCASE("different configuration")
    {
        o.resume = true;
        CHECK_THROWS_AS(search_range(wieferich_predicate(quadratic_element(q, 3)), o), checkpoint_error);
        auto o2 = o;
        o2.hi = 13000;
        CHECK_THROWS_AS(search_range(p2, o2), checkpoint_error);
        o2 = o;
        o2.segment_size = 900;
        CHECK_THROWS_AS(search_range(p2, o2), checkpoint_error);
    }
    SUBCASE("corrupt record")
    {
        spit(file, "not json\n" + content);
        o.resume = true;
        CHECK_THROWS_AS(search_range(p2, o), checkpoint_error);
    }
    SUBCASE("tampered hit")
    {
        auto last = parse_checkpoint(content.substr(0, content.find('\n')));
        last.hits.insert(last.hits.begin(), search_hit{7, "(7)", true});
        spit(file, content + serialize_checkpoint(last) + "\n");
        o.resume = true;
        CHECK_THROWS_AS(search_range(p2, o), checkpoint_error);
    }
}

TEST_CASE("merging adjacent scans")
{
    auto pred = wieferich_predicate(quadratic_element(q, 2));
    auto run = [&](std::uint64_t lo, std::uint64_t hi) {
        search_options o;
        o.lo = lo;
        o.hi = hi;
        o.segment_size = 1000;
        return search_range(pred, o);
    };
    auto a = run(2, 1500), b = run(1500, 3600), c = run(3600, 9000);
    auto whole = run(2, 9000);
    auto left = merge_checkpoints(merge_checkpoints(a, b), c);
    auto right = merge_checkpoints(a, merge_checkpoints(b, c));
    CHECK(serialize_checkpoint(left) == serialize_checkpoint(right));
    CHECK(serialize_checkpoint(merge_checkpoints(b, a)) == serialize_checkpoint(merge_checkpoints(a, b)));
    CHECK(left.hits == whole.hits);
    CHECK(left.primes_scanned == whole.primes_scanned);
    CHECK(left.lo == 2);
    CHECK(left.hi == 9000);
    CHECK_THROWS_AS(merge_checkpoints(a, c), std::invalid_argument);
    search_options o;
    o.lo = 1500;
    o.hi = 3600;
    o.segment_size = 1000;
    CHECK_THROWS_AS(merge_checkpoints(a, search_range(wieferich_predicate(quadratic_element(q, 3)), o)),
                    std::invalid_argument);
}
