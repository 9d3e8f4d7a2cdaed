#include "xfw/search.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "xfw/errors.hpp"
#include "xfw/kernels.hpp"

namespace xfw {

namespace {

using json = nlohmann::ordered_json;

} // namespace

scan_predicate wieferich_predicate(const quadratic_element & base)
{
    if (base.is_zero())
        throw std::invalid_argument("wieferich_predicate: the base must be nonzero");
    scan_predicate pred;
    pred.name = "wieferich";
    pred.parameters = base.to_string();
    const bool fast = base.field().is_rational() && base.is_integral() && sgn(base.a()) > 0 && fits_u64(base.a());
    const std::uint64_t small = fast ? to_u64(base.a()) : 0;
    pred.test = [base, fast, small](std::uint64_t p) {
        std::vector<search_hit> hits;
        if (fast && p < (std::uint64_t(1) << 32))
        {
            if (small % p != 0 && kernels::wieferich_u64(small, p))
                hits.push_back({p, "(" + std::to_string(p) + ")", true});
            return hits;
        }
        bool all = true;
        for (const auto & ideal : primes_above(base.field(), from_u64(p)))
        {
            if (ideal.kind == prime_kind::ramified || base.is_zero() || valuation(base, ideal) != 0)
            {
                all = false;
                continue;
            }
            if (is_alpha_wieferich(base, ideal))
                hits.push_back({p, ideal.to_string(), true});
            else
                all = false;
        }
        for (auto & h : hits)
            h.all_ideals = all;
        return hits;
    };
    return pred;
}

scan_predicate wall_predicate()
{
    scan_predicate pred;
    pred.name = "wall";
    pred.test = [](std::uint64_t p) {
        std::vector<search_hit> hits;
        if (wall_period_test(from_u64(p)).equal)
            hits.push_back({p, "(" + std::to_string(p) + ")", true});
        return hits;
    };
    return pred;
}

scan_predicate wss_predicate()
{
    scan_predicate pred;
    pred.name = "wss";
    pred.test = [](std::uint64_t p) {
        std::vector<search_hit> hits;
        if (p != 2 && p != 5 && wss_divisibility_test(from_u64(p)))
            hits.push_back({p, "(" + std::to_string(p) + ")", true});
        return hits;
    };
    return pred;
}

std::string config_hash(const scan_predicate & pred, const search_options & opts)
{
    std::ostringstream canon;
    canon << "xfw-search/v" << search_checkpoint::current_version << '|' << pred.name << '|' << pred.parameters << '|'
          << opts.segment_size << '|' << opts.checkpoint_every;
    // FNV-1a, 64 bit
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon.str())
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

std::string serialize_checkpoint(const search_checkpoint & c)
{
    json hits = json::array();
    for (const auto & h : c.hits)
        hits.push_back({{"p", std::to_string(h.p)}, {"ideal", h.ideal}, {"all_ideals", h.all_ideals}});
    json j = {
        {"version", c.version},
        {"config_hash", c.config_hash},
        {"predicate", c.predicate},
        {"parameters", c.parameters},
        {"range", {{"lo", std::to_string(c.lo)}, {"hi", std::to_string(c.hi)}}},
        {"cursor", std::to_string(c.cursor)},
        {"hits", hits},
        {"stats", {{"primes_scanned", std::to_string(c.primes_scanned)}, {"segments", std::to_string(c.segments)}}},
    };
    return j.dump();
}

namespace {

std::uint64_t parse_u64(const json & j, const char * what)
{
    if (!j.is_string())
        throw checkpoint_error(std::string("checkpoint field ") + what + " is not a decimal string");
    const std::string & s = j.get_ref<const std::string &>();
    if (s.empty() || s.size() > 20 || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw checkpoint_error(std::string("checkpoint field ") + what + " is malformed: " + s);
    bigint v(s);
    if (!fits_u64(v))
        throw checkpoint_error(std::string("checkpoint field ") + what + " overflows");
    return to_u64(v);
}

} // namespace

search_checkpoint parse_checkpoint(std::string_view line)
{
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw checkpoint_error("checkpoint record is not a JSON object");
    try
    {
        search_checkpoint c;
        c.version = j.at("version").get<int>();
        if (c.version != search_checkpoint::current_version)
            throw checkpoint_error("unsupported checkpoint version " + std::to_string(c.version));
        c.config_hash = j.at("config_hash").get<std::string>();
        c.predicate = j.at("predicate").get<std::string>();
        c.parameters = j.at("parameters").get<std::string>();
        c.lo = parse_u64(j.at("range").at("lo"), "range.lo");
        c.hi = parse_u64(j.at("range").at("hi"), "range.hi");
        c.cursor = parse_u64(j.at("cursor"), "cursor");
        for (const auto & h : j.at("hits"))
            c.hits.push_back({parse_u64(h.at("p"), "hits.p"), h.at("ideal").get<std::string>(),
                              h.at("all_ideals").get<bool>()});
        c.primes_scanned = parse_u64(j.at("stats").at("primes_scanned"), "stats.primes_scanned");
        c.segments = parse_u64(j.at("stats").at("segments"), "stats.segments");
        if (c.lo > c.hi || c.cursor < c.lo || c.cursor > c.hi)
            throw checkpoint_error("checkpoint cursor outside its range");
        for (std::size_t i = 0; i < c.hits.size(); ++i)
        {
            const auto & h = c.hits[i];
            if (h.p < c.lo || h.p >= c.cursor)
                throw checkpoint_error("checkpoint hit " + std::to_string(h.p) + " outside the scanned range");
            if (i > 0 && h.p < c.hits[i - 1].p)
                throw checkpoint_error("checkpoint hits are not sorted");
        }
        return c;
    }
    catch (const json::exception & e)
    {
        throw checkpoint_error(std::string("checkpoint record malformed: ") + e.what());
    }
}

namespace {

/// Reads the last complete record, cutting off a torn trailing line.
std::optional<search_checkpoint> load_last_record(const std::filesystem::path & path)
{
    std::string content;
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw checkpoint_error("cannot read checkpoint " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        content = ss.str();
    }
    const std::size_t keep = content.rfind('\n') == std::string::npos ? 0 : content.rfind('\n') + 1;
    if (keep != content.size())
    {
        std::filesystem::resize_file(path, keep);
        content.resize(keep);
    }
    std::optional<search_checkpoint> last;
    std::size_t pos = 0;
    while (pos < content.size())
    {
        std::size_t end = content.find('\n', pos);
        std::string_view line(content.data() + pos, end - pos);
        if (!line.empty())
            last = parse_checkpoint(line);
        pos = end + 1;
    }
    return last;
}

void verify_resumed(const search_checkpoint & c, const scan_predicate & pred, const search_options & opts,
                    const std::string & hash)
{
    if (c.config_hash != hash || c.predicate != pred.name || c.parameters != pred.parameters)
        throw checkpoint_error("checkpoint was written by a different configuration (hash " + c.config_hash +
                               ", expected " + hash + ")");
    if (c.lo != opts.lo || c.hi != opts.hi)
        throw checkpoint_error("checkpoint range [" + std::to_string(c.lo) + ", " + std::to_string(c.hi) +
                               ") does not match the requested range");
    if (c.cursor != c.hi && (c.cursor - c.lo) % opts.segment_size != 0)
        throw checkpoint_error("checkpoint cursor is not on a segment boundary");
    for (const auto & h : c.hits)
    {
        auto fresh = pred.test(h.p);
        if (std::find(fresh.begin(), fresh.end(), h) == fresh.end())
            throw checkpoint_error("checkpoint hit at p = " + std::to_string(h.p) + " failed re-verification");
    }
}

} // namespace

search_checkpoint search_range(const scan_predicate & pred, const search_options & opts)
{
    if (opts.lo > opts.hi)
        throw std::invalid_argument("search_range: lo must not exceed hi");
    if (opts.segment_size == 0 || opts.checkpoint_every == 0)
        throw std::invalid_argument("search_range: segment size and checkpoint interval must be positive");
    const auto start = std::chrono::steady_clock::now();
    const std::string hash = config_hash(pred, opts);

    search_checkpoint state;
    state.config_hash = hash;
    state.predicate = pred.name;
    state.parameters = pred.parameters;
    state.lo = opts.lo;
    state.hi = opts.hi;
    state.cursor = opts.lo;

    const bool persist = !opts.checkpoint.empty();
    if (persist && std::filesystem::exists(opts.checkpoint))
    {
        if (!opts.resume)
            throw checkpoint_error("checkpoint " + opts.checkpoint.string() + " exists; resume it or remove it");
        if (auto last = load_last_record(opts.checkpoint))
        {
            verify_resumed(*last, pred, opts, hash);
            state = *last;
        }
    }

    std::ofstream out;
    auto append = [&] {
        if (!persist)
            return;
        if (!out.is_open())
        {
            out.open(opts.checkpoint, std::ios::binary | std::ios::app);
            if (!out)
                throw checkpoint_error("cannot write checkpoint " + opts.checkpoint.string());
        }
        out << serialize_checkpoint(state) << '\n';
        out.flush();
        if (!out)
            throw checkpoint_error("write to checkpoint " + opts.checkpoint.string() + " failed");
    };

    if (state.complete())
    {
        if (persist && state.segments == 0 && !std::filesystem::exists(opts.checkpoint))
            append();
        state.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return state;
    }

    std::uint64_t done_here = 0;
    while (state.cursor < state.hi)
    {
        if (opts.stop_after_segments && done_here == opts.stop_after_segments)
            break;
        const std::uint64_t seg_hi = state.hi - state.cursor > opts.segment_size ? state.cursor + opts.segment_size
                                                                                  : state.hi;
        const auto primes = sieve_segment(state.cursor, seg_hi);
        const auto & test = pred.test;
        auto results = opts.parallel ? kernels::map_parallel<std::vector<search_hit>>(primes, test, opts.workers)
                                     : kernels::map_serial<std::vector<search_hit>>(primes, test);
        for (auto & r : results)
            for (auto & h : r)
                state.hits.push_back(std::move(h));
        state.primes_scanned += primes.size();
        state.cursor = seg_hi;
        ++state.segments;
        ++done_here;
        if (state.cursor == state.hi || state.segments % opts.checkpoint_every == 0)
            append();
    }
    state.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return state;
}

search_checkpoint merge_checkpoints(const search_checkpoint & a, const search_checkpoint & b)
{
    if (a.config_hash != b.config_hash)
        throw std::invalid_argument("merge_checkpoints: configurations differ");
    if (!a.complete() || !b.complete())
        throw std::invalid_argument("merge_checkpoints: both scans must be complete");
    const search_checkpoint & first = a.lo <= b.lo ? a : b;
    const search_checkpoint & second = a.lo <= b.lo ? b : a;
    if (first.hi != second.lo)
        throw std::invalid_argument("merge_checkpoints: ranges must be adjacent");
    search_checkpoint m = first;
    m.hi = second.hi;
    m.cursor = second.hi;
    m.hits.insert(m.hits.end(), second.hits.begin(), second.hits.end());
    m.primes_scanned += second.primes_scanned;
    m.segments += second.segments;
    m.wall_seconds += second.wall_seconds;
    return m;
}

} // namespace xfw
