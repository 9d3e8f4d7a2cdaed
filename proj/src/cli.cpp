#include "xfw/cli.hpp"

#include <chrono>
#include <iostream>
#include <regex>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "xfw/certificates.hpp"
#include "xfw/dynamics.hpp"
#include "xfw/heights.hpp"
#include "xfw/search.hpp"

namespace xfw::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char * csv_version = "# xfw csv v1";

/// Decimal integers, optionally written as a^b or aeb.
bigint parse_big(const std::string & text, const char * flag)
{
    static const std::regex form(R"(\s*(\d+)(?:(\^|[eE])(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, form))
        throw usage_error(std::string(flag) + " expects a nonnegative integer, got \"" + text + "\"");
    bigint base(m[1].str());
    if (!m[2].matched)
        return base;
    const unsigned long e = std::stoul(m[3].str());
    if (e > 100000)
        throw usage_error(std::string(flag) + " exponent is too large");
    return m[2].str() == "^" ? pow(base, e) : bigint(base * pow(bigint(10), e));
}

std::uint64_t parse_u64_flag(const std::string & text, const char * flag)
{
    bigint v = parse_big(text, flag);
    if (!fits_u64(v))
        throw usage_error(std::string(flag) + " is out of range");
    return to_u64(v);
}

/// Splits on `sep` outside parentheses.
std::vector<std::string> split_top(const std::string & s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s)
    {
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        if (c == sep && depth == 0)
        {
            parts.push_back(cur);
            cur.clear();
        }
        else
            cur += c;
    }
    parts.push_back(cur);
    return parts;
}

quadratic_element parse_literal(const std::string & text, const quadratic_field & k)
{
    try
    {
        return quadratic_element::parse(text, k);
    }
    catch (const std::invalid_argument & e)
    {
        throw usage_error(e.what());
    }
}

std::vector<quadratic_element> parse_bases(const std::vector<std::string> & texts, const quadratic_field & k)
{
    std::vector<quadratic_element> out;
    quadratic_field common = k;
    for (const auto & t : texts)
        for (const auto & piece : split_top(t, ','))
        {
            out.push_back(parse_literal(piece, k));
            try
            {
                common = common_field(common, out.back().field());
            }
            catch (const std::invalid_argument & e)
            {
                throw usage_error(e.what());
            }
        }
    for (auto & x : out)
        x = x.in_field(common);
    return out;
}

std::string num(const bigint & n)
{
    return to_string(n);
}

std::string num(std::uint64_t n)
{
    return std::to_string(n);
}

void add_common(CLI::App * sub, std::int64_t & d, std::string & emit, int & workers, int & precision)
{
    sub->add_option("--field-d", d, "squarefree d selecting Q(sqrt d); 1 means the rationals");
    sub->add_option("--emit", emit, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--workers", workers, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
    sub->add_option("--precision", precision, "significant digits for reals, 0 for shortest round-trip")
        ->envname("XFW_PRECISION")
        ->check(CLI::Range(0, 40));
}

} // namespace

recurrence_tuple parse_tuple(const std::string & text, const quadratic_field & k)
{
    if (text == "fibonacci")
        return recurrence_tuple::fibonacci();
    auto halves = split_top(text, ';');
    if (halves.size() != 2)
        throw usage_error("--tuple expects \"a1,...,am;b1,...,bm\" or \"fibonacci\"");
    recurrence_tuple t;
    t.a = parse_bases({halves[0]}, k);
    t.b = parse_bases({halves[1]}, k);
    try
    {
        const quadratic_field f = t.field();
        for (auto & x : t.a)
            x = x.in_field(f);
        for (auto & x : t.b)
            x = x.in_field(f);
        t.validate();
    }
    catch (const std::invalid_argument & e)
    {
        throw usage_error(e.what());
    }
    return t;
}

run_config parse_args(const std::vector<std::string> & args)
{
    CLI::App app{"Periods of recurrences modulo prime ideals, Wieferich-type searches and cyclotomic certificates",
                 "xfw"};
    app.require_subcommand(1);

    std::int64_t d = 1;
    std::string emit, tuple = "fibonacci", modulus, method, bound, checkpoint;
    std::string from = "2", to, n_from = "1", n_to = "20", segment = "65536";
    std::vector<std::string> bases, values;
    std::uint32_t every = 8;
    bool resume = false;
    int workers = 0, precision = 0;

    auto * period = app.add_subcommand("period", "period of a recurrence modulo m");
    period->add_option("--tuple", tuple, "\"fibonacci\" or \"a1,...,am;b1,...,bm\"");
    period->add_option("--mod", modulus, "rational integer modulus")->required();
    period->add_option("--method", method, "auto, formula or brute-force")
        ->check(CLI::IsMember({"auto", "formula", "brute-force"}));

    auto * wss = app.add_subcommand("search-wss", "scan for primes with pi(p) = pi(p^2)");
    auto * wief = app.add_subcommand("search-wieferich", "scan for base-gamma Wieferich prime ideals");
    for (auto * sub : {wss, wief})
    {
        sub->add_option("--from", from, "first integer of the range");
        sub->add_option("--to", to, "end of the range (exclusive)")->required();
        sub->add_option("--checkpoint", checkpoint, "JSON-lines checkpoint file");
        sub->add_flag("--resume", resume, "continue from the checkpoint");
        sub->add_option("--segment", segment, "sieve segment length");
        sub->add_option("--checkpoint-every", every, "segments between checkpoint records")
            ->check(CLI::PositiveNumber);
    }
    wss->add_option("--method", method, "period (pi(p) against pi(p^2)) or index (F_{p-(5/p)} mod p^2)")
        ->check(CLI::IsMember({"period", "index"}));
    wief->add_option("--base", bases, "base literal, e.g. 2 or (1+sqrt(5))/2")->required();

    auto * certify = app.add_subcommand("certify", "cyclotomic non-Wieferich certificates");
    certify->add_option("--base", bases, "base literal")->required();
    certify->add_option("--bound", bound, "absolute norm bound B")->required();

    auto * abc = app.add_subcommand("abc-quality", "height, radical and quality of (g^n, -1, 1-g^n)");
    auto * phi = app.add_subcommand("phi-ratio", "LogNorm(Phi_n(g))/phi(n) against its limit");
    for (auto * sub : {abc, phi})
    {
        sub->add_option("--base", bases, "base literal")->required();
        sub->add_option("--n", values, "explicit list of n")->delimiter(',');
        sub->add_option("--n-from", n_from, "first n");
        sub->add_option("--n-to", n_to, "last n (inclusive)");
    }

    auto * rank = app.add_subcommand("rank", "free rank of the group generated by the bases");
    rank->add_option("--base", bases, "comma-separated generator literals")->required();

    auto * heuristic = app.add_subcommand("heuristic", "expected Wieferich counts sum N(p)^-r");
    heuristic->add_option("--base", bases, "comma-separated generator literals")->required();
    heuristic->add_option("--bound", values, "norm bounds Y")->delimiter(',')->required();

    for (auto * sub : {period, wss, wief, certify, abc, phi, rank, heuristic})
        add_common(sub, d, emit, workers, precision);

    run_config c;
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &)
    {
        c.command = "help";
        c.help = app.help();
        for (auto * sub : app.get_subcommands())
            c.help = sub->help();
        return c;
    }
    catch (const CLI::ParseError & e)
    {
        throw usage_error(e.what());
    }

    c.command = app.get_subcommands().front()->get_name();
    try
    {
        c.field = quadratic_field(d);
    }
    catch (const std::invalid_argument & e)
    {
        throw usage_error("--field-d " + std::to_string(d) + ": " + e.what());
    }
    c.workers = workers;
    c.precision = precision;
    const bool tabular = c.command == "abc-quality" || c.command == "phi-ratio" || c.command == "heuristic";
    c.emit = emit.empty() ? (tabular ? output_format::csv : output_format::json)
                          : (emit == "csv" ? output_format::csv : output_format::json);
    c.method = method;

    if (c.command == "period")
    {
        c.tuple = parse_tuple(tuple, c.field);
        c.modulus = parse_big(modulus, "--mod");
        if (sgn(c.modulus) <= 0)
            throw usage_error("--mod must be positive");
        if (c.method.empty())
            c.method = "auto";
    }
    else if (c.command == "search-wss" || c.command == "search-wieferich")
    {
        c.from = parse_u64_flag(from, "--from");
        c.to = parse_u64_flag(to, "--to");
        if (c.from > c.to)
            throw usage_error("--from must not exceed --to");
        c.checkpoint = checkpoint;
        c.resume = resume;
        c.segment_size = parse_u64_flag(segment, "--segment");
        if (c.segment_size == 0)
            throw usage_error("--segment must be positive");
        c.checkpoint_every = every;
        if (c.command == "search-wss" && c.method.empty())
            c.method = "period";
        if (c.command == "search-wieferich")
        {
            c.bases = parse_bases(bases, c.field);
            if (c.bases.size() != 1)
                throw usage_error("search-wieferich takes exactly one --base");
        }
    }
    else if (c.command == "certify")
    {
        c.bases = parse_bases(bases, c.field);
        if (c.bases.size() != 1)
            throw usage_error("certify takes exactly one --base");
        c.bound = parse_big(bound, "--bound");
    }
    else if (c.command == "abc-quality" || c.command == "phi-ratio")
    {
        c.bases = parse_bases(bases, c.field);
        if (c.bases.size() != 1)
            throw usage_error(c.command + " takes exactly one --base");
        if (!values.empty())
            for (const auto & v : values)
                c.indices.push_back(parse_u64_flag(v, "--n"));
        else
            for (std::uint64_t n = parse_u64_flag(n_from, "--n-from"), hi = parse_u64_flag(n_to, "--n-to"); n <= hi;
                 ++n)
                c.indices.push_back(n);
        for (auto n : c.indices)
            if (n == 0)
                throw usage_error("--n values must be positive");
    }
    else if (c.command == "rank" || c.command == "heuristic")
    {
        c.bases = parse_bases(bases, c.field);
        if (c.bases.empty())
            throw usage_error(c.command + " needs at least one --base");
        for (const auto & v : values)
            c.indices.push_back(parse_u64_flag(v, "--bound"));
    }
    return c;
}

namespace {

void emit_csv_header(std::ostream & out, const std::string & columns)
{
    out << csv_version << '\n' << columns << '\n';
}

int run_period(const run_config & c, std::ostream & out, std::ostream & err)
{
    const recurrence_tuple & t = *c.tuple;
    period_report r;
    if (c.method == "brute-force")
        r = period_bruteforce(t, c.modulus);
    else
    {
        try
        {
            r = period_formula(t, factor_modulus(t.field(), c.modulus));
        }
        catch (const degenerate_input & e)
        {
            if (c.method == "formula")
                throw;
            err << "xfw: " << e.what() << "; falling back to brute force\n";
            r = period_bruteforce(t, c.modulus);
        }
    }
    const char * method = r.method == period_method::formula ? "formula" : "brute-force";
    if (c.emit == output_format::csv)
    {
        emit_csv_header(out, "modulus,period,method");
        out << num(c.modulus) << ',' << num(r.period) << ',' << method << '\n';
        return exit_ok;
    }
    json orders = json::array();
    for (const auto & o : r.orders)
        orders.push_back({{"generator", num(std::uint64_t(o.generator))}, {"modulus", o.modulus}, {"order", num(o.order)}});
    json j = {{"modulus", num(c.modulus)}, {"period", num(r.period)}, {"method", method}, {"orders", orders}};
    out << j.dump() << '\n';
    return exit_ok;
}

int run_search(const run_config & c, std::ostream & out, std::ostream & err)
{
    scan_predicate pred;
    if (c.command == "search-wieferich")
        pred = wieferich_predicate(c.bases.front());
    else
        pred = c.method == "index" ? wss_predicate() : wall_predicate();
    search_options o;
    o.lo = c.from;
    o.hi = c.to;
    o.segment_size = c.segment_size;
    o.checkpoint_every = c.checkpoint_every;
    o.checkpoint = c.checkpoint;
    o.resume = c.resume;
    o.workers = c.workers;
    const search_checkpoint s = search_range(pred, o);
    if (c.emit == output_format::csv)
    {
        emit_csv_header(out, "p,ideal,all_ideals");
        for (const auto & h : s.hits)
            out << h.p << ",\"" << h.ideal << "\"," << (h.all_ideals ? "true" : "false") << '\n';
    }
    else
        out << serialize_checkpoint(s) << '\n';
    err << "xfw: scanned " << s.primes_scanned << " primes, " << s.hits.size() << " hits, "
        << format_real(real(s.wall_seconds), 4) << " s\n";
    return exit_ok;
}

int run_certify(const run_config & c, std::ostream & out, std::ostream & err)
{
    const quadratic_element & gamma = c.bases.front();
    const certified_count_report r = certified_count(gamma, c.bound, c.workers);
    if (c.emit == output_format::csv)
        emit_csv_header(out, "n,p,ideal,ideal_kind,order_check,square_check");
    std::set<std::string> seen;
    for (const auto & batch : r.stream)
        for (const auto & cert : batch.certificates)
        {
            if (cert.ideal.norm() > c.bound || !seen.insert(cert.ideal.to_string()).second)
                continue;
            if (c.emit == output_format::csv)
            {
                out << cert.n << ',' << num(cert.ideal.p) << ",\"" << cert.ideal.to_string() << "\","
                    << to_string(cert.ideal.kind) << ',' << (cert.order_check ? "true" : "false") << ','
                    << (cert.square_check ? "true" : "false") << '\n';
                continue;
            }
            json j = {{"gamma", gamma.to_string()},
                      {"field_d", std::to_string(gamma.field().d())},
                      {"n", num(cert.n)},
                      {"p", num(cert.ideal.p)},
                      {"ideal", cert.ideal.to_string()},
                      {"ideal_kind", to_string(cert.ideal.kind)},
                      {"order_check", cert.order_check},
                      {"square_check", cert.square_check}};
            out << j.dump() << '\n';
        }
    for (const auto & s : r.skipped)
        err << "xfw: skipped n = " << s.n << ": " << s.reason << '\n';
    err << "xfw: " << r.count << " certified prime ideals of norm <= " << num(c.bound) << " from n <= " << r.n_max
        << '\n';
    return exit_ok;
}

int run_abc(const run_config & c, std::ostream & out)
{
    const quadratic_element & gamma = c.bases.front();
    const quadratic_element one(gamma.field(), 1);
    if (c.emit == output_format::csv)
        emit_csv_header(out, "n,h,rad,q");
    for (std::uint64_t n : c.indices)
    {
        const quadratic_element x = gamma.pow(std::int64_t(n));
        if (x == one)
            throw std::domain_error("gamma^" + std::to_string(n) + " = 1");
        const abc_report r = abc_quality(x, -one, one - x);
        const std::string q = r.infinite ? "inf" : format_real(r.quality, c.precision);
        if (c.emit == output_format::csv)
            out << n << ',' << format_real(r.height, c.precision) << ',' << format_real(r.radical, c.precision) << ','
                << q << '\n';
        else
            out << json{{"n", num(n)},
                        {"h", format_real(r.height, c.precision)},
                        {"rad", format_real(r.radical, c.precision)},
                        {"q", q}}
                       .dump()
                << '\n';
    }
    return exit_ok;
}

int run_phi(const run_config & c, std::ostream & out)
{
    const quadratic_element & gamma = c.bases.front();
    if (c.emit == output_format::csv)
        emit_csv_header(out, "n,ratio,target");
    for (std::uint64_t n : c.indices)
    {
        const phi_ratio_report r = phi_norm_ratio(gamma, n);
        if (c.emit == output_format::csv)
            out << n << ',' << format_real(r.ratio, c.precision) << ',' << format_real(r.target, c.precision) << '\n';
        else
            out << json{{"n", num(n)},
                        {"ratio", format_real(r.ratio, c.precision)},
                        {"target", format_real(r.target, c.precision)}}
                       .dump()
                << '\n';
    }
    return exit_ok;
}

json vectors_json(const std::vector<std::vector<bigint>> & rows)
{
    json a = json::array();
    for (const auto & row : rows)
    {
        json r = json::array();
        for (const auto & x : row)
            r.push_back(num(x));
        a.push_back(r);
    }
    return a;
}

int run_rank(const run_config & c, std::ostream & out)
{
    const group_report r = multiplicative_rank(c.bases);
    if (c.emit == output_format::csv)
    {
        emit_csv_header(out, "generators,free_rank");
        out << r.generators.size() << ',' << r.free_rank << '\n';
        return exit_ok;
    }
    json gens = json::array(), support = json::array(), matrix = json::array();
    for (const auto & g : r.generators)
        gens.push_back(g.to_string());
    for (const auto & s : r.support)
        support.push_back(s.to_string());
    for (const auto & row : r.valuation_matrix)
    {
        json jr = json::array();
        for (long v : row)
            jr.push_back(std::to_string(v));
        matrix.push_back(jr);
    }
    json j = {{"field_d", std::to_string(r.generators.front().field().d())},
              {"generators", gens},
              {"support", support},
              {"valuation_matrix", matrix},
              {"kernel_basis", vectors_json(r.kernel_basis)},
              {"torsion_relations", vectors_json(r.torsion_relations)},
              {"free_rank", std::to_string(r.free_rank)}};
    out << j.dump() << '\n';
    return exit_ok;
}

int run_heuristic(const run_config & c, std::ostream & out)
{
    const std::size_t r = multiplicative_rank(c.bases).free_rank;
    if (c.emit == output_format::csv)
        emit_csv_header(out, "Y,r,expected_count");
    for (std::uint64_t y : c.indices)
    {
        const std::string v = format_real(expected_count(c.bases, y, r), c.precision);
        if (c.emit == output_format::csv)
            out << y << ',' << r << ',' << v << '\n';
        else
            out << json{{"Y", num(y)}, {"r", std::to_string(r)}, {"expected_count", v}}.dump() << '\n';
    }
    return exit_ok;
}

} // namespace

int run(const run_config & c, std::ostream & out, std::ostream & err)
{
    try
    {
        if (c.command == "help")
        {
            out << c.help;
            return exit_ok;
        }
        if (c.command == "period")
            return run_period(c, out, err);
        if (c.command == "search-wss" || c.command == "search-wieferich")
            return run_search(c, out, err);
        if (c.command == "certify")
            return run_certify(c, out, err);
        if (c.command == "abc-quality")
            return run_abc(c, out);
        if (c.command == "phi-ratio")
            return run_phi(c, out);
        if (c.command == "rank")
            return run_rank(c, out);
        if (c.command == "heuristic")
            return run_heuristic(c, out);
        throw usage_error("unknown command " + c.command);
    }
    catch (const usage_error & e)
    {
        err << "xfw: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const degenerate_input & e)
    {
        err << "xfw: degenerate input: " << e.what() << '\n';
        return exit_degenerate;
    }
    catch (const factorization_failure & e)
    {
        err << "xfw: factorization failed: " << e.what() << '\n';
        return exit_factorization;
    }
    catch (const resource_limit & e)
    {
        err << "xfw: resource limit: " << e.what() << '\n';
        return exit_resource;
    }
    catch (const checkpoint_error & e)
    {
        err << "xfw: checkpoint: " << e.what() << '\n';
        return exit_checkpoint;
    }
    catch (const invariant_breach & e)
    {
        err << "xfw: internal check failed: " << e.what() << '\n';
        return exit_internal;
    }
    catch (const std::invalid_argument & e)
    {
        err << "xfw: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::domain_error & e)
    {
        err << "xfw: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception & e)
    {
        err << "xfw: " << e.what() << '\n';
        return exit_internal;
    }
}

int main_entry(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    run_config c;
    try
    {
        c = parse_args(args);
    }
    catch (const usage_error & e)
    {
        err << "xfw: " << e.what() << "\nRun 'xfw --help' for usage.\n";
        return exit_usage;
    }
    return run(c, out, err);
}

} // namespace xfw::cli
