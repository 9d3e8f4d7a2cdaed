#ifndef XFW_CLI_HPP
#define XFW_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xfw/errors.hpp"
#include "xfw/periods.hpp"

namespace xfw::cli {

class usage_error : public error
{
  public:
    using error::error;
};

enum exit_status
{
    exit_ok = 0,
    exit_internal = 1,
    exit_usage = 2,
    exit_degenerate = 3,
    exit_factorization = 4,
    exit_resource = 5,
    exit_checkpoint = 6,
};

enum class output_format
{
    json,
    csv,
};

struct run_config
{
    std::string command;
    quadratic_field field;
    std::optional<recurrence_tuple> tuple;
    std::vector<quadratic_element> bases;
    bigint modulus = 0;
    std::uint64_t from = 2;
    std::uint64_t to = 2;
    bigint bound = 0;
    /// n values for abc-quality and phi-ratio, Y values for heuristic.
    std::vector<std::uint64_t> indices;
    std::string method;
    std::filesystem::path checkpoint;
    bool resume = false;
    std::uint64_t segment_size = 1 << 16;
    std::uint32_t checkpoint_every = 8;
    output_format emit = output_format::json;
    int workers = 0;
    /// Significant digits for real output; 0 is shortest round-trip.
    int precision = 0;
    /// Set when --help was requested; run() prints it.
    std::string help;
};

/// Arguments without the program name. Throws usage_error.
run_config parse_args(const std::vector<std::string> & args);

/// Writes the command's output to `out`, diagnostics to `err`, and returns
/// the exit status. Errors are mapped to their exit codes here.
int run(const run_config & config, std::ostream & out, std::ostream & err);

/// parse_args followed by run.
int main_entry(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

/// "a1,a2;b1,b2" or the preset "fibonacci".
recurrence_tuple parse_tuple(const std::string & text, const quadratic_field & k);

} // namespace xfw::cli

#endif
