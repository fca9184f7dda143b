#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dynbc/datum.hpp"
#include "dynbc/domain.hpp"
#include "dynbc/montecarlo.hpp"
#include "dynbc/symbols.hpp"

namespace dynbc::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kPreconditionError = 3,
    kComparisonFailure = 4,
};

using KeyValues = std::map<std::string, std::string>;

/// Every accepted dotted key with its default value.
const KeyValues& default_keys();

/// Reads `key = value` lines; '#' starts a comment. Throws ConfigError on
/// unreadable files, malformed lines and unknown keys.
KeyValues read_config_file(const std::string& path);

/// Fully validated run configuration.
struct RunConfig {
    KeyValues keys;  // defaults merged with the file and overrides

    int dim = 2;
    double radius = 1.0;
    BoundaryParams bc;
    TimeModel time_model = Caputo{FractionalOrder(0.5)};
    std::string model_name;  // caputo | symbol
    double alpha = 0.5;
    double theta = 0.0;
    double tempered_step = 0.0;
    int n_max = 16;
    std::vector<double> times;
    std::vector<Point> points;
    MCConfig mc;
    double solve_eps = 0.0;
    bool solve_subordination = false;
    double mlf_alpha = 0.5;
    double mlf_beta = 1.0;
    std::vector<double> mlf_z;
    std::string sample_kind;
    std::uint64_t sample_n = 0;
    double sample_t = 1.0;
    Point sample_x{};
    std::string output_dir;
    std::string output_format;

    DomainSpec domain() const { return {dim, radius}; }
    /// Datum named by datum.kind / datum.name / datum.path.
    BoundaryDatum datum() const;

    /// Parses and validates every field; throws ConfigError.
    static RunConfig from_keys(const KeyValues& keys);
};

/// Entry point of the `dynbc` executable. args excludes the program name.
/// Tables go to `out` (or to files under output.dir), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dynbc::cli
