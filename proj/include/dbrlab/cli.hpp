#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace dbrlab::cli {

enum class Command { Verify, Moments, DbrBuild, WeightsInfo };
enum class Suite { Moments, Tensor, Dirichlet, Dbr, Isometry, All };
enum class Format { Json, Csv, Text };

std::string to_string(Suite s);
std::string to_string(Format f);

/// Suites run by `verify --suite all`, in report order.
const std::vector<Suite>& all_suites();

struct RunConfig {
    Command command = Command::Verify;
    Suite suite = Suite::All;
    std::string weight_spec = "harm:1,0";
    int order = 8;           ///< moment order
    int series_order = 64;   ///< Taylor truncation
    int radial_order = 120;
    int angular_order = 256;
    unsigned threads = 0;    ///< 0 = hardware concurrency
    std::map<std::string, double> tol;  ///< after defaults and overrides
    std::optional<std::string> output_path;
    Format format = Format::Json;
    /// `moments` subcommand: "u" (table of u) or "measure" (raw w dA moments).
    std::string moment_kind = "u";

    double tolerance(const std::string& name) const { return tol.at(name); }
};

/// Default tolerances keyed by the names accepted by `--tol name=value`.
const std::map<std::string, double>& default_tolerances();

struct ParseResult {
    std::optional<RunConfig> config;
    int exit_code = 0;     ///< meaningful when config is empty: 0 for --help, 2 for usage errors
    std::string message;   ///< help text or usage error
};

/// Arguments exclude the program name.
ParseResult parse_args(const std::vector<std::string>& args);

struct Check {
    std::string name;
    nlohmann::json inputs = nlohmann::json::object();
    double value = 0.0;
    std::string comparison = "<=";  ///< value <cmp> tolerance; "info" when not asserted
    double tolerance = 0.0;
    bool passes = false;
    std::string detail;
    nlohmann::json extra = nlohmann::json::object();

    /// FNV-1a of the serialized inputs, hex.
    std::string inputs_digest() const;
};

struct SuiteReport {
    std::string name;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool passes() const;
};

struct Report {
    std::string command;
    nlohmann::json config;
    std::vector<SuiteReport> suites;
    /// Payload of non-verify commands (moment table, model, weight info).
    nlohmann::json result;
    bool ok = true;

    bool passes() const;
};

nlohmann::json config_json(const RunConfig& c);

/// Timings live under "timings" only, so dropping that key leaves a
/// deterministic document.
nlohmann::json to_json(const Report& r, bool with_timings = true);
void write_report(std::ostream& os, const Report& r, Format f);

SuiteReport run_suite(Suite s, const RunConfig& c);
Report run(const RunConfig& c);

/// Whole front end: parse, run, write. Returns the process exit code.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dbrlab::cli
