#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <iomanip>

#include "dbrlab/cli.hpp"
#include "dbrlab/weight_spec.hpp"

namespace dbrlab::cli {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Verify: return "verify";
        case Command::Moments: return "moments";
        case Command::DbrBuild: return "dbr build";
        case Command::WeightsInfo: return "weights info";
    }
    return "verify";
}

}  // namespace

std::string Check::inputs_digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : inputs.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool SuiteReport::passes() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passes; });
}

bool Report::passes() const {
    return ok && std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.passes(); });
}

nlohmann::json config_json(const RunConfig& c) {
    nlohmann::json j{
        {"command", command_name(c.command)},
        {"weight", c.weight_spec},
        {"order", c.order},
        {"series_order", c.series_order},
        {"radial", c.radial_order},
        {"angular", c.angular_order},
        {"tolerances", c.tol},
    };
    if (c.command == Command::Verify) j["suite"] = to_string(c.suite);
    if (c.command == Command::Moments) j["kind"] = c.moment_kind;
    return j;
}

nlohmann::json to_json(const Report& r, bool with_timings) {
    nlohmann::json suites = nlohmann::json::array();
    nlohmann::json timings = nlohmann::json::object();
    for (const auto& s : r.suites) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : s.checks) {
            nlohmann::json jc{
                {"name", c.name},       {"inputs", c.inputs},   {"inputs_digest", c.inputs_digest()},
                {"value", c.value},     {"comparison", c.comparison}, {"tolerance", c.tolerance},
                {"passes", c.passes},
            };
            if (!c.detail.empty()) jc["detail"] = c.detail;
            if (!c.extra.empty()) jc["extra"] = c.extra;
            checks.push_back(std::move(jc));
        }
        suites.push_back({{"name", s.name}, {"passes", s.passes()}, {"checks", std::move(checks)}});
        timings[s.name] = s.seconds;
    }
    nlohmann::json j{{"schema", 1}, {"command", r.command}, {"config", r.config}, {"passes", r.passes()}};
    if (!r.suites.empty()) j["suites"] = std::move(suites);
    if (!r.result.is_null()) j["result"] = r.result;
    if (with_timings && !r.suites.empty()) j["timings"] = std::move(timings);
    return j;
}

void write_report(std::ostream& os, const Report& r, Format f) {
    switch (f) {
        case Format::Json:
            os << to_json(r).dump(2) << "\n";
            return;
        case Format::Csv:
            os << "suite,check,value,comparison,tolerance,passes,inputs_digest,detail\n";
            for (const auto& s : r.suites)
                for (const auto& c : s.checks)
                    os << s.name << "," << csv_field(c.name) << "," << format_number(c.value) << "," << c.comparison << ","
                       << format_number(c.tolerance) << "," << (c.passes ? "true" : "false") << "," << c.inputs_digest()
                       << "," << csv_field(c.detail) << "\n";
            if (!r.result.is_null()) os << "# result," << csv_field(r.result.dump()) << "\n";
            return;
        case Format::Text:
            for (const auto& s : r.suites) {
                os << "[" << s.name << "] " << (s.passes() ? "PASS" : "FAIL") << " (" << std::fixed << std::setprecision(2)
                   << s.seconds << " s)\n";
                os.unsetf(std::ios::floatfield);
                for (const auto& c : s.checks) {
                    os << "  " << (c.passes ? "pass " : "FAIL ") << std::left << std::setw(44) << c.name << std::right
                       << format_number(c.value) << " " << c.comparison << " " << format_number(c.tolerance);
                    if (!c.detail.empty()) os << "  " << c.detail;
                    os << "\n";
                }
            }
            if (!r.result.is_null()) os << r.result.dump(2) << "\n";
            os << "overall: " << (r.passes() ? "PASS" : "FAIL") << "\n";
            return;
    }
}

}  // namespace dbrlab::cli
