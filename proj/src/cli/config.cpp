#include <algorithm>
#include <charconv>
#include <thread>

#include "CLI11.hpp"

#include "dbrlab/cli.hpp"
#include "dbrlab/errors.hpp"
#include "dbrlab/weight_spec.hpp"

namespace dbrlab::cli {

namespace {

const std::map<std::string, Suite> kSuiteNames{
    {"moments", Suite::Moments}, {"tensor", Suite::Tensor},     {"dirichlet", Suite::Dirichlet},
    {"dbr", Suite::Dbr},         {"isometry", Suite::Isometry}, {"all", Suite::All},
};

const std::map<std::string, Format> kFormatNames{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}};

std::string check_weight_spec(const std::string& s) {
    try {
        parse_weight_spec(s);
    } catch (const WeightSpecError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

std::string to_string(Suite s) {
    for (const auto& [name, value] : kSuiteNames)
        if (value == s) return name;
    return "all";
}

std::string to_string(Format f) {
    for (const auto& [name, value] : kFormatNames)
        if (value == f) return name;
    return "json";
}

const std::vector<Suite>& all_suites() {
    static const std::vector<Suite> order{Suite::Moments, Suite::Tensor, Suite::Dirichlet, Suite::Dbr, Suite::Isometry};
    return order;
}

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> tol{
        {"weak_mult", 1e-6},     {"tensor", 1e-6},    {"energy", 1e-6},   {"dilation", 1e-8},
        {"superharmonic", 1e-8}, {"h0", 1e-6},        {"rank_one", 1e-6}, {"h_identity", 1e-4},
        {"phi", 1e-4},           {"laplacian", 1e-5}, {"outer", 1e-6},    {"isometry", 1e-2},
        {"quadratic", 1e-12},    {"laplacian_order", 0.2}, {"measure_falsify", 1e-2}, {"isometry_falsify", 1e-1},
    };
    return tol;
}

ParseResult parse_args(const std::vector<std::string>& args) {
    CLI::App app{"weighted Dirichlet spaces, moment tables and de Branges-Rovnyak models", "dbrlab"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.tol = default_tolerances();
    std::string suite = "all", format = "json";
    std::vector<std::string> tol_overrides;
    std::string out;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--weight", cfg.weight_spec, "weight spec: harm:re,im | log:re,im | scaled:c:spec | uniform | modsq")
            ->check([](const std::string& s) { return check_weight_spec(s); });
        sub->add_option("--order", cfg.order, "moment order N")->check(CLI::Range(1, 16));
        sub->add_option("--series-order", cfg.series_order, "Taylor truncation order")->check(CLI::Range(1, 512));
        sub->add_option("--radial", cfg.radial_order, "radial Gauss-Legendre order")->check(CLI::Range(1, 2000));
        sub->add_option("--angular", cfg.angular_order, "angular order")->check(CLI::Range(4, 8192));
        sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->check(CLI::Range(0, 256));
        sub->add_option("--out", out, "write the report to this file");
        sub->add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    };

    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify);
    verify->add_option("--suite", suite, "moments | tensor | dirichlet | dbr | isometry | all")
        ->check(CLI::IsMember({"moments", "tensor", "dirichlet", "dbr", "isometry", "all"}));
    verify->add_option("--tol", tol_overrides, "tolerance override name=value")->take_all();

    auto* moments = app.add_subcommand("moments", "print a moment table for a weight");
    add_common(moments);
    moments->add_option("--kind", cfg.moment_kind, "u | measure")->check(CLI::IsMember({"u", "measure"}));

    auto* dbr = app.add_subcommand("dbr", "de Branges-Rovnyak models");
    dbr->require_subcommand(1);
    auto* build = dbr->add_subcommand("build", "build the model (h, a, b) for a weight");
    add_common(build);

    auto* weights = app.add_subcommand("weights", "weight catalog");
    weights->require_subcommand(1);
    auto* info = weights->add_subcommand("info", "describe a weight");
    add_common(info);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {std::nullopt, 0, app.help()};
    } catch (const CLI::CallForAllHelp&) {
        return {std::nullopt, 0, app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        return {std::nullopt, 2, e.what()};
    }

    if (*verify) cfg.command = Command::Verify;
    else if (*moments) cfg.command = Command::Moments;
    else if (*build) cfg.command = Command::DbrBuild;
    else cfg.command = Command::WeightsInfo;

    cfg.suite = kSuiteNames.at(suite);
    cfg.format = kFormatNames.at(format);
    if (!out.empty()) cfg.output_path = out;

    for (const auto& item : tol_overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) return {std::nullopt, 2, "--tol expects name=value, got '" + item + "'"};
        const std::string name = item.substr(0, eq);
        if (!cfg.tol.contains(name)) return {std::nullopt, 2, "unknown tolerance name '" + name + "'"};
        double v = 0.0;
        const char* first = item.data() + eq + 1;
        const char* last = item.data() + item.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || !(v >= 0.0))
            return {std::nullopt, 2, "--tol " + name + ": expected a nonnegative number"};
        cfg.tol[name] = v;
    }
    return {cfg, 0, {}};
}

}  // namespace dbrlab::cli
