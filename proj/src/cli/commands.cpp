#include <fstream>
#include <thread>

#include "dbrlab/cli.hpp"
#include "dbrlab/errors.hpp"
#include "dbrlab/moments.hpp"
#include "workspace.hpp"

namespace dbrlab::cli {

namespace {

nlohmann::json weight_info(Workspace& ws) {
    const Weight& w = ws.weight();
    nlohmann::json sing = nlohmann::json::array();
    for (const auto& s : w.singularities()) sing.push_back({s.real(), s.imag()});
    nlohmann::json j{
        {"label", w.label()},
        {"harmonic", w.is_harmonic()},
        {"singularities", std::move(sing)},
        {"grid", ws.grids().disk.id()},
        {"l1_norm", l1_norm(w, ws.grids().disk)},
    };
    if (const auto d = w.green_decomposition()) {
        auto atoms = [](const std::vector<GreenAtom>& list) {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& atom : list) a.push_back({{"point", {atom.point.real(), atom.point.imag()}}, {"mass", atom.mass}});
            return a;
        };
        j["green_decomposition"] = {{"mu", atoms(d->mu)}, {"nu", atoms(d->nu)}};
    }
    return j;
}

}  // namespace

Report run(const RunConfig& c) {
    Report report;
    report.config = config_json(c);
    Workspace ws(c);
    switch (c.command) {
        case Command::Verify: {
            report.command = "verify";
            if (c.suite == Suite::All)
                for (Suite s : all_suites()) report.suites.push_back(run_suite_in(s, ws));
            else
                report.suites.push_back(run_suite_in(c.suite, ws));
            return report;
        }
        case Command::Moments: report.command = "moments"; break;
        case Command::DbrBuild: report.command = "dbr build"; break;
        case Command::WeightsInfo: report.command = "weights info"; break;
    }

    try {
        if (c.command == Command::Moments) {
            const MomentTable M = c.moment_kind == "u" ? ws.u_table() : ws.measure_table();
            const WeakMultReport r = weak_mult_check(M, c.tolerance("weak_mult"));
            report.result = {{"kind", c.moment_kind},
                             {"table", to_json(M)},
                             {"weak_mult", {{"passes", r.passes}, {"j", r.j}, {"k", r.k}, {"residual", r.residual}}}};
        } else if (c.command == Command::DbrBuild) {
            report.result = to_json(ws.model());
            report.result["grids"] = {{"disk", ws.grids().disk.id()}, {"circle", ws.grids().circle.id()}};
        } else {
            report.result = weight_info(ws);
        }
    } catch (const Error& e) {
        report.ok = false;
        report.result = {{"error", e.what()}};
    }
    return report;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const ParseResult parsed = parse_args(args);
    if (!parsed.config) {
        (parsed.exit_code == 0 ? out : err) << parsed.message << "\n";
        return parsed.exit_code;
    }
    const RunConfig& cfg = *parsed.config;
    set_worker_threads(cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency()));

    const Report report = run(cfg);
    if (cfg.output_path) {
        std::ofstream file(*cfg.output_path, std::ios::binary);
        if (!file) {
            err << "cannot open '" << *cfg.output_path << "' for writing\n";
            return 2;
        }
        write_report(file, report, cfg.format);
    } else {
        write_report(out, report, cfg.format);
    }
    if (!report.ok) err << report.result.value("error", std::string("failed")) << "\n";
    return report.passes() ? 0 : 1;
}

}  // namespace dbrlab::cli
