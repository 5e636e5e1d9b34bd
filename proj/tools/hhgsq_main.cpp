#include "hhgsq/analysis.hpp"
#include "hhgsq/config.hpp"
#include "hhgsq/errors.hpp"
#include "hhgsq/report_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace hhgsq;
namespace fs = std::filesystem;

struct Flags {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<int> threads;
    std::optional<int> q1;
    std::optional<int> q2;
    std::string herald_on = "q2";
    std::optional<std::string> mode;
    std::optional<std::string> db_convention;
    std::optional<int> n_cutoff;
    std::optional<std::string> dipoles;
};

int emit_error(const std::string& kind, const std::string& message, const std::vector<std::string>& violations = {}) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    if (!violations.empty()) j["violations"] = violations;
    std::cerr << j.dump() << '\n';
    return kind == "usage" ? 2 : 1;
}

RunConfig resolve_config(const Flags& f) {
    RunConfig cfg = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
    if (f.out_dir) cfg.io.out_dir = *f.out_dir;
    if (f.threads) cfg.numerics.threads = *f.threads;
    if (f.mode) cfg.numerics.generator_mode = parse_generator_mode(*f.mode);
    if (f.db_convention) cfg.numerics.db_convention = parse_db_convention(*f.db_convention);
    if (f.n_cutoff) cfg.numerics.n_cutoff = *f.n_cutoff;
    if (f.dipoles) cfg.io.dipole_source = *f.dipoles;
    cfg.validate();
    return cfg;
}

class Runner {
public:
    explicit Runner(RunConfig cfg) : pipeline_(std::move(cfg)) {}

    void dipoles() {
        const DipoleSeries& s = pipeline_.dipoles();
        write("dipoles.csv", format_dipole_csv(s));
        write("dipoles.json", hierarchy_json(cfg(), check_hierarchy(s), pipeline_meta(pipeline_)));
    }

    void spectrum() {
        const auto spec = harmonic_spectrum(pipeline_);
        write("spectrum.csv", spectrum_csv(spec));
        write("spectrum.json", spectrum_json(cfg(), spec, pipeline_meta(pipeline_)));
    }

    void single_mode() {
        const SqueezingReport rep = single_mode_scan(pipeline_);
        write("fig1.csv", fig1_csv(rep));
        write("fig2a.csv", fig2a_csv(rep));
        write("single_mode.json", single_mode_json(cfg(), rep, pipeline_meta(pipeline_)));
    }

    TwoModeReport two_mode() {
        TwoModeReport rep = two_mode_scan(pipeline_);
        write("fig3a.csv", fig3a_csv(rep));
        write("fig3b.csv", fig3b_csv(rep));
        write("two_mode.json", two_mode_json(cfg(), rep, pipeline_meta(pipeline_)));
        return rep;
    }

    void herald(int q1, int q2, bool on_second) {
        const HeraldReport rep = herald_pipeline(pipeline_, q1, q2, on_second, cfg().numerics.generator_mode);
        const std::string stem =
            "fig4_q" + std::to_string(q1) + "_q" + std::to_string(q2) + "_herald" + std::to_string(rep.herald_q);
        write(stem + ".csv", herald_summary_csv(rep));
        write(stem + "_wigner.csv", wigner_csv(rep.wigner));
        write(stem + ".json", herald_json(cfg(), rep, pipeline_meta(pipeline_)));
    }

    void crosscheck(const std::vector<std::vector<int>>& mode_sets) {
        std::vector<CrosscheckReport> reps;
        for (const auto& m : mode_sets) reps.push_back(crosscheck_fock_gaussian(pipeline_, m));
        write("crosscheck.json", crosscheck_json(cfg(), reps, pipeline_meta(pipeline_)));
    }

private:
    const RunConfig& cfg() const { return pipeline_.config(); }

    void write(const std::string& name, const std::string& text) {
        const std::string path = (fs::path(cfg().io.out_dir) / name).string();
        write_text_file(path, text);
        std::cout << path << '\n';
    }

    Pipeline pipeline_;
};

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && args.front() == "run") args.erase(args.begin());
    std::reverse(args.begin(), args.end());

    CLI::App app{"Squeezed and entangled harmonic light from a two-level strong-field model"};
    app.name("hhgsq");
    app.require_subcommand(1, 1);

    Flags f;
    app.add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out-dir", f.out_dir, "Output directory");
    app.add_option("--threads", f.threads, "Worker threads (overrides HHGSQ_THREADS)");
    app.add_option("--q1", f.q1, "First harmonic order");
    app.add_option("--q2", f.q2, "Second harmonic order");
    app.add_option("--herald-on", f.herald_on, "Heralded mode")->check(CLI::IsMember({"q1", "q2"}));
    app.add_option("--mode", f.mode, "Generator mode")->check(CLI::IsMember({"as-is", "hermitian-part"}));
    app.add_option("--db-convention", f.db_convention, "dB convention")->check(CLI::IsMember({"paper", "natural"}));
    app.add_option("--ncutoff", f.n_cutoff, "Fock cutoff");
    app.add_option("--dipoles", f.dipoles, "Dipole source: sfa or file:PATH");

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"dipoles", "Emit the dipole matrix-element series"},
        {"spectrum", "Per-harmonic coherent amplitudes |chi_q|^2"},
        {"single-mode", "Single-mode squeezing scan and sweep"},
        {"two-mode", "Two-mode covariance landscape"},
        {"herald", "Heralded kept-mode state and Wigner function"},
        {"crosscheck", "Fock vs Gaussian covariance comparison"},
        {"all", "Every figure analog"},
    };
    for (const auto& [name, desc] : subs) app.add_subcommand(name, desc)->fallthrough();

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return emit_error("usage", e.what());
    }
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        Runner run(resolve_config(f));
        if (sub == "dipoles") {
            run.dipoles();
        } else if (sub == "spectrum") {
            run.spectrum();
        } else if (sub == "single-mode") {
            run.single_mode();
        } else if (sub == "two-mode") {
            run.two_mode();
        } else if (sub == "herald") {
            if (!f.q1 || !f.q2) return emit_error("usage", "herald needs --q1 and --q2");
            run.herald(*f.q1, *f.q2, f.herald_on == "q2");
        } else if (sub == "crosscheck") {
            if (f.q1 && f.q2) {
                run.crosscheck({{*f.q1, *f.q2}});
            } else if (f.q1 || f.q2) {
                run.crosscheck({{f.q1 ? *f.q1 : *f.q2}});
            } else {
                run.crosscheck({{1, 2}, {1, 3}, {2, 3}});
            }
        } else {
            run.dipoles();
            run.spectrum();
            run.single_mode();
            const TwoModeReport rep = run.two_mode();
            const auto& best = rep.argmax_lambda();
            run.herald(best.q1, best.q2, true);
            run.herald(best.q1, best.q2, false);
            run.crosscheck({{1, 2}, {1, 3}, {2, 3}});
        }
    } catch (const ValidationError& e) {
        return emit_error(e.kind(), e.what(), e.violations());
    } catch (const Error& e) {
        return emit_error(e.kind(), e.what());
    } catch (const std::exception& e) {
        return emit_error("internal", e.what());
    }
    return 0;
}
