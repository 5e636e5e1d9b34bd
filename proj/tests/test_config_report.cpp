#include "support.hpp"

#include "hhgsq/config.hpp"
#include "hhgsq/errors.hpp"
#include "hhgsq/parallel.hpp"
#include "hhgsq/report_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace hhgsq;
using nlohmann::json;

namespace {

std::set<std::string> keys_of(const json& j) {
    std::set<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out.insert(it.key());
    return out;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

DipoleSeries small_series(const RunConfig& cfg) {
    const LaserPulse pulse = cfg.laser();
    const std::size_t n = 1024;
    const double dt = pulse.duration() / static_cast<double>(n - 1);
    const double w = pulse.carrier_frequency;
    DipoleSeries::Samples gg(n), ge(n), eg(n), ee(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = pulse.t0 + dt * static_cast<double>(k);
        gg[k] = 1e-4 * std::cos(3 * w * t);
        eg[k] = cplx(0.002 * std::cos(w * t), 0.002 * std::sin(2 * w * t));
        ge[k] = std::conj(eg[k]);
        ee[k] = 0.05 * std::cos(w * t);
    }
    return DipoleSeries(pulse.t0, dt, gg, ge, eg, ee);
}

RunConfig small_config() {
    RunConfig cfg;
    cfg.physics.q_max = 3;
    cfg.physics.sweep = {0.5, 1.0};
    cfg.numerics.n_cutoff = 20;
    cfg.numerics.fock_spot_checks = {{1, 3}};
    cfg.numerics.wigner.nx = 11;
    cfg.numerics.wigner.np = 11;
    return cfg;
}

} // namespace

TEST_CASE("config defaults") {
    const RunConfig cfg;
    CHECK(cfg.pulse.intensity_w_cm2 == 1e14);
    CHECK(cfg.pulse.wavelength_nm == 800.0);
    CHECK(cfg.pulse.n_cycles == 6);
    CHECK(cfg.atom.ip_ground == 2.0);
    CHECK(cfg.atom.ip_excited == 0.5);
    CHECK(cfg.numerics.n_cutoff == 50);
    CHECK(cfg.numerics.theta_points == 100);
    CHECK(cfg.numerics.quad_cap == 1000);
    CHECK(cfg.numerics.generator_mode == GeneratorMode::as_is);
    CHECK(cfg.physics.n_at_gl2 == 1.0);
    CHECK(cfg.physics.q_max == 9);
    REQUIRE(cfg.physics.sweep.size() == 17);
    CHECK(cfg.physics.sweep.front() == doctest::Approx(1e-4));
    CHECK(cfg.physics.sweep.back() == doctest::Approx(2.0));
    for (std::size_t i = 1; i < cfg.physics.sweep.size(); ++i) {
        CHECK(cfg.physics.sweep[i] / cfg.physics.sweep[i - 1] ==
              doctest::Approx(cfg.physics.sweep[1] / cfg.physics.sweep[0]).epsilon(1e-12));
    }
    CHECK(cfg.io.dipole_source == "sfa");
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.laser().peak_field == doctest::Approx(0.0534).epsilon(1e-2));
}

TEST_CASE("empty config object keeps every default") {
    const RunConfig a = parse_config("{}");
    CHECK(config_to_json(a) == config_to_json(RunConfig{}));
}

TEST_CASE("partial config overrides only the given keys") {
    const RunConfig c = parse_config(R"({"pulse": {"wavelength_nm": 1600}, "numerics": {"generator_mode": "hermitian-part"}})");
    CHECK(c.pulse.wavelength_nm == 1600.0);
    CHECK(c.pulse.intensity_w_cm2 == 1e14);
    CHECK(c.numerics.generator_mode == GeneratorMode::hermitian_part);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_config(R"({"pulse": {"wavelength": 800}})"), ValidationError);
    CHECK_THROWS_AS(parse_config(R"({"extra": 1})"), ValidationError);
}

TEST_CASE("every violation is listed") {
    try {
        parse_config(R"({"numerics": {"n_cutoff": 1, "theta_points": 1}, "physics": {"q_max": 0, "n_at_gl2": -1}})");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.violations().size() >= 4);
        CHECK(e.kind() == "validation");
    }
}

TEST_CASE("malformed JSON is rejected") {
    CHECK_THROWS_AS(parse_config("{ not json"), ValidationError);
}

TEST_CASE("dipole source must be sfa or file:") {
    CHECK_THROWS_AS(parse_config(R"({"io": {"dipole_source": "magic"}})"), ValidationError);
    CHECK(parse_config(R"({"io": {"dipole_source": "file:x.csv"}})").io.dipole_source == "file:x.csv");
}

TEST_CASE("config round trip") {
    RunConfig cfg = small_config();
    cfg.pulse.peak_field = 0.04;
    cfg.numerics.db_convention = DbConvention::natural;
    const std::string text = config_to_json(cfg);
    CHECK(config_to_json(parse_config(text)) == text);
    const auto dir = std::filesystem::temp_directory_path() / "hhgsq_cfg_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "cfg.json").string();
    write_text_file(path, text);
    CHECK(config_to_json(load_config(path)) == text);
    CHECK_THROWS_AS(load_config((dir / "missing.json").string()), Error);
}

TEST_CASE("log_space") {
    const auto v = log_space(1e-4, 2.0, 17);
    CHECK(v.size() == 17);
    CHECK(v.front() == 1e-4);
    CHECK(v.back() == 2.0);
}

TEST_CASE("report JSON is deterministic and embeds the resolved config") {
    const RunConfig cfg = small_config();
    std::string first, second;
    for (std::string* out : {&first, &second}) {
        Pipeline p(cfg, small_series(cfg));
        *out = single_mode_json(cfg, single_mode_scan(p), pipeline_meta(p)) +
               two_mode_json(cfg, two_mode_scan(p), pipeline_meta(p));
    }
    CHECK(first == second);
    Pipeline p(cfg, small_series(cfg));
    const json j = json::parse(single_mode_json(cfg, single_mode_scan(p), pipeline_meta(p)));
    CHECK(j.at("config") == json::parse(config_to_json(cfg)));
}

TEST_CASE("report schemas") {
    const RunConfig cfg = small_config();
    Pipeline p(cfg, small_series(cfg));
    const ReportMeta meta = pipeline_meta(p);
    const std::set<std::string> common = {"report", "config", "derived", "diagnostics", "warnings"};
    auto with = [&](std::set<std::string> extra) {
        extra.insert(common.begin(), common.end());
        return extra;
    };

    const json sm = json::parse(single_mode_json(cfg, single_mode_scan(p), meta));
    CHECK(keys_of(sm) == with({"reference_n_at_gl2", "sweep", "records", "sweep_records"}));
    CHECK(sm.at("report") == "single-mode");
    CHECK(keys_of(sm.at("records").at(0)) == std::set<std::string>{"q", "n_at_gl2", "fock", "gaussian", "norm_deficit", "top_level_population"});
    CHECK(keys_of(sm.at("records").at(0).at("fock")) ==
          std::set<std::string>{"theta", "variance_min", "variance_orthogonal", "product", "r", "db"});
    CHECK(keys_of(sm.at("derived")) == std::set<std::string>{"peak_field", "carrier_frequency", "t0", "t_end", "n_at"});

    const json tm = json::parse(two_mode_json(cfg, two_mode_scan(p), meta));
    CHECK(keys_of(tm) == with({"n_at_gl2", "records", "fock_spot_checks", "argmax_lambda_max", "argmax_log_negativity"}));
    CHECK(tm.at("records").size() == 3);

    const json hr = json::parse(herald_json(cfg, herald_pipeline(p, 1, 3, true), meta));
    CHECK(keys_of(hr) == with({"q1", "q2", "herald_q", "kept_q", "generator_mode", "success_probability",
                               "vacuum_probability", "wigner_min", "wigner_integral", "norm_deficit", "kept_density"}));

    const json sp = json::parse(spectrum_json(cfg, harmonic_spectrum(p), meta));
    CHECK(keys_of(sp) == with({"records"}));
    CHECK(keys_of(sp.at("records").at(0)) == std::set<std::string>{"q", "chi", "intensity"});

    RunConfig herm = cfg;
    herm.numerics.generator_mode = GeneratorMode::hermitian_part;
    Pipeline ph(herm, small_series(herm));
    const json cc = json::parse(crosscheck_json(herm, {crosscheck_fock_gaussian(ph, {1, 2})}, meta));
    CHECK(keys_of(cc) == with({"tolerance", "max_discrepancy", "records"}));
}

TEST_CASE("CSV headers and row counts") {
    const RunConfig cfg = small_config();
    Pipeline p(cfg, small_series(cfg));
    const SqueezingReport sm = single_mode_scan(p);
    const TwoModeReport tm = two_mode_scan(p);
    CHECK(first_line(spectrum_csv(harmonic_spectrum(p))) == "q,re_chi,im_chi,intensity");
    CHECK(first_line(fig1_csv(sm)) == "q,backend,theta,variance_min,variance_orthogonal,product,r,db");
    CHECK(first_line(fig3a_csv(tm)) == "q1,q2,lambda_max,lambda_min");
    CHECK(first_line(fig3b_csv(tm)) == "q1,q2,log_negativity");
    const std::string f1 = fig1_csv(sm);
    CHECK(std::count(f1.begin(), f1.end(), '\n') == 1 + 2 * 3);
    const HeraldReport h = herald_pipeline(p, 1, 3, true);
    CHECK(first_line(herald_summary_csv(h)) == "q1,q2,herald_q,kept_q,success_probability,wigner_min");
    const std::string w = wigner_csv(h.wigner);
    CHECK(first_line(w) == "x,p,w");
    CHECK(std::count(w.begin(), w.end(), '\n') == 1 + 11 * 11);
    CHECK(first_line(fig2a_csv(sm)) == "n_at_gl2,q,r_fock,db_fock,r_gaussian,db_gaussian");
}

TEST_CASE("numbers are written with 17 significant digits") {
    const RunConfig cfg = small_config();
    std::vector<SpectrumRecord> recs = {{1, cplx(0.1, 0.0), 1.0 / 3.0}};
    const std::string text = spectrum_json(cfg, recs, {});
    CHECK(text.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("thread count: explicit request, then HHGSQ_THREADS") {
    ::setenv("HHGSQ_THREADS", "3", 1);
    CHECK(resolve_thread_count(0) == 3);
    CHECK(resolve_thread_count(2) == 2);
    ::setenv("HHGSQ_THREADS", "junk", 1);
    CHECK(resolve_thread_count(0) >= 1);
    ::unsetenv("HHGSQ_THREADS");
}
