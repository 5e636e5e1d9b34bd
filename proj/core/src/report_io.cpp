#include "hhgsq/report_io.hpp"

#include "hhgsq/errors.hpp"
#include "json_format.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace hhgsq {

using detail::json;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json envelope(const char* kind, const RunConfig& cfg, const ReportMeta& meta) {
    json j;
    j["report"] = kind;
    j["config"] = detail::config_json(cfg);
    j["derived"] = detail::derived_json(cfg);
    j["diagnostics"] = {{"max_subintervals_used", meta.max_subintervals_used}};
    j["warnings"] = meta.warnings;
    return j;
}

json squeezing_json(const SqueezingResult& s) {
    return {{"theta", s.theta},
            {"variance_min", s.variance_min},
            {"variance_orthogonal", s.variance_orthogonal},
            {"product", s.product()},
            {"r", s.r},
            {"db", s.db}};
}

json record_json(const SqueezingRecord& r) {
    return {{"q", r.q},
            {"n_at_gl2", r.n_at_gl2},
            {"fock", squeezing_json(r.fock)},
            {"gaussian", squeezing_json(r.gaussian)},
            {"norm_deficit", r.norm_deficit},
            {"top_level_population", r.top_level_population}};
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

json complex_matrix_json(const Eigen::MatrixXcd& m) {
    return {{"re", matrix_json(m.real())}, {"im", matrix_json(m.imag())}};
}

} // namespace

ReportMeta pipeline_meta(const Pipeline& pipeline) {
    return {pipeline.warnings(), pipeline.max_subintervals_used()};
}

std::string spectrum_json(const RunConfig& cfg, const std::vector<SpectrumRecord>& spectrum, const ReportMeta& meta) {
    json j = envelope("spectrum", cfg, meta);
    json rows = json::array();
    for (const auto& s : spectrum) {
        rows.push_back({{"q", s.q}, {"chi", detail::complex_pair(s.chi.real(), s.chi.imag())}, {"intensity", s.intensity}});
    }
    j["records"] = std::move(rows);
    return detail::dump_json(j);
}

std::string single_mode_json(const RunConfig& cfg, const SqueezingReport& rep, const ReportMeta& meta) {
    ReportMeta m = meta;
    m.warnings.insert(m.warnings.end(), rep.warnings.begin(), rep.warnings.end());
    json j = envelope("single-mode", cfg, m);
    j["reference_n_at_gl2"] = rep.reference_n_at_gl2;
    j["sweep"] = rep.sweep;
    json rows = json::array();
    for (const auto& r : rep.records) rows.push_back(record_json(r));
    j["records"] = std::move(rows);
    json sweep = json::array();
    for (const auto& r : rep.sweep_records) sweep.push_back(record_json(r));
    j["sweep_records"] = std::move(sweep);
    return detail::dump_json(j);
}

std::string two_mode_json(const RunConfig& cfg, const TwoModeReport& rep, const ReportMeta& meta) {
    json j = envelope("two-mode", cfg, meta);
    j["n_at_gl2"] = rep.n_at_gl2;
    json rows = json::array();
    for (const auto& r : rep.records) {
        rows.push_back({{"q1", r.q1},
                        {"q2", r.q2},
                        {"lambda_max", r.lambda_max},
                        {"lambda_min", r.lambda_min},
                        {"log_negativity", r.log_negativity},
                        {"nu_minus", r.nu_minus},
                        {"nu_minus_spectral", r.nu_minus_spectral},
                        {"det_sigma", r.det_sigma},
                        {"min_symplectic_eigenvalue", r.min_symplectic_eigenvalue}});
    }
    j["records"] = std::move(rows);
    json spots = json::array();
    for (const auto& s : rep.spot_checks) {
        spots.push_back({{"q1", s.q1}, {"q2", s.q2}, {"max_discrepancy", s.max_discrepancy}});
    }
    j["fock_spot_checks"] = std::move(spots);
    if (!rep.records.empty()) {
        const auto& a = rep.argmax_lambda();
        const auto& b = rep.argmax_negativity();
        j["argmax_lambda_max"] = {a.q1, a.q2};
        j["argmax_log_negativity"] = {b.q1, b.q2};
    }
    return detail::dump_json(j);
}

std::string herald_json(const RunConfig& cfg, const HeraldReport& rep, const ReportMeta& meta) {
    json j = envelope("herald", cfg, meta);
    j["q1"] = rep.q1;
    j["q2"] = rep.q2;
    j["herald_q"] = rep.herald_q;
    j["kept_q"] = rep.kept_q;
    j["generator_mode"] = generator_mode_name(rep.mode);
    j["success_probability"] = rep.success_probability;
    j["vacuum_probability"] = rep.vacuum_probability;
    j["wigner_min"] = rep.wigner_min;
    j["wigner_integral"] = rep.wigner_integral;
    j["norm_deficit"] = rep.norm_deficit;
    j["kept_density"] = complex_matrix_json(rep.state.rho);
    return detail::dump_json(j);
}

std::string crosscheck_json(const RunConfig& cfg, const std::vector<CrosscheckReport>& reps, const ReportMeta& meta) {
    json j = envelope("crosscheck", cfg, meta);
    j["tolerance"] = kCrosscheckTolerance;
    json rows = json::array();
    double worst = 0.0;
    for (const auto& r : reps) {
        worst = std::max(worst, r.max_discrepancy);
        rows.push_back({{"modes", r.modes},
                        {"max_discrepancy", r.max_discrepancy},
                        {"row", r.row},
                        {"col", r.col},
                        {"sigma_fock", matrix_json(r.fock)},
                        {"sigma_gaussian", matrix_json(r.gaussian)}});
    }
    j["max_discrepancy"] = worst;
    j["records"] = std::move(rows);
    return detail::dump_json(j);
}

std::string hierarchy_json(const RunConfig& cfg, const HierarchyReport& rep, const ReportMeta& meta) {
    json j = envelope("dipoles", cfg, meta);
    j["max_abs_mu_ee"] = rep.max_ee;
    j["max_abs_mu_eg"] = rep.max_eg;
    j["max_abs_mu_gg"] = rep.max_gg;
    j["ordered"] = rep.ordered;
    return detail::dump_json(j);
}

std::string spectrum_csv(const std::vector<SpectrumRecord>& spectrum) {
    std::string out = "q,re_chi,im_chi,intensity\n";
    for (const auto& s : spectrum) {
        out += std::to_string(s.q) + ',' + num(s.chi.real()) + ',' + num(s.chi.imag()) + ',' + num(s.intensity) + '\n';
    }
    return out;
}

std::string fig1_csv(const SqueezingReport& rep) {
    std::string out = "q,backend,theta,variance_min,variance_orthogonal,product,r,db\n";
    for (const auto& r : rep.records) {
        for (const auto& [name, s] : {std::pair{"fock", r.fock}, std::pair{"gaussian", r.gaussian}}) {
            out += std::to_string(r.q) + ',' + name + ',' + num(s.theta) + ',' + num(s.variance_min) + ',' +
                   num(s.variance_orthogonal) + ',' + num(s.product()) + ',' + num(s.r) + ',' + num(s.db) + '\n';
        }
    }
    return out;
}

std::string fig2a_csv(const SqueezingReport& rep) {
    std::string out = "n_at_gl2,q,r_fock,db_fock,r_gaussian,db_gaussian\n";
    for (const auto& r : rep.sweep_records) {
        out += num(r.n_at_gl2) + ',' + std::to_string(r.q) + ',' + num(r.fock.r) + ',' + num(r.fock.db) + ',' +
               num(r.gaussian.r) + ',' + num(r.gaussian.db) + '\n';
    }
    return out;
}

std::string fig3a_csv(const TwoModeReport& rep) {
    std::string out = "q1,q2,lambda_max,lambda_min\n";
    for (const auto& r : rep.records) {
        out += std::to_string(r.q1) + ',' + std::to_string(r.q2) + ',' + num(r.lambda_max) + ',' + num(r.lambda_min) +
               '\n';
    }
    return out;
}

std::string fig3b_csv(const TwoModeReport& rep) {
    std::string out = "q1,q2,log_negativity\n";
    for (const auto& r : rep.records) {
        out += std::to_string(r.q1) + ',' + std::to_string(r.q2) + ',' + num(r.log_negativity) + '\n';
    }
    return out;
}

std::string herald_summary_csv(const HeraldReport& rep) {
    std::string out = "q1,q2,herald_q,kept_q,success_probability,wigner_min\n";
    out += std::to_string(rep.q1) + ',' + std::to_string(rep.q2) + ',' + std::to_string(rep.herald_q) + ',' +
           std::to_string(rep.kept_q) + ',' + num(rep.success_probability) + ',' + num(rep.wigner_min) + '\n';
    return out;
}

std::string wigner_csv(const WignerGrid& grid) {
    std::string out = "x,p,w\n";
    out.reserve(out.size() + grid.w.size() * 60);
    for (int ip = 0; ip < grid.spec.np; ++ip) {
        for (int ix = 0; ix < grid.spec.nx; ++ix) {
            out += num(grid.x[static_cast<std::size_t>(ix)]) + ',' + num(grid.p[static_cast<std::size_t>(ip)]) + ',' +
                   num(grid.at(ix, ip)) + '\n';
        }
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("io", "cannot write " + path);
    f << text;
    if (!f) throw Error("io", "write failed for " + path);
}

} // namespace hhgsq
