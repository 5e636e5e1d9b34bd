#include "hhgsq/analysis.hpp"

#include "hhgsq/errors.hpp"
#include "hhgsq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hhgsq {

Pipeline::Pipeline(RunConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    pulse_ = cfg_.laser();
    grid_ = cfg_.grid();
}

Pipeline::Pipeline(RunConfig cfg, DipoleSeries series) : Pipeline(std::move(cfg)) {
    series_ = std::move(series);
}

const DipoleSeries& Pipeline::dipoles() {
    if (!series_) {
        const std::string& src = cfg_.io.dipole_source;
        if (src == "sfa") {
            SfaOptions opts;
            opts.n_samples = cfg_.numerics.n_samples;
            opts.max_subintervals = cfg_.numerics.quad_cap;
            opts.threads = cfg_.numerics.threads;
            SfaDiagnostics diag;
            series_ = compute_sfa_dipoles(pulse_, cfg_.atom, opts, &diag);
            sfa_subintervals_ = diag.max_subintervals_used;
        } else {
            DipoleLoadResult loaded = load_dipole_series(src.substr(5));
            for (auto& w : loaded.warnings) warnings_.push_back(std::move(w));
            series_ = std::move(loaded.series);
        }
    }
    return *series_;
}

const std::vector<double>& Pipeline::envelope() {
    if (envelope_.empty()) envelope_ = sample_envelope(dipoles(), pulse_);
    return envelope_;
}

const QuadraticGenerator& Pipeline::unit_generator() {
    if (!unit_) {
        GeneratorOptions opts;
        opts.max_subintervals = cfg_.numerics.quad_cap;
        opts.threads = cfg_.numerics.threads;
        GeneratorDiagnostics diag;
        unit_ = generator_coefficients(dipoles(), grid_, 1.0, envelope(), opts, &diag);
        gen_subintervals_ = diag.max_subintervals_used;
    }
    return *unit_;
}

QuadraticGenerator Pipeline::generator(double n_at_gl2) {
    return rescale_generator(unit_generator(), n_at_gl2);
}

DisplacementVector Pipeline::displacement() {
    return displacement_amplitudes(dipoles(), grid_, envelope());
}

const SqueezingRecord& SqueezingReport::at(int q) const {
    for (const auto& r : records) {
        if (r.q == q) return r;
    }
    throw ValidationError("no single-mode record for q = " + std::to_string(q));
}

SqueezingReport single_mode_scan(Pipeline& pipeline, bool include_sweep) {
    const RunConfig& cfg = pipeline.config();
    const int qmax = cfg.physics.q_max;
    SqueezingReport rep;
    rep.reference_n_at_gl2 = cfg.physics.n_at_gl2;
    if (include_sweep) rep.sweep = cfg.physics.sweep;

    std::vector<double> values{rep.reference_n_at_gl2};
    values.insert(values.end(), rep.sweep.begin(), rep.sweep.end());
    const QuadraticGenerator& unit = pipeline.unit_generator();

    const std::size_t items = values.size() * static_cast<std::size_t>(qmax);
    std::vector<SqueezingRecord> out(items);
    std::vector<std::vector<std::string>> warn(items);
    parallel_for(items, cfg.numerics.threads, [&](std::size_t idx) {
        const double value = values[idx / static_cast<std::size_t>(qmax)];
        const int q = static_cast<int>(idx % static_cast<std::size_t>(qmax)) + 1;
        const QuadraticGenerator gen = restrict_generator(rescale_generator(unit, value), {q});
        const FockState st = evolve_vacuum(gen, cfg.numerics.n_cutoff, cfg.numerics.generator_mode);
        SqueezingRecord rec;
        rec.q = q;
        rec.n_at_gl2 = value;
        rec.fock = optimal_single_mode_variance(st, 0, cfg.numerics.theta_points, cfg.numerics.db_convention);
        const CovarianceMatrix cov = covariance_from_generator(gen);
        rec.gaussian = optimal_single_mode_variance(Eigen::Matrix2d(cov.sigma), cfg.numerics.db_convention);
        rec.norm_deficit = st.norm_deficit();
        rec.top_level_population = st.top_level_population;
        for (const auto& w : st.warnings) {
            warn[idx].push_back("q = " + std::to_string(q) + ", N_at g_L^2 = " + std::to_string(value) + ": " + w);
        }
        out[idx] = rec;
    });
    for (std::size_t i = 0; i < items; ++i) {
        (i < static_cast<std::size_t>(qmax) ? rep.records : rep.sweep_records).push_back(out[i]);
        for (auto& w : warn[i]) rep.warnings.push_back(std::move(w));
    }
    return rep;
}

const TwoModeRecord& TwoModeReport::at(int q1, int q2) const {
    for (const auto& r : records) {
        if (r.q1 == q1 && r.q2 == q2) return r;
    }
    throw ValidationError("no two-mode record for (" + std::to_string(q1) + ", " + std::to_string(q2) + ")");
}

const TwoModeRecord& TwoModeReport::argmax_lambda() const {
    if (records.empty()) throw ValidationError("empty two-mode report");
    return *std::max_element(records.begin(), records.end(),
                             [](const auto& a, const auto& b) { return a.lambda_max < b.lambda_max; });
}

const TwoModeRecord& TwoModeReport::argmax_negativity() const {
    if (records.empty()) throw ValidationError("empty two-mode report");
    return *std::max_element(records.begin(), records.end(),
                             [](const auto& a, const auto& b) { return a.log_negativity < b.log_negativity; });
}

namespace {

CrosscheckReport compare_backends(const QuadraticGenerator& gen, int n_cutoff) {
    if (gen.modes.size() != 1 && gen.modes.size() != 2) {
        throw ValidationError("cross-check needs a generator restricted to 1 or 2 modes");
    }
    const FockState st = evolve_vacuum(gen, n_cutoff, GeneratorMode::hermitian_part);
    CrosscheckReport rep;
    rep.modes = gen.modes;
    rep.fock = covariance_from_state(st);
    rep.gaussian = covariance_from_generator(gen).sigma;
    for (Eigen::Index i = 0; i < rep.fock.rows(); ++i) {
        for (Eigen::Index j = 0; j < rep.fock.cols(); ++j) {
            const double d = std::abs(rep.fock(i, j) - rep.gaussian(i, j));
            if (d > rep.max_discrepancy) {
                rep.max_discrepancy = d;
                rep.row = static_cast<int>(i);
                rep.col = static_cast<int>(j);
            }
        }
    }
    return rep;
}

} // namespace

TwoModeReport two_mode_scan(Pipeline& pipeline, std::vector<std::array<int, 2>> pairs) {
    const RunConfig& cfg = pipeline.config();
    const int qmax = cfg.physics.q_max;
    if (pairs.empty()) {
        for (int a = 1; a <= qmax; ++a) {
            for (int b = a + 1; b <= qmax; ++b) pairs.push_back({a, b});
        }
    }
    TwoModeReport rep;
    rep.n_at_gl2 = cfg.physics.n_at_gl2;
    const QuadraticGenerator full = pipeline.generator();
    rep.records.resize(pairs.size());
    parallel_for(pairs.size(), cfg.numerics.threads, [&](std::size_t i) {
        const auto [a, b] = pairs[i];
        if (a == b) throw ValidationError("two-mode pair needs distinct modes");
        const QuadraticGenerator gen = restrict_generator(full, {a, b});
        const CovarianceMatrix cov = covariance_from_generator(gen);
        TwoModeRecord r;
        r.q1 = std::min(a, b);
        r.q2 = std::max(a, b);
        r.lambda_max = lambda_max(cov);
        r.lambda_min = lambda_min(cov);
        const NegativityResult en = logarithmic_negativity(cov);
        r.log_negativity = en.value;
        r.nu_minus = en.nu_minus;
        r.nu_minus_spectral = en.nu_minus_spectral;
        r.det_sigma = cov.sigma.determinant();
        r.min_symplectic_eigenvalue = symplectic_eigenvalues(cov.sigma).front();
        rep.records[i] = r;
    });
    for (const auto& pr : cfg.numerics.fock_spot_checks) {
        const CrosscheckReport cc = compare_backends(restrict_generator(full, {pr[0], pr[1]}), cfg.numerics.n_cutoff);
        rep.spot_checks.push_back({std::min(pr[0], pr[1]), std::max(pr[0], pr[1]), cc.max_discrepancy});
    }
    return rep;
}

HeraldReport herald_pipeline(Pipeline& pipeline, int q1, int q2, bool herald_on_second, GeneratorMode mode) {
    const RunConfig& cfg = pipeline.config();
    if (q1 == q2) throw ValidationError("heralding needs two distinct modes");
    const QuadraticGenerator gen = restrict_generator(pipeline.generator(), {q1, q2});
    const FockState st = evolve_vacuum(gen, cfg.numerics.n_cutoff, mode);
    HeraldReport rep;
    rep.q1 = q1;
    rep.q2 = q2;
    rep.herald_q = herald_on_second ? q2 : q1;
    rep.kept_q = herald_on_second ? q1 : q2;
    rep.mode = mode;
    rep.norm_deficit = st.norm_deficit();
    const int herald_index = rep.herald_q == st.modes[0] ? 0 : 1;
    const HeraldOutcome h = partial_trace_herald(st, herald_index, 1 - herald_index);
    rep.success_probability = h.success_probability;
    rep.vacuum_probability = h.vacuum_probability;
    rep.state = h.state;
    rep.wigner = wigner_function(h.state, cfg.numerics.wigner, cfg.numerics.threads);
    rep.wigner_min = rep.wigner.min();
    rep.wigner_integral = rep.wigner.integral();
    return rep;
}

CrosscheckReport crosscheck_fock_gaussian(const QuadraticGenerator& gen, int n_cutoff) {
    CrosscheckReport rep = compare_backends(gen, n_cutoff);
    if (rep.max_discrepancy > kCrosscheckTolerance) {
        std::ostringstream msg;
        msg << "Fock and Gaussian covariance differ by " << rep.max_discrepancy << " at entry (" << rep.row << ", "
            << rep.col << ")";
        throw ConsistencyError(msg.str());
    }
    return rep;
}

CrosscheckReport crosscheck_fock_gaussian(Pipeline& pipeline, const std::vector<int>& modes) {
    return crosscheck_fock_gaussian(restrict_generator(pipeline.generator(), modes),
                                    pipeline.config().numerics.n_cutoff);
}

std::vector<SpectrumRecord> harmonic_spectrum(Pipeline& pipeline) {
    const DisplacementVector chi = pipeline.displacement();
    std::vector<SpectrumRecord> out;
    for (int q = 1; q <= static_cast<int>(chi.chi.size()); ++q) out.push_back({q, chi[q], std::norm(chi[q])});
    return out;
}

} // namespace hhgsq
