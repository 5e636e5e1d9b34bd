#pragma once

#include "hhgsq/config.hpp"
#include "hhgsq/dipole.hpp"
#include "hhgsq/fockspace.hpp"
#include "hhgsq/gaussian.hpp"
#include "hhgsq/quadgen.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hhgsq {

/// Lazily computed shared inputs of every figure pipeline: the dipole series
/// and the generator at N_at g_L^2 = 1 (other values are exact rescalings).
class Pipeline {
public:
    explicit Pipeline(RunConfig cfg);
    /// Uses a given dipole series instead of the configured source.
    Pipeline(RunConfig cfg, DipoleSeries series);

    const RunConfig& config() const noexcept { return cfg_; }
    const LaserPulse& pulse() const noexcept { return pulse_; }
    const ModeGrid& grid() const noexcept { return grid_; }

    const DipoleSeries& dipoles();
    const std::vector<double>& envelope();
    const QuadraticGenerator& unit_generator();
    QuadraticGenerator generator(double n_at_gl2);
    QuadraticGenerator generator() { return generator(cfg_.physics.n_at_gl2); }
    DisplacementVector displacement();

    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    /// Largest adaptive-subinterval count used by the dipole and generator integrals.
    int max_subintervals_used() const noexcept { return std::max(sfa_subintervals_, gen_subintervals_); }
    int sfa_subintervals_used() const noexcept { return sfa_subintervals_; }
    int generator_subintervals_used() const noexcept { return gen_subintervals_; }

private:
    RunConfig cfg_;
    LaserPulse pulse_;
    ModeGrid grid_;
    std::optional<DipoleSeries> series_;
    std::vector<double> envelope_;
    std::optional<QuadraticGenerator> unit_;
    std::vector<std::string> warnings_;
    int sfa_subintervals_ = 0;
    int gen_subintervals_ = 0;
};

struct SqueezingRecord {
    int q = 1;
    double n_at_gl2 = 1.0;
    SqueezingResult fock;
    SqueezingResult gaussian;
    double norm_deficit = 0.0;
    double top_level_population = 0.0;
};

struct SqueezingReport {
    double reference_n_at_gl2 = 1.0;
    std::vector<double> sweep;
    /// Records at the reference value, one per q.
    std::vector<SqueezingRecord> records;
    /// Records at every sweep value, ordered by sweep value then q.
    std::vector<SqueezingRecord> sweep_records;
    std::vector<std::string> warnings;

    const SqueezingRecord& at(int q) const;
};

/// For each q: restrict to {q}, evolve in Fock space (configured mode) and
/// propagate the covariance (hermitian part); optimum quadrature from both.
SqueezingReport single_mode_scan(Pipeline& pipeline, bool include_sweep = true);

struct TwoModeRecord {
    int q1 = 1;
    int q2 = 2;
    double lambda_max = 0.5;
    double lambda_min = 0.5;
    double log_negativity = 0.0;
    double nu_minus = 0.5;
    double nu_minus_spectral = 0.5;
    double det_sigma = 0.0625;
    double min_symplectic_eigenvalue = 0.5;
};

struct SpotCheck {
    int q1 = 1;
    int q2 = 2;
    double max_discrepancy = 0.0;
};

struct TwoModeReport {
    double n_at_gl2 = 1.0;
    std::vector<TwoModeRecord> records;
    std::vector<SpotCheck> spot_checks;

    const TwoModeRecord& at(int q1, int q2) const;
    const TwoModeRecord& argmax_lambda() const;
    const TwoModeRecord& argmax_negativity() const;
};

/// Gaussian covariance for every pair q1 < q2 <= q_max (or the given pairs).
TwoModeReport two_mode_scan(Pipeline& pipeline, std::vector<std::array<int, 2>> pairs = {});

struct HeraldReport {
    int q1 = 1;
    int q2 = 2;
    int herald_q = 2;
    int kept_q = 1;
    double success_probability = 0.0;
    double vacuum_probability = 0.0;
    double wigner_min = 0.0;
    double wigner_integral = 0.0;
    double norm_deficit = 0.0;
    GeneratorMode mode = GeneratorMode::as_is;
    DensityOperator state;
    WignerGrid wigner;
};

/// herald_on_second selects q2 as the measured mode; the other is kept.
HeraldReport herald_pipeline(Pipeline& pipeline, int q1, int q2, bool herald_on_second,
                             GeneratorMode mode = GeneratorMode::as_is);

struct CrosscheckReport {
    std::vector<int> modes;
    double max_discrepancy = 0.0;
    int row = 0;
    int col = 0;
    Eigen::MatrixXd fock;
    Eigen::MatrixXd gaussian;
};

inline constexpr double kCrosscheckTolerance = 1e-4;

/// Covariance from Fock moments vs symplectic propagation (hermitian part).
/// Throws ConsistencyError naming the worst entry above 1e-4.
CrosscheckReport crosscheck_fock_gaussian(const QuadraticGenerator& gen, int n_cutoff);
CrosscheckReport crosscheck_fock_gaussian(Pipeline& pipeline, const std::vector<int>& modes);

struct SpectrumRecord {
    int q = 1;
    cplx chi;
    double intensity = 0.0;
};

std::vector<SpectrumRecord> harmonic_spectrum(Pipeline& pipeline);

} // namespace hhgsq
