#pragma once

#include "hhgsq/dipole.hpp"
#include "hhgsq/fockspace.hpp"
#include "hhgsq/gaussian.hpp"
#include "hhgsq/pulse_modes.hpp"
#include "hhgsq/quadgen.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hhgsq {

struct PulseConfig {
    double intensity_w_cm2 = 1e14;
    /// Overrides intensity_w_cm2 when set.
    std::optional<double> peak_field;
    double wavelength_nm = 800.0;
    /// Overrides wavelength_nm when set.
    std::optional<double> carrier_frequency;
    int n_cycles = 6;
    double t0 = 0.0;
};

struct NumericsConfig {
    std::size_t n_samples = 4096;
    int n_cutoff = 50;
    int theta_points = 100;
    int quad_cap = 1000;
    GeneratorMode generator_mode = GeneratorMode::as_is;
    DbConvention db_convention = DbConvention::exp_r;
    WignerGridSpec wigner;
    int threads = 0;
    /// Pairs whose Gaussian covariance is also computed from Fock moments.
    std::vector<std::array<int, 2>> fock_spot_checks = {{1, 3}};
};

struct PhysicsConfig {
    double n_at_gl2 = 1.0;
    double g_l = 1e-8;
    int q_max = 9;
    /// Values of N_at g_L^2 for the single-mode sweep.
    std::vector<double> sweep;
};

struct IoConfig {
    std::string out_dir = "hhgsq_out";
    /// "sfa" or "file:PATH".
    std::string dipole_source = "sfa";
};

struct RunConfig {
    PulseConfig pulse;
    AtomSpec atom;
    NumericsConfig numerics;
    PhysicsConfig physics;
    IoConfig io;

    RunConfig();

    /// Throws ValidationError listing every violation.
    void validate() const;
    LaserPulse laser() const;
    ModeGrid grid() const;
    double n_at() const { return physics.n_at_gl2 / (physics.g_l * physics.g_l); }
};

/// count log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int count);

/// Parses a JSON config; absent keys keep their defaults, unknown keys are errors.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Fully resolved config as JSON text.
std::string config_to_json(const RunConfig& cfg);

} // namespace hhgsq
