#pragma once

#include "hhgsq/pulse_modes.hpp"
#include "hhgsq/quadrature.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace hhgsq {

/// Two s-like bound states (g, e) of a hydrogenic ion. Defaults are He+.
struct AtomSpec {
    double ip_ground = 2.0;
    double ip_excited = 0.5;
    /// Direct bound-bound dipole <e|z|g>. Zero for two s states by parity.
    double d_eg = 0.0;
    double epsilon = 1e-3;

    void validate() const;
};

/// Time-sampled dipole matrix elements on a uniform grid t_k = t0 + k dt.
/// Construction enforces mu_ge = conj(mu_eg) by symmetrizing the pair.
class DipoleSeries {
public:
    using Samples = std::vector<cplx>;
    static constexpr std::size_t min_samples = 1024;

    DipoleSeries(double t0, double dt, Samples gg, Samples ge, Samples eg, Samples ee);

    std::size_t size() const noexcept { return gg_.size(); }
    double t0() const noexcept { return t0_; }
    double dt() const noexcept { return dt_; }
    double time(std::size_t k) const noexcept { return t0_ + dt_ * static_cast<double>(k); }
    double t_end() const noexcept { return time(size() - 1); }

    const Samples& gg() const noexcept { return gg_; }
    const Samples& ge() const noexcept { return ge_; }
    const Samples& eg() const noexcept { return eg_; }
    const Samples& ee() const noexcept { return ee_; }

    /// max_k |mu_ge - conj(mu_eg)| of the arrays passed to the constructor.
    double hermiticity_defect() const noexcept { return hermiticity_defect_; }

private:
    double t0_;
    double dt_;
    Samples gg_, ge_, eg_, ee_;
    double hermiticity_defect_ = 0.0;
};

struct SfaOptions {
    std::size_t n_samples = 4096;
    int max_subintervals = 1000;
    double abs_tol = 1e-12;
    double rel_tol = 1e-8;
    int threads = 0;
};

struct SfaDiagnostics {
    int max_subintervals_used = 0;
};

/// Strong-field dipoles: direct bound-bound term plus the continuum-mediated
/// term with the momentum integral done at its stationary point and the
/// ionization-time integral done adaptively.
class SfaModel {
public:
    SfaModel(const LaserPulse& pulse, const AtomSpec& atom);

    /// Continuum kernel for (t, tau), components ordered gg, ge, eg, ee:
    /// -i d_i*(p+A(t)) d_j(p+A(tau)) E(tau) (pi/(eps+i s/2))^{3/2}
    ///    exp(-i [S_kin + Ip_i t - Ip_j tau]),  s = t - tau.
    std::array<cplx, 4> kernel(double t, double tau) const;

    /// Stationary momentum and kinetic action for the excursion tau -> t.
    void stationary_point(double t, double tau, double& p, double& action) const;

    /// Hydrogenic s-state bound-continuum dipole with the leading factor i removed:
    /// C k / (k^2 + 2 Ip)^3, C = 2^{7/2} (2 Ip)^{5/4} / pi; the factors of i of
    /// d(k) cancel in conj(d_i) d_j.
    static double dipole_profile(double k, double ip);

    /// mu_ij(t) for one time, components ordered gg, ge, eg, ee.
    std::array<cplx, 4> matrix_elements(double t, const SfaOptions& opts,
                                        int* subintervals_used = nullptr) const;

    const LaserPulse& pulse() const noexcept { return pulse_; }
    const AtomSpec& atom() const noexcept { return atom_; }
    const PulsePotential& potential() const noexcept { return potential_; }

private:
    LaserPulse pulse_;
    AtomSpec atom_;
    PulsePotential potential_;
};

/// Samples mu_ij on n_samples uniform points spanning [t0, t_end].
DipoleSeries compute_sfa_dipoles(const LaserPulse& pulse, const AtomSpec& atom,
                                 const SfaOptions& opts = {}, SfaDiagnostics* diag = nullptr);

struct DipoleLoadResult {
    DipoleSeries series;
    std::vector<std::string> warnings;
};

/// Reads the CSV schema t,re_mu_gg,im_mu_gg,re_mu_ge,im_mu_ge,re_mu_eg,im_mu_eg,re_mu_ee,im_mu_ee.
DipoleLoadResult load_dipole_series(const std::string& path);
DipoleLoadResult parse_dipole_csv(const std::string& text);

/// Writes the same schema with shortest round-trip number formatting.
void write_dipole_series(const std::string& path, const DipoleSeries& series);
std::string format_dipole_csv(const DipoleSeries& series);

struct HierarchyReport {
    double max_ee = 0.0;
    double max_eg = 0.0;
    double max_gg = 0.0;
    /// max|mu_ee| > max|mu_eg| > max|mu_gg|
    bool ordered = false;

    /// Ordered with each neighbouring ratio at least `factor`.
    bool separated_by(double factor) const;
};

HierarchyReport check_hierarchy(const DipoleSeries& series);

} // namespace hhgsq
