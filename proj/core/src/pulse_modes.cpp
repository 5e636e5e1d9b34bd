#include "hhgsq/pulse_modes.hpp"

#include "hhgsq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace hhgsq {

namespace {
constexpr double kAtomicIntensity = 3.509e16;  // W/cm^2
constexpr double kWavelengthToFrequency = 45.563;  // nm * a.u.
} // namespace

double field_from_intensity(double intensity_w_cm2) {
    if (!(intensity_w_cm2 >= 0.0)) throw ValidationError("intensity must be non-negative");
    return std::sqrt(intensity_w_cm2 / kAtomicIntensity);
}

double frequency_from_wavelength(double wavelength_nm) {
    if (!(wavelength_nm > 0.0)) throw ValidationError("wavelength must be positive");
    return kWavelengthToFrequency / wavelength_nm;
}

LaserPulse LaserPulse::from_intensity(double intensity_w_cm2, double wavelength_nm, int n_cycles,
                                      double t0) {
    LaserPulse p;
    p.peak_field = field_from_intensity(intensity_w_cm2);
    p.carrier_frequency = frequency_from_wavelength(wavelength_nm);
    p.n_cycles = n_cycles;
    p.t0 = t0;
    p.validate();
    return p;
}

double LaserPulse::duration() const {
    return n_cycles * 2.0 * std::numbers::pi / carrier_frequency;
}

double LaserPulse::envelope(double t) const {
    const double u = t - t0;
    const double T = duration();
    if (u <= 0.0 || u >= T) return 0.0;
    const double s = std::sin(std::numbers::pi * u / T);
    return s * s;
}

void LaserPulse::validate() const {
    Violations v;
    v.check(std::isfinite(peak_field) && peak_field >= 0.0, "pulse.peak_field must be >= 0");
    v.check(std::isfinite(carrier_frequency) && carrier_frequency > 0.0,
            "pulse.carrier_frequency must be > 0");
    v.check(n_cycles >= 1, "pulse.n_cycles must be >= 1");
    v.check(std::isfinite(t0), "pulse.t0 must be finite");
    v.raise_if_any();
}

double classical_field(const LaserPulse& pulse, double t) {
    if (!(t >= pulse.t0 && t <= pulse.t_end())) {
        throw DomainError("time " + std::to_string(t) + " outside pulse [" + std::to_string(pulse.t0) +
                          ", " + std::to_string(pulse.t_end()) + "]");
    }
    return pulse.peak_field * pulse.envelope(t) * std::cos(pulse.carrier_frequency * (t - pulse.t0));
}

// sin^2(nu u / 2) cos(n nu u) = 1/2 cos(n nu u) - 1/4 cos((n+1) nu u) - 1/4 cos((n-1) nu u)
PulsePotential::PulsePotential(const LaserPulse& pulse)
    : t0_(pulse.t0), duration_(pulse.duration()),
      nu_(2.0 * std::numbers::pi / pulse.duration()) {
    pulse.validate();
    const int n = pulse.n_cycles;
    const double e0 = pulse.peak_field;
    comp_[0] = {n, 0.5 * e0};
    comp_[1] = {n + 1, -0.25 * e0};
    comp_[2] = {n - 1, -0.25 * e0};
    max_m_ = 2 * (n + 1);
}

PotentialSample PulsePotential::operator()(double t) const {
    const double u = std::clamp(t - t0_, 0.0, duration_);
    // z^m = exp(i m nu u) by repeated multiplication
    std::complex<double> zm[64];
    std::vector<std::complex<double>> heap;
    std::complex<double>* z = zm;
    if (max_m_ + 1 > 64) {
        heap.resize(static_cast<std::size_t>(max_m_ + 1));
        z = heap.data();
    }
    const std::complex<double> z1 = std::polar(1.0, nu_ * u);
    z[0] = 1.0;
    for (int m = 1; m <= max_m_; ++m) z[m] = z[m - 1] * z1;

    const double nu = nu_;
    auto phi1 = [&](int m) {  // int_0^u cos(m nu v) dv
        return m == 0 ? u : z[m].imag() / (m * nu);
    };
    auto phi2 = [&](int m) {  // int_0^u phi1(m, v) dv
        return m == 0 ? 0.5 * u * u : (1.0 - z[m].real()) / (m * nu * m * nu);
    };
    auto psi = [&](int a, int b) {  // int_0^u phi1(a, v) phi1(b, v) dv
        if (a == 0 && b == 0) return u * u * u / 3.0;
        if (a == 0 || b == 0) {
            const int k = a == 0 ? b : a;
            const double w = k * nu;
            return (z[k].imag() / w - u * z[k].real()) / (w * w);
        }
        const int d = a > b ? a - b : b - a;
        return (phi1(d) - phi1(a + b)) / (2.0 * a * nu * b * nu);
    };

    PotentialSample s;
    for (const auto& ck : comp_) {
        s.field += ck.c * z[ck.m].real();
        s.a -= ck.c * phi1(ck.m);
        s.a_int -= ck.c * phi2(ck.m);
    }
    for (const auto& ck : comp_) {
        for (const auto& cl : comp_) s.a_sq_int += ck.c * cl.c * psi(ck.m, cl.m);
    }
    return s;
}

double ModeGrid::coupling(int q) const {
    return coupling_scale * std::sqrt(static_cast<double>(q));
}

void ModeGrid::validate() const {
    Violations v;
    v.check(q_max >= 1, "grid.q_max must be >= 1");
    v.check(std::isfinite(fundamental) && fundamental > 0.0, "grid.fundamental must be > 0");
    v.check(std::isfinite(coupling_scale) && coupling_scale > 0.0, "grid.coupling_scale (g_L) must be > 0");
    v.raise_if_any();
}

std::vector<double> coupling_constants(const ModeGrid& grid) {
    grid.validate();
    std::vector<double> g(static_cast<std::size_t>(grid.q_max));
    for (int q = 1; q <= grid.q_max; ++q) g[static_cast<std::size_t>(q - 1)] = grid.coupling(q);
    return g;
}

double coupling_scale_from_product(double n_at_gl2, double n_at) {
    if (!(n_at_gl2 > 0.0) || !(n_at > 0.0)) throw ValidationError("N_at and N_at*g_L^2 must be > 0");
    return std::sqrt(n_at_gl2 / n_at);
}

} // namespace hhgsq
