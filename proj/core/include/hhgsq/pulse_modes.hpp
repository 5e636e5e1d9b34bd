#pragma once

#include <vector>

namespace hhgsq {

/// Conversion from peak intensity in W/cm^2 to peak field in atomic units.
double field_from_intensity(double intensity_w_cm2);

/// Conversion from vacuum wavelength in nm to angular frequency in atomic units.
double frequency_from_wavelength(double wavelength_nm);

enum class EnvelopeKind { sin2 };

/// Classical linearly polarized driver E(t) = E0 f(t) cos(w_L (t - t0)).
/// A zero peak field is accepted as the field-free limit.
struct LaserPulse {
    double peak_field = 0.0;
    double carrier_frequency = 0.0;
    int n_cycles = 6;
    EnvelopeKind envelope_kind = EnvelopeKind::sin2;
    double t0 = 0.0;

    static LaserPulse from_intensity(double intensity_w_cm2, double wavelength_nm,
                                     int n_cycles = 6, double t0 = 0.0);

    double duration() const;
    double t_end() const { return t0 + duration(); }
    /// Envelope value in [0, 1]; zero outside [t0, t_end].
    double envelope(double t) const;
    void validate() const;
};

/// E(t) on [t0, t_end]; throws DomainError outside.
double classical_field(const LaserPulse& pulse, double t);

/// Field, vector potential and its running integrals at one time.
struct PotentialSample {
    double field = 0.0;
    double a = 0.0;          ///< A(t) = -int_{t0}^t E
    double a_int = 0.0;      ///< int_{t0}^t A
    double a_sq_int = 0.0;   ///< int_{t0}^t A^2
};

/// Closed-form vector potential of a sin^2 pulse. The field is written as a
/// sum of three cosines at integer multiples of nu = 2 pi / duration, so every
/// integral has an exact antiderivative (including the zero-frequency term
/// that appears for a single-cycle pulse).
class PulsePotential {
public:
    explicit PulsePotential(const LaserPulse& pulse);

    /// t is clamped to [t0, t_end].
    PotentialSample operator()(double t) const;

private:
    struct Component {
        int m;
        double c;
    };
    double t0_;
    double duration_;
    double nu_;
    Component comp_[3];
    int max_m_;
};

/// Harmonic mode grid: w_q = q w_L and g_q = g_L sqrt(q), q = 1..q_max.
struct ModeGrid {
    int q_max = 9;
    double fundamental = 0.0;
    double coupling_scale = 0.0;

    double frequency(int q) const { return q * fundamental; }
    double coupling(int q) const;
    void validate() const;
};

std::vector<double> coupling_constants(const ModeGrid& grid);

/// g_L such that n_at * g_L^2 equals the given product.
double coupling_scale_from_product(double n_at_gl2, double n_at);

} // namespace hhgsq
