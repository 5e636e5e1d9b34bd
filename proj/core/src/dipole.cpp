#include "hhgsq/dipole.hpp"

#include "hhgsq/errors.hpp"
#include "hhgsq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hhgsq {

void AtomSpec::validate() const {
    Violations v;
    v.check(std::isfinite(ip_excited) && ip_excited > 0.0, "atom.ip_excited must be > 0");
    v.check(std::isfinite(ip_ground) && ip_ground > ip_excited, "atom.ip_ground must exceed atom.ip_excited");
    v.check(std::isfinite(d_eg), "atom.d_eg must be finite");
    v.check(std::isfinite(epsilon) && epsilon > 0.0, "atom.epsilon must be > 0");
    v.raise_if_any();
}

DipoleSeries::DipoleSeries(double t0, double dt, Samples gg, Samples ge, Samples eg, Samples ee)
    : t0_(t0), dt_(dt), gg_(std::move(gg)), ge_(std::move(ge)), eg_(std::move(eg)), ee_(std::move(ee)) {
    Violations v;
    v.check(std::isfinite(t0_), "dipole grid origin must be finite");
    v.check(std::isfinite(dt_) && dt_ > 0.0, "dipole grid step must be > 0");
    const std::size_t n = gg_.size();
    v.check(ge_.size() == n && eg_.size() == n && ee_.size() == n, "dipole arrays must share one grid");
    v.check(n >= min_samples, "dipole series needs at least 1024 samples (got " + std::to_string(n) + ")");
    v.raise_if_any();
    for (std::size_t k = 0; k < n; ++k) {
        for (const Samples* s : {&gg_, &ge_, &eg_, &ee_}) {
            const cplx z = (*s)[k];
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw ValidationError("non-finite dipole sample at index " + std::to_string(k));
            }
        }
        hermiticity_defect_ = std::max(hermiticity_defect_, std::abs(ge_[k] - std::conj(eg_[k])));
        eg_[k] = 0.5 * (eg_[k] + std::conj(ge_[k]));
        ge_[k] = std::conj(eg_[k]);
    }
}

SfaModel::SfaModel(const LaserPulse& pulse, const AtomSpec& atom)
    : pulse_(pulse), atom_(atom), potential_(pulse) {
    atom_.validate();
}

double SfaModel::dipole_profile(double k, double ip) {
    const double c = std::pow(2.0, 3.5) * std::pow(2.0 * ip, 1.25) / std::numbers::pi;
    const double den = k * k + 2.0 * ip;
    return c * k / (den * den * den);
}

namespace {

// Below kShortExcursion the kinetic momenta come from differences A(t) - A(t')
// integrated by Gauss-Legendre; p + A(t) from the closed-form integrals would
// cancel to ~|int A| eps / s absolute error. Below kTinyExcursion the leading
// Taylor term is used.
constexpr double kShortExcursion = 1.0;
constexpr double kTinyExcursion = 1e-9;
constexpr int kShortOrder = 16;

struct Excursion {
    double kt;      // kinetic momentum at recombination
    double ktau;    // kinetic momentum at ionization
    double action;  // kinetic action at the stationary momentum
    double p;
};

struct ShortRule {
    std::vector<double> x, w;
    ShortRule() { gauss_legendre(kShortOrder, x, w); }
};

const ShortRule& short_rule() {
    static const ShortRule rule;
    return rule;
}

Excursion excursion(const PulsePotential& pot, const PotentialSample& at, const PotentialSample& atau,
                    double t, double s) {
    Excursion ex{};
    if (s < kTinyExcursion) {
        // A(t - x) = A(t) + E(t) x + O(x^2)
        ex.p = -at.a - 0.5 * at.field * s;
        ex.kt = -0.5 * at.field * s;
        ex.ktau = 0.5 * at.field * s;
        ex.action = at.field * at.field * s * s * s / 24.0;
        return ex;
    }
    if (s < kShortExcursion) {
        const ShortRule& r = short_rule();
        double d[kShortOrder];
        double mean = 0.0;
        for (int k = 0; k < kShortOrder; ++k) {
            d[k] = pot(t - 0.5 * s * (r.x[static_cast<std::size_t>(k)] + 1.0)).a - at.a;
            mean += 0.5 * r.w[static_cast<std::size_t>(k)] * d[k];
        }
        // kinetic momentum along the path is A(t') - A(t) - mean
        double action = 0.0;
        for (int k = 0; k < kShortOrder; ++k) {
            const double v = d[k] - mean;
            action += 0.25 * s * r.w[static_cast<std::size_t>(k)] * v * v;
        }
        ex.kt = -mean;
        ex.ktau = (atau.a - at.a) - mean;
        ex.p = ex.kt - at.a;
        ex.action = action;
        return ex;
    }
    const double ia = at.a_int - atau.a_int;
    const double ia2 = at.a_sq_int - atau.a_sq_int;
    ex.p = -ia / s;
    ex.kt = ex.p + at.a;
    ex.ktau = ex.p + atau.a;
    ex.action = 0.5 * (ia2 + ex.p * ia);
    return ex;
}

cplx gaussian_prefactor(double epsilon, double s) {
    return std::pow(std::numbers::pi / cplx(epsilon, 0.5 * s), 1.5);
}

} // namespace

void SfaModel::stationary_point(double t, double tau, double& p, double& action) const {
    const Excursion ex = excursion(potential_, potential_(t), potential_(tau), t, t - tau);
    p = ex.p;
    action = ex.action;
}

std::array<cplx, 4> SfaModel::kernel(double t, double tau) const {
    std::array<cplx, 4> out{};
    const double s = t - tau;
    if (!(s > 0.0)) return out;
    const PotentialSample at = potential_(t);
    const PotentialSample atau = potential_(tau);
    const Excursion ex = excursion(potential_, at, atau, t, s);
    const double ip[2] = {atom_.ip_ground, atom_.ip_excited};
    const cplx base = cplx(0.0, -1.0) * atau.field * gaussian_prefactor(atom_.epsilon, s);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double phase = ex.action + ip[i] * t - ip[j] * tau;
            out[static_cast<std::size_t>(2 * i + j)] = base * dipole_profile(ex.kt, ip[i]) *
                                                       dipole_profile(ex.ktau, ip[j]) *
                                                       std::polar(1.0, -phase);
        }
    }
    return out;
}

std::array<cplx, 4> SfaModel::matrix_elements(double t, const SfaOptions& opts,
                                              int* subintervals_used) const {
    const double ipg = atom_.ip_ground;
    const double ipe = atom_.ip_excited;
    const double eps = atom_.epsilon;
    const PotentialSample at = potential_(t);

    // The common recombination phase exp(-i (Ip_i - Ip_j) t) is applied after
    // the tau integral so the integrand only carries exp(-i (S + Ip_j s)).
    auto integrand = [&](double tau, cplx* out) {
        const double s = t - tau;
        if (!(s > 0.0)) {
            std::fill(out, out + 4, cplx{});
            return;
        }
        const PotentialSample atau = potential_(tau);
        const Excursion ex = excursion(potential_, at, atau, t, s);
        const cplx base = cplx(0.0, -1.0) * atau.field * gaussian_prefactor(eps, s) *
                          std::polar(1.0, -ex.action);
        const double dg_t = dipole_profile(ex.kt, ipg);
        const double de_t = dipole_profile(ex.kt, ipe);
        const cplx wg = dipole_profile(ex.ktau, ipg) * std::polar(1.0, -ipg * s);
        const cplx we = dipole_profile(ex.ktau, ipe) * std::polar(1.0, -ipe * s);
        out[0] = base * dg_t * wg;
        out[1] = base * dg_t * we;
        out[2] = base * de_t * wg;
        out[3] = base * de_t * we;
    };

    std::array<cplx, 4> tij{};
    const double span = t - pulse_.t0;
    if (span > 0.0) {
        AdaptiveOptions ao;
        ao.abs_tol = opts.abs_tol;
        ao.rel_tol = opts.rel_tol;
        ao.max_subintervals = opts.max_subintervals;
        ao.initial_panels = std::clamp(static_cast<int>(std::ceil(span / 4.0)), 1,
                                       std::max(1, opts.max_subintervals / 4));
        const AdaptiveResult r = integrate_adaptive(integrand, 4, pulse_.t0, t, ao);
        if (subintervals_used) *subintervals_used = r.subintervals;
        if (!r.converged) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "ionization-time integral at t = " << t << " did not converge within "
                << opts.max_subintervals << " subintervals; worst subinterval [" << r.worst_a << ", "
                << r.worst_b << "]";
            throw NumericalError(msg.str());
        }
        const cplx phase_ge = std::polar(1.0, -(ipg - ipe) * t);
        tij[0] = r.value[0];
        tij[1] = r.value[1] * phase_ge;
        tij[2] = r.value[2] * std::conj(phase_ge);
        tij[3] = r.value[3];
    } else if (subintervals_used) {
        *subintervals_used = 0;
    }

    const cplx direct_eg = atom_.d_eg * std::polar(1.0, (ipg - ipe) * t);
    std::array<cplx, 4> mu;
    mu[0] = tij[0] + std::conj(tij[0]);
    mu[1] = std::conj(direct_eg) + tij[1] + std::conj(tij[2]);
    mu[2] = direct_eg + tij[2] + std::conj(tij[1]);
    mu[3] = tij[3] + std::conj(tij[3]);
    return mu;
}

DipoleSeries compute_sfa_dipoles(const LaserPulse& pulse, const AtomSpec& atom, const SfaOptions& opts,
                                 SfaDiagnostics* diag) {
    pulse.validate();
    atom.validate();
    if (opts.n_samples < DipoleSeries::min_samples) {
        throw ValidationError("N_t must be >= 1024 (got " + std::to_string(opts.n_samples) + ")");
    }
    const SfaModel model(pulse, atom);
    const std::size_t n = opts.n_samples;
    const double dt = pulse.duration() / static_cast<double>(n - 1);
    DipoleSeries::Samples gg(n), ge(n), eg(n), ee(n);
    std::vector<int> used(n, 0);
    parallel_for(n, opts.threads, [&](std::size_t k) {
        const double t = pulse.t0 + dt * static_cast<double>(k);
        const auto mu = model.matrix_elements(t, opts, &used[k]);
        gg[k] = mu[0];
        ge[k] = mu[1];
        eg[k] = mu[2];
        ee[k] = mu[3];
    });
    if (diag) diag->max_subintervals_used = *std::max_element(used.begin(), used.end());
    return DipoleSeries(pulse.t0, dt, std::move(gg), std::move(ge), std::move(eg), std::move(ee));
}

bool HierarchyReport::separated_by(double factor) const {
    return ordered && max_ee >= factor * max_eg && max_eg >= factor * max_gg;
}

HierarchyReport check_hierarchy(const DipoleSeries& series) {
    HierarchyReport r;
    for (std::size_t k = 0; k < series.size(); ++k) {
        r.max_ee = std::max(r.max_ee, std::abs(series.ee()[k]));
        r.max_eg = std::max(r.max_eg, std::abs(series.eg()[k]));
        r.max_gg = std::max(r.max_gg, std::abs(series.gg()[k]));
    }
    r.ordered = r.max_ee > r.max_eg && r.max_eg > r.max_gg;
    return r;
}

} // namespace hhgsq
