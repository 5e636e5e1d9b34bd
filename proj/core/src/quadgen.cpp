#include "hhgsq/quadgen.hpp"

#include "hhgsq/errors.hpp"
#include "hhgsq/parallel.hpp"
#include "hhgsq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hhgsq {

namespace {

void check_envelope(const DipoleSeries& series, std::span<const double> envelope) {
    if (envelope.size() != series.size()) {
        throw ValidationError("envelope has " + std::to_string(envelope.size()) + " samples, dipole grid has " +
                              std::to_string(series.size()));
    }
    for (double f : envelope) {
        if (!std::isfinite(f)) throw ValidationError("envelope samples must be finite");
    }
}

} // namespace

std::vector<double> sample_envelope(const DipoleSeries& series, const LaserPulse& pulse) {
    std::vector<double> f(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) f[k] = pulse.envelope(series.time(k));
    return f;
}

DisplacementVector displacement_amplitudes(const DipoleSeries& series, const ModeGrid& grid,
                                           std::span<const double> envelope) {
    grid.validate();
    check_envelope(series, envelope);
    const std::size_t n = series.size();
    DisplacementVector out;
    out.chi.resize(static_cast<std::size_t>(grid.q_max));
    std::vector<cplx> h(n);
    for (int q = 1; q <= grid.q_max; ++q) {
        const double w = grid.frequency(q);
        for (std::size_t k = 0; k < n; ++k) {
            h[k] = envelope[k] * series.ee()[k] * std::polar(1.0, w * series.time(k));
        }
        out.chi[static_cast<std::size_t>(q - 1)] = -grid.coupling(q) * simpson(h, series.dt());
    }
    return out;
}

DisplacementVector displacement_amplitudes(const DipoleSeries& series, const ModeGrid& grid,
                                           const LaserPulse& pulse) {
    const auto f = sample_envelope(series, pulse);
    return displacement_amplitudes(series, grid, f);
}

QuadraticGenerator QuadraticGenerator::zero(const ModeGrid& grid, double n_at_gl2) {
    grid.validate();
    QuadraticGenerator g;
    g.grid = grid;
    g.n_at_gl2 = n_at_gl2;
    const Eigen::Index q = grid.q_max;
    g.F = Eigen::MatrixXcd::Zero(q, q);
    g.G = Eigen::MatrixXcd::Zero(q, q);
    g.H = Eigen::MatrixXcd::Zero(q, q);
    g.J = Eigen::MatrixXcd::Zero(q, q);
    for (int m = 1; m <= grid.q_max; ++m) g.modes.push_back(m);
    return g;
}

cplx QuadraticGenerator::constant() const {
    cplx c{};
    for (int m : modes) c += J(m - 1, m - 1);
    return c;
}

// Field operator of mode q: E_q(t) = g_q f(t) [-i a_q e^{-i w_q t} + i a_q^+ e^{i w_q t}].
// The exponent is K = N_at int dt mu_eg(t) E(t) int_{t0}^{t} dtau mu_ge(tau) E(tau).
// Expanding E_q(t) E_q'(tau) gives four kernels; with the weights (-i)(-i) = -1,
// (-i)(+i) = +1, (+i)(-i) = +1, (+i)(+i) = -1 the matrix slots are
//   F_qq' (a_q a_q')      = -N g_q g_q' O[-, -]
//   J_qq' (a_q a_q'^+)    = +N g_q g_q' O[-, +]
//   H_qq' (a_q^+ a_q')    = +N g_q g_q' O[+, -]
//   G_qq' (a_q^+ a_q'^+)  = -N g_q g_q' O[+, +]
// where O[s_t, s_tau] = int dt f mu_eg e^{s_t i w_q t} int_{t0}^{t} dtau f mu_ge e^{s_tau i w_q' tau}.
// Each (kernel, slot) pair not listed above is zero: a kernel feeds exactly one slot.
QuadraticGenerator generator_coefficients(const DipoleSeries& series, const ModeGrid& grid, double n_at_gl2,
                                          std::span<const double> envelope, const GeneratorOptions& opts,
                                          GeneratorDiagnostics* diag) {
    grid.validate();
    check_envelope(series, envelope);
    if (!(n_at_gl2 > 0.0) || !std::isfinite(n_at_gl2)) throw ValidationError("N_at*g_L^2 must be > 0");
    const std::size_t n = series.size();
    const int qmax = grid.q_max;
    const double dt = series.dt();

    std::vector<cplx> w(n), u(n);
    for (std::size_t k = 0; k < n; ++k) {
        w[k] = envelope[k] * series.ge()[k];
        u[k] = envelope[k] * series.eg()[k];
    }

    // inner[2*(q-1) + s], s = 0 for e^{-i w tau}, s = 1 for e^{+i w tau}
    std::vector<std::vector<cplx>> inner(static_cast<std::size_t>(2 * qmax));
    parallel_for(inner.size(), opts.threads, [&](std::size_t idx) {
        const int q = static_cast<int>(idx / 2) + 1;
        const double sign = (idx % 2 == 0) ? -1.0 : 1.0;
        const double wq = grid.frequency(q);
        std::vector<cplx> y(n);
        for (std::size_t k = 0; k < n; ++k) y[k] = w[k] * std::polar(1.0, sign * wq * series.time(k));
        inner[idx] = cumulative_simpson(y, dt);
    });

    const std::size_t pairs = static_cast<std::size_t>(qmax) * static_cast<std::size_t>(qmax);
    std::vector<std::array<cplx, 4>> outer(pairs);
    std::vector<int> used(pairs, 0);
    const double t0 = series.t0();
    const double t1 = series.t_end();
    const double period = 2.0 * std::numbers::pi / grid.fundamental;
    parallel_for(pairs, opts.threads, [&](std::size_t idx) {
        const int q = static_cast<int>(idx / static_cast<std::size_t>(qmax)) + 1;
        const int qp = static_cast<int>(idx % static_cast<std::size_t>(qmax)) + 1;
        const double wq = grid.frequency(q);
        // kernel order: F (-,-), J (-,+), H (+,-), G (+,+)
        const int st[4] = {-1, -1, 1, 1};
        const int stau[4] = {0, 1, 0, 1};
        std::vector<UniformCubicSpline> splines;
        splines.reserve(4);
        std::vector<cplx> y(n);
        for (int kern = 0; kern < 4; ++kern) {
            const auto& in = inner[static_cast<std::size_t>(2 * (qp - 1) + stau[kern])];
            for (std::size_t k = 0; k < n; ++k) {
                y[k] = u[k] * std::polar(1.0, st[kern] * wq * series.time(k)) * in[k];
            }
            splines.emplace_back(t0, dt, y);
        }
        auto integrand = [&](double t, cplx* out) {
            for (int kern = 0; kern < 4; ++kern) out[kern] = splines[static_cast<std::size_t>(kern)](t);
        };
        AdaptiveOptions ao;
        ao.abs_tol = opts.abs_tol;
        ao.rel_tol = opts.rel_tol;
        ao.max_subintervals = opts.max_subintervals;
        ao.initial_panels = std::clamp(static_cast<int>(std::ceil(8.0 * (t1 - t0) / period)), 1,
                                       std::max(1, opts.max_subintervals / 4));
        const AdaptiveResult r = integrate_adaptive(integrand, 4, t0, t1, ao);
        used[idx] = r.subintervals;
        if (!r.converged) {
            std::ostringstream msg;
            msg << "generator quadrature for (q, q') = (" << q << ", " << qp << ") did not converge within "
                << opts.max_subintervals << " subintervals";
            throw NumericalError(msg.str());
        }
        for (int kern = 0; kern < 4; ++kern) outer[idx][static_cast<std::size_t>(kern)] = r.value[static_cast<std::size_t>(kern)];
    });

    QuadraticGenerator gen = QuadraticGenerator::zero(grid, n_at_gl2);
    for (int q = 1; q <= qmax; ++q) {
        for (int qp = 1; qp <= qmax; ++qp) {
            const auto& o = outer[static_cast<std::size_t>((q - 1) * qmax + (qp - 1))];
            const double scale = n_at_gl2 * std::sqrt(static_cast<double>(q) * static_cast<double>(qp));
            gen.F(q - 1, qp - 1) = -scale * o[0];
            gen.J(q - 1, qp - 1) = scale * o[1];
            gen.H(q - 1, qp - 1) = scale * o[2];
            gen.G(q - 1, qp - 1) = -scale * o[3];
        }
    }
    if (diag) diag->max_subintervals_used = *std::max_element(used.begin(), used.end());
    return gen;
}

QuadraticGenerator generator_coefficients(const DipoleSeries& series, const ModeGrid& grid, double n_at_gl2,
                                          const LaserPulse& pulse, const GeneratorOptions& opts,
                                          GeneratorDiagnostics* diag) {
    const auto f = sample_envelope(series, pulse);
    return generator_coefficients(series, grid, n_at_gl2, f, opts, diag);
}

QuadraticGenerator restrict_generator(const QuadraticGenerator& gen, const std::vector<int>& modes) {
    if (modes.empty()) throw ValidationError("mode subset must not be empty");
    std::vector<int> sorted = modes;
    std::sort(sorted.begin(), sorted.end());
    Violations v;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        v.check(sorted[i] >= 1 && sorted[i] <= gen.q_max(),
                "mode " + std::to_string(sorted[i]) + " outside [1, " + std::to_string(gen.q_max()) + "]");
        if (i > 0) v.check(sorted[i] != sorted[i - 1], "mode " + std::to_string(sorted[i]) + " listed twice");
    }
    v.raise_if_any();

    QuadraticGenerator out = QuadraticGenerator::zero(gen.grid, gen.n_at_gl2);
    out.modes = sorted;
    for (int a : sorted) {
        for (int b : sorted) {
            out.F(a - 1, b - 1) = gen.F(a - 1, b - 1);
            out.G(a - 1, b - 1) = gen.G(a - 1, b - 1);
            out.H(a - 1, b - 1) = gen.H(a - 1, b - 1);
            out.J(a - 1, b - 1) = gen.J(a - 1, b - 1);
        }
    }
    return out;
}

QuadraticGenerator rescale_generator(const QuadraticGenerator& gen, double n_at_gl2) {
    if (!(n_at_gl2 > 0.0) || !std::isfinite(n_at_gl2)) throw ValidationError("N_at*g_L^2 must be > 0");
    QuadraticGenerator out = gen;
    const double ratio = n_at_gl2 / gen.n_at_gl2;
    out.F *= ratio;
    out.G *= ratio;
    out.H *= ratio;
    out.J *= ratio;
    out.n_at_gl2 = n_at_gl2;
    return out;
}

NormalOrderedForm normal_ordered_form(const QuadraticGenerator& gen, GeneratorMode mode) {
    const auto m = static_cast<Eigen::Index>(gen.modes.size());
    Eigen::MatrixXcd F(m, m), G(m, m), H(m, m), J(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const int a = gen.modes[static_cast<std::size_t>(i)] - 1;
            const int b = gen.modes[static_cast<std::size_t>(j)] - 1;
            F(i, j) = gen.F(a, b);
            G(i, j) = gen.G(a, b);
            H(i, j) = gen.H(a, b);
            J(i, j) = gen.J(a, b);
        }
    }
    NormalOrderedForm form;
    form.modes = gen.modes;
    form.pair_annihilation = 0.5 * (F + F.transpose());
    form.pair_creation = 0.5 * (G + G.transpose());
    form.hopping = H + J.transpose();
    form.constant = J.trace();
    if (mode == GeneratorMode::hermitian_part) {
        const Eigen::MatrixXcd P = form.pair_annihilation;
        const Eigen::MatrixXcd C = form.pair_creation;
        form.pair_annihilation = 0.5 * (P - C.conjugate());
        form.pair_creation = 0.5 * (C - P.conjugate());
        const Eigen::MatrixXcd N = form.hopping;
        form.hopping = 0.5 * (N - N.adjoint());
        form.constant = cplx(0.0, form.constant.imag());
    }
    return form;
}

std::string generator_mode_name(GeneratorMode mode) {
    return mode == GeneratorMode::as_is ? "as-is" : "hermitian-part";
}

GeneratorMode parse_generator_mode(const std::string& name) {
    if (name == "as-is") return GeneratorMode::as_is;
    if (name == "hermitian-part") return GeneratorMode::hermitian_part;
    throw ValidationError("generator mode must be 'as-is' or 'hermitian-part' (got '" + name + "')");
}

} // namespace hhgsq
