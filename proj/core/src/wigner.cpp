#include "hhgsq/errors.hpp"
#include "hhgsq/fockspace.hpp"
#include "hhgsq/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hhgsq {

void WignerGridSpec::validate() const {
    Violations v;
    v.check(std::isfinite(x_min) && std::isfinite(x_max) && x_max > x_min, "wigner x range must be increasing");
    v.check(std::isfinite(p_min) && std::isfinite(p_max) && p_max > p_min, "wigner p range must be increasing");
    v.check(nx >= 2 && np >= 2, "wigner grid needs at least 2 points per axis");
    v.raise_if_any();
}

double WignerGrid::min() const {
    return *std::min_element(w.begin(), w.end());
}

double WignerGrid::integral() const {
    const double hx = (spec.x_max - spec.x_min) / (spec.nx - 1);
    const double hp = (spec.p_max - spec.p_min) / (spec.np - 1);
    double sum = 0.0;
    for (int ip = 0; ip < spec.np; ++ip) {
        const double wp = (ip == 0 || ip == spec.np - 1) ? 0.5 : 1.0;
        for (int ix = 0; ix < spec.nx; ++ix) {
            const double wx = (ix == 0 || ix == spec.nx - 1) ? 0.5 : 1.0;
            sum += wp * wx * at(ix, ip);
        }
    }
    return sum * hx * hp;
}

namespace {

// Displaced parity written in the number basis:
//   W = (2/pi) sum_mn rho_mn (-1)^m <n|D(2 alpha)|m>.
// The matrix elements of D(2 alpha) are built by a three-term recursion over
// associated Laguerre polynomials, seeded with exp(-2|alpha|^2)/pi.
double wigner_value(const Eigen::MatrixXcd& rho, cplx alpha, std::vector<cplx>& wl) {
    const Eigen::Index L = rho.rows();
    wl.assign(static_cast<std::size_t>(L), cplx{});
    wl[0] = std::exp(-2.0 * std::norm(alpha)) / std::numbers::pi;
    double w = rho(0, 0).real() * wl[0].real();
    for (Eigen::Index n = 1; n < L; ++n) {
        wl[static_cast<std::size_t>(n)] = 2.0 * alpha * wl[static_cast<std::size_t>(n - 1)] / std::sqrt(static_cast<double>(n));
        w += 2.0 * (rho(0, n) * wl[static_cast<std::size_t>(n)]).real();
    }
    for (Eigen::Index m = 1; m < L; ++m) {
        const double sm = std::sqrt(static_cast<double>(m));
        cplx temp = wl[static_cast<std::size_t>(m)];
        wl[static_cast<std::size_t>(m)] = (2.0 * std::conj(alpha) * temp - sm * wl[static_cast<std::size_t>(m - 1)]) / sm;
        w += (rho(m, m) * wl[static_cast<std::size_t>(m)]).real();
        for (Eigen::Index n = m + 1; n < L; ++n) {
            const cplx next = (2.0 * alpha * wl[static_cast<std::size_t>(n - 1)] - sm * temp) /
                              std::sqrt(static_cast<double>(n));
            temp = wl[static_cast<std::size_t>(n)];
            wl[static_cast<std::size_t>(n)] = next;
            w += 2.0 * (rho(m, n) * wl[static_cast<std::size_t>(n)]).real();
        }
    }
    return w;
}

cplx alpha_of(double x, double p) {
    return cplx(x, p) / std::sqrt(2.0);
}

} // namespace

double wigner_point(const DensityOperator& rho, double x, double p) {
    std::vector<cplx> wl;
    return wigner_value(rho.rho, alpha_of(x, p), wl);
}

WignerGrid wigner_function(const DensityOperator& rho, const WignerGridSpec& spec, int threads) {
    spec.validate();
    if (rho.rho.rows() != rho.rho.cols() || rho.rho.rows() < 1) throw ValidationError("density matrix must be square");
    WignerGrid g;
    g.spec = spec;
    g.x.resize(static_cast<std::size_t>(spec.nx));
    g.p.resize(static_cast<std::size_t>(spec.np));
    for (int i = 0; i < spec.nx; ++i) g.x[static_cast<std::size_t>(i)] = spec.x_min + (spec.x_max - spec.x_min) * i / (spec.nx - 1);
    for (int i = 0; i < spec.np; ++i) g.p[static_cast<std::size_t>(i)] = spec.p_min + (spec.p_max - spec.p_min) * i / (spec.np - 1);
    g.w.assign(static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.np), 0.0);
    parallel_for(static_cast<std::size_t>(spec.np), threads, [&](std::size_t ip) {
        std::vector<cplx> wl;
        for (int ix = 0; ix < spec.nx; ++ix) {
            g.w[ip * static_cast<std::size_t>(spec.nx) + static_cast<std::size_t>(ix)] =
                wigner_value(rho.rho, alpha_of(g.x[static_cast<std::size_t>(ix)], g.p[ip]), wl);
        }
    });
    return g;
}

TruncatedOperator displacement_operator(cplx alpha, int n_cutoff) {
    const LadderSet l = build_ladder(1, n_cutoff);
    TruncatedOperator gen{l.space, alpha * l.creation[0].matrix - std::conj(alpha) * l.annihilation[0].matrix};
    return op_exponential(gen);
}

TruncatedOperator parity_operator(int n_cutoff) {
    FockSpace space{1, n_cutoff};
    space.validate();
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (Eigen::Index n = 0; n < space.dim(); ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return {space, p};
}

} // namespace hhgsq
