#pragma once

#include "hhgsq/analysis.hpp"
#include "hhgsq/config.hpp"
#include "hhgsq/quadgen.hpp"
#include "hhgsq/quadrature.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace hhgsq::test {

/// Composite Gauss-Legendre rule with `panels` equal panels of order `order`.
inline double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels = 64,
                           int order = 16) {
    std::vector<double> x, w;
    gauss_legendre(order, x, w);
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (int i = 0; i < order; ++i) sum += 0.5 * h * w[static_cast<std::size_t>(i)] * f(lo + 0.5 * h * (x[static_cast<std::size_t>(i)] + 1.0));
    }
    return sum;
}

inline ModeGrid unit_grid(int q_max = 2) {
    ModeGrid g;
    g.q_max = q_max;
    g.fundamental = 0.057;
    g.coupling_scale = 1e-8;
    return g;
}

/// exp[(r/2)(a^2 - a^+2)] on mode 1 of a one-mode generator.
inline QuadraticGenerator single_squeezer(double r) {
    QuadraticGenerator g = QuadraticGenerator::zero(unit_grid(1));
    g.F(0, 0) = 0.5 * r;
    g.G(0, 0) = -0.5 * r;
    return g;
}

/// exp[r (a^+ b^+ - a b)] on modes 1 and 2.
inline QuadraticGenerator two_mode_squeezer(double r) {
    QuadraticGenerator g = QuadraticGenerator::zero(unit_grid(2));
    g.F(0, 1) = -r;
    g.G(0, 1) = r;
    return g;
}

/// Default run config with a small thread count suitable for tests.
inline RunConfig default_config() {
    RunConfig cfg;
    return cfg;
}

/// Default He+ pipeline, dipoles and unit generator computed once per process.
inline Pipeline& default_pipeline() {
    static Pipeline p = [] {
        Pipeline q(default_config());
        q.unit_generator();
        return q;
    }();
    return p;
}

} // namespace hhgsq::test
