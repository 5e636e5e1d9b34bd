#include "hhgsq/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace hhgsq;

namespace {

std::vector<cplx> sample(double x0, double h, int n, const std::function<cplx(double)>& f) {
    std::vector<cplx> y(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) y[static_cast<std::size_t>(k)] = f(x0 + h * k);
    return y;
}

cplx cubic(double x) { return cplx(1.0 - 2.0 * x + 0.5 * x * x * x, 3.0 * x * x - x * x * x); }
cplx cubic_antiderivative(double x) {
    return cplx(x - x * x + 0.125 * x * x * x * x, x * x * x - 0.25 * x * x * x * x);
}

} // namespace

TEST_CASE("adaptive Gauss-Kronrod integrates an oscillatory vector integrand") {
    auto f = [](double x, cplx* out) {
        out[0] = std::polar(1.0, 3.0 * x);
        out[1] = cplx(std::exp(-x), 0.0);
    };
    AdaptiveOptions o;
    const AdaptiveResult r = integrate_adaptive(f, 2, 0.0, 10.0, o);
    REQUIRE(r.converged);
    const cplx exact0 = (std::polar(1.0, 30.0) - 1.0) / cplx(0.0, 3.0);
    CHECK(std::abs(r.value[0] - exact0) < 1e-12);
    CHECK(std::abs(r.value[1] - (1.0 - std::exp(-10.0))) < 1e-12);
    CHECK(r.subintervals <= o.max_subintervals);
}

TEST_CASE("adaptive quadrature reports non-convergence at the subinterval cap") {
    auto f = [](double x, cplx* out) { out[0] = std::polar(1.0, 400.0 * x * x); };
    AdaptiveOptions o;
    o.max_subintervals = 4;
    const AdaptiveResult r = integrate_adaptive(f, 1, 0.0, 10.0, o);
    CHECK_FALSE(r.converged);
    CHECK(r.subintervals <= 4);
    CHECK(r.worst_b > r.worst_a);
}

TEST_CASE("adaptive quadrature never exceeds the cap") {
    auto f = [](double x, cplx* out) { out[0] = std::sqrt(std::abs(x - 0.3)); };
    for (int cap : {1, 7, 50, 1000}) {
        AdaptiveOptions o;
        o.max_subintervals = cap;
        o.abs_tol = 1e-15;
        o.rel_tol = 1e-15;
        const AdaptiveResult r = integrate_adaptive(f, 1, 0.0, 1.0, o);
        CHECK(r.subintervals <= cap);
    }
}

TEST_CASE("Simpson rules are exact for cubics for odd and even sample counts") {
    for (int n : {5, 6, 7, 10, 11}) {
        const double h = 0.3;
        const auto y = sample(-0.4, h, n, cubic);
        const cplx exact = cubic_antiderivative(-0.4 + h * (n - 1)) - cubic_antiderivative(-0.4);
        CHECK(std::abs(simpson(y, h) - exact) < 1e-13);
    }
}

TEST_CASE("cumulative Simpson is exact for quadratics at every node") {
    auto quad = [](double x) { return cplx(2.0 - x + 3.0 * x * x, -x * x); };
    auto prim = [](double x) { return cplx(2.0 * x - 0.5 * x * x + x * x * x, -x * x * x / 3.0); };
    const double h = 0.05;
    const auto y = sample(1.0, h, 41, quad);
    const auto c = cumulative_simpson(y, h);
    REQUIRE(c.size() == y.size());
    CHECK(c[0] == cplx{});
    for (std::size_t k = 0; k < c.size(); ++k) {
        CHECK(std::abs(c[k] - (prim(1.0 + h * static_cast<double>(k)) - prim(1.0))) < 1e-12);
    }
}

TEST_CASE("cumulative Simpson agrees with composite Simpson at even nodes") {
    const double h = 0.01;
    const auto y = sample(0.0, h, 201, [](double x) { return std::polar(std::exp(-x), 7.0 * x); });
    const auto c = cumulative_simpson(y, h);
    for (std::size_t k = 2; k < y.size(); k += 2) {
        CHECK(std::abs(c[k] - simpson(std::span<const cplx>(y.data(), k + 1), h)) < 1e-13);
    }
}

TEST_CASE("uniform cubic spline reproduces cubics exactly") {
    const double h = 0.25;
    const UniformCubicSpline s(-1.0, h, sample(-1.0, h, 17, cubic));
    for (double x : {-1.0, -0.93, -0.2, 0.0, 0.61, 2.9, 3.0}) CHECK(std::abs(s(x) - cubic(x)) < 1e-12);
    CHECK(std::abs(s.integral() - (cubic_antiderivative(3.0) - cubic_antiderivative(-1.0))) < 1e-12);
    CHECK(s.x_end() == doctest::Approx(3.0));
}

TEST_CASE("spline interpolation error is fourth order") {
    auto f = [](double x) { return std::polar(1.0, 2.0 * x); };
    double prev = 0.0;
    for (int n : {41, 81, 161}) {
        const double h = 4.0 / (n - 1);
        const UniformCubicSpline s(0.0, h, sample(0.0, h, n, f));
        double err = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const double x = 4.0 * (k + 0.5) / 1000.0;
            err = std::max(err, std::abs(s(x) - f(x)));
        }
        if (prev > 0.0) CHECK(prev / err > 12.0);
        prev = err;
    }
}

TEST_CASE("Gauss-Legendre rule") {
    std::vector<double> x, w;
    gauss_legendre(10, x, w);
    double sum = 0.0;
    for (double v : w) sum += v;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    double m18 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m18 += w[i] * std::pow(x[i], 18);
    CHECK(m18 == doctest::Approx(2.0 / 19.0).epsilon(1e-13));
    for (std::size_t i = 1; i < x.size(); ++i) CHECK(x[i] > x[i - 1]);
}
