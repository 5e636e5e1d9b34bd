#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace hhgsq {

using cplx = std::complex<double>;

struct AdaptiveOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-8;
    int max_subintervals = 1000;
    /// Number of equal panels the interval is split into before refinement.
    int initial_panels = 1;
};

struct AdaptiveResult {
    std::vector<cplx> value;
    std::vector<double> error;
    int subintervals = 0;
    int evaluations = 0;
    bool converged = false;
    /// Subinterval with the largest normalized error when refinement stopped.
    double worst_a = 0.0;
    double worst_b = 0.0;
};

/// Vector-valued integrand: writes `dim` components of f(x) into out.
using VectorIntegrand = std::function<void(double x, cplx* out)>;

/// Globally adaptive 21-point Gauss-Kronrod quadrature of a complex
/// vector-valued function. Every component must satisfy
/// err_c <= max(abs_tol, rel_tol*|I_c|). Refinement stops when the subinterval
/// count would exceed max_subintervals; converged is false in that case.
AdaptiveResult integrate_adaptive(const VectorIntegrand& f, int dim, double a, double b,
                                  const AdaptiveOptions& opts);

/// Composite Simpson rule on uniform samples; an even sample count finishes
/// with the 3/8 rule on the last three intervals.
cplx simpson(std::span<const cplx> y, double h);

/// Running integral from the first node to every node. Each pair of intervals
/// sums to the Simpson rule, so values at even nodes equal composite Simpson.
std::vector<cplx> cumulative_simpson(std::span<const cplx> y, double h);

/// C2 cubic spline on a uniform grid. End curvatures come from one-sided
/// four-point differences.
class UniformCubicSpline {
public:
    UniformCubicSpline(double x0, double h, std::vector<cplx> y);

    cplx operator()(double x) const;
    /// Exact integral of the interpolant over the full grid.
    cplx integral() const;
    double x0() const noexcept { return x0_; }
    double x_end() const noexcept { return x0_ + h_ * static_cast<double>(y_.size() - 1); }

private:
    double x0_;
    double h_;
    std::vector<cplx> y_;
    std::vector<cplx> m_;
};

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace hhgsq
