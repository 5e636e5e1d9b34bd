#include "hhgsq/quadrature.hpp"

#include "hhgsq/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace hhgsq {

namespace {

// QUADPACK qk21 abscissae (descending) and weights.
constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452068, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a;
    double b;
    std::vector<cplx> value;
    std::vector<double> error;
};

void gk21(const VectorIntegrand& f, int dim, double a, double b, Panel& out,
          std::vector<cplx>& scratch) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const std::size_t d = static_cast<std::size_t>(dim);
    scratch.assign(21 * d, cplx{});
    // node order: center, then (minus, plus) for each abscissa
    f(center, scratch.data());
    for (int j = 0; j < 10; ++j) {
        const double dx = half * xgk[static_cast<std::size_t>(j)];
        f(center - dx, scratch.data() + (1 + 2 * j) * d);
        f(center + dx, scratch.data() + (2 + 2 * j) * d);
    }
    out.a = a;
    out.b = b;
    out.value.assign(d, cplx{});
    out.error.assign(d, 0.0);
    for (std::size_t c = 0; c < d; ++c) {
        const cplx fc = scratch[c];
        cplx resk = wgk[10] * fc;
        cplx resg{};
        double resabs = wgk[10] * std::abs(fc);
        for (int j = 0; j < 10; ++j) {
            const cplx f1 = scratch[(1 + 2 * j) * d + c];
            const cplx f2 = scratch[(2 + 2 * j) * d + c];
            resk += wgk[static_cast<std::size_t>(j)] * (f1 + f2);
            resabs += wgk[static_cast<std::size_t>(j)] * (std::abs(f1) + std::abs(f2));
            if (j % 2 == 1) resg += wg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
        }
        const cplx mean = 0.5 * resk;
        double resasc = wgk[10] * std::abs(fc - mean);
        for (int j = 0; j < 10; ++j) {
            resasc += wgk[static_cast<std::size_t>(j)] *
                      (std::abs(scratch[(1 + 2 * j) * d + c] - mean) +
                       std::abs(scratch[(2 + 2 * j) * d + c] - mean));
        }
        resasc *= std::abs(half);
        resabs *= std::abs(half);
        double err = std::abs((resk - resg) * half);
        if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        const double eps = std::numeric_limits<double>::epsilon();
        if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
        out.value[c] = resk * half;
        out.error[c] = err;
    }
}

} // namespace

AdaptiveResult integrate_adaptive(const VectorIntegrand& f, int dim, double a, double b,
                                  const AdaptiveOptions& opts) {
    if (dim <= 0) throw ValidationError("integrand dimension must be positive");
    if (opts.max_subintervals < 1) throw ValidationError("max_subintervals must be >= 1");
    const std::size_t d = static_cast<std::size_t>(dim);
    AdaptiveResult res;
    res.value.assign(d, cplx{});
    res.error.assign(d, 0.0);
    if (a == b) {
        res.converged = true;
        return res;
    }

    const int panels = std::clamp(opts.initial_panels, 1, opts.max_subintervals);
    std::vector<Panel> list(static_cast<std::size_t>(panels));
    std::vector<cplx> scratch;
    for (int k = 0; k < panels; ++k) {
        const double pa = a + (b - a) * k / panels;
        const double pb = (k + 1 == panels) ? b : a + (b - a) * (k + 1) / panels;
        gk21(f, dim, pa, pb, list[static_cast<std::size_t>(k)], scratch);
    }
    res.evaluations = 21 * panels;

    std::vector<double> tol(d);
    while (true) {
        std::fill(res.value.begin(), res.value.end(), cplx{});
        std::fill(res.error.begin(), res.error.end(), 0.0);
        for (const auto& p : list) {
            for (std::size_t c = 0; c < d; ++c) {
                res.value[c] += p.value[c];
                res.error[c] += p.error[c];
            }
        }
        bool ok = true;
        for (std::size_t c = 0; c < d; ++c) {
            tol[c] = std::max(opts.abs_tol, opts.rel_tol * std::abs(res.value[c]));
            if (res.error[c] > tol[c]) ok = false;
        }

        std::size_t worst = 0;
        double worst_score = -1.0;
        for (std::size_t i = 0; i < list.size(); ++i) {
            double score = 0.0;
            for (std::size_t c = 0; c < d; ++c) score = std::max(score, list[i].error[c] / tol[c]);
            if (score > worst_score) {
                worst_score = score;
                worst = i;
            }
        }
        res.worst_a = list[worst].a;
        res.worst_b = list[worst].b;
        res.subintervals = static_cast<int>(list.size());
        if (ok) {
            res.converged = true;
            return res;
        }
        if (static_cast<int>(list.size()) + 1 > opts.max_subintervals) {
            res.converged = false;
            return res;
        }
        const double mid = 0.5 * (list[worst].a + list[worst].b);
        if (!(mid > list[worst].a && mid < list[worst].b)) {
            res.converged = false;
            return res;
        }
        Panel left, right;
        gk21(f, dim, list[worst].a, mid, left, scratch);
        gk21(f, dim, mid, list[worst].b, right, scratch);
        res.evaluations += 42;
        list[worst] = std::move(left);
        list.push_back(std::move(right));
    }
}

cplx simpson(std::span<const cplx> y, double h) {
    const std::size_t n = y.size();
    if (n < 2) return {};
    if (n == 2) return 0.5 * h * (y[0] + y[1]);
    const std::size_t intervals = n - 1;
    const std::size_t simpson_end = intervals % 2 == 0 ? n - 1 : n - 4;
    cplx sum{};
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) sum += y[i] + 4.0 * y[i + 1] + y[i + 2];
    sum *= h / 3.0;
    if (intervals % 2 == 1) {
        const std::size_t k = simpson_end;
        sum += 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
    }
    return sum;
}

std::vector<cplx> cumulative_simpson(std::span<const cplx> y, double h) {
    const std::size_t n = y.size();
    std::vector<cplx> out(n, cplx{});
    if (n < 2) return out;
    if (n == 2) {
        out[1] = 0.5 * h * (y[0] + y[1]);
        return out;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        cplx piece;
        const bool forward = (i % 2 == 0) && (i + 2 < n);
        if (forward) {
            piece = h / 12.0 * (5.0 * y[i] + 8.0 * y[i + 1] - y[i + 2]);
        } else {
            piece = h / 12.0 * (-y[i - 1] + 8.0 * y[i] + 5.0 * y[i + 1]);
        }
        out[i + 1] = out[i] + piece;
    }
    return out;
}

UniformCubicSpline::UniformCubicSpline(double x0, double h, std::vector<cplx> y)
    : x0_(x0), h_(h), y_(std::move(y)) {
    const std::size_t n = y_.size();
    if (n < 4) throw ValidationError("cubic spline needs at least 4 samples");
    if (!(h_ > 0.0)) throw ValidationError("cubic spline step must be positive");
    m_.assign(n, cplx{});
    const double h2 = h_ * h_;
    m_[0] = (2.0 * y_[0] - 5.0 * y_[1] + 4.0 * y_[2] - y_[3]) / h2;
    m_[n - 1] = (2.0 * y_[n - 1] - 5.0 * y_[n - 2] + 4.0 * y_[n - 3] - y_[n - 4]) / h2;
    // Tridiagonal system m[i-1] + 4 m[i] + m[i+1] = 6 (y[i-1] - 2 y[i] + y[i+1]) / h^2
    const std::size_t inner = n - 2;
    std::vector<double> c(inner);
    std::vector<cplx> d(inner);
    for (std::size_t k = 0; k < inner; ++k) {
        const std::size_t i = k + 1;
        cplx rhs = 6.0 * (y_[i - 1] - 2.0 * y_[i] + y_[i + 1]) / h2;
        if (k == 0) rhs -= m_[0];
        if (k + 1 == inner) rhs -= m_[n - 1];
        if (k == 0) {
            c[k] = 1.0 / 4.0;
            d[k] = rhs / 4.0;
        } else {
            const double denom = 4.0 - c[k - 1];
            c[k] = 1.0 / denom;
            d[k] = (rhs - d[k - 1]) / denom;
        }
    }
    m_[inner] = d[inner - 1];
    for (std::size_t k = inner - 1; k-- > 0;) m_[k + 1] = d[k] - c[k] * m_[k + 2];
}

cplx UniformCubicSpline::operator()(double x) const {
    const std::size_t n = y_.size();
    double s = (x - x0_) / h_;
    std::size_t k;
    if (s <= 0.0) {
        k = 0;
    } else {
        k = static_cast<std::size_t>(s);
        if (k > n - 2) k = n - 2;
    }
    const double u = s - static_cast<double>(k);
    const double v = 1.0 - u;
    const double h2 = h_ * h_;
    return v * y_[k] + u * y_[k + 1] +
           h2 / 6.0 * ((v * v * v - v) * m_[k] + (u * u * u - u) * m_[k + 1]);
}

cplx UniformCubicSpline::integral() const {
    cplx sum{};
    const double h3 = h_ * h_ * h_;
    for (std::size_t k = 0; k + 1 < y_.size(); ++k) {
        sum += 0.5 * h_ * (y_[k] + y_[k + 1]) - h3 / 24.0 * (m_[k] + m_[k + 1]);
    }
    return sum;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw ValidationError("Gauss-Legendre order must be >= 1");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        nodes[lo] = -x;
        nodes[hi] = x;
        weights[lo] = weights[hi] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

} // namespace hhgsq
