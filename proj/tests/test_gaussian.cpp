#include "support.hpp"

#include "hhgsq/errors.hpp"
#include "hhgsq/fockspace.hpp"
#include "hhgsq/gaussian.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hhgsq;

namespace {

constexpr double kPi = std::numbers::pi;

QuadraticGenerator random_pair(unsigned seed, double scale) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd(0.0, scale);
    QuadraticGenerator g = QuadraticGenerator::zero(test::unit_grid(3));
    for (auto* m : {&g.F, &g.G, &g.H, &g.J}) {
        for (Eigen::Index i = 0; i < m->size(); ++i) m->data()[i] = cplx(nd(rng), nd(rng));
    }
    return restrict_generator(g, {1, 3});
}

Eigen::Matrix2d rotation(double phi) {
    Eigen::Matrix2d r;
    r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return r;
}

} // namespace

TEST_CASE("vacuum covariance") {
    for (int m : {1, 2}) {
        const CovarianceMatrix v = CovarianceMatrix::vacuum(m);
        CHECK(v.sigma.isApprox(0.5 * Eigen::MatrixXd::Identity(2 * m, 2 * m)));
        CHECK_NOTHROW(v.validate());
    }
    const CovarianceMatrix z = covariance_from_generator(QuadraticGenerator::zero(test::unit_grid(2)));
    CHECK((z.sigma - 0.5 * Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-15);
}

TEST_CASE("covariance validation rejects unphysical matrices") {
    CovarianceMatrix c;
    c.sigma = 0.1 * Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS(c.validate());
    c.sigma = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS(c.validate());
    c.sigma = Eigen::MatrixXd::Identity(6, 6);
    CHECK_THROWS(c.validate());
    // squeezed but physical: det = 1/4
    c.sigma = Eigen::Vector2d(0.1, 2.5).asDiagonal();
    CHECK_NOTHROW(c.validate());
    c.sigma = Eigen::Vector2d(0.1, 2.4).asDiagonal();
    CHECK_THROWS(c.validate());
    c.sigma = Eigen::MatrixXd::Zero(2, 2);
    c.sigma << 0.5, 0.1, 0.2, 0.5;
    CHECK_THROWS(c.validate());
}

TEST_CASE("two-mode squeezed vacuum blocks") {
    const double r = 0.5;
    const CovarianceMatrix c = covariance_from_generator(test::two_mode_squeezer(r));
    CHECK(c.block_a().isApprox(0.5 * std::cosh(2 * r) * Eigen::Matrix2d::Identity(), 1e-12));
    CHECK(c.block_b().isApprox(0.5 * std::cosh(2 * r) * Eigen::Matrix2d::Identity(), 1e-12));
    Eigen::Matrix2d cexp;
    cexp << 0.5 * std::sinh(2 * r), 0.0, 0.0, -0.5 * std::sinh(2 * r);
    CHECK((c.block_c() - cexp).norm() < 1e-12);
    CHECK(c.sigma.determinant() == doctest::Approx(1.0 / 16.0).epsilon(1e-12));

    const FockState s = evolve_vacuum(test::two_mode_squeezer(r), 50, GeneratorMode::as_is);
    CHECK((covariance_from_state(s) - c.sigma).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("symplectic matrix preserves the symplectic form") {
    const NormalOrderedForm f = normal_ordered_form(random_pair(3u, 0.3), GeneratorMode::hermitian_part);
    const Eigen::MatrixXd s = symplectic_matrix(f);
    const Eigen::MatrixXd om = symplectic_form(2);
    CHECK((s * om * s.transpose() - om).norm() < 1e-10);
}

TEST_CASE("squeezing parameter and dB conventions") {
    // natural-log squeezing parameter s = 0.3
    const double vmin = std::exp(-0.6) / 2.0;
    CHECK(vmin == doctest::Approx(0.27441).epsilon(1e-4));
    CHECK(squeezing_parameter(vmin) == doctest::Approx(0.13029).epsilon(1e-4));
    CHECK(squeezing_db(vmin, DbConvention::exp_r) == doctest::Approx(1.1317).epsilon(1e-4));
    CHECK(squeezing_db(vmin, DbConvention::natural) == doctest::Approx(10.0 * 0.6 / std::log(10.0)).epsilon(1e-12));
    CHECK(squeezing_parameter(0.5) == 0.0);
    CHECK(squeezing_db(0.5, DbConvention::exp_r) == 0.0);
    CHECK(parse_db_convention("natural") == DbConvention::natural);
    CHECK(db_convention_name(DbConvention::exp_r) == "paper");
    CHECK_THROWS_AS(parse_db_convention("log"), ValidationError);
}

TEST_CASE("eigen-direction optimum matches a brute-force angle scan") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int trial = 0; trial < 20; ++trial) {
        const double phi = u(rng);
        const double s = 0.05 + 0.05 * trial;
        Eigen::Matrix2d d;
        d << std::exp(-2 * s) / 2, 0.0, 0.0, std::exp(2 * s) / 2;
        const Eigen::Matrix2d block = rotation(phi) * d * rotation(phi).transpose();
        const SqueezingResult res = optimal_single_mode_variance(block);
        CHECK(res.variance_min == doctest::Approx(std::exp(-2 * s) / 2).epsilon(1e-12));
        CHECK(res.variance_orthogonal == doctest::Approx(std::exp(2 * s) / 2).epsilon(1e-12));
        CHECK(res.product() == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(res.theta >= 0.0);
        CHECK(res.theta < kPi);

        double best = 1e300, best_theta = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double th = kPi * k / 99.0;
            const Eigen::Vector2d n(std::cos(th), std::sin(th));
            const double v = n.dot(block * n);
            if (v < best) {
                best = v;
                best_theta = th;
            }
        }
        const double gap = std::abs(best_theta - res.theta);
        CHECK(std::min(gap, kPi - gap) < kPi / 100.0 + 1e-12);
    }
}

TEST_CASE("lambda extremes") {
    const double r = 0.5;
    const CovarianceMatrix c = covariance_from_generator(test::two_mode_squeezer(r));
    CHECK(lambda_max(c) == doctest::Approx(std::exp(2 * r) / 2).epsilon(1e-12));
    CHECK(lambda_max(c) == doctest::Approx(1.35914).epsilon(1e-5));
    CHECK(lambda_min(c) == doctest::Approx(std::exp(-2 * r) / 2).epsilon(1e-12));
    CHECK(lambda_max(CovarianceMatrix::vacuum(2)) == doctest::Approx(0.5));
    for (unsigned seed : {1u, 2u, 3u}) {
        const CovarianceMatrix g = covariance_from_generator(random_pair(seed, 0.2));
        CHECK(lambda_max(g) * lambda_min(g) <= 0.25 + 1e-10);
    }
}

TEST_CASE("logarithmic negativity") {
    CHECK(logarithmic_negativity(CovarianceMatrix::vacuum(2)).value == 0.0);
    CovarianceMatrix product;
    product.sigma = Eigen::MatrixXd::Zero(4, 4);
    product.sigma.block<2, 2>(0, 0) = Eigen::Vector2d(0.2, 1.25).asDiagonal();
    product.sigma.block<2, 2>(2, 2) = Eigen::Vector2d(0.7, 0.5 / 1.4).asDiagonal();
    CHECK(logarithmic_negativity(product).value == 0.0);

    const double r = 0.5;
    const NegativityResult t = logarithmic_negativity(covariance_from_generator(test::two_mode_squeezer(r)));
    CHECK(t.value == doctest::Approx(2 * r / std::log(2.0)).epsilon(1e-12));
    CHECK(t.value == doctest::Approx(1.44270).epsilon(1e-5));
    CHECK(t.nu_minus == doctest::Approx(std::exp(-2 * r) / 2).epsilon(1e-12));

    for (unsigned seed : {4u, 5u, 6u, 7u}) {
        const CovarianceMatrix c = covariance_from_generator(random_pair(seed, 0.25));
        const NegativityResult n = logarithmic_negativity(c);
        CHECK(std::abs(n.nu_minus - n.nu_minus_spectral) < 1e-10);
        CHECK(n.value >= 0.0);
        // local rotations leave E_N unchanged
        Eigen::MatrixXd rot = Eigen::MatrixXd::Zero(4, 4);
        rot.block<2, 2>(0, 0) = rotation(0.7);
        rot.block<2, 2>(2, 2) = rotation(-1.3);
        CovarianceMatrix rc;
        rc.sigma = rot * c.sigma * rot.transpose();
        CHECK(logarithmic_negativity(rc).value == doctest::Approx(n.value).epsilon(1e-10));
    }
}

TEST_CASE("partial transpose flips the second momentum") {
    const Eigen::MatrixXd s = covariance_from_generator(random_pair(8u, 0.2)).sigma;
    const Eigen::MatrixXd pt = partial_transpose(s);
    const Eigen::Vector4d d(1.0, 1.0, 1.0, -1.0);
    CHECK((pt - d.asDiagonal() * s * d.asDiagonal()).norm() < 1e-15);
}

TEST_CASE("symplectic eigenvalues of physical states are at least one half") {
    for (unsigned seed : {9u, 10u, 11u}) {
        const Eigen::MatrixXd s = covariance_from_generator(random_pair(seed, 0.3)).sigma;
        for (double nu : symplectic_eigenvalues(s)) CHECK(nu >= 0.5 - 1e-10);
    }
}

TEST_CASE("the Gaussian backend needs a Hermitian quadratic form") {
    const QuadraticGenerator g = random_pair(12u, 0.2);
    CHECK_THROWS_AS(covariance_from_form(normal_ordered_form(g, GeneratorMode::as_is)), ConsistencyError);
    CHECK_NOTHROW(covariance_from_form(normal_ordered_form(g, GeneratorMode::hermitian_part)));
}

TEST_CASE("Gaussian covariance agrees with Fock moments for random generators") {
    for (unsigned seed : {13u, 14u, 15u}) {
        const QuadraticGenerator g = random_pair(seed, 0.15);
        const FockState s = evolve_vacuum(g, 40, GeneratorMode::hermitian_part);
        const CovarianceMatrix c = covariance_from_generator(g);
        CHECK((covariance_from_state(s) - c.sigma).cwiseAbs().maxCoeff() < 1e-8);
        for (int m : {0, 1}) {
            const SqueezingResult fock = optimal_single_mode_variance(s, m, 100);
            const SqueezingResult gauss = optimal_single_mode_variance(c.mode_block(m));
            CHECK(gauss.variance_min <= fock.variance_min + 1e-10);
            CHECK(fock.variance_min - gauss.variance_min < 1e-3);
        }
    }
}
