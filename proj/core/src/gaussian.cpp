#include "hhgsq/gaussian.hpp"

#include "hhgsq/errors.hpp"
#include "hhgsq/matrix_exp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hhgsq {

CovarianceMatrix CovarianceMatrix::vacuum(int modes) {
    return {0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes)};
}

void CovarianceMatrix::validate() const {
    Violations v;
    v.check(sigma.rows() == sigma.cols() && (sigma.rows() == 2 || sigma.rows() == 4),
            "covariance matrix must be 2x2 or 4x4");
    v.check(sigma.allFinite(), "covariance matrix must be finite");
    v.raise_if_any();
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, sigma.cwiseAbs().maxCoeff())) {
        throw ValidationError("covariance matrix must be symmetric");
    }
    // sigma + (i/2) Omega >= 0
    const Eigen::MatrixXcd m = sigma.cast<cplx>() + cplx(0.0, 0.5) * symplectic_form(modes()).cast<cplx>();
    const double lowest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    if (lowest < -1e-10) {
        std::ostringstream msg;
        msg << "covariance matrix violates the uncertainty relation (lowest eigenvalue of sigma + i Omega/2 is "
            << lowest << ")";
        throw ValidationError(msg.str());
    }
}

Eigen::MatrixXd symplectic_form(int modes) {
    Eigen::MatrixXd om = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    for (int i = 0; i < modes; ++i) {
        om(2 * i, 2 * i + 1) = 1.0;
        om(2 * i + 1, 2 * i) = -1.0;
    }
    return om;
}

Eigen::MatrixXd symplectic_matrix(const NormalOrderedForm& form) {
    const auto m = static_cast<Eigen::Index>(form.modes.size());
    // alpha = (a_1..a_m, a_1^+..a_m^+) = T xi, K = alpha^T Kb alpha + const.
    Eigen::MatrixXcd kb = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    kb.topLeftCorner(m, m) = form.pair_annihilation;
    kb.bottomRightCorner(m, m) = form.pair_creation;
    kb.bottomLeftCorner(m, m) = form.hopping;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index k = 0; k < m; ++k) {
        t(k, 2 * k) = r;
        t(k, 2 * k + 1) = cplx(0.0, r);
        t(m + k, 2 * k) = r;
        t(m + k, 2 * k + 1) = cplx(0.0, -r);
    }
    // Hamiltonian i K = xi^T sym(i T^T Kb T) xi + const = xi^T M xi / 2 + const.
    const Eigen::MatrixXcd q = cplx(0.0, 1.0) * (t.transpose() * kb * t);
    const Eigen::MatrixXcd qs = q + q.transpose();
    if (qs.imag().cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, qs.cwiseAbs().maxCoeff())) {
        throw ConsistencyError("quadratic form is not Hermitian; the Gaussian backend needs the hermitian-part mode");
    }
    const Eigen::MatrixXd mm = qs.real();
    return expm(symplectic_form(static_cast<int>(m)) * mm);
}

CovarianceMatrix covariance_from_form(const NormalOrderedForm& form, double symplectic_tol) {
    const auto m = static_cast<int>(form.modes.size());
    if (m != 1 && m != 2) throw ValidationError("Gaussian backend supports 1 or 2 modes");
    const Eigen::MatrixXd s = symplectic_matrix(form);
    const Eigen::MatrixXd om = symplectic_form(m);
    const double defect = (s * om * s.transpose() - om).norm();
    if (!(defect <= symplectic_tol)) {
        std::ostringstream msg;
        msg << "propagator is not symplectic: ||S Omega S^T - Omega|| = " << defect;
        throw ConsistencyError(msg.str());
    }
    // S acts on (X, P); reported ordering is (X, Xbar) with Xbar = -P
    Eigen::VectorXd flip(2 * m);
    for (int k = 0; k < m; ++k) flip.segment<2>(2 * k) << 1.0, -1.0;
    Eigen::MatrixXd sigma = flip.asDiagonal() * (0.5 * s * s.transpose()) * flip.asDiagonal();
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
    return {sigma};
}

CovarianceMatrix covariance_from_generator(const QuadraticGenerator& gen, double symplectic_tol) {
    return covariance_from_form(normal_ordered_form(gen, GeneratorMode::hermitian_part), symplectic_tol);
}

std::string db_convention_name(DbConvention c) {
    return c == DbConvention::exp_r ? "paper" : "natural";
}

DbConvention parse_db_convention(const std::string& name) {
    if (name == "paper") return DbConvention::exp_r;
    if (name == "natural") return DbConvention::natural;
    throw ValidationError("db convention must be 'paper' or 'natural' (got '" + name + "')");
}

double squeezing_parameter(double variance_min) {
    if (!(variance_min > 0.0)) throw NumericalError("quadrature variance must be positive");
    return -0.5 * std::log10(2.0 * variance_min);
}

double squeezing_db(double variance_min, DbConvention convention) {
    if (convention == DbConvention::natural) return -10.0 * std::log10(2.0 * variance_min);
    const double r = squeezing_parameter(variance_min);
    return 10.0 * std::log10(std::exp(2.0 * std::abs(r)));
}

namespace {

SqueezingResult finish(double theta, double vmin, double vorth, DbConvention convention) {
    SqueezingResult res;
    res.theta = theta;
    res.variance_min = vmin;
    res.variance_orthogonal = vorth;
    res.r = squeezing_parameter(vmin);
    res.db = squeezing_db(vmin, convention);
    return res;
}

} // namespace

SqueezingResult optimal_single_mode_variance(const Eigen::Matrix2d& block, DbConvention convention) {
    const Eigen::Matrix2d sym = 0.5 * (block + block.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(sym);
    const Eigen::Vector2d v = es.eigenvectors().col(0);
    double theta = std::atan2(v(1), v(0));
    if (theta < 0.0) theta += std::numbers::pi;
    if (theta >= std::numbers::pi) theta -= std::numbers::pi;
    return finish(theta, es.eigenvalues()(0), es.eigenvalues()(1), convention);
}

SqueezingResult optimal_single_mode_variance(const ModeMoments& moments, int theta_points, DbConvention convention) {
    if (theta_points < 2) throw ValidationError("theta grid needs at least 2 points");
    double best_theta = 0.0;
    double best = quadrature_variance(moments, 0.0);
    for (int i = 1; i < theta_points; ++i) {
        const double theta = std::numbers::pi * i / (theta_points - 1);
        const double v = quadrature_variance(moments, theta);
        if (v < best) {
            best = v;
            best_theta = theta;
        }
    }
    const double orth = quadrature_variance(moments, best_theta + 0.5 * std::numbers::pi);
    return finish(best_theta, best, orth, convention);
}

SqueezingResult optimal_single_mode_variance(const FockState& state, int mode_index, int theta_points,
                                             DbConvention convention) {
    return optimal_single_mode_variance(mode_moments(state, mode_index), theta_points, convention);
}

double lambda_max(const CovarianceMatrix& cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.sigma);
    return es.eigenvalues().maxCoeff();
}

double lambda_min(const CovarianceMatrix& cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.sigma);
    return es.eigenvalues().minCoeff();
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma) {
    const int n = static_cast<int>(sigma.rows() / 2);
    const Eigen::MatrixXcd m = cplx(0.0, 1.0) * (symplectic_form(n) * sigma).cast<cplx>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
    std::vector<double> mods;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) mods.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(mods.begin(), mods.end());
    // eigenvalues come in +/- pairs; keep one of each
    std::vector<double> out;
    for (std::size_t i = 0; i < mods.size(); i += 2) out.push_back(0.5 * (mods[i] + mods[i + 1]));
    return out;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != 4) throw ValidationError("partial transpose needs a two-mode covariance matrix");
    Eigen::Vector4d g(1.0, 1.0, 1.0, -1.0);
    return g.asDiagonal() * sigma * g.asDiagonal();
}

NegativityResult logarithmic_negativity(const CovarianceMatrix& cov) {
    cov.validate();
    if (cov.modes() != 2) throw ValidationError("logarithmic negativity needs a two-mode covariance matrix");
    const Eigen::MatrixXd pt = partial_transpose(cov.sigma);
    // Delta of the partial transpose: det A + det B - 2 det C with the blocks of sigma
    const double delta =
        cov.block_a().determinant() + cov.block_b().determinant() - 2.0 * cov.block_c().determinant();
    const double det = cov.sigma.determinant();
    double disc = delta * delta - 4.0 * det;
    if (disc < 0.0) {
        if (disc < -1e-12) {
            std::ostringstream msg;
            msg << "negative discriminant " << disc << " in the symplectic eigenvalue formula";
            throw NumericalError(msg.str());
        }
        disc = 0.0;
    }
    const double nu2 = 0.5 * (delta - std::sqrt(disc));
    NegativityResult res;
    res.nu_minus = std::sqrt(std::max(0.0, nu2));
    res.nu_minus_spectral = symplectic_eigenvalues(pt).front();
    res.value = std::max(0.0, -std::log2(2.0 * res.nu_minus));
    return res;
}

} // namespace hhgsq
