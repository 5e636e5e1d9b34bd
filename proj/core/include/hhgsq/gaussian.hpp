#pragma once

#include "hhgsq/fockspace.hpp"
#include "hhgsq/quadgen.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace hhgsq {

/// Real symmetric covariance matrix in ordering (X1, Xbar1[, X2, Xbar2]), Xbar = (a^+ - a)/(i sqrt(2)).
struct CovarianceMatrix {
    Eigen::MatrixXd sigma;

    int modes() const { return static_cast<int>(sigma.rows() / 2); }
    Eigen::Matrix2d block_a() const { return sigma.block<2, 2>(0, 0); }
    Eigen::Matrix2d block_b() const { return sigma.block<2, 2>(2, 2); }
    Eigen::Matrix2d block_c() const { return sigma.block<2, 2>(0, 2); }
    /// 2x2 block of mode i (0-based).
    Eigen::Matrix2d mode_block(int i) const { return sigma.block<2, 2>(2 * i, 2 * i); }

    static CovarianceMatrix vacuum(int modes);
    void validate() const;
};

/// Omega = diag([[0, 1], [-1, 0]], ...).
Eigen::MatrixXd symplectic_form(int modes);

/// Symplectic matrix S of exp(K) for the Hermitian part of K: quadratures
/// xi = (X1, P1, ...), P = -Xbar, evolve as xi -> S xi with S = exp(Omega M),
/// where i K = xi^T M xi / 2 + const.
Eigen::MatrixXd symplectic_matrix(const NormalOrderedForm& form);

/// sigma = S (I/2) S^T, reordered to (X, Xbar). Throws ConsistencyError if ||S Omega S^T - Omega|| > tol.
CovarianceMatrix covariance_from_generator(const QuadraticGenerator& gen, double symplectic_tol = 1e-8);
CovarianceMatrix covariance_from_form(const NormalOrderedForm& form, double symplectic_tol = 1e-8);

enum class DbConvention { exp_r, natural };
std::string db_convention_name(DbConvention c);
DbConvention parse_db_convention(const std::string& name);

/// r = -(1/2) log10(2 dX).
double squeezing_parameter(double variance_min);
/// exp_r (named "paper" in configs and flags): 10 log10(exp(2|r|));
/// natural: -10 log10(2 dX).
double squeezing_db(double variance_min, DbConvention convention);

struct SqueezingResult {
    double theta = 0.0;
    double variance_min = 0.5;
    double variance_orthogonal = 0.5;
    double r = 0.0;
    double db = 0.0;

    double product() const { return variance_min * variance_orthogonal; }
};

/// Exact optimum from the eigendecomposition of a 2x2 covariance block.
SqueezingResult optimal_single_mode_variance(const Eigen::Matrix2d& block,
                                             DbConvention convention = DbConvention::exp_r);
/// Brute-force optimum over theta_points equally spaced angles on [0, pi];
/// ties go to the smaller angle.
SqueezingResult optimal_single_mode_variance(const FockState& state, int mode_index, int theta_points = 100,
                                             DbConvention convention = DbConvention::exp_r);
SqueezingResult optimal_single_mode_variance(const ModeMoments& moments, int theta_points = 100,
                                             DbConvention convention = DbConvention::exp_r);

double lambda_max(const CovarianceMatrix& cov);
double lambda_min(const CovarianceMatrix& cov);

/// Symplectic eigenvalues, ascending: moduli of the eigenvalues of i Omega sigma.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma);

/// Gamma sigma Gamma with Gamma = diag(1, 1, 1, -1).
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& sigma);

struct NegativityResult {
    double value = 0.0;        ///< E_N in bits
    double nu_minus = 0.5;     ///< closed form from the block determinants
    double nu_minus_spectral;  ///< smallest modulus eigenvalue of i Omega sigma~
};

NegativityResult logarithmic_negativity(const CovarianceMatrix& cov);

} // namespace hhgsq
