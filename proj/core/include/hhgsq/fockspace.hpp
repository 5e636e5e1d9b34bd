#pragma once

#include "hhgsq/quadgen.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <string>
#include <vector>

namespace hhgsq {

/// Product of one or two truncated number bases |0>..|n_cutoff>.
/// Two-mode index: n1 * (n_cutoff + 1) + n2.
struct FockSpace {
    int arity = 1;
    int n_cutoff = 50;

    Eigen::Index levels() const { return n_cutoff + 1; }
    Eigen::Index dim() const { return arity == 1 ? levels() : levels() * levels(); }
    Eigen::Index index(int n1, int n2 = 0) const { return arity == 1 ? n1 : n1 * levels() + n2; }
    void validate() const;
};

using SparseOperator = Eigen::SparseMatrix<cplx>;

struct TruncatedOperator {
    FockSpace space;
    Eigen::MatrixXcd matrix;
};

struct LadderSet {
    FockSpace space;
    std::vector<TruncatedOperator> annihilation;
    std::vector<TruncatedOperator> creation;
};

/// Dense ladder operators a_i, a_i^+ for each mode.
LadderSet build_ladder(int arity, int n_cutoff);

/// Sparse annihilation operator for mode `mode` (0 or 1) of the space.
SparseOperator sparse_annihilation(const FockSpace& space, int mode);

/// exp(M) for a truncated operator.
TruncatedOperator op_exponential(const TruncatedOperator& m);

/// exp(K) v for sparse K without forming exp(K): the step is split so that
/// each substep has 1-norm at most 1 and the Taylor series is summed to
/// machine precision.
Eigen::VectorXcd expm_multiply(const SparseOperator& k, const Eigen::VectorXcd& v);

/// Exponent matrix sum P_ij a_i a_j + C_ij a_i^+ a_j^+ + N_ij a_i^+ a_j + c.
SparseOperator exponent_operator(const NormalOrderedForm& form, const FockSpace& space);

struct FockState {
    FockSpace space;
    /// Active modes (1-based harmonic orders) in tensor-factor order.
    std::vector<int> modes;
    Eigen::VectorXcd amplitudes;
    /// ||exp(K)|0>|| before renormalization.
    double norm = 1.0;
    /// Largest marginal population of the highest retained Fock level.
    double top_level_population = 0.0;
    std::vector<std::string> warnings;

    double norm_deficit() const { return 1.0 - norm * norm; }
};

inline constexpr double kTruncationWarn = 1e-6;
inline constexpr double kTruncationFail = 1e-3;

/// exp(K)|0> for a generator restricted to one or two modes, renormalized.
FockState evolve_vacuum(const QuadraticGenerator& gen, int n_cutoff, GeneratorMode mode);
FockState evolve_vacuum(const NormalOrderedForm& form, int n_cutoff);

/// Single-mode density operator on |0>..|n_cutoff>.
struct DensityOperator {
    int n_cutoff = 0;
    Eigen::MatrixXcd rho;
};

DensityOperator reduced_density(const FockState& state, int mode_index);
DensityOperator pure_density(const Eigen::VectorXcd& psi);

/// <a>, <a^2>, <a^+ a> of one mode.
struct ModeMoments {
    cplx a;
    cplx a2;
    double n = 0.0;
};

ModeMoments mode_moments(const DensityOperator& rho);
ModeMoments mode_moments(const FockState& state, int mode_index);

/// <X(theta)^2> - <X(theta)>^2 with X(theta) = X cos(theta) + Xbar sin(theta),
/// X = (a + a^+)/sqrt(2), Xbar = (a^+ - a)/(i sqrt(2)) = -P.
double quadrature_variance(const ModeMoments& m, double theta);
double quadrature_variance(const FockState& state, int mode_index, double theta);
double quadrature_variance(const DensityOperator& rho, double theta);

/// Symmetrized covariance matrix of (X1, Xbar1[, X2, Xbar2]), Xbar = (a^+ - a)/(i sqrt(2)) from state moments.
Eigen::MatrixXd covariance_from_state(const FockState& state);

struct HeraldOutcome {
    DensityOperator state;
    double success_probability = 0.0;
    /// Probability that the herald mode is found empty.
    double vacuum_probability = 0.0;
};

/// Projects the herald mode with 1 - |0><0|, traces it out and normalizes.
HeraldOutcome partial_trace_herald(const FockState& state, int herald_mode, int keep_mode);

struct WignerGridSpec {
    double x_min = -5.0;
    double x_max = 5.0;
    double p_min = -5.0;
    double p_max = 5.0;
    int nx = 201;
    int np = 201;

    void validate() const;
};

struct WignerGrid {
    WignerGridSpec spec;
    std::vector<double> x;
    std::vector<double> p;
    /// Row-major: w[ip * nx + ix].
    std::vector<double> w;

    double at(int ix, int ip) const { return w[static_cast<std::size_t>(ip * spec.nx + ix)]; }
    double min() const;
    /// Trapezoid integral over the grid.
    double integral() const;
};

/// W(x, p) = (2/pi) tr[rho D(alpha) P D(alpha)^+], alpha = (x + i p)/sqrt(2).
WignerGrid wigner_function(const DensityOperator& rho, const WignerGridSpec& spec = {}, int threads = 1);
double wigner_point(const DensityOperator& rho, double x, double p);

/// D(alpha) = exp(alpha a^+ - conj(alpha) a) in the truncated space.
TruncatedOperator displacement_operator(cplx alpha, int n_cutoff);

/// Parity operator (-1)^n.
TruncatedOperator parity_operator(int n_cutoff);

} // namespace hhgsq
