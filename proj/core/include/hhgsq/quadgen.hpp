#pragma once

#include "hhgsq/dipole.hpp"
#include "hhgsq/pulse_modes.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace hhgsq {

/// Coherent amplitudes chi_q, stored at index q-1.
struct DisplacementVector {
    std::vector<cplx> chi;
    cplx operator[](int q) const { return chi.at(static_cast<std::size_t>(q - 1)); }
};

/// chi_q = -g_q int f(t) mu_ee(t) exp(i w_q t) dt over the series grid.
DisplacementVector displacement_amplitudes(const DipoleSeries& series, const ModeGrid& grid,
                                           std::span<const double> envelope);
DisplacementVector displacement_amplitudes(const DipoleSeries& series, const ModeGrid& grid,
                                           const LaserPulse& pulse);

enum class GeneratorMode { as_is, hermitian_part };

/// Exponent K of the photonic evolution exp(K) restricted to quadratic terms:
///   K = sum F_qq' a_q a_q' + G_qq' a_q^+ a_q'^+ + H_qq' a_q^+ a_q' + J_qq' a_q a_q'^+.
/// Matrices are q_max x q_max with index q-1; entries outside `modes` are zero.
struct QuadraticGenerator {
    ModeGrid grid;
    double n_at_gl2 = 1.0;
    Eigen::MatrixXcd F;
    Eigen::MatrixXcd G;
    Eigen::MatrixXcd H;
    Eigen::MatrixXcd J;
    /// Active modes, ascending, 1-based.
    std::vector<int> modes;

    /// Zero generator on all modes of the grid.
    static QuadraticGenerator zero(const ModeGrid& grid, double n_at_gl2 = 1.0);

    /// c-number produced by normal ordering: a_q a_q^+ = a_q^+ a_q + 1.
    cplx constant() const;
    int q_max() const { return grid.q_max; }
};

struct GeneratorOptions {
    int max_subintervals = 1000;
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int threads = 0;
};

struct GeneratorDiagnostics {
    int max_subintervals_used = 0;
};

/// Double time integral of the pair of dipole-field couplings with tau <= t.
/// The inner integral is a cumulative Simpson pass on the dipole grid; the
/// outer integral is adaptive over a cubic spline of the outer integrand.
QuadraticGenerator generator_coefficients(const DipoleSeries& series, const ModeGrid& grid, double n_at_gl2,
                                          std::span<const double> envelope, const GeneratorOptions& opts = {},
                                          GeneratorDiagnostics* diag = nullptr);
QuadraticGenerator generator_coefficients(const DipoleSeries& series, const ModeGrid& grid, double n_at_gl2,
                                          const LaserPulse& pulse, const GeneratorOptions& opts = {},
                                          GeneratorDiagnostics* diag = nullptr);

/// Envelope samples f(t_k) on the series grid.
std::vector<double> sample_envelope(const DipoleSeries& series, const LaserPulse& pulse);

/// Zeroes every coefficient outside modes x modes.
QuadraticGenerator restrict_generator(const QuadraticGenerator& gen, const std::vector<int>& modes);

/// Same generator at another value of N_at g_L^2 (all entries are linear in it).
QuadraticGenerator rescale_generator(const QuadraticGenerator& gen, double n_at_gl2);

/// Normal-ordered form on the active modes only (n x n matrices, n = modes.size()):
///   K = sum P_ij a_i a_j + C_ij a_i^+ a_j^+ + N_ij a_i^+ a_j + c
/// with P and C symmetric. In hermitian_part mode the anti-Hermitian part
/// (K - K^+)/2 is kept, which makes exp(K) unitary.
struct NormalOrderedForm {
    std::vector<int> modes;
    Eigen::MatrixXcd pair_annihilation;
    Eigen::MatrixXcd pair_creation;
    Eigen::MatrixXcd hopping;
    cplx constant;
};

NormalOrderedForm normal_ordered_form(const QuadraticGenerator& gen, GeneratorMode mode);

std::string generator_mode_name(GeneratorMode mode);
GeneratorMode parse_generator_mode(const std::string& name);

} // namespace hhgsq
