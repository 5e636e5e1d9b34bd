#include "hhgsq/fockspace.hpp"

#include "hhgsq/errors.hpp"
#include "hhgsq/matrix_exp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hhgsq {

void FockSpace::validate() const {
    Violations v;
    v.check(arity == 1 || arity == 2, "Fock space arity must be 1 or 2");
    v.check(n_cutoff >= 2, "n_cutoff must be >= 2");
    v.raise_if_any();
}

namespace {

Eigen::MatrixXcd single_annihilation(int n_cutoff) {
    const Eigen::Index d = n_cutoff + 1;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return out;
}

} // namespace

LadderSet build_ladder(int arity, int n_cutoff) {
    FockSpace space{arity, n_cutoff};
    space.validate();
    LadderSet set;
    set.space = space;
    const Eigen::MatrixXcd a = single_annihilation(n_cutoff);
    if (arity == 1) {
        set.annihilation.push_back({space, a});
    } else {
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
        set.annihilation.push_back({space, kron(a, id)});
        set.annihilation.push_back({space, kron(id, a)});
    }
    for (const auto& op : set.annihilation) set.creation.push_back({space, op.matrix.adjoint()});
    return set;
}

SparseOperator sparse_annihilation(const FockSpace& space, int mode) {
    space.validate();
    if (mode < 0 || mode >= space.arity) throw ValidationError("mode index outside the Fock space");
    const Eigen::Index d = space.dim();
    const int L = static_cast<int>(space.levels());
    std::vector<Eigen::Triplet<cplx>> trip;
    if (space.arity == 1) {
        for (int n = 1; n < L; ++n) trip.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
    } else {
        for (int n1 = 0; n1 < L; ++n1) {
            for (int n2 = 0; n2 < L; ++n2) {
                if (mode == 0 && n1 >= 1) {
                    trip.emplace_back(space.index(n1 - 1, n2), space.index(n1, n2), std::sqrt(static_cast<double>(n1)));
                } else if (mode == 1 && n2 >= 1) {
                    trip.emplace_back(space.index(n1, n2 - 1), space.index(n1, n2), std::sqrt(static_cast<double>(n2)));
                }
            }
        }
    }
    SparseOperator a(d, d);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

TruncatedOperator op_exponential(const TruncatedOperator& m) {
    if (m.matrix.rows() != m.space.dim() || m.matrix.cols() != m.space.dim()) {
        throw ValidationError("operator dimension does not match its Fock space");
    }
    return {m.space, expm(m.matrix)};
}

Eigen::VectorXcd expm_multiply(const SparseOperator& k, const Eigen::VectorXcd& v) {
    if (k.rows() != k.cols() || k.cols() != v.size()) throw ValidationError("expm_multiply: dimension mismatch");
    double norm1 = 0.0;
    for (Eigen::Index c = 0; c < k.outerSize(); ++c) {
        double col = 0.0;
        for (SparseOperator::InnerIterator it(k, c); it; ++it) col += std::abs(it.value());
        norm1 = std::max(norm1, col);
    }
    if (!std::isfinite(norm1)) throw NumericalError("exponent has non-finite entries");
    const double steps_d = std::max(1.0, std::ceil(norm1));
    if (steps_d > 1e6) throw NumericalError("exponent norm too large for the Fock evolution; reduce the coupling");
    const int steps = static_cast<int>(steps_d);
    const SparseOperator ks = k / steps_d;

    Eigen::VectorXcd out = v;
    Eigen::VectorXcd term(v.size());
    for (int s = 0; s < steps; ++s) {
        term = out;
        Eigen::VectorXcd sum = out;
        bool done = false;
        for (int j = 1; j <= 200; ++j) {
            term = (ks * term) / static_cast<double>(j);
            sum += term;
            const double tn = term.cwiseAbs().maxCoeff();
            const double sn = sum.cwiseAbs().maxCoeff();
            if (tn <= 1e-18 * sn || tn == 0.0) {
                done = true;
                break;
            }
        }
        if (!done || !sum.allFinite()) throw NumericalError("Taylor series for exp(K)v did not converge");
        out = std::move(sum);
    }
    return out;
}

SparseOperator exponent_operator(const NormalOrderedForm& form, const FockSpace& space) {
    space.validate();
    const auto m = static_cast<int>(form.modes.size());
    if (m != space.arity) throw ValidationError("generator mode count does not match the Fock space arity");
    std::vector<SparseOperator> a, ad;
    for (int i = 0; i < m; ++i) {
        a.push_back(sparse_annihilation(space, i));
        ad.push_back(SparseOperator(a.back().adjoint()));
    }
    SparseOperator k(space.dim(), space.dim());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const cplx p = form.pair_annihilation(i, j);
            const cplx c = form.pair_creation(i, j);
            const cplx h = form.hopping(i, j);
            if (p != cplx{}) k += SparseOperator(p * (a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)]));
            if (c != cplx{}) k += SparseOperator(c * (ad[static_cast<std::size_t>(i)] * ad[static_cast<std::size_t>(j)]));
            if (h != cplx{}) k += SparseOperator(h * (ad[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)]));
        }
    }
    if (form.constant != cplx{}) {
        SparseOperator id(space.dim(), space.dim());
        id.setIdentity();
        k += SparseOperator(form.constant * id);
    }
    k.makeCompressed();
    return k;
}

FockState evolve_vacuum(const NormalOrderedForm& form, int n_cutoff) {
    const int m = static_cast<int>(form.modes.size());
    if (m != 1 && m != 2) {
        throw ValidationError("Fock evolution needs a generator restricted to 1 or 2 modes (got " +
                              std::to_string(m) + ")");
    }
    FockSpace space{m, n_cutoff};
    space.validate();
    const SparseOperator k = exponent_operator(form, space);
    Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(space.dim());
    v0(0) = 1.0;
    Eigen::VectorXcd psi = expm_multiply(k, v0);
    const double norm = psi.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalError("evolved state has zero or non-finite norm");
    psi /= norm;

    FockState st;
    st.space = space;
    st.modes = form.modes;
    st.amplitudes = std::move(psi);
    st.norm = norm;
    const int L = static_cast<int>(space.levels());
    if (m == 1) {
        st.top_level_population = std::norm(st.amplitudes(L - 1));
    } else {
        double top1 = 0.0, top2 = 0.0;
        for (int n = 0; n < L; ++n) {
            top1 += std::norm(st.amplitudes(space.index(L - 1, n)));
            top2 += std::norm(st.amplitudes(space.index(n, L - 1)));
        }
        st.top_level_population = std::max(top1, top2);
    }
    if (st.top_level_population > kTruncationFail) {
        std::ostringstream msg;
        msg << "population " << st.top_level_population << " at Fock level " << n_cutoff
            << " exceeds " << kTruncationFail << "; increase n_cutoff or reduce the coupling";
        throw TruncationError(msg.str());
    }
    if (st.top_level_population > kTruncationWarn) {
        std::ostringstream msg;
        msg << "population " << st.top_level_population << " at Fock level " << n_cutoff << " exceeds "
            << kTruncationWarn;
        st.warnings.push_back(msg.str());
    }
    return st;
}

FockState evolve_vacuum(const QuadraticGenerator& gen, int n_cutoff, GeneratorMode mode) {
    return evolve_vacuum(normal_ordered_form(gen, mode), n_cutoff);
}

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMat> amplitude_matrix(const FockState& s) {
    return {s.amplitudes.data(), s.space.levels(), s.space.levels()};
}

} // namespace

DensityOperator pure_density(const Eigen::VectorXcd& psi) {
    DensityOperator d;
    d.n_cutoff = static_cast<int>(psi.size()) - 1;
    d.rho = psi * psi.adjoint();
    return d;
}

DensityOperator reduced_density(const FockState& state, int mode_index) {
    if (mode_index < 0 || mode_index >= state.space.arity) throw ValidationError("mode index outside the state");
    if (state.space.arity == 1) return pure_density(state.amplitudes);
    const auto psi = amplitude_matrix(state);
    DensityOperator d;
    d.n_cutoff = state.space.n_cutoff;
    if (mode_index == 0) {
        d.rho = psi * psi.adjoint();
    } else {
        d.rho = psi.transpose() * psi.conjugate();
    }
    return d;
}

ModeMoments mode_moments(const DensityOperator& d) {
    ModeMoments m;
    const Eigen::Index L = d.rho.rows();
    for (Eigen::Index n = 1; n < L; ++n) {
        m.a += std::sqrt(static_cast<double>(n)) * d.rho(n, n - 1);
        m.n += static_cast<double>(n) * d.rho(n, n).real();
    }
    for (Eigen::Index n = 2; n < L; ++n) {
        m.a2 += std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1)) * d.rho(n, n - 2);
    }
    return m;
}

ModeMoments mode_moments(const FockState& state, int mode_index) {
    return mode_moments(reduced_density(state, mode_index));
}

double quadrature_variance(const ModeMoments& m, double theta) {
    const cplx e1 = std::polar(1.0, theta);
    const double mean = std::sqrt(2.0) * (m.a * e1).real();
    const double second = (m.a2 * e1 * e1).real() + m.n + 0.5;
    return second - mean * mean;
}

double quadrature_variance(const FockState& state, int mode_index, double theta) {
    return quadrature_variance(mode_moments(state, mode_index), theta);
}

double quadrature_variance(const DensityOperator& rho, double theta) {
    return quadrature_variance(mode_moments(rho), theta);
}

Eigen::MatrixXd covariance_from_state(const FockState& state) {
    const int m = state.space.arity;
    std::vector<Eigen::VectorXcd> apsi;
    std::vector<cplx> mean(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        apsi.push_back(sparse_annihilation(state.space, i) * state.amplitudes);
        mean[static_cast<std::size_t>(i)] = state.amplitudes.dot(apsi.back());
    }
    Eigen::MatrixXcd S(m, m), N(m, m);
    for (int i = 0; i < m; ++i) {
        const SparseOperator ai = sparse_annihilation(state.space, i);
        for (int j = 0; j < m; ++j) {
            S(i, j) = state.amplitudes.dot(ai * apsi[static_cast<std::size_t>(j)]);
            N(i, j) = apsi[static_cast<std::size_t>(i)].dot(apsi[static_cast<std::size_t>(j)]);
        }
    }
    // Symmetrized central moments of b = (a_1, a_1^+, a_2, a_2^+).
    const int d = 2 * m;
    Eigen::MatrixXcd sigma_b(d, d);
    for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
            const cplx mk = mean[static_cast<std::size_t>(k)];
            const cplx ml = mean[static_cast<std::size_t>(l)];
            const double delta = k == l ? 0.5 : 0.0;
            sigma_b(2 * k, 2 * l) = S(k, l) - mk * ml;
            sigma_b(2 * k, 2 * l + 1) = std::conj(N(k, l)) + delta - mk * std::conj(ml);
            sigma_b(2 * k + 1, 2 * l) = N(k, l) + delta - std::conj(mk) * ml;
            sigma_b(2 * k + 1, 2 * l + 1) = std::conj(S(k, l) - mk * ml);
        }
    }
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(d, d);
    const double r = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < m; ++k) {
        w(2 * k, 2 * k) = r;
        w(2 * k, 2 * k + 1) = r;
        // Xbar = (a^+ - a)/(i sqrt(2))
        w(2 * k + 1, 2 * k) = cplx(0.0, r);
        w(2 * k + 1, 2 * k + 1) = cplx(0.0, -r);
    }
    const Eigen::MatrixXcd sigma = w * sigma_b * w.transpose();
    Eigen::MatrixXd out = sigma.real();
    return 0.5 * (out + out.transpose());
}

HeraldOutcome partial_trace_herald(const FockState& state, int herald_mode, int keep_mode) {
    if (state.space.arity != 2) throw ValidationError("heralding needs a two-mode state");
    if (herald_mode < 0 || herald_mode > 1 || keep_mode < 0 || keep_mode > 1 || herald_mode == keep_mode) {
        throw ValidationError("herald and kept modes must be the two distinct modes 0 and 1");
    }
    const auto psi = amplitude_matrix(state);
    const Eigen::Index L = state.space.levels();
    // Rows index the kept mode after the optional transpose.
    const RowMat phi = herald_mode == 1 ? RowMat(psi) : RowMat(psi.transpose());
    HeraldOutcome out;
    out.vacuum_probability = phi.col(0).squaredNorm();
    const auto clicked = phi.rightCols(L - 1);
    out.success_probability = clicked.squaredNorm();
    if (out.success_probability < 1e-15) {
        std::ostringstream msg;
        msg << "heralding success probability " << out.success_probability << " is below 1e-15";
        throw HeraldImpossibleError(msg.str());
    }
    out.state.n_cutoff = state.space.n_cutoff;
    out.state.rho = clicked * clicked.adjoint() / out.success_probability;
    return out;
}

} // namespace hhgsq
