// Periodic-factor / constant-factor decomposition of LPTV systems.
//
// Given A(t) with trigonometric-polynomial coefficients whose Fourier
// matrices are polynomials in the base frequency omega, this module finds a
// T-periodic P(t) with omega-free coefficients and a constant R(omega) such
// that A P = P' + P R.  The route: balance harmonics of A P - P' against
// P R to get a finite block operator, split it by powers of omega, fix the
// omega^0 value of R from A(t | omega = 0), and read the unknown stacked
// coefficients of P out of the nullspace of the resulting Sylvester-type
// system.  Candidates are accepted only after the full certificate battery:
// constant determinant, t-constant recovered R, and an identically zero
// residual.
//
// Everything is generic over the scalar: exact rationals give proofs-grade
// results (empty tolerances), doubles give the usual numerics.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trig_matrix.hpp"

namespace lptv {

// Thrown when P^{-1}(A P - P') keeps a genuine time dependence, i.e. the
// proposed P does not reduce the system to a constant one.
class NotConstantInT : public std::runtime_error {
public:
    explicit NotConstantInT(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when P(t) is singular where it must be inverted.
class SingularP : public std::runtime_error {
public:
    explicit SingularP(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the real canonical form of A(t | omega = 0) cannot be produced
// reliably: clustered float eigenvalues, or an exact spectrum that leaves the
// rationals.  Callers may supply a change of basis themselves and retry.
class CanonicalFormUnreliable : public std::runtime_error {
public:
    explicit CanonicalFormUnreliable(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when every harmonic hypothesis up to the search bound fails; the
// system may simply not admit a trigonometric-polynomial P.
class NoSolutionWithinPMax : public std::runtime_error {
public:
    explicit NoSolutionWithinPMax(const std::string& what) : std::runtime_error(what) {}
};

template <class S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

// Coefficient lookups extended to negative harmonic indices: cosines fold
// back unchanged, sines fold back negated, and the l = 0 cosine is doubled
// because the stored constant term is the full mean value.
template <class S>
DenseMatrix<S> fold_even(const TrigMatrix<S>& a, int r, int l) {
    if (l == 0) return DenseMatrix<S>(a.even(r, 0) * S(2));
    return a.even(r, std::abs(l));
}

template <class S>
DenseMatrix<S> fold_odd(const TrigMatrix<S>& a, int r, int l) {
    if (l == 0) return DenseMatrix<S>::Zero(a.size(), a.size());
    DenseMatrix<S> m = a.odd(r, std::abs(l));
    if (l < 0) m = -m;
    return m;
}

}  // namespace detail

// The finite harmonic-balance operator, one square block matrix per power of
// omega.  Row/column blocks are indexed (constant; cos 1, sin 1; ...; cos p,
// sin p), so each block matrix has side n(2p + 1).  The +-k omega couplings
// produced by differentiating cos/sin(k omega t) sit in the power-1 slice.
template <class S>
struct BlockSystem {
    int n = 0;
    int p = 0;
    std::vector<DenseMatrix<S>> blocks;  // blocks[r] multiplies omega^r

    int block_dim() const { return n * (2 * p + 1); }
    int omega_degree() const { return static_cast<int>(blocks.size()) - 1; }
};

// The sine-row balance at harmonic index 0 pairs every sine coefficient with
// its negative-index mirror, and odd symmetry cancels each pair, so the row
// carries no information for a real series.  This evaluates that row through
// the same fold helpers the assembly uses and reports the worst magnitude; a
// nonzero value means the fold conventions were broken.
template <class S>
double zero_row_check(const TrigMatrix<S>& a, int p) {
    double worst = 0;
    const int n = a.size();
    auto note = [&](const DenseMatrix<S>& m) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                worst = std::max(worst, std::fabs(ScalarTraits<S>::to_double(m(i, j))));
    };
    note(detail::fold_odd(a, 0, 0));
    for (int r = 0; r <= a.omega_degree(); ++r)
        for (int l = 1; l <= p; ++l) {
            note(DenseMatrix<S>(detail::fold_odd(a, r, -l) + detail::fold_odd(a, r, l)));
            note(DenseMatrix<S>(detail::fold_even(a, r, -l) - detail::fold_even(a, r, l)));
        }
    return worst;
}

template <class S>
BlockSystem<S> assemble(const TrigMatrix<S>& a, int p) {
    if (p < 1) throw std::invalid_argument("floquet::assemble: p must be at least 1");
    const int n = a.size();
    const int M = n * (2 * p + 1);
    BlockSystem<S> sys;
    sys.n = n;
    sys.p = p;
    sys.blocks.assign(static_cast<std::size_t>(std::max(a.omega_degree(), 1)) + 1,
                      DenseMatrix<S>::Zero(M, M));
    if (zero_row_check(a, p) != 0.0)
        throw std::logic_error("floquet::assemble: sine-row fold of a real series is nonzero");

    auto put = [&](int r, int bi, int bj, const DenseMatrix<S>& m) {
        sys.blocks[static_cast<std::size_t>(r)].block(bi * n, bj * n, n, n) += m;
    };
    const S half = ScalarTraits<S>::from_ratio(1, 2);
    for (int r = 0; r <= a.omega_degree(); ++r) {
        auto pe = [&](int l) { return detail::fold_even(a, r, l); };
        auto po = [&](int l) { return detail::fold_odd(a, r, l); };
        put(r, 0, 0, pe(0) * half);
        for (int l = 1; l <= p; ++l) {
            put(r, 0, 2 * l - 1, pe(l));
            put(r, 0, 2 * l, po(l));
        }
        for (int k = 1; k <= p; ++k) {
            put(r, 2 * k - 1, 0, pe(k) * half);
            put(r, 2 * k, 0, po(k) * half);
            for (int l = 1; l <= p; ++l) {
                put(r, 2 * k - 1, 2 * l - 1, (pe(k + l) + pe(k - l)) * half);
                put(r, 2 * k - 1, 2 * l, (po(k + l) - po(k - l)) * half);
                put(r, 2 * k, 2 * l - 1, (po(k - l) + po(k + l)) * half);
                put(r, 2 * k, 2 * l, (pe(k - l) - pe(k + l)) * half);
            }
        }
    }
    for (int k = 1; k <= p; ++k) {
        const DenseMatrix<S> kI = DenseMatrix<S>::Identity(n, n) * S(k);
        put(1, 2 * k - 1, 2 * k, -kI);
        put(1, 2 * k, 2 * k - 1, kI);
    }
    return sys;
}

// Stacks the coefficients of an omega-free series as [2 C0; C1; S1; ...;
// Cp; Sp] (an n(2p+1) x n matrix), the unknown layout the block operator
// acts on.  unstack_coeffs is its inverse.
template <class S>
DenseMatrix<S> stack_coeffs(const TrigMatrix<S>& P, int p) {
    if (P.omega_degree() != 0)
        throw std::invalid_argument("floquet::stack_coeffs: omega-free series expected");
    const int n = P.size();
    DenseMatrix<S> out = DenseMatrix<S>::Zero(n * (2 * p + 1), n);
    out.topRows(n) = P.even(0, 0) * S(2);
    for (int k = 1; k <= p; ++k) {
        out.block((2 * k - 1) * n, 0, n, n) = P.even(0, k);
        out.block(2 * k * n, 0, n, n) = P.odd(0, k);
    }
    return out;
}

template <class S>
TrigMatrix<S> unstack_coeffs(const DenseMatrix<S>& stacked, int n, int p) {
    if (stacked.rows() != n * (2 * p + 1) || stacked.cols() != n)
        throw std::invalid_argument("floquet::unstack_coeffs: bad stacked shape");
    TrigMatrix<S> out(n, p, 0);
    out.set_even(0, 0, DenseMatrix<S>(stacked.topRows(n) * ScalarTraits<S>::from_ratio(1, 2)));
    for (int k = 1; k <= p; ++k) {
        out.set_even(0, k, stacked.block((2 * k - 1) * n, 0, n, n));
        out.set_odd(0, k, stacked.block(2 * k * n, 0, n, n));
    }
    return out;
}

// A P - P' - P R as a coefficient series; a correct factorization makes every
// coefficient vanish.  Query max_abs_coeff() on the result for the norm.
template <class S>
TrigMatrix<S> residual(const TrigMatrix<S>& a, const TrigMatrix<S>& P,
                       const OmegaPolyMatrix<S>& R) {
    if (a.size() != P.size() || R.size() != P.size())
        throw std::invalid_argument("floquet::residual: size mismatch");
    TrigMatrix<S> res = a * P - P.differentiate() - P * TrigMatrix<S>::from_omega_poly(R);
    res.trim(is_exact_v<S> ? 0.0 : 1e-15);
    return res;
}

// ---------------------------------------------------------------------------
// Trace shifting.  psi(t) = trace(A)/n splits into a constant omega-poly
// psi0 and a zero-mean part psi1; subtracting psi(t) I makes the system
// trace-free, which forces det P constant and trace-free R.  The scalar
// exp(integral of psi1) cannot stay inside the polynomial ring, so it lives
// in the transform record as a pointwise factor.

template <class S>
struct TraceShift {
    OmegaPoly<S> psi0;   // constant part of trace/n, restored onto R by unshift
    TrigMatrix<S> psi1;  // zero-mean part of trace/n (1 x 1 series)

    // Antiderivative of psi1 normalized to vanish at t = 0.  Each harmonic
    // integrates against 1/(l omega); omega must be nonzero unless psi1 is
    // identically zero.
    double psi1_antiderivative(double omega, double t) const {
        if (psi1.size() == 0 || psi1.is_zero(0.0)) return 0.0;
        double acc = 0;
        for (int r = 0; r <= psi1.omega_degree(); ++r) {
            const double wr1 = std::pow(omega, r - 1);
            for (int l = 1; l <= psi1.harmonics(); ++l) {
                const double e = ScalarTraits<S>::to_double(psi1.even(r, l)(0, 0));
                const double o = ScalarTraits<S>::to_double(psi1.odd(r, l)(0, 0));
                acc += wr1 * (e * std::sin(l * omega * t) - o * (std::cos(l * omega * t) - 1)) / l;
            }
        }
        return acc;
    }

    bool is_zero() const {
        return psi0 == OmegaPoly<S>(S(0)) && (psi1.size() == 0 || psi1.is_zero(0.0));
    }
};

template <class S>
std::pair<TrigMatrix<S>, TraceShift<S>> shift_trace(const TrigMatrix<S>& a) {
    const TraceSeries<S> ts = trace_series(a);
    const int n = a.size();
    using Mat = DenseMatrix<S>;
    TrigMatrix<S> out = a;
    for (int r = 0; r <= ts.psi0.degree(); ++r) {
        const S c = ts.psi0.coeff(r);
        if (!(c == S(0))) out.add_even(r, 0, Mat(Mat::Identity(n, n) * (-c)));
    }
    for (int r = 0; r <= ts.psi1.omega_degree(); ++r)
        for (int l = 1; l <= ts.psi1.harmonics(); ++l) {
            const S e = ts.psi1.even(r, l)(0, 0);
            const S o = ts.psi1.odd(r, l)(0, 0);
            if (!(e == S(0))) out.add_even(r, l, Mat(Mat::Identity(n, n) * (-e)));
            if (!(o == S(0))) out.add_odd(r, l, Mat(Mat::Identity(n, n) * (-o)));
        }
    out.trim(is_exact_v<S> ? 0.0 : 1e-15);
    return {std::move(out), TraceShift<S>{ts.psi0, ts.psi1}};
}

// ---------------------------------------------------------------------------
// Solutions and the transformations applied on the way to one.

template <class S>
struct TransformRecord {
    DenseMatrix<S> similarity;  // accumulated constant right factor V (P -> P V)
    TraceShift<S> shift;        // restored by unshift; see eval_P for the factor
    S scale = S(1);             // scalar divided out of P by normalization
    int omega_divisor = 1;      // P, R and shift live at omega / omega_divisor
};

template <class S>
struct FloquetSolution {
    TrigMatrix<S> P;       // periodic factor, coefficients constant in omega
    OmegaPolyMatrix<S> R;  // constant factor, polynomial in omega
    int p = 0;             // harmonic order of P
    OmegaPoly<S> detP;     // determinant of P (t-constant by construction)
    TransformRecord<S> transforms;
    double residual_norm = 0;  // worst residual coefficient of the solved system

    // Pointwise factors of the transition matrix,
    //   Phi(t, t0) = eval_P(w, t) expm((t - t0) eval_R(w)) eval_P(w, t0)^{-1},
    // including the trace-shift exponential and any fundamental re-indexing.
    Eigen::MatrixXd eval_P(double omega, double t) const {
        const double w = omega / transforms.omega_divisor;
        Eigen::MatrixXd m = P.evaluate(w, t);
        const double f = std::exp(transforms.shift.psi1_antiderivative(w, t));
        return f * m;
    }
    Eigen::MatrixXd eval_R(double omega) const {
        return R.eval_d(omega / transforms.omega_divisor);
    }
};

// Restores a trace shift onto a solution of the shifted system: R gains
// psi0 I, and the record keeps psi1 for the pointwise exponential factor.
template <class S>
FloquetSolution<S> unshift(FloquetSolution<S> sol, const TraceShift<S>& shift) {
    sol.R = sol.R.add_scalar_diag(shift.psi0);
    sol.transforms.shift = shift;
    return sol;
}

// ---------------------------------------------------------------------------
// Cross-checking R from a given P.

// Pointwise route: evaluates P^{-1}(A P - P') on an (omega, t) grid, insists
// the result is constant along t, then fits the per-omega constants to a
// polynomial of degree at most deg(A) + 1 through a Vandermonde system.
inline OmegaPolyMatrix<double> recover_R(const TrigMatrix<double>& a,
                                         const TrigMatrix<double>& P,
                                         const std::vector<double>& omega_samples,
                                         const std::vector<double>& t_samples,
                                         double tconst_tol = 1e-8) {
    const int n = a.size();
    if (P.size() != n) throw std::invalid_argument("floquet::recover_R: size mismatch");
    if (omega_samples.empty() || t_samples.empty())
        throw std::invalid_argument("floquet::recover_R: empty sample grid");
    const TrigMatrix<double> Pdot = P.differentiate();
    const int m = static_cast<int>(omega_samples.size());
    const int deg = std::min(a.omega_degree() + 1, m - 1);

    std::vector<Eigen::MatrixXd> means;
    means.reserve(static_cast<std::size_t>(m));
    for (double w : omega_samples) {
        std::vector<Eigen::MatrixXd> vals;
        vals.reserve(t_samples.size());
        for (double t : t_samples) {
            const Eigen::MatrixXd Pv = P.evaluate(w, t);
            const double pscale = std::max(1.0, Pv.cwiseAbs().maxCoeff());
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(Pv);
            if (std::abs(lu.determinant()) <= 1e-12 * std::pow(pscale, n))
                throw SingularP("floquet::recover_R: P is singular at omega=" +
                                std::to_string(w) + ", t=" + std::to_string(t));
            vals.push_back(lu.solve(a.evaluate(w, t) * Pv - Pdot.evaluate(w, t)));
        }
        Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
        for (const Eigen::MatrixXd& v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        double dev = 0;
        for (const Eigen::MatrixXd& v : vals)
            dev = std::max(dev, (v - mean).cwiseAbs().maxCoeff());
        const double rscale = std::max(1.0, mean.cwiseAbs().maxCoeff());
        if (dev > tconst_tol * rscale)
            throw NotConstantInT("floquet::recover_R: P^{-1}(A P - P') varies along t at omega=" +
                                 std::to_string(w) + " (deviation " + std::to_string(dev) + ")");
        means.push_back(std::move(mean));
    }

    Eigen::MatrixXd V(m, deg + 1);
    for (int i = 0; i < m; ++i) {
        double pw = 1;
        for (int j = 0; j <= deg; ++j) {
            V(i, j) = pw;
            pw *= omega_samples[static_cast<std::size_t>(i)];
        }
    }
    Eigen::MatrixXd Y(m, n * n);
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r) Y(i, c * n + r) = means[static_cast<std::size_t>(i)](r, c);
    const Eigen::MatrixXd C = V.colPivHouseholderQr().solve(Y);

    std::vector<Eigen::MatrixXd> slices;
    double top = 1;
    for (int r = 0; r <= deg; ++r) {
        Eigen::MatrixXd s(n, n);
        for (int c = 0; c < n; ++c)
            for (int i = 0; i < n; ++i) s(i, c) = C(r, c * n + i);
        top = std::max(top, s.cwiseAbs().maxCoeff());
        slices.push_back(std::move(s));
    }
    while (slices.size() > 1 && slices.back().cwiseAbs().maxCoeff() <= 1e-10 * top)
        slices.pop_back();
    return OmegaPolyMatrix<double>::from_slices(std::move(slices));
}

// Coefficient-level route: R = adj(P)(A P - P') / det P, exact on rationals.
// det P must be t-constant for P^{-1} to stay inside the ring; the quotient
// must come out free of harmonics or P does not reduce the system.
template <class S>
OmegaPolyMatrix<S> recover_R_symbolic(const TrigMatrix<S>& a, const TrigMatrix<S>& P,
                                      double tol = 1e-9) {
    if (P.size() != a.size())
        throw std::invalid_argument("floquet::recover_R_symbolic: size mismatch");
    TrigMatrix<S> det = P.determinant();
    const OmegaPoly<S> d =
        det.constant_part_or_throw("floquet::recover_R_symbolic: det P is not constant", tol);
    bool dzero = true;
    for (int r = 0; r <= d.degree(); ++r)
        if (!(d.coeff(r) == S(0))) dzero = false;
    if (dzero) throw SingularP("floquet::recover_R_symbolic: det P is identically zero");

    const TrigMatrix<S> num = a * P - P.differentiate();
    TrigMatrix<S> quot = (P.adjugate() * num).divide_by_poly(d);
    quot.trim(is_exact_v<S> ? 0.0 : 1e-15);
    const double qscale = std::max(1.0, quot.max_abs_coeff());
    for (int r = 0; r <= quot.omega_degree(); ++r)
        for (int l = 1; l <= quot.harmonics(); ++l) {
            double worst = 0;
            for (int i = 0; i < quot.size(); ++i)
                for (int j = 0; j < quot.size(); ++j) {
                    worst = std::max(worst,
                                     std::fabs(ScalarTraits<S>::to_double(quot.even(r, l)(i, j))));
                    worst = std::max(worst,
                                     std::fabs(ScalarTraits<S>::to_double(quot.odd(r, l)(i, j))));
                }
            const double lim = is_exact_v<S> ? 0.0 : tol * qscale;
            if (worst > lim)
                throw NotConstantInT(
                    "floquet::recover_R_symbolic: quotient keeps harmonic content");
        }
    std::vector<DenseMatrix<S>> slices;
    for (int r = 0; r <= quot.omega_degree(); ++r) slices.push_back(quot.even(r, 0));
    return OmegaPolyMatrix<S>::from_slices(std::move(slices));
}

// ---------------------------------------------------------------------------
// Similarity moves.

// Coefficient-wise conjugation U^{-1} A U; a solution (P, R) of the
// conjugated system pulls back to (U P, R) for the original one.
template <class S>
TrigMatrix<S> similarity_A(const TrigMatrix<S>& a, const DenseMatrix<S>& U) {
    const int n = a.size();
    if (U.rows() != n || U.cols() != n)
        throw std::invalid_argument("floquet::similarity_A: size mismatch");
    Eigen::FullPivLU<DenseMatrix<S>> lu(U);
    if (!lu.isInvertible()) throw std::invalid_argument("floquet::similarity_A: singular U");
    const DenseMatrix<S> Ui = lu.inverse();
    TrigMatrix<S> out(n, a.harmonics(), a.omega_degree());
    for (int r = 0; r <= a.omega_degree(); ++r)
        for (int l = 0; l <= a.harmonics(); ++l) {
            out.set_even(r, l, DenseMatrix<S>(Ui * a.even(r, l) * U));
            if (l >= 1) out.set_odd(r, l, DenseMatrix<S>(Ui * a.odd(r, l) * U));
        }
    out.trim(is_exact_v<S> ? 0.0 : 1e-15);
    return out;
}

// Re-gauges a solution by a constant right factor: P -> P V, R -> V^{-1} R V.
// The residual is untouched; char-poly of R is invariant.
template <class S>
FloquetSolution<S> similarity_R(const FloquetSolution<S>& sol, const DenseMatrix<S>& V) {
    const int n = sol.P.size();
    if (V.rows() != n || V.cols() != n)
        throw std::invalid_argument("floquet::similarity_R: size mismatch");
    Eigen::FullPivLU<DenseMatrix<S>> lu(V);
    if (!lu.isInvertible()) throw std::invalid_argument("floquet::similarity_R: singular V");
    const DenseMatrix<S> Vi = lu.inverse();

    FloquetSolution<S> out = sol;
    out.P = sol.P * TrigMatrix<S>::constant(V);
    std::vector<DenseMatrix<S>> slices;
    for (int r = 0; r <= sol.R.degree(); ++r)
        slices.push_back(DenseMatrix<S>(Vi * sol.R.slice(r) * V));
    out.R = OmegaPolyMatrix<S>::from_slices(std::move(slices));
    out.detP = sol.detP * lu.determinant();
    if (sol.transforms.similarity.rows() == n)
        out.transforms.similarity = sol.transforms.similarity * V;
    else
        out.transforms.similarity = V;
    return out;
}

// ---------------------------------------------------------------------------
// Real canonical form of the omega -> 0 constant.

template <class S>
struct Canonicalization {
    DenseMatrix<S> U;      // change of basis with U^{-1} A(.|omega=0) U = J
    DenseMatrix<S> J;      // real canonical form
    TrigMatrix<S> canon;   // U^{-1} A U, whose omega -> 0 constant is J
};

namespace detail {

template <class S>
bool is_diagonal(const DenseMatrix<S>& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j && !(m(i, j) == S(0))) return false;
    return true;
}

// Recognizes matrices already in real canonical shape: diagonal, the planar
// block [[a, b], [-b, a]], or a single Jordan chain.
template <class S>
bool is_canonical_form(const DenseMatrix<S>& m) {
    if (is_diagonal(m)) return true;
    const int n = static_cast<int>(m.rows());
    if (n == 2 && m(0, 0) == m(1, 1) && m(0, 1) == -m(1, 0) && !(m(1, 0) == S(0))) return true;
    if (n < 2) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                if (!(m(i, j) == m(0, 0))) return false;
            } else if (j == i + 1) {
                if (!(m(i, j) == S(1))) return false;
            } else if (!(m(i, j) == S(0))) {
                return false;
            }
        }
    return true;
}

// Exact construction: full nilpotent chains in any dimension, plus the three
// 2 x 2 spectra (split real, coincident, complex pair) whenever the needed
// square roots stay rational.
template <class S>
std::pair<DenseMatrix<S>, DenseMatrix<S>> exact_canonical(const DenseMatrix<S>& A0) {
    using Mat = DenseMatrix<S>;
    const int n = static_cast<int>(A0.rows());
    const Mat I = Mat::Identity(n, n);

    Mat power = A0;
    for (int k = 1; k < n; ++k) power = Mat(power * A0);
    bool nilpotent = true;
    for (int i = 0; i < n && nilpotent; ++i)
        for (int j = 0; j < n; ++j)
            if (!(power(i, j) == S(0))) {
                nilpotent = false;
                break;
            }
    if (nilpotent) {
        // A0^n = 0: a single length-n chain needs A0^{n-1} != 0
        Mat q = I;
        for (int k = 1; k < n; ++k) q = Mat(q * A0);
        int vcol = -1;
        for (int j = 0; j < n && vcol < 0; ++j)
            for (int i = 0; i < n; ++i)
                if (!(q(i, j) == S(0))) {
                    vcol = j;
                    break;
                }
        if (vcol < 0)
            throw CanonicalFormUnreliable(
                "floquet::canonicalize_at_zero: nilpotent input without a full chain");
        Mat U(n, n);
        Mat v = Mat::Zero(n, 1);
        v(vcol, 0) = S(1);
        std::vector<Mat> chain{v};
        for (int k = 1; k < n; ++k) chain.push_back(Mat(A0 * chain.back()));
        for (int c = 0; c < n; ++c) U.col(c) = chain[static_cast<std::size_t>(n - 1 - c)];
        Mat J = Mat::Zero(n, n);
        for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = S(1);
        return {U, J};
    }

    if (n != 2)
        throw CanonicalFormUnreliable(
            "floquet::canonicalize_at_zero: exact route covers diagonal forms, full nilpotent "
            "chains, and 2x2 spectra only");

    const S half = ScalarTraits<S>::from_ratio(1, 2);
    const S tr = A0(0, 0) + A0(1, 1);
    const S dt = A0(0, 0) * A0(1, 1) - A0(0, 1) * A0(1, 0);
    const S disc = tr * tr - S(4) * dt;
    Mat U(2, 2), J = Mat::Zero(2, 2);
    if (disc > S(0)) {
        const auto s = exact_sqrt(disc);
        if (!s)
            throw CanonicalFormUnreliable(
                "floquet::canonicalize_at_zero: eigenvalues leave the rationals");
        const S l1 = (tr - *s) * half;
        const S l2 = (tr + *s) * half;
        auto eigvec = [&](const S& lam) {
            Mat v(2, 1);
            if (!(A0(0, 1) == S(0))) {
                v(0, 0) = A0(0, 1);
                v(1, 0) = lam - A0(0, 0);
            } else {  // A0(1,0) != 0, else A0 were diagonal
                v(0, 0) = lam - A0(1, 1);
                v(1, 0) = A0(1, 0);
            }
            return v;
        };
        U.col(0) = eigvec(l1);
        U.col(1) = eigvec(l2);
        J(0, 0) = l1;
        J(1, 1) = l2;
    } else if (disc == S(0)) {
        // coincident eigenvalue, defective (the scalar case is diagonal)
        const S lam = tr * half;
        const Mat B = Mat(A0 - I * lam);
        Mat v = Mat::Zero(2, 1);
        v(0, 0) = S(1);
        Mat w = Mat(B * v);
        if (w(0, 0) == S(0) && w(1, 0) == S(0)) {
            v(0, 0) = S(0);
            v(1, 0) = S(1);
            w = Mat(B * v);
        }
        U.col(0) = w;
        U.col(1) = v;
        J(0, 0) = lam;
        J(0, 1) = S(1);
        J(1, 1) = lam;
    } else {
        const auto s = exact_sqrt(S(0) - disc);
        if (!s)
            throw CanonicalFormUnreliable(
                "floquet::canonicalize_at_zero: complex pair with irrational imaginary part");
        const S alpha = tr * half;
        const S beta = *s * half;
        Mat v = Mat::Zero(2, 1);
        v(0, 0) = S(1);
        Mat w = Mat((A0 - I * alpha) * v / beta);
        U.col(0) = w;
        U.col(1) = v;
        J(0, 0) = alpha;
        J(0, 1) = beta;
        J(1, 0) = S(0) - beta;
        J(1, 1) = alpha;
    }
    return {U, J};
}

// Float construction via a full eigendecomposition; refuses clustered
// spectra instead of guessing Jordan structure.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> float_canonical(const Eigen::MatrixXd& A0) {
    const int n = static_cast<int>(A0.rows());
    Eigen::EigenSolver<Eigen::MatrixXd> es(A0);
    if (es.info() != Eigen::Success)
        throw CanonicalFormUnreliable("floquet::canonicalize_at_zero: eigensolver failed");
    const Eigen::VectorXcd lam = es.eigenvalues();
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(lam(i) - lam(j)) < 1e-8 * scale)
                throw CanonicalFormUnreliable(
                    "floquet::canonicalize_at_zero: eigenvalue cluster, canonical form "
                    "ill-determined");

    std::vector<int> reals, pairs;
    for (int i = 0; i < n; ++i) {
        if (std::abs(lam(i).imag()) <= 1e-12 * scale)
            reals.push_back(i);
        else if (lam(i).imag() > 0)
            pairs.push_back(i);
    }
    std::sort(reals.begin(), reals.end(),
              [&](int a, int b) { return lam(a).real() < lam(b).real(); });
    std::sort(pairs.begin(), pairs.end(), [&](int a, int b) {
        if (lam(a).real() != lam(b).real()) return lam(a).real() < lam(b).real();
        return lam(a).imag() < lam(b).imag();
    });

    Eigen::MatrixXd U(n, n), J = Eigen::MatrixXd::Zero(n, n);
    int c = 0;
    for (int i : reals) {
        U.col(c) = es.eigenvectors().col(i).real();
        J(c, c) = lam(i).real();
        ++c;
    }
    for (int i : pairs) {
        U.col(c) = es.eigenvectors().col(i).real();
        U.col(c + 1) = es.eigenvectors().col(i).imag();
        const double a = lam(i).real(), b = lam(i).imag();
        J(c, c) = a;
        J(c, c + 1) = b;
        J(c + 1, c) = -b;
        J(c + 1, c + 1) = a;
        c += 2;
    }
    const Eigen::MatrixXd test = U.partialPivLu().solve(A0 * U);
    if ((test - J).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, J.cwiseAbs().maxCoeff()))
        throw CanonicalFormUnreliable(
            "floquet::canonicalize_at_zero: change of basis failed verification");
    return {U, J};
}

}  // namespace detail

template <class S>
Canonicalization<S> canonicalize_at_zero(const TrigMatrix<S>& a) {
    const int n = a.size();
    const DenseMatrix<S> A0 = a.at_omega_zero();
    Canonicalization<S> out;
    if (detail::is_canonical_form(A0)) {
        out.U = DenseMatrix<S>::Identity(n, n);
        out.J = A0;
        out.canon = a;
        return out;
    }
    if constexpr (is_exact_v<S>) {
        auto [U, J] = detail::exact_canonical(A0);
        out.U = std::move(U);
        out.J = std::move(J);
    } else {
        auto [U, J] = detail::float_canonical(A0);
        out.U = std::move(U);
        out.J = std::move(J);
    }
    out.canon = similarity_A(a, out.U);
    return out;
}

// ---------------------------------------------------------------------------
// The solver.

struct SolveOptions {
    int p_hint = 0;               // starting harmonic hypothesis; 0 picks ceil(L/n)
    int p_max = 0;                // search bound; 0 picks max(L, starting hypothesis)
    int r_select = 0;             // >= 1: eigen-block route on that omega power
    double residual_tol = 1e-9;   // float-path residual acceptance, relative
    double kernel_rcond = 1e-10;  // SVD nullspace threshold, relative to sigma_max
    double tconst_tol = 1e-8;     // float-path "constant in t" rejection, relative
};

// Fundamental-only inputs get re-indexed so the single harmonic appears at
// l = 2 of a halved base frequency; the periodic factor of such systems can
// need the half frequency, which the solver cannot represent otherwise.
template <class S>
TrigMatrix<S> reindex_fundamental(const TrigMatrix<S>& a) {
    TrigMatrix<S> out(a.size(), 2 * std::max(a.harmonics(), 0), a.omega_degree());
    S pw = S(1);
    for (int r = 0; r <= a.omega_degree(); ++r) {
        for (int l = 0; l <= a.harmonics(); ++l) {
            out.set_even(r, 2 * l, DenseMatrix<S>(a.even(r, l) * pw));
            if (l >= 1) out.set_odd(r, 2 * l, DenseMatrix<S>(a.odd(r, l) * pw));
        }
        pw = pw * S(2);
    }
    out.trim(is_exact_v<S> ? 0.0 : 1e-15);
    return out;
}

namespace detail {

// Right-kernel basis: exact elimination on the rational path, SVD with a
// relative threshold on the float path.
template <class S>
DenseMatrix<S> kernel_basis(const DenseMatrix<S>& K, double rcond) {
    if constexpr (is_exact_v<S>) {
        Eigen::FullPivLU<DenseMatrix<S>> lu(K);
        if (lu.dimensionOfKernel() == 0) return DenseMatrix<S>(K.cols(), 0);
        return lu.kernel();
    } else {
        Eigen::JacobiSVD<DenseMatrix<S>> svd(K, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() > 0 ? sv(0) : 0.0;
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > rcond * smax) ++rank;
        const int dim = static_cast<int>(K.cols()) - rank;
        if (dim <= 0) return DenseMatrix<S>(K.cols(), 0);
        return svd.matrixV().rightCols(dim);
    }
}

// Solves A x = b if consistent: exact elimination plus verification on the
// rational path, least squares with an absolute residual gate on floats.
template <class S>
std::optional<DenseMatrix<S>> solve_affine(const DenseMatrix<S>& A, const DenseMatrix<S>& b,
                                           double tol) {
    if constexpr (is_exact_v<S>) {
        Eigen::FullPivLU<DenseMatrix<S>> lu(A);
        DenseMatrix<S> x = lu.solve(b);
        const DenseMatrix<S> gap = A * x - b;
        for (int i = 0; i < gap.rows(); ++i)
            for (int j = 0; j < gap.cols(); ++j)
                if (!(gap(i, j) == S(0))) return std::nullopt;
        return x;
    } else {
        DenseMatrix<S> x = A.colPivHouseholderQr().solve(b);
        if ((A * x - b).norm() > tol) return std::nullopt;
        return x;
    }
}

// Certificate battery for a proposed omega-free P against the (shifted)
// system: constant nonzero determinant, harmonic-free recovered R, zero
// residual.  Returns the recovered R and determinant on success.
template <class S>
struct CandidateCheck {
    OmegaPolyMatrix<S> R;
    S d0;
    double residual_norm;
};

template <class S>
std::optional<CandidateCheck<S>> verify_candidate(const TrigMatrix<S>& ash,
                                                  const TrigMatrix<S>& P,
                                                  const SolveOptions& opts) {
    TrigMatrix<S> det = P.determinant();
    det.trim(is_exact_v<S> ? 0.0 : 1e-10);
    if (det.harmonics() > 0) return std::nullopt;  // determinant oscillates
    const S d0 = det.even(0, 0)(0, 0);
    if constexpr (is_exact_v<S>) {
        if (d0 == S(0)) return std::nullopt;
    } else {
        if (std::fabs(ScalarTraits<S>::to_double(d0)) < 1e-8) return std::nullopt;
    }

    const TrigMatrix<S> num = ash * P - P.differentiate();
    TrigMatrix<S> quot = (P.adjugate() * num).scale(S(1) / d0);
    const double qscale = std::max(1.0, quot.max_abs_coeff());
    for (int r = 0; r <= quot.omega_degree(); ++r)
        for (int l = 1; l <= quot.harmonics(); ++l)
            for (int i = 0; i < quot.size(); ++i)
                for (int j = 0; j < quot.size(); ++j) {
                    const double e = std::fabs(ScalarTraits<S>::to_double(quot.even(r, l)(i, j)));
                    const double o = std::fabs(ScalarTraits<S>::to_double(quot.odd(r, l)(i, j)));
                    const double lim = is_exact_v<S> ? 0.0 : opts.tconst_tol * qscale;
                    if (e > lim || o > lim) return std::nullopt;
                }

    std::vector<DenseMatrix<S>> slices;
    for (int r = 0; r <= quot.omega_degree(); ++r) slices.push_back(quot.even(r, 0));
    OmegaPolyMatrix<S> R = OmegaPolyMatrix<S>::from_slices(std::move(slices));

    TrigMatrix<S> resid = num - P * TrigMatrix<S>::from_omega_poly(R);
    const double rscale = std::max(1.0, num.max_abs_coeff());
    const double rnorm = resid.max_abs_coeff();
    if constexpr (is_exact_v<S>) {
        if (!resid.is_zero(0.0)) return std::nullopt;
    } else {
        if (rnorm > opts.residual_tol * rscale) return std::nullopt;
    }
    return CandidateCheck<S>{std::move(R), d0, is_exact_v<S> ? 0.0 : rnorm};
}

// First maximal-magnitude coefficient in (omega power, harmonic, cos-before-
// sin, row, column) order; used to normalize when P(t|omega=0) = I is not on
// the table.
template <class S>
S lex_max_coefficient(const TrigMatrix<S>& P) {
    double mx = 0;
    for (int r = 0; r <= P.omega_degree(); ++r)
        for (int l = 0; l <= P.harmonics(); ++l)
            for (int parity = 0; parity < (l >= 1 ? 2 : 1); ++parity)
                for (int i = 0; i < P.size(); ++i)
                    for (int j = 0; j < P.size(); ++j) {
                        const S x = (parity == 0 ? P.even(r, l) : P.odd(r, l))(i, j);
                        mx = std::max(mx, std::fabs(ScalarTraits<S>::to_double(x)));
                    }
    for (int r = 0; r <= P.omega_degree(); ++r)
        for (int l = 0; l <= P.harmonics(); ++l)
            for (int parity = 0; parity < (l >= 1 ? 2 : 1); ++parity)
                for (int i = 0; i < P.size(); ++i)
                    for (int j = 0; j < P.size(); ++j) {
                        const S x = (parity == 0 ? P.even(r, l) : P.odd(r, l))(i, j);
                        if (std::fabs(ScalarTraits<S>::to_double(x)) >= mx * (1 - 1e-9)) return x;
                    }
    return S(0);
}

template <class S>
DenseMatrix<S> vec_cols(const DenseMatrix<S>& m) {
    DenseMatrix<S> v(m.rows() * m.cols(), 1);
    for (int c = 0; c < m.cols(); ++c) v.block(c * m.rows(), 0, m.rows(), 1) = m.col(c);
    return v;
}

template <class S>
DenseMatrix<S> unvec_cols(const DenseMatrix<S>& v, int rows, int cols) {
    DenseMatrix<S> m(rows, cols);
    for (int c = 0; c < cols; ++c) m.col(c) = v.block(c * rows, 0, rows, 1);
    return m;
}

// Eigen-block route: fix R on a chosen omega power from an eigendecomposition
// of that block slice, pairing eigenvectors into the stacked coefficients of
// P.  Works on the float path for planar systems; candidates are ordered
// small blocks first, then by |eigenvalue|, and every one runs the same
// certificate battery as the main route.
template <class S>
FloquetSolution<S> solve_eigenblock(const TrigMatrix<S>& ash, const TraceShift<S>& shift,
                                    int divisor, int p0, int pmax, const SolveOptions& opts) {
    if constexpr (is_exact_v<S>) {
        (void)ash;
        (void)shift;
        (void)divisor;
        (void)p0;
        (void)pmax;
        (void)opts;
        throw std::invalid_argument(
            "floquet::solve: the eigen-block route needs floating-point arithmetic");
    } else {
        const int n = ash.size();
        if (n != 2)
            throw std::invalid_argument("floquet::solve: the eigen-block route handles 2x2 systems");
        const int r = opts.r_select;
        if (r > std::max(ash.omega_degree(), 1))
            throw std::invalid_argument("floquet::solve: r_select beyond the omega degree");
        for (int p = p0; p <= pmax; ++p) {
            const BlockSystem<S> sys = assemble(ash, p);
            Eigen::EigenSolver<Eigen::MatrixXd> es(sys.blocks[static_cast<std::size_t>(r)]);
            if (es.info() != Eigen::Success) continue;
            const Eigen::VectorXcd lam = es.eigenvalues();
            const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
            std::vector<int> reals, conj_pos;
            for (int i = 0; i < lam.size(); ++i) {
                if (std::abs(lam(i).imag()) <= 1e-9 * scale)
                    reals.push_back(i);
                else if (lam(i).imag() > 0)
                    conj_pos.push_back(i);
            }
            auto absLess = [&](int a, int b) {
                const double da = std::abs(lam(a)), db = std::abs(lam(b));
                if (da != db) return da < db;
                return a < b;
            };
            std::sort(reals.begin(), reals.end(), absLess);
            std::sort(conj_pos.begin(), conj_pos.end(), absLess);

            std::vector<Eigen::MatrixXd> stacked;
            for (std::size_t i = 0; i < reals.size(); ++i)
                for (std::size_t j = i + 1; j < reals.size(); ++j) {
                    Eigen::MatrixXd Pt(sys.block_dim(), 2);
                    Pt.col(0) = es.eigenvectors().col(reals[i]).real();
                    Pt.col(1) = es.eigenvectors().col(reals[j]).real();
                    stacked.push_back(std::move(Pt));
                }
            for (int i : conj_pos) {
                Eigen::MatrixXd Pt(sys.block_dim(), 2);
                Pt.col(0) = es.eigenvectors().col(i).real();
                Pt.col(1) = es.eigenvectors().col(i).imag();
                stacked.push_back(std::move(Pt));
            }

            for (const Eigen::MatrixXd& Pt : stacked) {
                TrigMatrix<S> P = unstack_coeffs<S>(Pt, n, p);
                P.trim(1e-12);
                const S norm = lex_max_coefficient(P);
                if (std::fabs(norm) < 1e-12) continue;
                P = P.scale(S(1) / norm);
                auto check = verify_candidate(ash, P, opts);
                if (!check) continue;
                FloquetSolution<S> sol;
                sol.P = std::move(P);
                sol.R = std::move(check->R);
                sol.p = p;
                sol.detP = OmegaPoly<S>(check->d0);
                sol.residual_norm = check->residual_norm;
                sol.transforms.similarity = DenseMatrix<S>::Identity(n, n);
                sol.transforms.scale = norm;
                sol.transforms.omega_divisor = divisor;
                return unshift(std::move(sol), shift);
            }
        }
        throw NoSolutionWithinPMax("floquet::solve: no eigen-block candidate verified up to p = " +
                                   std::to_string(pmax));
    }
}

}  // namespace detail

// Full pipeline: re-index fundamental-only inputs, shift the trace away, fix
// R(omega = 0) from the shifted system's omega -> 0 value, then walk the
// harmonic hypotheses.  For each p the stacked coefficients of P solve a
// homogeneous Sylvester-type system; the affine constraint P(t|omega=0) = I
// picks candidates out of its nullspace, and each candidate must pass the
// certificate battery before it is returned.
template <class S>
FloquetSolution<S> solve(const TrigMatrix<S>& a, const SolveOptions& opts = {}) {
    const int n = a.size();
    if (n == 0) throw std::invalid_argument("floquet::solve: empty system");
    TrigMatrix<S> work = a;
    int divisor = 1;
    if (work.harmonics() == 1) {
        work = reindex_fundamental(work);
        divisor = 2;
    }
    auto [ash, shift] = shift_trace(work);
    const int L = std::max(work.harmonics(), 0);
    const int p0 = opts.p_hint >= 1 ? opts.p_hint : std::max(1, (L + n - 1) / n);
    const int pmax = std::max(p0, opts.p_max >= 1 ? opts.p_max : std::max(L, 1));

    if (opts.r_select >= 1)
        return detail::solve_eigenblock(ash, shift, divisor, p0, pmax, opts);

    const DenseMatrix<S> R0 = ash.at_omega_zero();
    const S half = ScalarTraits<S>::from_ratio(1, 2);
    for (int p = p0; p <= pmax; ++p) {
        const BlockSystem<S> sys = assemble(ash, p);
        const int M = sys.block_dim();

        // vec-by-columns Sylvester lift of B0 X = X R0
        DenseMatrix<S> K = DenseMatrix<S>::Zero(M * n, M * n);
        for (int c = 0; c < n; ++c) K.block(c * M, c * M, M, M) = sys.blocks[0];
        for (int c = 0; c < n; ++c)
            for (int b = 0; b < n; ++b)
                K.block(c * M, b * M, M, M) -=
                    DenseMatrix<S>(DenseMatrix<S>::Identity(M, M) * R0(b, c));
        const DenseMatrix<S> ns = detail::kernel_basis(K, opts.kernel_rcond);
        if (ns.cols() == 0) continue;

        // omega -> 0 value of each kernel direction; the affine constraint
        // asks for the identity
        DenseMatrix<S> CH(n * n, ns.cols());
        for (int j = 0; j < ns.cols(); ++j) {
            const DenseMatrix<S> Pt = detail::unvec_cols(DenseMatrix<S>(ns.col(j)), M, n);
            DenseMatrix<S> chi = Pt.topRows(n) * half;
            for (int k = 1; k <= p; ++k) chi += Pt.block((2 * k - 1) * n, 0, n, n);
            CH.col(j) = detail::vec_cols(chi);
        }
        const DenseMatrix<S> tgt = detail::vec_cols(DenseMatrix<S>(DenseMatrix<S>::Identity(n, n)));
        const auto alpha = detail::solve_affine(CH, tgt, 1e-8);
        if (!alpha) continue;

        std::vector<DenseMatrix<S>> cands;
        {
            // prefer a candidate with no harmonic content at all (LTI inputs
            // should come back with P = I): constrain the harmonic rows of
            // the stacked coefficients to zero alongside the chi rows
            const int hrows = (M - n) * n;
            DenseMatrix<S> CHH(n * n + hrows, ns.cols());
            CHH.topRows(n * n) = CH;
            for (int j = 0; j < ns.cols(); ++j) {
                const DenseMatrix<S> Pt = detail::unvec_cols(DenseMatrix<S>(ns.col(j)), M, n);
                CHH.block(n * n, j, hrows, 1) =
                    detail::vec_cols(DenseMatrix<S>(Pt.bottomRows(M - n)));
            }
            DenseMatrix<S> tgt2 = DenseMatrix<S>::Zero(n * n + hrows, 1);
            tgt2.topRows(n * n) = tgt;
            const auto flat = detail::solve_affine(CHH, tgt2, 1e-8);
            if (flat) cands.push_back(*flat);
        }
        cands.push_back(*alpha);
        const DenseMatrix<S> sec = detail::kernel_basis(CH, opts.kernel_rcond);
        for (int j = 0; j < sec.cols(); ++j) {
            cands.push_back(DenseMatrix<S>(*alpha + sec.col(j)));
            cands.push_back(DenseMatrix<S>(*alpha - sec.col(j)));
        }

        for (const DenseMatrix<S>& cd : cands) {
            const DenseMatrix<S> Pt = detail::unvec_cols(DenseMatrix<S>(ns * cd), M, n);
            TrigMatrix<S> P = unstack_coeffs(Pt, n, p);
            P.trim(is_exact_v<S> ? 0.0 : 1e-12);
            auto check = detail::verify_candidate(ash, P, opts);
            if (!check) continue;
            FloquetSolution<S> sol;
            sol.P = std::move(P);
            sol.R = std::move(check->R);
            sol.p = p;
            sol.detP = OmegaPoly<S>(check->d0);
            sol.residual_norm = check->residual_norm;
            sol.transforms.similarity = DenseMatrix<S>::Identity(n, n);
            sol.transforms.omega_divisor = divisor;
            return unshift(std::move(sol), shift);
        }
    }
    throw NoSolutionWithinPMax("floquet::solve: no factorization found with P up to " +
                               std::to_string(pmax) + " harmonics");
}

// ---------------------------------------------------------------------------
// Cross-identity report for a finished solution.

struct LemmaReport {
    bool trace_identity = false;     // trace R equals the trace of the t-average of A
    bool det_constant = false;       // det P free of harmonics and nonzero
    bool phi_periodic = false;       // Phi(t + T, t0 + T) == Phi(t, t0)
    bool trace_free_shifted = false; // R minus its recorded trace share is trace-free
    double trace_gap = 0;
    double det_gap = 0;
    double phi_gap = 0;
    double shift_gap = 0;

    bool all_pass() const {
        return trace_identity && det_constant && phi_periodic && trace_free_shifted;
    }
};

template <class S>
LemmaReport lemma_checks(const TrigMatrix<S>& a, const FloquetSolution<S>& sol) {
    LemmaReport rep;
    const int n = a.size();
    const int dv = sol.transforms.omega_divisor;

    // trace{R} against the averaged system, in the solution's omega units
    // (coefficient r of the original picks up dv^r under omega -> dv * omega)
    const OmegaPoly<S> trR = sol.R.trace();
    const OmegaPoly<S> trA = a.average().trace();
    {
        S pw = S(1);
        for (int r = 0; r <= std::max(trR.degree(), trA.degree()); ++r) {
            const S diff = trR.coeff(r) - trA.coeff(r) * pw;
            rep.trace_gap = std::max(rep.trace_gap, std::fabs(ScalarTraits<S>::to_double(diff)));
            pw = pw * S(dv);
        }
        rep.trace_identity = rep.trace_gap <= 1e-9;
    }

    // determinant of P: no harmonic content, nonzero constant
    {
        TrigMatrix<S> det = sol.P.determinant();
        const double dscale = std::max(1.0, det.max_abs_coeff());
        for (int r = 0; r <= det.omega_degree(); ++r)
            for (int l = 1; l <= det.harmonics(); ++l) {
                rep.det_gap = std::max(
                    rep.det_gap, std::fabs(ScalarTraits<S>::to_double(det.even(r, l)(0, 0))));
                rep.det_gap = std::max(
                    rep.det_gap, std::fabs(ScalarTraits<S>::to_double(det.odd(r, l)(0, 0))));
            }
        const double d0 = std::fabs(ScalarTraits<S>::to_double(det.even(0, 0)(0, 0)));
        rep.det_constant = rep.det_gap <= 1e-9 * dscale && d0 > 1e-12;
    }

    // transition matrix unchanged by a one-period shift of both time inputs
    {
        const double w = 1.0;
        const double T = 2 * 3.14159265358979323846 / w;
        const Eigen::MatrixXd Rw = sol.eval_R(w);
        auto phi = [&](double t, double t0) {
            const Eigen::MatrixXd E = ((t - t0) * Rw).exp();
            return Eigen::MatrixXd(sol.eval_P(w, t) * E * sol.eval_P(w, t0).inverse());
        };
        const double samples[][2] = {{0.3, 0.1}, {1.7, 0.6}, {2.9, 1.4}};
        for (const auto& s : samples) {
            const Eigen::MatrixXd base = phi(s[0], s[1]);
            const Eigen::MatrixXd shifted = phi(s[0] + T, s[1] + T);
            const double scale = std::max(1.0, base.cwiseAbs().maxCoeff());
            rep.phi_gap =
                std::max(rep.phi_gap, (shifted - base).cwiseAbs().maxCoeff() / scale);
        }
        rep.phi_periodic = rep.phi_gap <= 1e-6;
    }

    // per-power trace freedom after removing the recorded constant share
    {
        const OmegaPoly<S>& share = sol.transforms.shift.psi0;
        for (int r = 0; r <= std::max(trR.degree(), share.degree()); ++r) {
            const S diff = trR.coeff(r) - share.coeff(r) * S(n);
            rep.shift_gap = std::max(rep.shift_gap, std::fabs(ScalarTraits<S>::to_double(diff)));
        }
        rep.trace_free_shifted = rep.shift_gap <= 1e-9;
    }
    return rep;
}

}  // namespace lptv
