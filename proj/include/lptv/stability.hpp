// Stability classification of the constant factor R(omega).
//
// Once a periodic system has been reduced to x' = R(omega) x by a periodic
// change of variables, stability is decided entirely by the eigenvalues of
// R at the frequency of interest: negative real parts give decay, a positive
// one gives growth, and eigenvalues on the imaginary axis give boundedness
// exactly when they are semisimple.  Nothing in this module ever looks at
// the pointwise eigenvalues of A(t); those prove nothing, and one of the
// acceptance fixtures exists precisely to demonstrate it.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omega_poly.hpp"

namespace lptv {

enum class StabilityClass { Stable, MarginallyStable, Unstable };

inline const char* to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::Stable: return "stable";
        case StabilityClass::MarginallyStable: return "marginally-stable";
        default: return "unstable";
    }
}

struct StabilityVerdict {
    StabilityClass cls = StabilityClass::Unstable;
    std::vector<std::complex<double>> eigenvalues;  // sorted by (Re, Im)
    double max_real_part = 0.0;
    bool semisimple_on_axis = true;  // vacuously true without axis eigenvalues
};

namespace detail {

inline void sort_complex(std::vector<std::complex<double>>& v) {
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
}

inline int complex_rank(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10 * (1.0 + sv(0))) ++rank;
    return rank;
}

// Real roots of an omega polynomial via the companion matrix; identically
// zero or constant polynomials have no isolated roots.
template <class S>
std::vector<double> real_poly_roots(const OmegaPoly<S>& p) {
    std::vector<double> c;
    for (int r = 0; r <= p.degree(); ++r) c.push_back(ScalarTraits<S>::to_double(p.coeff(r)));
    while (!c.empty() && std::fabs(c.back()) < 1e-14) c.pop_back();
    std::vector<double> roots;
    if (c.size() < 2) return roots;
    const int d = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    const Eigen::VectorXcd ev = comp.transpose().eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i).imag()) <= 1e-8 * (1.0 + std::abs(ev(i)))) roots.push_back(ev(i).real());
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace detail

// Eigenvalue-based verdict on x' = R(omega) x.  An eigenvalue counts as
// on-axis when |Re| <= tol * (1 + |lambda|); on-axis eigenvalues are probed
// for semisimplicity through the rank of R - lambda I, since a defective
// axis eigenvalue grows polynomially.
template <class S>
StabilityVerdict classify(const OmegaPolyMatrix<S>& R, double omega, double tol = 1e-9) {
    const Eigen::MatrixXd rw = R.eval_d(omega);
    const Eigen::Index n = rw.rows();
    Eigen::EigenSolver<Eigen::MatrixXd> es(rw);
    StabilityVerdict v;
    for (Eigen::Index i = 0; i < n; ++i) v.eigenvalues.push_back(es.eigenvalues()(i));
    detail::sort_complex(v.eigenvalues);
    v.max_real_part = -std::numeric_limits<double>::infinity();
    bool any_positive = false, any_axis = false;
    for (const auto& lam : v.eigenvalues) {
        v.max_real_part = std::max(v.max_real_part, lam.real());
        const double margin = tol * (1.0 + std::abs(lam));
        if (lam.real() > margin) any_positive = true;
        else if (lam.real() >= -margin) any_axis = true;
    }
    if (any_axis) {
        // Cluster the axis eigenvalues and compare geometric and algebraic
        // multiplicities per cluster.
        std::vector<std::complex<double>> axis;
        for (const auto& lam : v.eigenvalues)
            if (std::abs(lam.real()) <= tol * (1.0 + std::abs(lam))) axis.push_back(lam);
        std::vector<bool> used(axis.size(), false);
        for (std::size_t i = 0; i < axis.size(); ++i) {
            if (used[i]) continue;
            int algebraic = 0;
            for (std::size_t j = i; j < axis.size(); ++j) {
                if (!used[j] && std::abs(axis[j] - axis[i]) <= 1e-8 * (1.0 + std::abs(axis[i]))) {
                    used[j] = true;
                    ++algebraic;
                }
            }
            Eigen::MatrixXcd shifted = rw.cast<std::complex<double>>();
            shifted.diagonal().array() -= axis[i];
            const int geometric = static_cast<int>(n) - detail::complex_rank(shifted);
            if (geometric < algebraic) v.semisimple_on_axis = false;
        }
    }
    if (any_positive || (any_axis && !v.semisimple_on_axis)) v.cls = StabilityClass::Unstable;
    else if (any_axis) v.cls = StabilityClass::MarginallyStable;
    else v.cls = StabilityClass::Stable;
    return v;
}

// Classical planar conditions: a 2x2 constant system decays exactly when
// trace < 0 and det > 0.
struct Conditions2x2 {
    double trace = 0.0;
    double det = 0.0;
    bool stable = false;
};

template <class S>
Conditions2x2 conditions_2x2(const OmegaPolyMatrix<S>& R, double omega) {
    if (R.size() != 2)
        throw std::invalid_argument("lptv::conditions_2x2: matrix must be 2x2");
    const Eigen::MatrixXd rw = R.eval_d(omega);
    Conditions2x2 c;
    c.trace = rw.trace();
    c.det = rw.determinant();
    c.stable = c.trace < 0.0 && c.det > 0.0;
    return c;
}

// Discriminant of the 2x2 characteristic polynomial as a polynomial in
// omega: trace^2 - 4 det.
template <class S>
OmegaPoly<S> discriminant_poly(const OmegaPolyMatrix<S>& R) {
    if (R.size() != 2)
        throw std::invalid_argument("lptv::discriminant_poly: matrix must be 2x2");
    const auto cp = R.char_poly();  // [det, -trace, 1]
    return cp[1] * cp[1] - cp[0] * ScalarTraits<S>::from_ratio(4, 1);
}

struct SweepRow {
    double omega = 0.0;
    std::vector<std::complex<double>> eigenvalues;
    StabilityClass cls = StabilityClass::Unstable;
    std::optional<double> discriminant;  // engaged for 2x2 systems
};

template <class S>
std::vector<SweepRow> sweep(const OmegaPolyMatrix<S>& R, const std::vector<double>& omega_grid,
                            double tol = 1e-9) {
    std::vector<SweepRow> rows;
    rows.reserve(omega_grid.size());
    std::optional<OmegaPoly<S>> disc;
    if (R.size() == 2) disc = discriminant_poly(R);
    for (double w : omega_grid) {
        const StabilityVerdict v = classify(R, w, tol);
        SweepRow row;
        row.omega = w;
        row.eigenvalues = v.eigenvalues;
        row.cls = v.cls;
        if (disc) row.discriminant = disc->eval_d(w);
        rows.push_back(std::move(row));
    }
    return rows;
}

// A frequency where the character of the spectrum changes: either the
// discriminant of a 2x2 system vanishes (eigenvalues collide) or the largest
// real part crosses zero.
struct CriticalFrequency {
    double omega = 0.0;
    std::string event;  // "discriminant-root" or "axis-crossing"
};

// Closed-form route for 2x2 systems with polynomial entries: the eigenvalue
// collisions are the roots of the discriminant, and axis crossings are roots
// of det R (a real eigenvalue through zero) or of trace R where det > 0
// (a complex pair through the axis).
template <class S>
std::vector<CriticalFrequency> critical_frequencies(const OmegaPolyMatrix<S>& R) {
    if (R.size() != 2)
        throw std::invalid_argument(
            "lptv::critical_frequencies: closed form needs a 2x2 system; pass a grid otherwise");
    const auto cp = R.char_poly();
    std::vector<CriticalFrequency> out;
    for (double w : detail::real_poly_roots(discriminant_poly(R)))
        out.push_back({w, "discriminant-root"});
    for (double w : detail::real_poly_roots(cp[0])) out.push_back({w, "axis-crossing"});
    for (double w : detail::real_poly_roots(cp[1])) {
        if (cp[0].eval_d(w) > 0.0) out.push_back({w, "axis-crossing"});
    }
    std::sort(out.begin(), out.end(), [](const CriticalFrequency& x, const CriticalFrequency& y) {
        if (x.omega != y.omega) return x.omega < y.omega;
        return x.event < y.event;
    });
    // Merge duplicates produced by coincident roots.
    std::vector<CriticalFrequency> dedup;
    for (const auto& cf : out) {
        if (!dedup.empty() && dedup.back().event == cf.event &&
            std::fabs(dedup.back().omega - cf.omega) <= 1e-9 * (1.0 + std::fabs(cf.omega)))
            continue;
        dedup.push_back(cf);
    }
    return dedup;
}

// Grid-and-bisection route for any size: brackets sign changes of the
// largest real part over the supplied grid and refines each crossing to
// 1e-10.
template <class S>
std::vector<CriticalFrequency> critical_frequencies(const OmegaPolyMatrix<S>& R,
                                                    const std::vector<double>& omega_grid) {
    auto max_re = [&R](double w) {
        const Eigen::VectorXcd ev = R.eval_d(w).eigenvalues();
        double m = -std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < ev.size(); ++i) m = std::max(m, ev(i).real());
        return m;
    };
    std::vector<CriticalFrequency> out;
    for (std::size_t i = 0; i + 1 < omega_grid.size(); ++i) {
        double lo = omega_grid[i], hi = omega_grid[i + 1];
        double flo = max_re(lo), fhi = max_re(hi);
        if (flo == 0.0) out.push_back({lo, "axis-crossing"});
        if (flo * fhi >= 0.0) continue;
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            const double fm = max_re(mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if ((flo < 0.0) == (fm < 0.0)) { lo = mid; flo = fm; }
            else { hi = mid; fhi = fm; }
        }
        out.push_back({0.5 * (lo + hi), "axis-crossing"});
    }
    return out;
}

}  // namespace lptv
