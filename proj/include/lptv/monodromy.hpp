// Transition matrices, monodromy, and logarithm-based factorizations.
//
// This module works at fixed omega with plain double matrices: it integrates
// Phi' = A(t) Phi over one period, extracts characteristic multipliers and
// exponents, and splits the monodromy matrix into a constant R and periodic
// samples P(t) = Phi(t,0) e^{-tR}.  When the principal real logarithm of the
// monodromy matrix is obstructed by eigenvalues on the negative real axis,
// the factorization switches to the double-period route R = log(M^2) / (2T)
// and reports the involution Y that relates consecutive periods of P.
//
// The symbolic solver in floquet.hpp produces closed-form factorizations;
// everything here is the numeric cross-check side of that story.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "floquet.hpp"

namespace lptv {

// Monodromy matrix is singular (or numerically indistinguishable from
// singular), so no logarithm of any flavor exists.
class SingularMonodromy : public std::runtime_error {
public:
    explicit SingularMonodromy(const std::string& what) : std::runtime_error(what) {}
};

// Neither M nor M^2 admits a real logarithm within tolerance, so the
// factorization cannot pick a branch.
class LogBranchAmbiguity : public std::runtime_error {
public:
    explicit LogBranchAmbiguity(const std::string& what) : std::runtime_error(what) {}
};

// A real logarithm of the given matrix does not exist (negative real
// eigenvalues that cannot be grouped into equal pairs).
class RealLogNonexistent : public std::runtime_error {
public:
    explicit RealLogNonexistent(const std::string& what) : std::runtime_error(what) {}
};

// Coefficient matrix of the ODE as a callback: (omega, t) -> A(t) at that
// omega.  TrigMatrix instances adapt via evaluator_of below; closed-form
// systems that are not trigonometric polynomials plug in directly.
using MatrixEvaluator = std::function<Eigen::MatrixXd(double, double)>;

template <class S>
MatrixEvaluator evaluator_of(const TrigMatrix<S>& a) {
    return [a](double omega, double t) { return a.evaluate(omega, t); };
}

inline constexpr int kDefaultStepsPerPeriod = 4096;

// State-transition matrix Phi(t1, t0) together with how it was obtained.
// method is one of "rk4", "expm-commuting", "piecewise",
// "floquet-reconstructed".
struct TransitionMatrix {
    Eigen::MatrixXd value;
    double t0 = 0.0;
    double t1 = 0.0;
    std::string method;
};

// Classical fixed-step RK4 for Phi' = A(t) Phi, Phi(t0) = I.  Fixed step
// keeps runs reproducible; accuracy is O(h^4), so callers pick the step
// count, not a tolerance.
inline TransitionMatrix integrate_transition(const MatrixEvaluator& a, double omega,
                                             double t0, double t1, int steps) {
    if (steps < 1) throw std::invalid_argument("lptv::integrate_transition: steps must be >= 1");
    const Eigen::MatrixXd a0 = a(omega, t0);
    if (a0.rows() != a0.cols())
        throw std::invalid_argument("lptv::integrate_transition: A(t) must be square");
    const Eigen::Index n = a0.rows();
    Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(n, n);
    const double h = (t1 - t0) / steps;
    for (int i = 0; i < steps; ++i) {
        const double t = t0 + i * h;
        const Eigen::MatrixXd at = (i == 0) ? a0 : a(omega, t);
        const Eigen::MatrixXd ah = a(omega, t + 0.5 * h);
        const Eigen::MatrixXd a1 = a(omega, t + h);
        const Eigen::MatrixXd k1 = at * phi;
        const Eigen::MatrixXd k2 = ah * (phi + (0.5 * h) * k1);
        const Eigen::MatrixXd k3 = ah * (phi + (0.5 * h) * k2);
        const Eigen::MatrixXd k4 = a1 * (phi + h * k3);
        phi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return TransitionMatrix{std::move(phi), t0, t1, "rk4"};
}

// Entrywise integral of a trigonometric-polynomial matrix over [t0, t1] at
// fixed omega, in closed form.  At omega = 0 every harmonic collapses and
// only the omega-free constant part survives.
template <class S>
Eigen::MatrixXd trig_integral(const TrigMatrix<S>& a, double omega, double t0, double t1) {
    const int n = a.size();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    if (omega == 0.0) return (t1 - t0) * a.at_omega_zero();
    double wr = 1.0;  // omega^r
    for (int r = 0; r <= a.omega_degree(); ++r) {
        Eigen::MatrixXd slice = (t1 - t0) * to_double_matrix<S>(a.even(r, 0));
        for (int l = 1; l <= a.harmonics(); ++l) {
            const double lw = l * omega;
            const double ds = (std::sin(lw * t1) - std::sin(lw * t0)) / lw;
            const double dc = (std::cos(lw * t1) - std::cos(lw * t0)) / lw;
            slice += ds * to_double_matrix<S>(a.even(r, l));
            slice -= dc * to_double_matrix<S>(a.odd(r, l));
        }
        out += wr * slice;
        wr *= omega;
    }
    return out;
}

// exp(B) with B = integral of A over [t0, t1], valid exactly when A(t)
// commutes with B on the interval.  Checks the commutator on a sample grid
// and declines (nullopt) when the shortcut does not apply.
template <class S>
std::optional<TransitionMatrix> commuting_shortcut(const TrigMatrix<S>& a, double omega,
                                                   double t0, double t1, double tol = 1e-9) {
    const Eigen::MatrixXd b = trig_integral(a, omega, t0, t1);
    const int samples = 17;
    for (int i = 0; i < samples; ++i) {
        const double t = t0 + (t1 - t0) * i / (samples - 1);
        const Eigen::MatrixXd at = a.evaluate(omega, t);
        const double gap = (at * b - b * at).cwiseAbs().maxCoeff();
        if (gap > tol * (1.0 + at.norm() * b.norm())) return std::nullopt;
    }
    return TransitionMatrix{b.exp(), t0, t1, "expm-commuting"};
}

inline Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("lptv::matrix_exp: matrix must be square");
    return m.exp();
}

namespace detail {

inline bool on_negative_axis(const std::complex<double>& z, double tol) {
    return z.real() < 0.0 && std::abs(z.imag()) <= tol * (1.0 + std::abs(z));
}

}  // namespace detail

// Real logarithm of a real square matrix.
//
// Without eigenvalues on the closed negative real axis the principal branch
// is real and unique; that path delegates to the Schur-based logarithm and
// verifies exp(log M) = M.  Negative real eigenvalues only admit a real
// logarithm when they occur in equal pairs with independent eigenvectors;
// each such pair is rebuilt as a conjugate complex pair so the result stays
// real.  Anything else throws RealLogNonexistent.
inline Eigen::MatrixXd matrix_log_real(const Eigen::MatrixXd& m, double axis_tol = 1e-10) {
    using Cx = std::complex<double>;
    if (m.rows() != m.cols())
        throw std::invalid_argument("lptv::matrix_log_real: matrix must be square");
    const Eigen::Index n = m.rows();
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXcd lam = es.eigenvalues();
    const double scale = lam.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(lam(i)) <= 1e-12 * (1.0 + scale))
            throw SingularMonodromy("lptv::matrix_log_real: matrix is singular");

    std::vector<Eigen::Index> negatives;
    for (Eigen::Index i = 0; i < n; ++i)
        if (detail::on_negative_axis(lam(i), axis_tol)) negatives.push_back(i);

    const double verify_tol = 1e-8 * (1.0 + m.norm());
    if (negatives.empty()) {
        const Eigen::MatrixXd out = m.log();
        if (!out.allFinite() || (out.exp() - m).norm() > verify_tol)
            throw RealLogNonexistent("lptv::matrix_log_real: principal logarithm failed to verify");
        return out;
    }

    // Negative axis hit: pair equal negative eigenvalues.  This route needs
    // a full eigenbasis, so a defective negative eigenvalue is rejected by
    // the final verification.
    if (negatives.size() % 2 != 0)
        throw RealLogNonexistent(
            "lptv::matrix_log_real: negative real eigenvalue of odd multiplicity");
    std::sort(negatives.begin(), negatives.end(),
              [&lam](Eigen::Index i, Eigen::Index j) { return lam(i).real() < lam(j).real(); });
    Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::VectorXcd loglam(n);
    for (Eigen::Index i = 0; i < n; ++i) loglam(i) = std::log(lam(i));
    for (std::size_t k = 0; k + 1 < negatives.size(); k += 2) {
        const Eigen::Index i = negatives[k], j = negatives[k + 1];
        if (std::abs(lam(i) - lam(j)) > 1e-8 * (1.0 + std::abs(lam(i))))
            throw RealLogNonexistent(
                "lptv::matrix_log_real: negative real eigenvalues do not pair up");
        const double r = std::abs(0.5 * (lam(i) + lam(j)));
        // Complex-combine the two real eigendirections; conjugate columns
        // with conjugate log values keep the product real.
        const Eigen::VectorXcd vi = v.col(i), vj = v.col(j);
        v.col(i) = (vi + Cx(0, 1) * vj) / std::sqrt(2.0);
        v.col(j) = (vi - Cx(0, 1) * vj) / std::sqrt(2.0);
        loglam(i) = Cx(std::log(r), M_PI);
        loglam(j) = Cx(std::log(r), -M_PI);
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(v);
    if (!lu.isInvertible())
        throw RealLogNonexistent("lptv::matrix_log_real: defective negative real eigenvalue");
    const Eigen::MatrixXcd lcx = v * loglam.asDiagonal() * lu.inverse();
    if (lcx.imag().cwiseAbs().maxCoeff() > 1e-8 * (1.0 + lcx.norm()))
        throw RealLogNonexistent("lptv::matrix_log_real: paired logarithm is not real");
    Eigen::MatrixXd out = lcx.real();
    if (!out.allFinite() || (out.exp() - m).norm() > verify_tol)
        throw RealLogNonexistent("lptv::matrix_log_real: paired logarithm failed to verify");
    return out;
}

// Phi(T, 0) over one period T = 2 pi / omega.  The result is checked against
// the semigroup power law Phi(kT, 0) = Phi(T, 0)^k for k = 2, 3 before being
// returned; a violation means the integration is not resolving the system.
inline TransitionMatrix monodromy_matrix(const MatrixEvaluator& a, double omega,
                                         int steps = kDefaultStepsPerPeriod,
                                         bool verify_power_law = true) {
    if (omega <= 0.0)
        throw std::invalid_argument("lptv::monodromy_matrix: omega must be positive");
    const double period = 2.0 * M_PI / omega;
    TransitionMatrix m = integrate_transition(a, omega, 0.0, period, steps);
    if (verify_power_law) {
        Eigen::MatrixXd pow = m.value;
        for (int k = 2; k <= 3; ++k) {
            pow = pow * m.value;
            const TransitionMatrix direct = integrate_transition(a, omega, 0.0, k * period, k * steps);
            if ((direct.value - pow).norm() > 1e-6 * (1.0 + pow.norm()))
                throw std::runtime_error(
                    "lptv::monodromy_matrix: power law violated; increase steps");
        }
    }
    m.method = "rk4";
    return m;
}

// Ordered product of constant-coefficient segments: the first listed segment
// acts first, so Phi = exp(A_m d_m) ... exp(A_1 d_1).  Zero-duration
// segments contribute identity factors.
inline TransitionMatrix piecewise_transition(
    const std::vector<std::pair<Eigen::MatrixXd, double>>& segments) {
    if (segments.empty())
        throw std::invalid_argument("lptv::piecewise_transition: no segments");
    const Eigen::Index n = segments.front().first.rows();
    Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(n, n);
    double total = 0.0;
    for (const auto& [mat, dur] : segments) {
        if (mat.rows() != n || mat.cols() != n)
            throw std::invalid_argument("lptv::piecewise_transition: segment size mismatch");
        if (dur < 0.0)
            throw std::invalid_argument("lptv::piecewise_transition: negative duration");
        if (dur > 0.0) phi = (dur * mat).exp() * phi;
        total += dur;
    }
    return TransitionMatrix{std::move(phi), 0.0, total, "piecewise"};
}

// Monodromy factorization M = e^{mT R} with periodic samples of
// P(t) = Phi(t, 0) e^{-tR}.  period_multiplier m is 1 when M has a real
// principal logarithm and 2 when the negative real axis forces the
// double-period route; in the latter case Y = M e^{-TR} is the involution
// with P(t + T) = P(t) Y.
struct MonodromyFactorization {
    Eigen::MatrixXd R;
    int period_multiplier = 1;
    Eigen::MatrixXd Y;
    std::vector<std::pair<double, Eigen::MatrixXd>> P_samples;  // covers [0, 2 m T]
    double periodicity_gap = 0.0;  // max |P(t + mT) - P(t)| over the grid
    double montagnier_gap = 0.0;   // max residual of P(t+T) = P(t) e^{tR} P(T) e^{-tR}
};

inline MonodromyFactorization log_factorize(const MatrixEvaluator& a, double omega,
                                            int steps = kDefaultStepsPerPeriod,
                                            int samples_per_period = 16) {
    if (samples_per_period < 2)
        throw std::invalid_argument("lptv::log_factorize: need at least 2 samples per period");
    const double period = 2.0 * M_PI / omega;
    const TransitionMatrix mono = monodromy_matrix(a, omega, steps);
    const Eigen::MatrixXd& m = mono.value;
    const Eigen::Index n = m.rows();

    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    const Eigen::VectorXcd lam = es.eigenvalues();
    const double lam_scale = lam.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(lam(i)) <= 1e-12 * (1.0 + lam_scale))
            throw SingularMonodromy("lptv::log_factorize: monodromy matrix is singular");
    bool obstructed = false;
    for (Eigen::Index i = 0; i < n; ++i)
        if (detail::on_negative_axis(lam(i), 1e-10)) obstructed = true;

    MonodromyFactorization f;
    if (!obstructed) {
        f.period_multiplier = 1;
        f.R = matrix_log_real(m) / period;
        f.Y = Eigen::MatrixXd::Identity(n, n);
    } else {
        f.period_multiplier = 2;
        Eigen::MatrixXd r2;
        try {
            r2 = matrix_log_real(m * m);
        } catch (const RealLogNonexistent& e) {
            throw LogBranchAmbiguity(std::string("lptv::log_factorize: double-period route "
                                                 "is also obstructed: ") +
                                     e.what());
        }
        f.R = r2 / (2.0 * period);
        Eigen::MatrixXd y = m * (-period * f.R).exp();
        // Y ought to square to I; when it is close, average with its inverse
        // to land exactly on an involution.
        if ((y * y - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-6 * (1.0 + y.norm())) {
            y = 0.5 * (y + y.inverse());
        }
        f.Y = std::move(y);
    }

    // Sample P(t) = Phi(t,0) e^{-tR} over two full periods of P by carrying
    // the RK4 state through the grid, then measure the defining relations.
    const int mult = f.period_multiplier;
    const int per_p = samples_per_period * mult;  // samples per P-period (m T)
    const int total_samples = 2 * per_p;
    const double p_period = mult * period;
    const double dt = p_period / per_p;
    const int sub_steps = std::max(1, static_cast<int>(std::lround(
                                           static_cast<double>(steps) * dt / period)));
    Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(n, n);
    f.P_samples.reserve(total_samples + 1);
    f.P_samples.emplace_back(0.0, Eigen::MatrixXd::Identity(n, n));
    for (int j = 1; j <= total_samples; ++j) {
        const double ta = (j - 1) * dt, tb = j * dt;
        phi = integrate_transition(a, omega, ta, tb, sub_steps).value * phi;
        f.P_samples.emplace_back(tb, phi * (-tb * f.R).exp());
    }
    double pgap = 0.0;
    for (int j = 0; j <= per_p; ++j) {
        const Eigen::MatrixXd& p0 = f.P_samples[j].second;
        const Eigen::MatrixXd& p1 = f.P_samples[j + per_p].second;
        pgap = std::max(pgap, (p1 - p0).cwiseAbs().maxCoeff());
    }
    f.periodicity_gap = pgap;
    // One-period shift relation: P(t + T) = P(t) e^{tR} P(T) e^{-tR}.
    const int per_t = samples_per_period;  // index step worth one T
    const Eigen::MatrixXd p_at_period = f.P_samples[per_t].second;
    double mgap = 0.0;
    for (int j = 0; j + per_t <= total_samples; ++j) {
        const double t = f.P_samples[j].first;
        const Eigen::MatrixXd etr = (t * f.R).exp();
        const Eigen::MatrixXd rhs = f.P_samples[j].second * etr * p_at_period * etr.inverse();
        mgap = std::max(mgap, (f.P_samples[j + per_t].second - rhs).cwiseAbs().maxCoeff());
    }
    f.montagnier_gap = mgap;
    return f;
}

// Characteristic multipliers and exponents of a one-period transition
// matrix.  Exponents take the principal branch; the flag marks multipliers
// off the positive real axis, where log is only defined mod 2 pi i / T.
struct SpectralReport {
    std::vector<std::complex<double>> multipliers;
    std::vector<std::complex<double>> exponents;
    std::vector<bool> exponent_branch_ambiguous;
    double product_gap = 0.0;
    bool product_check = false;
};

template <class S>
SpectralReport characteristic_spectrum(const TransitionMatrix& mono, const TrigMatrix<S>& a,
                                       double omega, double tol = 1e-8) {
    const double period = mono.t1 - mono.t0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(mono.value);
    SpectralReport rep;
    std::complex<double> prod(1.0, 0.0);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const std::complex<double> rho = es.eigenvalues()(i);
        rep.multipliers.push_back(rho);
        rep.exponents.push_back(std::log(rho) / period);
        const bool positive_real =
            rho.real() > 0.0 && std::abs(rho.imag()) <= 1e-12 * (1.0 + std::abs(rho));
        rep.exponent_branch_ambiguous.push_back(!positive_real);
        prod *= rho;
    }
    // The multiplier product must match exp of the integrated trace; over a
    // full period only the constant Fourier term of the trace survives.
    const double tr_avg = a.average().trace().eval_d(omega);
    const double expected = std::exp(period * tr_avg);
    rep.product_gap = std::abs(prod - expected);
    rep.product_check = rep.product_gap <= tol * (1.0 + std::abs(expected));
    return rep;
}

// det Phi(t1, t0) = exp(integral of trace A): closed form for trigonometric
// coefficients, composite Simpson otherwise.
template <class S>
bool jacobi_liouville_check(const TrigMatrix<S>& a, double omega, const TransitionMatrix& phi,
                            double tol = 1e-8, double* gap_out = nullptr) {
    const double integral = trig_integral(a, omega, phi.t0, phi.t1).trace();
    const double gap = std::abs(phi.value.determinant() - std::exp(integral));
    if (gap_out) *gap_out = gap;
    return gap <= tol * (1.0 + std::abs(phi.value.determinant()));
}

inline bool jacobi_liouville_check(const MatrixEvaluator& a, double omega,
                                   const TransitionMatrix& phi, double tol = 1e-8,
                                   double* gap_out = nullptr) {
    const int panels = 4096;
    const double h = (phi.t1 - phi.t0) / panels;
    double integral = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double t = phi.t0 + i * h;
        integral += (h / 6.0) * (a(omega, t).trace() + 4.0 * a(omega, t + 0.5 * h).trace() +
                                 a(omega, t + h).trace());
    }
    const double gap = std::abs(phi.value.determinant() - std::exp(integral));
    if (gap_out) *gap_out = gap;
    return gap <= tol * (1.0 + std::abs(phi.value.determinant()));
}

// Transition matrix rebuilt from a closed-form factorization:
// Phi(t, t0) = P(t) expm((t - t0) R) P(t0)^{-1}, all factors evaluated at
// the caller's omega.
template <class S>
TransitionMatrix reconstruct_phi(const FloquetSolution<S>& sol, double omega, double t,
                                 double t0) {
    const Eigen::MatrixXd pt = sol.eval_P(omega, t);
    const Eigen::MatrixXd p0 = sol.eval_P(omega, t0);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(p0);
    if (!lu.isInvertible())
        throw SingularP("lptv::reconstruct_phi: P(t0) is singular at the requested t0");
    const Eigen::MatrixXd e = ((t - t0) * sol.eval_R(omega)).exp();
    return TransitionMatrix{pt * e * lu.inverse(), t0, t, "floquet-reconstructed"};
}

}  // namespace lptv
