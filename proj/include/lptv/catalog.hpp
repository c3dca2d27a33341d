// Library of ready-made periodic systems, plus generators that manufacture
// new ones from a known periodic factor and constant core.
//
// Every entry couples the system matrix A(t) with the pair (P, R) that
// factorizes its transition matrix, whenever a closed form exists.  Entries
// fall into four shapes, tagged by which of the two harmonic counts are
// finite: the harmonics L of A(t) and the harmonics p of P(t).  Finite
// objects are stored exactly as TrigMatrix / OmegaPolyMatrix over Rat;
// objects outside the trigonometric-polynomial class (factors such as
// exp(sin(w t)/w) or rational functions of cos(w t)) are carried as
// closed-form evaluator callbacks instead, and participate in pointwise
// rather than symbolic residual checks.

#pragma once

#include "lptv/omega_poly.hpp"
#include "lptv/rational.hpp"
#include "lptv/trig_matrix.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lptv {

// Thrown by exp_sandwich when exp(w t G) is not periodic with period 2*pi/w,
// so conjugating by it would not produce a periodic system.
struct NonPeriodicGenerator : std::domain_error {
    explicit NonPeriodicGenerator(const std::string& what) : std::domain_error(what) {}
};

// Square-wave style systems: a cycle of constant matrices, each active for a
// fixed fraction of one period.  Consumed by the piecewise transition-matrix
// composition in the monodromy module.
struct PiecewiseDescriptor {
    // (constant system matrix, fraction of one period); fractions sum to 1.
    std::vector<std::pair<Eigen::MatrixXd, Rat>> pieces;

    // Concrete (matrix, duration) segments for one period at frequency w.
    std::vector<std::pair<Eigen::MatrixXd, double>> segments(double omega) const {
        if (!(omega > 0)) throw std::invalid_argument("PiecewiseDescriptor::segments: omega must be positive");
        const double period = 2.0 * M_PI / omega;
        std::vector<std::pair<Eigen::MatrixXd, double>> out;
        out.reserve(pieces.size());
        for (const auto& [m, frac] : pieces) out.emplace_back(m, frac.to_double() * period);
        return out;
    }
};

// One system in the library.
//
// Exact data is optional: A is present when the system matrix is a
// trigonometric polynomial, known_P when the periodic factor is one, known_R
// whenever a closed-form core is available.  The evaluator callbacks
// (omega, t) -> matrix are always populated for A, and for P / dP/dt whenever
// any form of the periodic factor is known, so numeric checks can treat all
// entries uniformly.  Evaluators for entries built around 1/omega factors
// assume omega > 0.
struct CatalogEntry {
    using MatrixFn = std::function<Eigen::MatrixXd(double, double)>;

    std::string id;
    std::string description;

    bool L_finite = false;  // system matrix harmonics
    bool p_finite = false;  // periodic-factor harmonics
    int family_case = 0;    // 1: neither finite, 2: only p, 3: only L, 4: both; 0: outside the scheme

    std::map<std::string, Rat> params;

    std::optional<TrigMatrix<Rat>> A;
    std::optional<TrigMatrix<Rat>> known_P;
    std::optional<OmegaPolyMatrix<Rat>> known_R;
    std::optional<PiecewiseDescriptor> piecewise;

    MatrixFn A_fn;     // (omega, t)
    MatrixFn P_fn;     // (omega, t)
    MatrixFn Pdot_fn;  // (omega, t), time derivative of P_fn

    // Only the Cauchy-Euler entry sets these: exact transition matrix and the
    // naive exp-of-integral surrogate, both as (t, t0) -> matrix on t, t0 >= 1.
    MatrixFn phi_fn;
    MatrixFn naive_phi_fn;
};

// ---------------------------------------------------------------------------
// Generators

// A = (dP/dt + P R) P^{-1}.  Demands constant nonzero det P so the inverse
// stays inside the trigonometric-polynomial class; throws
// NonConstantDeterminant / SingularDeterminant otherwise.
template <class S>
TrigMatrix<S> generate_from_pair(const TrigMatrix<S>& P, const OmegaPolyMatrix<S>& R) {
    TrigMatrix<S> rhs = P.differentiate() + P * TrigMatrix<S>::from_omega_poly(R);
    return rhs * P.inverse_if_const_det();
}

struct GeneratedSystem {
    TrigMatrix<Rat> A;
    TrigMatrix<Rat> P;
    OmegaPolyMatrix<Rat> R;
};

namespace catalog_detail {

using RMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

inline RMat rmat2(Rat a, Rat b, Rat c, Rat d) {
    RMat m(2, 2);
    m << a, b, c, d;
    return m;
}

inline RMat rmat2i(long long a, long long b, long long c, long long d) {
    return rmat2(Rat(a), Rat(b), Rat(c), Rat(d));
}

inline Eigen::MatrixXd dmat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

inline OmegaPolyMatrix<Rat> const_R(RMat m) {
    std::vector<RMat> s{std::move(m)};
    return OmegaPolyMatrix<Rat>::from_slices(std::move(s));
}

inline OmegaPolyMatrix<Rat> affine_R(RMat m0, RMat m1) {
    std::vector<RMat> s{std::move(m0), std::move(m1)};
    return OmegaPolyMatrix<Rat>::from_slices(std::move(s));
}

// R = [[a-1, w-1], [1-w, -1]]: the core shared by the mirrored planar
// entries below (a scalar family with one rotation-like omega coupling).
inline OmegaPolyMatrix<Rat> mirrored_planar_R(Rat a) {
    return affine_R(rmat2(a - Rat(1), Rat(-1), Rat(1), Rat(-1)), rmat2i(0, 1, -1, 0));
}

// Fills in evaluators from the exact data so every entry exposes callbacks.
inline void attach_evaluators(CatalogEntry& e) {
    if (!e.A_fn && e.A) {
        e.A_fn = [a = *e.A](double w, double t) { return a.evaluate(w, t); };
    }
    if (!e.P_fn && e.known_P) {
        e.P_fn = [p = *e.known_P](double w, double t) { return p.evaluate(w, t); };
        e.Pdot_fn = [pd = e.known_P->differentiate()](double w, double t) { return pd.evaluate(w, t); };
    }
}

inline void tag_case(CatalogEntry& e, bool L_finite, bool p_finite) {
    e.L_finite = L_finite;
    e.p_finite = p_finite;
    e.family_case = L_finite ? (p_finite ? 4 : 3) : (p_finite ? 2 : 1);
}

inline Rat param_or(const std::map<std::string, Rat>& m, const std::string& key, Rat fallback) {
    auto it = m.find(key);
    return it == m.end() ? fallback : it->second;
}

}  // namespace catalog_detail

// A(t) = exp(-w t G) B exp(w t G), P = exp(-w t G), R = B + w G.
//
// B is constant in t but may carry omega powers; G must be an integer
// multiple of [[0,-1],[1,0]] so that exp(w t G) closes after one period
// (anything else throws NonPeriodicGenerator).  With G = g [[0,-1],[1,0]],
// P is the rotation by angle g*w*t and A picks up harmonics at 2|g|:
// conjugating the symmetric part of B by a rotation doubles the angle.
inline GeneratedSystem exp_sandwich(const OmegaPolyMatrix<Rat>& B,
                                    const Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>& G) {
    using catalog_detail::rmat2;
    using catalog_detail::rmat2i;
    namespace mp = boost::multiprecision;

    if (G.rows() != 2 || G.cols() != 2 || B.slice(0).rows() != 2)
        throw std::invalid_argument("exp_sandwich: expects 2x2 B and G");
    if (!G(0, 0).is_zero() || !G(1, 1).is_zero() || G(0, 1) != -G(1, 0))
        throw NonPeriodicGenerator("exp_sandwich: G must be an integer multiple of [[0,-1],[1,0]]");
    const Rat g = G(1, 0);
    if (mp::denominator(g.raw()) != 1)
        throw NonPeriodicGenerator("exp_sandwich: exp(w t G) is not periodic with period 2*pi/w");
    const int sign = g.sign();
    const int m = static_cast<int>(mp::numerator(abs(g).raw()).convert_to<long long>());

    // Traceless/symmetric split of each omega slice of B.  With
    // J = [[0,1],[-1,0]], K = diag(1,-1), X = [[0,1],[1,0]]:
    //   B = alpha I + beta J + sigma1 K + sigma2 X,
    // and rotating by theta = g w t leaves I, J alone while sending
    //   K -> cos(2 theta) K - sin(2 theta) X,
    //   X -> sin(2 theta) K + cos(2 theta) X.
    const Rat half = Rat::ratio(1, 2);
    TrigMatrix<Rat> A(2, 2 * m, B.degree());
    for (int r = 0; r <= B.degree(); ++r) {
        const auto b = B.slice(r);
        const Rat alpha = (b(0, 0) + b(1, 1)) * half;
        const Rat beta = (b(0, 1) - b(1, 0)) * half;
        const Rat sigma1 = (b(0, 0) - b(1, 1)) * half;
        const Rat sigma2 = (b(0, 1) + b(1, 0)) * half;
        if (m == 0) {
            A.set_even(r, 0, b);
            continue;
        }
        A.set_even(r, 0, rmat2(alpha, beta, -beta, alpha));
        A.set_even(r, 2 * m, rmat2(sigma1, sigma2, sigma2, -sigma1));
        const Rat s2 = Rat(sign) * sigma2, s1 = Rat(sign) * sigma1;
        A.set_odd(r, 2 * m, rmat2(s2, -s1, -s1, -s2));
    }
    A.trim();

    TrigMatrix<Rat> P(2, m, 0);
    if (m == 0) {
        P = TrigMatrix<Rat>::identity(2);
    } else {
        P.set_even(0, m, rmat2i(1, 0, 0, 1));
        P.set_odd(0, m, rmat2(Rat(0), Rat(sign), Rat(-sign), Rat(0)));
    }

    const int r_deg = sign == 0 ? B.degree() : std::max(B.degree(), 1);
    std::vector<catalog_detail::RMat> slices;
    for (int r = 0; r <= r_deg; ++r) {
        auto s = r <= B.degree() ? catalog_detail::RMat(B.slice(r))
                                 : catalog_detail::RMat(catalog_detail::RMat::Zero(2, 2));
        if (r == 1) s += G;
        slices.push_back(std::move(s));
    }
    auto R = OmegaPolyMatrix<Rat>::from_slices(std::move(slices));

    return GeneratedSystem{std::move(A), std::move(P), std::move(R)};
}

// ---------------------------------------------------------------------------
// Named families

// Companion form of y'' + [a - 2 q psi(t)] y = 0 for a 1x1 harmonic series
// psi.  No closed factorization is attached: the periodic factor generally
// needs infinitely many harmonics.
inline CatalogEntry hill(Rat a, Rat q, const TrigMatrix<Rat>& psi) {
    using namespace catalog_detail;
    if (psi.size() != 1)
        throw std::invalid_argument("hill: psi must be a 1x1 series");
    CatalogEntry e;
    e.id = "hill";
    e.description = "second-order scalar equation with periodic restoring coefficient, in companion form";
    e.params = {{"a", a}, {"q", q}};

    TrigMatrix<Rat> A(2, psi.harmonics(), psi.omega_degree());
    for (int r = 0; r <= psi.omega_degree(); ++r)
        for (int l = 0; l <= psi.harmonics(); ++l) {
            RMat m = RMat::Zero(2, 2);
            m(1, 0) = Rat(2) * q * psi.even(r, l)(0, 0);
            if (r == 0 && l == 0) {
                m(0, 1) = Rat(1);
                m(1, 0) = m(1, 0) - a;
            }
            A.set_even(r, l, m);
            if (l >= 1) {
                RMat mo = RMat::Zero(2, 2);
                mo(1, 0) = Rat(2) * q * psi.odd(r, l)(0, 0);
                A.set_odd(r, l, mo);
            }
        }
    A.trim();
    e.A = std::move(A);

    tag_case(e, true, false);
    attach_evaluators(e);
    return e;
}

inline CatalogEntry mathieu(Rat a, Rat q) {
    TrigMatrix<Rat> cosine(1, 1, 0);
    catalog_detail::RMat one(1, 1);
    one << Rat(1);
    cosine.set_even(0, 1, one);
    CatalogEntry e = hill(a, q, cosine);
    e.id = "mathieu";
    e.description = "restoring coefficient a - 2 q cos(w t), in companion form";
    return e;
}

// Square-wave restoring coefficient: psi = sgn(cos(w t)).  The system is a
// cycle of two constant matrices, active for quarter / half / quarter of the
// period, so the transition matrix composes from matrix exponentials.
inline CatalogEntry meissner(Rat a, Rat q) {
    using namespace catalog_detail;
    CatalogEntry e;
    e.id = "meissner";
    e.description = "square-wave restoring coefficient, solved by piecewise-constant composition";
    e.params = {{"a", a}, {"q", q}};

    const double ad = a.to_double(), qd = q.to_double();
    Eigen::MatrixXd plus = dmat2(0, 1, 2 * qd - ad, 0);
    Eigen::MatrixXd minus = dmat2(0, 1, -2 * qd - ad, 0);
    PiecewiseDescriptor pw;
    pw.pieces = {{plus, Rat::ratio(1, 4)}, {minus, Rat::ratio(1, 2)}, {plus, Rat::ratio(1, 4)}};
    e.piecewise = std::move(pw);

    e.A_fn = [ad, qd](double w, double t) {
        const double psi = std::cos(w * t) >= 0 ? 1.0 : -1.0;
        return dmat2(0, 1, 2 * qd * psi - ad, 0);
    };
    tag_case(e, false, false);
    return e;
}

// Linearized swinging support: the pivot oscillates vertically with
// amplitude y0, giving restoring coefficient g/l - (y0/l) w^2 cos(w t).
inline CatalogEntry pendulum(Rat length, Rat gravity, Rat y0) {
    using namespace catalog_detail;
    CatalogEntry e;
    e.id = "pendulum";
    e.description = "hanging pendulum with vertically oscillating support, linearized";
    e.params = {{"l", length}, {"g", gravity}, {"Y0", y0}};

    TrigMatrix<Rat> A(2, 1, 2);
    A.set_even(0, 0, rmat2(Rat(0), Rat(1), -(gravity / length), Rat(0)));
    A.set_even(2, 1, rmat2(Rat(0), Rat(0), y0 / length, Rat(0)));
    e.A = std::move(A);

    tag_case(e, true, false);
    attach_evaluators(e);
    return e;
}

// Same support motion, pendulum pointing up: the sign of both restoring
// terms flips.  Fast enough forcing stabilizes the upright position.
inline CatalogEntry inverted_pendulum(Rat length, Rat gravity, Rat y0) {
    using namespace catalog_detail;
    CatalogEntry e;
    e.id = "inverted-pendulum";
    e.description = "inverted pendulum with vertically oscillating support, linearized";
    e.params = {{"l", length}, {"g", gravity}, {"Y0", y0}};

    TrigMatrix<Rat> A(2, 1, 2);
    A.set_even(0, 0, rmat2(Rat(0), Rat(1), gravity / length, Rat(0)));
    A.set_even(2, 1, rmat2(Rat(0), Rat(0), -(y0 / length), Rat(0)));
    e.A = std::move(A);

    tag_case(e, true, false);
    attach_evaluators(e);
    return e;
}

// Series circuit with a periodically modulated elastance: the capacitor
// contributes s0 - s1 g(t) (g a 1x1 harmonic series), R and L are the
// resistance and inductance.
inline CatalogEntry rlc(Rat resistance, Rat inductance, Rat s0, Rat s1, const TrigMatrix<Rat>& g) {
    using namespace catalog_detail;
    if (g.size() != 1)
        throw std::invalid_argument("rlc: modulation g must be a 1x1 series");
    CatalogEntry e;
    e.id = "rlc";
    e.description = "series circuit with periodically modulated elastance, in companion form";
    e.params = {{"R", resistance}, {"L", inductance}, {"s0", s0}, {"s1", s1}};

    TrigMatrix<Rat> A(2, g.harmonics(), g.omega_degree());
    const Rat gain = s1 / inductance;
    for (int r = 0; r <= g.omega_degree(); ++r)
        for (int l = 0; l <= g.harmonics(); ++l) {
            RMat m = RMat::Zero(2, 2);
            m(1, 0) = gain * g.even(r, l)(0, 0);
            if (r == 0 && l == 0) {
                m(0, 1) = Rat(1);
                m(1, 0) = m(1, 0) - s0 / inductance;
                m(1, 1) = -(resistance / inductance);
            }
            A.set_even(r, l, m);
            if (l >= 1) {
                RMat mo = RMat::Zero(2, 2);
                mo(1, 0) = gain * g.odd(r, l)(0, 0);
                A.set_odd(r, l, mo);
            }
        }
    A.trim();
    e.A = std::move(A);

    tag_case(e, true, false);
    attach_evaluators(e);
    return e;
}

// The rotating family: A(t) = a I + b J + [c, d] coupled through harmonic-2
// reflections, with each scalar affine in omega (value0 + omega * value1).
// P is the plain rotation by w t; R collects the constants plus the omega
// shift that the rotation absorbs.
inline CatalogEntry wu_rowH(Rat a0, Rat a1, Rat b0, Rat b1, Rat c0, Rat c1, Rat d0, Rat d1) {
    using namespace catalog_detail;
    CatalogEntry e;
    e.id = "4-4:H";
    e.description = "rotation-generated family with omega-affine coefficients";
    e.params = {{"a0", a0}, {"a1", a1}, {"b0", b0}, {"b1", b1},
                {"c0", c0}, {"c1", c1}, {"d0", d0}, {"d1", d1}};

    TrigMatrix<Rat> A(2, 2, 1);
    A.set_even(0, 0, rmat2(a0, b0, -b0, a0));
    A.set_even(1, 0, rmat2(a1, b1, -b1, a1));
    A.set_even(0, 2, rmat2(-d0, c0, c0, d0));
    A.set_even(1, 2, rmat2(-d1, c1, c1, d1));
    A.set_odd(0, 2, rmat2(c0, d0, d0, -c0));
    A.set_odd(1, 2, rmat2(c1, d1, d1, -c1));
    A.trim();
    e.A = std::move(A);

    TrigMatrix<Rat> P(2, 1, 0);
    P.set_even(0, 1, rmat2i(1, 0, 0, 1));
    P.set_odd(0, 1, rmat2i(0, 1, -1, 0));
    e.known_P = std::move(P);

    e.known_R = affine_R(rmat2(a0 - d0, c0 + b0, c0 - b0, a0 + d0),
                         rmat2(a1 - d1, c1 + b1 - Rat(1), c1 - b1 + Rat(1), a1 + d1));

    tag_case(e, true, true);
    attach_evaluators(e);
    return e;
}

// Classic planar family whose pointwise eigenvalues say nothing about
// stability; parameter a scales the harmonic-2 coupling.
inline CatalogEntry markus_yamabe(Rat a = Rat::ratio(3, 2)) {
    const Rat half = Rat::ratio(1, 2);
    CatalogEntry e = wu_rowH(Rat(-1) + a * half, Rat(0), Rat(1), Rat(0),
                             Rat(0), Rat(0), -a * half, Rat(0));
    e.id = "markus-yamabe";
    e.description = "planar system with frozen-time eigenvalues constant and stable, yet unstable at w = 1";
    e.params = {{"a", a}};
    return e;
}

// Same construction driven by a single damping parameter beta; the usual
// statement of the example evaluates it at w = 1.
inline CatalogEntry aggarwal_infante(Rat beta) {
    const Rat half = Rat::ratio(1, 2);
    CatalogEntry e = wu_rowH(Rat(-1) + beta * half, Rat(0), Rat(1), Rat(0),
                             Rat(0), Rat(0), -beta * half, Rat(0));
    e.id = "aggarwal-infante";
    e.description = "one-parameter damped variant of the rotating family, usually read at w = 1";
    e.params = {{"beta", beta}, {"omega", Rat(1)}};
    return e;
}

// Fixed numeric instance of the rotating family, conventionally evaluated
// at w = 6, where R = [[-10, 6], [6, -1]].
inline CatalogEntry rosenbrock() {
    CatalogEntry e = wu_rowH(Rat::ratio(-11, 2), Rat(0), Rat(6), Rat(0),
                             Rat(6), Rat(0), Rat::ratio(9, 2), Rat(0));
    e.id = "rosenbrock";
    e.description = "numeric instance of the rotating family, usually read at w = 6";
    e.params["omega"] = Rat(6);
    return e;
}

// Three-state system with harmonics up to 5 whose periodic factor closes at
// two harmonics.  Stored to eighths; the matching (P, R) pair is exact.
inline CatalogEntry example_3x3() {
    using namespace catalog_detail;
    CatalogEntry e;
    e.id = "example-3x3";
    e.description = "three-state system with a two-harmonic periodic factor";

    static const long long E0[6][9] = {
        {72, -81, -3, 396, 169, -147, -572, 249, -241},
        {434, -84, -286, 256, 156, -248, 434, -216, -590},
        {248, -36, -132, 396, -836, -396, 572, 0, 588},
        {-154, -108, -223, -256, -79, -232, -154, 24, 233},
        {0, 45, -329, 0, 491, -249, 0, -249, -491},
        {0, 128, 77, 0, -77, 128, 0, 128, 77}};
    static const long long O0[5][9] = {
        {256, -564, 236, 742, -360, 1034, 256, -1780, 104},
        {192, 278, 138, 572, -294, 426, -396, 998, 102},
        {256, -223, 108, -154, -232, 79, 256, 233, -24},
        {0, -329, -45, 0, -249, -491, 0, -491, 249},
        {0, 77, -128, 0, 128, 77, 0, 77, -128}};
    static const long long E1[6][9] = {
        {-12, 4, 28, 4, 0, 8, 12, -4, 12},
        {8, 8, -24, -4, 0, 20, 8, 8, -8},
        {-12, 8, 8, 4, 12, -4, -12, 0, 0},
        {8, 10, -4, 4, -4, 14, 8, 10, -4},
        {0, -4, 12, 0, -12, -4, 0, -4, 12},
        {0, -2, -4, 0, 4, -2, 0, -2, -4}};
    static const long long O1[5][9] = {
        {-4, 0, -12, -8, 16, -24, -4, 16, -12},
        {-4, -4, -4, -12, 0, 0, -4, -12, 4},
        {-4, -4, -10, 8, 14, 4, -4, -4, -10},
        {0, 12, 4, 0, -4, 12, 0, 12, 4},
        {0, -4, 2, 0, -2, -4, 0, -4, 2}};
    auto eighth = [](const long long* v) {
        RMat m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = Rat::ratio(v[3 * i + j], 8);
        return m;
    };
    TrigMatrix<Rat> A(3, 5, 1);
    for (int l = 0; l <= 5; ++l) {
        A.set_even(0, l, eighth(E0[l]));
        A.set_even(1, l, eighth(E1[l]));
        if (l >= 1) {
            A.set_odd(0, l, eighth(O0[l - 1]));
            A.set_odd(1, l, eighth(O1[l - 1]));
        }
    }
    e.A = std::move(A);

    TrigMatrix<Rat> P(3, 2, 0);
    RMat c0(3, 3), c1(3, 3), c2(3, 3), s1(3, 3), s2(3, 3);
    const Rat h = Rat::ratio(1, 2);
    c0 << Rat(0), Rat(0), h, h, Rat(0), Rat(0), Rat(0), Rat(0), h;
    c1 << Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0);
    c2 << Rat(0), Rat(0), h, -h, Rat(0), Rat(0), Rat(0), Rat(0), h;
    s1 << Rat(-1), Rat(1), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1), Rat(0);
    s2 << h, Rat(0), Rat(0), Rat(0), Rat(0), h, h, Rat(0), Rat(0);
    P.set_even(0, 0, c0);
    P.set_even(0, 1, c1);
    P.set_even(0, 2, c2);
    P.set_odd(0, 1, s1);
    P.set_odd(0, 2, s2);
    e.known_P = std::move(P);

    RMat r0(3, 3), r1(3, 3);
    r0 << Rat(75), Rat(-17), Rat(-112), Rat(99), Rat(-22), Rat(-143), Rat(35), Rat(-8), Rat(-53);
    r1 << Rat(-1), Rat(2), Rat(3), Rat(1), Rat(0), Rat(3), Rat(1), Rat(2), Rat(1);
    e.known_R = affine_R(r0, r1);

    tag_case(e, true, true);
    attach_evaluators(e);
    return e;
}

// Equidimensional system on t >= 1: A(t) = [[0, 1], [6 t^{-2}, 0]].  Not
// periodic; carried for its exact transition matrix, which the naive
// exp-of-integral surrogate gets measurably wrong even though A(t1) and
// A(t2) look interchangeable.
inline CatalogEntry cauchy_euler() {
    using namespace catalog_detail;
    CatalogEntry e;
    e.id = "cauchy-euler";
    e.description = "equidimensional two-state system on t >= 1 with exact transition matrix";
    e.family_case = 0;

    e.A_fn = [](double, double t) { return dmat2(0, 1, 6.0 / (t * t), 0); };

    // Fundamental solutions t^3 and t^{-2} give the closed form below; the
    // 1/5 prefactor normalizes phi(t0, t0) = I.
    e.phi_fn = [](double t, double t0) {
        const double t2 = t * t, t3 = t2 * t, t5 = t2 * t3;
        const double u2 = t0 * t0, u3 = u2 * t0, u5 = u2 * u3;
        Eigen::MatrixXd m(2, 2);
        m << (2 * t5 + 3 * u5) / (t2 * u3), (t5 - u5) / (t2 * u2),
            6 * (t5 - u5) / (t3 * u3), (3 * t5 + 2 * u5) / (t3 * u2);
        return Eigen::MatrixXd(m / 5.0);
    };

    // exp of the integral of A: legitimate only when A commutes with its
    // integral, which fails here.
    e.naive_phi_fn = [](double t, double t0) {
        const double s = std::sqrt(6.0 / (t * t0)) * (t - t0);
        const double ch = std::cosh(s), sh = std::sinh(s);
        return dmat2(ch, std::sqrt(t * t0 / 6.0) * sh, std::sqrt(6.0 / (t * t0)) * sh, ch);
    };
    return e;
}

// ---------------------------------------------------------------------------
// The worked 2x2 table, rows addressed as "4-<case>:<letter>"

namespace catalog_detail {

// Case 1 rows: both harmonic counts infinite.  A and P are evaluators.
inline CatalogEntry table1_row(char row, const std::map<std::string, Rat>& overrides) {
    CatalogEntry e;
    switch (row) {
        case 'A': {
            e.description = "triangular system driven by an exponential of sin(w t)/w";
            e.A_fn = [](double w, double t) {
                const double c = std::cos(w * t);
                return dmat2(c, std::exp(2.0 * std::sin(w * t) / w), 0, -c);
            };
            e.P_fn = [](double w, double t) {
                const double f = std::exp(std::sin(w * t) / w);
                return dmat2(f, 0, 0, 1.0 / f);
            };
            e.Pdot_fn = [](double w, double t) {
                const double c = std::cos(w * t), f = std::exp(std::sin(w * t) / w);
                return dmat2(c * f, 0, 0, -c / f);
            };
            e.known_R = const_R(rmat2i(0, 1, 0, 0));
            break;
        }
        case 'B': {
            const Rat a = param_or(overrides, "a", Rat::ratio(3, 2));
            e.params["a"] = a;
            e.description = "mirrored planar family scaled by 1/(2 + cos(w t))";
            const double ad = a.to_double();
            e.A_fn = [ad](double w, double t) {
                const double s1 = std::sin(w * t), c1 = std::cos(w * t);
                const double c2 = std::cos(2 * w * t), s2 = std::sin(2 * w * t);
                const double psi = ad / 2 - 1 + w * s1 / (2 + c1);
                return dmat2(psi + ad / 2 * c2, 1 - ad / 2 * s2, -1 - ad / 2 * s2, psi - ad / 2 * c2);
            };
            e.P_fn = [](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t), g = 1.0 / (2 + c);
                return dmat2(g * c, -g * s, -g * s, -g * c);
            };
            e.Pdot_fn = [](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t), g = 1.0 / (2 + c);
                Eigen::MatrixXd q = dmat2(c, -s, -s, -c);
                Eigen::MatrixXd qdot = w * dmat2(-s, -c, -c, s);
                return Eigen::MatrixXd(w * s * g * g * q + g * qdot);
            };
            e.known_R = mirrored_planar_R(a);
            break;
        }
        case 'C': {
            e.description = "triangular shear scaled by exp(-cos(w t)/w)/(2 + cos(w t))";
            e.A_fn = [](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t);
                const double psi = s + w * s / (2 + c);
                return dmat2(psi, 1 + c, 0, psi);
            };
            e.P_fn = [](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t);
                const double g = std::exp(-c / w) / (2 + c);
                return dmat2(g, g * s / w, 0, g);
            };
            e.Pdot_fn = [](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t);
                const double g = std::exp(-c / w) / (2 + c);
                const double gdot = g * (s + w * s / (2 + c));
                return dmat2(gdot, gdot * s / w + g * c, 0, gdot);
            };
            e.known_R = const_R(rmat2i(0, 1, 0, 0));
            break;
        }
        default:
            throw std::invalid_argument("catalog: unknown row");
    }
    tag_case(e, false, false);
    return e;
}

// Case 2 rows: P closes at finitely many harmonics while A does not.  P is
// exact; A is an evaluator; det P is not constant for these rows, so the
// constant-determinant generator route does not apply.
inline CatalogEntry table2_row(char row, const std::map<std::string, Rat>& overrides) {
    CatalogEntry e;
    switch (row) {
        case 'A': {
            e.description = "triangular system whose periodic factor is a one-harmonic shear";
            e.A_fn = [](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t);
                return dmat2(w * c / (2 + s), (s + w * c + 2) / (1 - s * s / 4) - 1, 0,
                             -w * c / (2 - s));
            };
            TrigMatrix<Rat> P(2, 1, 0);
            P.set_even(0, 0, rmat2i(1, 0, 0, 1));
            P.set_odd(0, 1, rmat2(Rat::ratio(1, 2), Rat(1), Rat(0), Rat::ratio(-1, 2)));
            e.known_P = std::move(P);
            e.known_R = const_R(rmat2i(0, 1, 0, 0));
            break;
        }
        case 'B': {
            e.description = "triangular system with growth rates 3 and 1 and a one-harmonic factor";
            e.A_fn = [](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t), d = 3 + c * c;
                return dmat2(3 + (2 - s) * w * c / d, 1 + 2 * w * c / d, 0, 1 - (2 + s) * w * c / d);
            };
            TrigMatrix<Rat> P(2, 1, 0);
            P.set_even(0, 0, rmat2i(2, 0, 0, 2));
            P.set_odd(0, 1, rmat2i(1, 1, 0, -1));
            e.known_P = std::move(P);
            e.known_R = const_R(rmat2i(3, 1, 0, 1));
            break;
        }
        case 'C': {
            const Rat a = param_or(overrides, "a", Rat::ratio(3, 2));
            e.params["a"] = a;
            e.description = "mirrored planar family whose factor is (2 + sin(w t)) times a reflection";
            const double ad = a.to_double();
            e.A_fn = [ad](double w, double t) {
                const double s1 = std::sin(w * t), c1 = std::cos(w * t);
                const double c2 = std::cos(2 * w * t), s2 = std::sin(2 * w * t);
                const double psi = ad / 2 - 1 + w * c1 / (2 + s1);
                return dmat2(psi + ad / 2 * c2, 1 - ad / 2 * s2, -1 - ad / 2 * s2, psi - ad / 2 * c2);
            };
            // (2 + sin(w t)) [[cos, -sin], [-sin, -cos]]; det = -(2 + sin)^2,
            // never zero but not constant.
            TrigMatrix<Rat> P(2, 2, 0);
            const Rat h = Rat::ratio(1, 2);
            P.set_even(0, 0, rmat2(Rat(0), -h, -h, Rat(0)));
            P.set_even(0, 1, rmat2i(2, 0, 0, -2));
            P.set_odd(0, 1, rmat2i(0, -2, -2, 0));
            P.set_even(0, 2, rmat2(Rat(0), h, h, Rat(0)));
            P.set_odd(0, 2, rmat2(h, Rat(0), Rat(0), -h));
            e.known_P = std::move(P);
            e.known_R = mirrored_planar_R(a);
            break;
        }
        default:
            throw std::invalid_argument("catalog: unknown row");
    }
    tag_case(e, false, true);
    attach_evaluators(e);
    return e;
}

// Case 3 rows: A closes at finitely many harmonics while P does not.  A is
// exact; P is an evaluator built from exponentials of sin/cos over omega.
inline CatalogEntry table3_row(char row, const std::map<std::string, Rat>& overrides) {
    CatalogEntry e;
    switch (row) {
        case 'A': {
            e.description = "decoupled pair with restoring rates +-sin(w t)";
            TrigMatrix<Rat> A(2, 1, 0);
            A.set_odd(0, 1, rmat2i(1, 0, 0, -1));
            e.A = std::move(A);
            e.P_fn = [](double w, double t) {
                const double f = std::exp(-(std::cos(w * t) - 1) / w);
                return dmat2(f, 0, 0, 1.0 / f);
            };
            e.Pdot_fn = [](double w, double t) {
                const double s = std::sin(w * t), f = std::exp(-(std::cos(w * t) - 1) / w);
                return dmat2(s * f, 0, 0, -s / f);
            };
            e.known_R = const_R(rmat2i(0, 0, 0, 0));
            break;
        }
        case 'B': {
            e.description = "triangular system with growth rates 1 and 3 and exponential-of-sine factor";
            TrigMatrix<Rat> A(2, 1, 1);
            A.set_even(0, 0, rmat2i(1, 2, 0, 3));
            A.set_even(1, 1, rmat2i(1, -2, 0, -1));
            e.A = std::move(A);
            e.P_fn = [](double w, double t) {
                const double f = std::exp(std::sin(w * t));
                return dmat2(f, 1 / f, 0, 1 / f);
            };
            e.Pdot_fn = [](double w, double t) {
                const double c = std::cos(w * t), f = std::exp(std::sin(w * t));
                return Eigen::MatrixXd(w * c * dmat2(f, -1 / f, 0, -1 / f));
            };
            e.known_R = const_R(rmat2i(1, 0, 0, 3));
            break;
        }
        case 'C': {
            const Rat a = param_or(overrides, "a", Rat::ratio(3, 2));
            e.params["a"] = a;
            e.description = "mirrored planar family with factor exp(sin + cos - 1) times a reflection";
            const Rat half = Rat::ratio(1, 2);
            TrigMatrix<Rat> A(2, 2, 1);
            A.set_even(0, 0, rmat2(a * half - Rat(1), Rat(1), Rat(-1), a * half - Rat(1)));
            A.set_even(0, 2, rmat2(a * half, Rat(0), Rat(0), -a * half));
            A.set_odd(0, 2, rmat2(Rat(0), -a * half, -a * half, Rat(0)));
            A.set_even(1, 1, rmat2i(1, 0, 0, 1));
            A.set_odd(1, 1, rmat2i(-1, 0, 0, -1));
            e.A = std::move(A);
            e.P_fn = [](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t);
                const double f = std::exp(s + c - 1);
                return dmat2(f * c, -f * s, -f * s, -f * c);
            };
            e.Pdot_fn = [](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t);
                const double f = std::exp(s + c - 1);
                Eigen::MatrixXd q = dmat2(c, -s, -s, -c);
                Eigen::MatrixXd qdot = w * dmat2(-s, -c, -c, s);
                return Eigen::MatrixXd(w * (c - s) * f * q + f * qdot);
            };
            e.known_R = mirrored_planar_R(a);
            break;
        }
        case 'D': {
            e.description = "rotationally coupled pair solved by a rotation through sin(w t)/w";
            TrigMatrix<Rat> A(2, 1, 0);
            A.set_even(0, 0, rmat2i(0, -1, 1, 0));
            A.set_even(0, 1, rmat2i(0, -1, 1, 0));
            A.set_odd(0, 1, rmat2i(1, 0, 0, 1));
            e.A = std::move(A);
            e.P_fn = [](double w, double t) {
                const double f = std::exp(-(std::cos(w * t) - 1) / w);
                const double x = std::sin(w * t) / w;
                return Eigen::MatrixXd(f * dmat2(std::cos(x), -std::sin(x), std::sin(x), std::cos(x)));
            };
            e.Pdot_fn = [pf = e.P_fn](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t);
                Eigen::MatrixXd p = pf(w, t);
                return Eigen::MatrixXd(s * p + c * dmat2(0, -1, 1, 0) * p);
            };
            e.known_R = const_R(rmat2i(0, -1, 1, 0));
            break;
        }
        case 'E': {
            e.description = "hyperbolically coupled pair solved by a boost through sin(w t)/w";
            TrigMatrix<Rat> A(2, 1, 0);
            A.set_even(0, 0, rmat2i(0, 1, 1, 0));
            A.set_even(0, 1, rmat2i(0, 1, 1, 0));
            A.set_odd(0, 1, rmat2i(1, 0, 0, 1));
            e.A = std::move(A);
            e.P_fn = [](double w, double t) {
                const double f = std::exp(-(std::cos(w * t) - 1) / w);
                const double x = std::sin(w * t) / w;
                return Eigen::MatrixXd(f * dmat2(std::cosh(x), std::sinh(x), std::sinh(x), std::cosh(x)));
            };
            e.Pdot_fn = [pf = e.P_fn](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t);
                Eigen::MatrixXd p = pf(w, t);
                return Eigen::MatrixXd(s * p + c * dmat2(0, 1, 1, 0) * p);
            };
            e.known_R = const_R(rmat2i(0, 1, 1, 0));
            break;
        }
        case 'F': {
            e.description = "shear system solved by a nilpotent factor with slope sin(w t)/w";
            TrigMatrix<Rat> A(2, 1, 0);
            A.set_even(0, 0, rmat2i(0, 1, 0, 0));
            A.set_even(0, 1, rmat2i(0, 1, 0, 0));
            A.set_odd(0, 1, rmat2i(1, 0, 0, 1));
            e.A = std::move(A);
            e.P_fn = [](double w, double t) {
                const double f = std::exp(-(std::cos(w * t) - 1) / w);
                return dmat2(f, f * std::sin(w * t) / w, 0, f);
            };
            e.Pdot_fn = [](double w, double t) {
                const double s = std::sin(w * t), c = std::cos(w * t);
                const double f = std::exp(-(c - 1) / w);
                return dmat2(s * f, s * f * s / w + f * c, 0, s * f);
            };
            e.known_R = const_R(rmat2i(0, 1, 0, 0));
            break;
        }
        default:
            throw std::invalid_argument("catalog: unknown row");
    }
    tag_case(e, true, false);
    attach_evaluators(e);
    return e;
}

// The two-harmonic factor shared by rows D and E of the fully finite table;
// det = 3, constant.
inline TrigMatrix<Rat> two_harmonic_factor() {
    TrigMatrix<Rat> P(2, 2, 0);
    P.set_even(0, 1, rmat2i(1, 0, 0, -1));
    P.set_even(0, 2, rmat2i(2, 0, 0, 2));
    P.set_odd(0, 1, rmat2i(0, -1, -1, 0));
    P.set_odd(0, 2, rmat2i(0, 2, -2, 0));
    return P;
}

// Case 4 rows: everything closes.  All three matrices are exact, so these
// rows feed the symbolic residual identity directly.
inline CatalogEntry table4_row(char row, const std::map<std::string, Rat>& overrides) {
    const Rat h = Rat::ratio(1, 2);
    CatalogEntry e;
    switch (row) {
        case 'A': {
            e.description = "two-harmonic factor [[cos, 1 - sin(2wt)], [-1, 2 sin]] around diag(1, -1)";
            TrigMatrix<Rat> A(2, 3, 1);
            A.set_even(0, 0, rmat2i(-1, 0, 0, 1));
            A.set_even(0, 1, rmat2i(0, -2, 0, 0));
            A.set_odd(0, 1, rmat2i(0, 1, -4, 0));
            A.set_odd(0, 2, rmat2i(2, 0, 0, -2));
            A.set_odd(0, 3, rmat2i(0, 1, 0, 0));
            A.set_even(1, 0, rmat2i(-1, 0, 0, 1));
            A.set_even(1, 1, rmat2(Rat(0), Rat::ratio(-3, 2), Rat(2), Rat(0)));
            A.set_even(1, 2, rmat2i(-1, 0, 0, 1));
            A.set_even(1, 3, rmat2(Rat(0), -h, Rat(0), Rat(0)));
            A.set_odd(1, 1, rmat2i(0, 1, 0, 0));
            e.A = std::move(A);

            TrigMatrix<Rat> P(2, 2, 0);
            P.set_even(0, 0, rmat2i(0, 1, -1, 0));
            P.set_even(0, 1, rmat2i(1, 0, 0, 0));
            P.set_odd(0, 1, rmat2i(0, 0, 0, 2));
            P.set_odd(0, 2, rmat2i(0, -1, 0, 0));
            e.known_P = std::move(P);
            e.known_R = const_R(rmat2i(1, 0, 0, -1));
            break;
        }
        case 'B': {
            const Rat a = param_or(overrides, "a", Rat::ratio(3, 2));
            e.params["a"] = a;
            e.description = "Jordan-block core [[a, 1], [0, a]] behind a two-harmonic factor";
            TrigMatrix<Rat> A(2, 3, 1);
            A.set_even(0, 0, rmat2(a, h, Rat(-1), a));
            A.set_even(0, 1, rmat2i(1, 0, 0, -1));
            A.set_even(0, 2, rmat2(Rat(0), h, Rat(0), Rat(0)));
            A.set_even(1, 0, rmat2(-h, Rat(0), Rat(0), h));
            A.set_even(1, 1, rmat2(Rat(0), Rat::ratio(-3, 4), Rat(1), Rat(0)));
            A.set_even(1, 2, rmat2(-h, Rat(0), Rat(0), h));
            A.set_even(1, 3, rmat2(Rat(0), Rat::ratio(-1, 4), Rat(0), Rat(0)));
            A.set_odd(1, 1, rmat2i(0, 1, 0, 0));
            e.A = std::move(A);

            TrigMatrix<Rat> P(2, 2, 0);
            P.set_even(0, 0, rmat2i(0, 1, -1, 0));
            P.set_even(0, 1, rmat2i(1, 0, 0, 0));
            P.set_odd(0, 1, rmat2i(0, 0, 0, 1));
            P.set_odd(0, 2, rmat2(Rat(0), -h, Rat(0), Rat(0)));
            e.known_P = std::move(P);
            e.known_R = const_R(rmat2(a, Rat(1), Rat(0), a));
            break;
        }
        case 'C': {
            const Rat a = param_or(overrides, "a", Rat::ratio(3, 2));
            e.params["a"] = a;
            e.description = "skew core [[0, a], [-a, 0]] behind the factor [[2 cos, cos(2wt)], [1, cos]]";
            TrigMatrix<Rat> A(2, 4, 1);
            A.set_even(0, 0, rmat2(Rat(0), a * Rat::ratio(5, 2), a * Rat::ratio(-3, 2), Rat(0)));
            A.set_even(0, 1, rmat2(a * Rat::ratio(-5, 2), Rat(0), Rat(0), a * Rat::ratio(5, 2)));
            A.set_even(0, 2, rmat2(Rat(0), a * Rat(2), -a * h, Rat(0)));
            A.set_even(0, 3, rmat2(-a * h, Rat(0), Rat(0), a * h));
            A.set_even(0, 4, rmat2(Rat(0), a * h, Rat(0), Rat(0)));
            A.set_odd(1, 1, rmat2i(0, -3, 1, 0));
            A.set_odd(1, 2, rmat2i(1, 0, 0, -1));
            A.set_odd(1, 3, rmat2i(0, -1, 0, 0));
            e.A = std::move(A);

            TrigMatrix<Rat> P(2, 2, 0);
            P.set_even(0, 0, rmat2i(0, 0, 1, 0));
            P.set_even(0, 1, rmat2i(2, 0, 0, 1));
            P.set_even(0, 2, rmat2i(0, 1, 0, 0));
            e.known_P = std::move(P);
            e.known_R = const_R(rmat2(Rat(0), a, -a, Rat(0)));
            break;
        }
        case 'D': {
            e.description = "identity core behind a two-harmonic rotation-like factor";
            TrigMatrix<Rat> A(2, 3, 1);
            A.set_even(0, 0, rmat2i(1, 0, 0, 1));
            A.set_even(1, 0, rmat2(Rat(0), Rat::ratio(7, 3), Rat::ratio(-7, 3), Rat(0)));
            A.set_even(1, 3, rmat2(Rat(0), Rat::ratio(2, 3), Rat::ratio(2, 3), Rat(0)));
            A.set_odd(1, 3, rmat2(Rat::ratio(2, 3), Rat(0), Rat(0), Rat::ratio(-2, 3)));
            e.A = std::move(A);
            e.known_P = two_harmonic_factor();
            e.known_R = const_R(rmat2i(1, 0, 0, 1));
            break;
        }
        case 'E': {
            e.description = "mirrored planar core behind the same two-harmonic factor as row D";
            const Rat th = Rat::ratio(1, 3);
            TrigMatrix<Rat> A(2, 4, 1);
            A.set_even(0, 0, rmat2(Rat(0), Rat(-5) * th, Rat(5) * th, Rat(0)));
            A.set_odd(0, 1, rmat2(Rat(0), Rat(-4) * th, Rat(4) * th, Rat(0)));
            A.set_even(0, 2, rmat2(-th, Rat(0), Rat(0), th));
            A.set_odd(0, 2, rmat2(Rat(0), th, th, Rat(0)));
            A.set_even(0, 3, rmat2(Rat(0), Rat(-4) * th, Rat(-4) * th, Rat(0)));
            A.set_odd(0, 3, rmat2(Rat(-4) * th, Rat(0), Rat(0), Rat(4) * th));
            A.set_even(0, 4, rmat2(Rat(4) * th, Rat(0), Rat(0), Rat(-4) * th));
            A.set_odd(0, 4, rmat2(Rat(0), Rat(-4) * th, Rat(-4) * th, Rat(0)));
            A.set_even(1, 0, rmat2i(0, 4, -4, 0));
            A.set_even(1, 3, rmat2i(0, 2, 2, 0));
            A.set_odd(1, 3, rmat2i(2, 0, 0, -2));
            e.A = std::move(A);
            e.known_P = two_harmonic_factor();
            e.known_R = affine_R(rmat2i(1, -1, 1, -1), rmat2i(0, 1, -1, 0));
            break;
        }
        case 'F': {
            const Rat a = param_or(overrides, "a", Rat::ratio(3, 2));
            e.params["a"] = a;
            e.description = "skew core behind the same factor as row B";
            TrigMatrix<Rat> A(2, 4, 1);
            A.set_even(0, 0, rmat2(Rat(0), a * Rat::ratio(13, 8), a * Rat::ratio(-3, 2), Rat(0)));
            A.set_even(0, 1, rmat2(a * Rat::ratio(5, 4), Rat(0), Rat(0), a * Rat::ratio(-5, 4)));
            A.set_even(0, 2, rmat2(Rat(0), a * h, a * h, Rat(0)));
            A.set_even(0, 3, rmat2(a * Rat::ratio(-1, 4), Rat(0), Rat(0), a * Rat::ratio(1, 4)));
            A.set_even(0, 4, rmat2(Rat(0), a * Rat::ratio(-1, 8), Rat(0), Rat(0)));
            A.set_odd(0, 1, rmat2(-a, Rat(0), Rat(0), a));
            A.set_odd(0, 2, rmat2(Rat(0), -a, Rat(0), Rat(0)));
            A.set_even(1, 0, rmat2(-h, Rat(0), Rat(0), h));
            A.set_even(1, 1, rmat2(Rat(0), Rat::ratio(-3, 4), Rat(1), Rat(0)));
            A.set_even(1, 2, rmat2(-h, Rat(0), Rat(0), h));
            A.set_even(1, 3, rmat2(Rat(0), Rat::ratio(-1, 4), Rat(0), Rat(0)));
            A.set_odd(1, 1, rmat2i(0, 1, 0, 0));
            e.A = std::move(A);

            TrigMatrix<Rat> P(2, 2, 0);
            P.set_even(0, 0, rmat2i(0, 1, -1, 0));
            P.set_even(0, 1, rmat2i(1, 0, 0, 0));
            P.set_odd(0, 1, rmat2i(0, 0, 0, 1));
            P.set_odd(0, 2, rmat2(Rat(0), -h, Rat(0), Rat(0)));
            e.known_P = std::move(P);
            e.known_R = const_R(rmat2(Rat(0), a, -a, Rat(0)));
            break;
        }
        case 'G': {
            const Rat a = param_or(overrides, "a", Rat::ratio(3, 2));
            e.params["a"] = a;
            e.description = "skew core behind a sheared two-harmonic factor";
            TrigMatrix<Rat> A(2, 4, 1);
            A.set_even(0, 0, rmat2(a * Rat::ratio(3, 2), a * Rat::ratio(3, 2), a * Rat::ratio(-25, 8), a * Rat::ratio(-3, 2)));
            A.set_even(0, 1, rmat2(a * Rat::ratio(-5, 4), Rat(0), a * Rat::ratio(5, 2), a * Rat::ratio(5, 4)));
            A.set_even(0, 2, rmat2(-a * h, -a * h, Rat(0), a * h));
            A.set_even(0, 3, rmat2(a * Rat::ratio(1, 4), Rat(0), -a * h, a * Rat::ratio(-1, 4)));
            A.set_even(0, 4, rmat2(Rat(0), Rat(0), a * Rat::ratio(1, 8), Rat(0)));
            A.set_odd(0, 1, rmat2(a, Rat(0), Rat(-2) * a, -a));
            A.set_odd(0, 2, rmat2(Rat(0), Rat(0), a, Rat(0)));
            A.set_even(1, 0, rmat2(h, Rat(0), Rat(-1), -h));
            A.set_even(1, 1, rmat2(Rat(-1), Rat(-1), Rat::ratio(7, 4), Rat(1)));
            A.set_even(1, 2, rmat2(h, Rat(0), Rat(-1), -h));
            A.set_even(1, 3, rmat2(Rat(0), Rat(0), Rat::ratio(1, 4), Rat(0)));
            A.set_odd(1, 1, rmat2i(0, 0, -1, 0));
            e.A = std::move(A);

            TrigMatrix<Rat> P(2, 2, 0);
            P.set_even(0, 0, rmat2i(1, 0, -1, 1));
            P.set_even(0, 1, rmat2i(0, 0, 1, 0));
            P.set_odd(0, 1, rmat2i(0, -1, 0, 1));
            P.set_odd(0, 2, rmat2(Rat(0), Rat(0), Rat(0), -h));
            e.known_P = std::move(P);
            e.known_R = const_R(rmat2(Rat(0), a, -a, Rat(0)));
            break;
        }
        case 'H': {
            CatalogEntry base = wu_rowH(
                param_or(overrides, "a0", Rat::ratio(-11, 2)), param_or(overrides, "a1", Rat(0)),
                param_or(overrides, "b0", Rat(6)), param_or(overrides, "b1", Rat(0)),
                param_or(overrides, "c0", Rat(6)), param_or(overrides, "c1", Rat(0)),
                param_or(overrides, "d0", Rat::ratio(9, 2)), param_or(overrides, "d1", Rat(0)));
            return base;
        }
        default:
            throw std::invalid_argument("catalog: unknown row");
    }
    tag_case(e, true, true);
    attach_evaluators(e);
    return e;
}

}  // namespace catalog_detail

// Row lookup: table is "4-1".."4-4" (the case number), row a letter.
// Parameter overrides replace the default a = 3/2 (or, for 4-4:H, the fixed
// numeric instance of the rotating family).
inline CatalogEntry table_row(const std::string& table, const std::string& row,
                              const std::map<std::string, Rat>& overrides = {}) {
    static const std::map<std::string, std::string> rows_of{
        {"4-1", "ABC"}, {"4-2", "ABC"}, {"4-3", "ABCDEF"}, {"4-4", "ABCDEFGH"}};
    const auto it = rows_of.find(table);
    if (it == rows_of.end() || row.size() != 1 || it->second.find(row[0]) == std::string::npos)
        throw std::invalid_argument("catalog: unknown row '" + table + ":" + row + "'");
    const char r = row[0];
    CatalogEntry e;
    if (table == "4-1")
        e = catalog_detail::table1_row(r, overrides);
    else if (table == "4-2")
        e = catalog_detail::table2_row(r, overrides);
    else if (table == "4-3")
        e = catalog_detail::table3_row(r, overrides);
    else
        e = catalog_detail::table4_row(r, overrides);
    e.id = table + ":" + row;
    return e;
}

// Lookup by id: either a table address ("4-3:D") or a named system with its
// default parameters.
inline CatalogEntry entry(const std::string& id) {
    const auto colon = id.find(':');
    if (colon != std::string::npos)
        return table_row(id.substr(0, colon), id.substr(colon + 1));
    if (id == "mathieu") return mathieu(Rat(1), Rat::ratio(1, 5));
    if (id == "meissner") return meissner(Rat(1), Rat::ratio(3, 10));
    if (id == "pendulum") return pendulum(Rat(1), Rat(10), Rat::ratio(1, 2));
    if (id == "inverted-pendulum") return inverted_pendulum(Rat(1), Rat(10), Rat::ratio(1, 2));
    if (id == "rlc") {
        TrigMatrix<Rat> cosine(1, 1, 0);
        catalog_detail::RMat one(1, 1);
        one << Rat(1);
        cosine.set_even(0, 1, one);
        return rlc(Rat(1), Rat(1), Rat(1), Rat::ratio(1, 2), cosine);
    }
    if (id == "markus-yamabe") return markus_yamabe();
    if (id == "aggarwal-infante") return aggarwal_infante(Rat::ratio(3, 2));
    if (id == "rosenbrock") return rosenbrock();
    if (id == "example-3x3") return example_3x3();
    if (id == "cauchy-euler") return cauchy_euler();
    throw std::invalid_argument("catalog: unknown system id '" + id + "'");
}

// Everything the library ships with default parameters: the full worked
// table plus the named systems.
inline std::vector<CatalogEntry> list_entries() {
    std::vector<CatalogEntry> out;
    const std::pair<const char*, const char*> tables[] = {
        {"4-1", "ABC"}, {"4-2", "ABC"}, {"4-3", "ABCDEF"}, {"4-4", "ABCDEFGH"}};
    for (const auto& [table, rows] : tables)
        for (const char* r = rows; *r; ++r) out.push_back(table_row(table, std::string(1, *r)));
    for (const char* name : {"mathieu", "meissner", "pendulum", "inverted-pendulum", "rlc",
                             "markus-yamabe", "aggarwal-infante", "rosenbrock", "example-3x3",
                             "cauchy-euler"})
        out.push_back(entry(name));
    return out;
}

}  // namespace lptv
