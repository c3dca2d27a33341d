// Shared exact fixtures used across the test suites: the small closed-form
// factorization pairs and the 3x3 five-harmonic system, all with rational
// coefficients.
#pragma once

#include "lptv/trig_matrix.hpp"
#include "lptv/rational.hpp"

namespace fix {

using lptv::Rat;
using lptv::TrigMatrix;
using RM = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

inline Rat q(long long n, long long d = 1) { return Rat::ratio(n, d); }

inline RM rm2(Rat a, Rat b, Rat c, Rat d) {
    RM m(2, 2);
    m << a, b, c, d;
    return m;
}

inline RM rm2i(long long a, long long b, long long c, long long d) {
    return rm2(Rat(a), Rat(b), Rat(c), Rat(d));
}

// P(t) = [[cos, sin], [-sin, cos]] (fundamental rotation).
inline TrigMatrix<Rat> rotation_P() {
    TrigMatrix<Rat> p(2, 1, 0);
    p.set_even(0, 1, rm2i(1, 0, 0, 1));
    p.set_odd(0, 1, rm2i(0, 1, -1, 0));
    return p;
}

// P(t) = [[2cos(2wt)+cos(wt), 2sin(2wt)-sin(wt)],
//         [-2sin(2wt)-sin(wt), 2cos(2wt)-cos(wt)]], det = 3.
inline TrigMatrix<Rat> two_harmonic_P() {
    TrigMatrix<Rat> p(2, 2, 0);
    p.set_even(0, 1, rm2i(1, 0, 0, -1));
    p.set_even(0, 2, rm2i(2, 0, 0, 2));
    p.set_odd(0, 1, rm2i(0, -1, -1, 0));
    p.set_odd(0, 2, rm2i(0, 2, -2, 0));
    return p;
}

// Two-parameter-per-coefficient 2x2 family with constant trace a0 + a1*w:
// generated by P = rotation and R = [[av-dv, cv+bv-w], [cv-bv+w, av+dv]]
// with xv = x0 + x1*w.
inline TrigMatrix<Rat> family2_A(Rat a0, Rat a1, Rat b0, Rat b1,
                                 Rat c0, Rat c1, Rat d0, Rat d1) {
    TrigMatrix<Rat> A(2, 2, 1);
    const RM I = rm2i(1, 0, 0, 1), J = rm2i(0, 1, -1, 0);
    const RM C2 = rm2i(0, 1, 1, 0), D2 = rm2i(-1, 0, 0, 1);
    const RM S2c = rm2i(1, 0, 0, -1), S2d = rm2i(0, 1, 1, 0);
    A.set_even(0, 0, RM(I * a0 + J * b0));
    A.set_even(1, 0, RM(I * a1 + J * b1));
    A.set_even(0, 2, RM(C2 * c0 + D2 * d0));
    A.set_even(1, 2, RM(C2 * c1 + D2 * d1));
    A.set_odd(0, 2, RM(S2c * c0 + S2d * d0));
    A.set_odd(1, 2, RM(S2c * c1 + S2d * d1));
    A.trim();
    return A;
}

// The matching exact R for family2_A.
inline lptv::OmegaPolyMatrix<Rat> family2_R(Rat a0, Rat a1, Rat b0, Rat b1,
                                            Rat c0, Rat c1, Rat d0, Rat d1) {
    std::vector<RM> slices;
    slices.push_back(rm2(a0 - d0, c0 + b0, c0 - b0, a0 + d0));
    slices.push_back(rm2(a1 - d1, c1 + b1 - Rat(1), c1 - b1 + Rat(1), a1 + d1));
    return lptv::OmegaPolyMatrix<Rat>::from_slices(std::move(slices));
}

// Oscillator family A(t) = [[-1+a/2+(a/2)cos2, 1-(a/2)sin2],
//                           [-1-(a/2)sin2,    -1+a/2-(a/2)cos2]].
inline TrigMatrix<Rat> oscillator_A(Rat a) {
    const Rat h = a / Rat(2);
    return family2_A(Rat(-1) + h, Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), -h, Rat(0));
}

// Four-harmonic 2x2 system; solved by two_harmonic_P() with
// R = [[1, w-1], [1-w, -1]].
inline TrigMatrix<Rat> four_harmonic_A() {
    TrigMatrix<Rat> A(2, 4, 1);
    const Rat t3 = q(1, 3);
    auto sc = [&](long long a, long long b, long long c, long long d) {
        return RM(rm2i(a, b, c, d) * t3);
    };
    A.set_even(0, 0, sc(0, -5, 5, 0));
    A.set_even(0, 2, sc(-1, 0, 0, 1));
    A.set_even(0, 3, sc(0, -4, -4, 0));
    A.set_even(0, 4, sc(4, 0, 0, -4));
    A.set_odd(0, 1, sc(0, -4, 4, 0));
    A.set_odd(0, 2, sc(0, 1, 1, 0));
    A.set_odd(0, 3, sc(-4, 0, 0, 4));
    A.set_odd(0, 4, sc(0, -4, -4, 0));
    A.set_even(1, 0, rm2i(0, 4, -4, 0));
    A.set_even(1, 3, rm2i(0, 2, 2, 0));
    A.set_odd(1, 3, rm2i(2, 0, 0, -2));
    return A;
}

inline lptv::OmegaPolyMatrix<Rat> four_harmonic_R() {
    std::vector<RM> s;
    s.push_back(rm2i(1, -1, 1, -1));
    s.push_back(rm2i(0, 1, -1, 0));
    return lptv::OmegaPolyMatrix<Rat>::from_slices(std::move(s));
}

// Nilpotent-at-zero system with one fundamental and L = 4, scale parameter a.
// Solved by P = [[cos, 1 - sin(2wt)/2], [-1, sin]] with R = [[0, a], [-a, 0]].
inline TrigMatrix<Rat> nilpotent_route_A(Rat a) {
    TrigMatrix<Rat> A(2, 4, 1);
    auto sc = [&](Rat x, Rat y, Rat z, Rat w) { return RM(rm2(x, y, z, w) * a); };
    A.set_even(0, 0, sc(Rat(0), q(13, 8), q(-3, 2), Rat(0)));
    A.set_even(0, 1, sc(q(5, 4), Rat(0), Rat(0), q(-5, 4)));
    A.set_even(0, 2, sc(Rat(0), q(1, 2), q(1, 2), Rat(0)));
    A.set_even(0, 3, sc(q(-1, 4), Rat(0), Rat(0), q(1, 4)));
    A.set_even(0, 4, sc(Rat(0), q(-1, 8), Rat(0), Rat(0)));
    A.set_odd(0, 1, sc(Rat(-1), Rat(0), Rat(0), Rat(1)));
    A.set_odd(0, 2, sc(Rat(0), Rat(-1), Rat(0), Rat(0)));
    A.set_even(1, 0, rm2(q(-1, 2), Rat(0), Rat(0), q(1, 2)));
    A.set_even(1, 1, rm2(Rat(0), q(-3, 4), Rat(1), Rat(0)));
    A.set_even(1, 2, rm2(q(-1, 2), Rat(0), Rat(0), q(1, 2)));
    A.set_even(1, 3, rm2(Rat(0), q(-1, 4), Rat(0), Rat(0)));
    A.set_odd(1, 1, rm2(Rat(0), Rat(1), Rat(0), Rat(0)));
    return A;
}

// Conjugated variant of nilpotent_route_A (same R up to similarity); scale a.
inline TrigMatrix<Rat> conjugated_route_A(Rat a) {
    TrigMatrix<Rat> A(2, 4, 1);
    auto sc = [&](Rat x, Rat y, Rat z, Rat w) { return RM(rm2(x, y, z, w) * a); };
    A.set_even(0, 0, sc(q(3, 2), q(3, 2), q(-25, 8), q(-3, 2)));
    A.set_even(0, 1, sc(q(-5, 4), Rat(0), q(5, 2), q(5, 4)));
    A.set_even(0, 2, sc(q(-1, 2), q(-1, 2), Rat(0), q(1, 2)));
    A.set_even(0, 3, sc(q(1, 4), Rat(0), q(-1, 2), q(-1, 4)));
    A.set_even(0, 4, sc(Rat(0), Rat(0), q(1, 8), Rat(0)));
    A.set_odd(0, 1, sc(Rat(1), Rat(0), Rat(-2), Rat(-1)));
    A.set_odd(0, 2, sc(Rat(0), Rat(0), Rat(1), Rat(0)));
    A.set_even(1, 0, rm2(q(1, 2), Rat(0), Rat(-1), q(-1, 2)));
    A.set_even(1, 1, rm2(Rat(-1), Rat(-1), q(7, 4), Rat(1)));
    A.set_even(1, 2, rm2(q(1, 2), Rat(0), Rat(-1), q(-1, 2)));
    A.set_even(1, 3, rm2(Rat(0), Rat(0), q(1, 4), Rat(0)));
    A.set_odd(1, 1, rm2(Rat(0), Rat(0), Rat(-1), Rat(0)));
    return A;
}

// 3x3 system with L = 5 harmonics and omega-degree 1; all coefficients are
// integers over 8.
inline TrigMatrix<Rat> big3_A() {
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
    auto mk = [](const long long* v) {
        RM m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = Rat::ratio(v[3 * i + j], 8);
        return m;
    };
    TrigMatrix<Rat> A(3, 5, 1);
    for (int l = 0; l <= 5; ++l) {
        A.set_even(0, l, mk(E0[l]));
        A.set_even(1, l, mk(E1[l]));
        if (l >= 1) {
            A.set_odd(0, l, mk(O0[l - 1]));
            A.set_odd(1, l, mk(O1[l - 1]));
        }
    }
    return A;
}

// The P(t) solving big3_A with P(t|w=0) = I.
inline TrigMatrix<Rat> big3_P() {
    TrigMatrix<Rat> P(3, 2, 0);
    RM c0(3, 3), c1(3, 3), c2(3, 3), s1(3, 3), s2(3, 3);
    c0 << Rat(0), Rat(0), q(1, 2), q(1, 2), Rat(0), Rat(0), Rat(0), Rat(0), q(1, 2);
    c1 << Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0);
    c2 << Rat(0), Rat(0), q(1, 2), q(-1, 2), Rat(0), Rat(0), Rat(0), Rat(0), q(1, 2);
    s1 << Rat(-1), Rat(1), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1), Rat(0);
    s2 << q(1, 2), Rat(0), Rat(0), Rat(0), Rat(0), q(1, 2), q(1, 2), Rat(0), Rat(0);
    P.set_even(0, 0, c0);
    P.set_even(0, 1, c1);
    P.set_even(0, 2, c2);
    P.set_odd(0, 1, s1);
    P.set_odd(0, 2, s2);
    return P;
}

// The matching R for big3_A / big3_P.
inline lptv::OmegaPolyMatrix<Rat> big3_R() {
    RM r0(3, 3), r1(3, 3);
    r0 << Rat(75), Rat(-17), Rat(-112), Rat(99), Rat(-22), Rat(-143), Rat(35), Rat(-8), Rat(-53);
    r1 << Rat(-1), Rat(2), Rat(3), Rat(1), Rat(0), Rat(3), Rat(1), Rat(2), Rat(1);
    std::vector<RM> s{r0, r1};
    return lptv::OmegaPolyMatrix<Rat>::from_slices(std::move(s));
}

}  // namespace fix
