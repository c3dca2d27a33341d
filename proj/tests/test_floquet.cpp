#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "lptv/floquet.hpp"

#include <cmath>
#include <vector>

using namespace lptv;
using fix::q;
using fix::rm2;
using fix::rm2i;
using RM = fix::RM;

namespace {

// Parameter bundle for the family2 fixtures.
struct Prm {
    Rat a0, a1, b0, b1, c0, c1, d0, d1;
};

TrigMatrix<Rat> prm_A(const Prm& f) {
    return fix::family2_A(f.a0, f.a1, f.b0, f.b1, f.c0, f.c1, f.d0, f.d1);
}

OmegaPolyMatrix<Rat> prm_R(const Prm& f) {
    return fix::family2_R(f.a0, f.a1, f.b0, f.b1, f.c0, f.c1, f.d0, f.d1);
}

const std::vector<Prm> prm_sets = {
    {q(-1), q(0), q(1), q(1), q(1, 2), q(0), q(1, 4), q(0)},
    {q(1, 2), q(-1, 3), q(3, 2), q(1, 4), q(-1), q(1, 2), q(2, 3), q(-1, 4)},
    {q(-3, 4), q(1), q(-1, 2), q(2), q(1, 3), q(-2, 3), q(-1), q(1, 2)},
    {q(2), q(-1, 2), q(5, 4), q(-3, 4), q(3, 4), q(1), q(1, 2), q(-2)},
    {q(0), q(1, 4), q(-2), q(1, 2), q(-5, 4), q(-1, 3), q(3, 4), q(3, 2)},
};

RM tile10(const std::vector<RM>& tiles) {
    RM out = RM::Zero(10, 10);
    for (int bi = 0; bi < 5; ++bi)
        for (int bj = 0; bj < 5; ++bj) out.block(2 * bi, 2 * bj, 2, 2) = tiles[5 * bi + bj];
    return out;
}

// Expected omega^1 block of the four-harmonic system at p = 2, written out
// long-hand as a regression anchor for the assembly layout.
RM expected_block55() {
    const RM W = rm2i(0, 4, -4, 0);
    const RM X = rm2i(0, 1, 1, 0);
    const RM Y = rm2i(1, 0, 0, -1);
    const RM I = rm2i(1, 0, 0, 1);
    const RM Z = RM::Zero(2, 2);
    return tile10({W,  Z, Z,      Z,      Z,       //
                   Z,  W, RM(-I), X,      Y,       //
                   Z,  I, W,      Y,      RM(-X),  //
                   Z,  X, Y,      W,      RM(-2 * I),
                   Z,  Y, RM(-X), RM(2 * I), W});
}

// Expected omega^0 block of the conjugated nilpotent-route system (scale
// 3/2) at p = 2; every tile is an integer matrix over 32 times 3.
RM expected_block72() {
    auto g = [](long long a, long long b, long long c, long long d) {
        return RM(rm2i(a, b, c, d) * q(3, 32));
    };
    const RM Z = RM::Zero(2, 2);
    return tile10({g(24, 24, -50, -24), g(-20, 0, 40, 20),  g(16, 0, -32, -16),
                   g(-8, -8, 0, 8),     g(0, 0, 16, 0),     //
                   g(-10, 0, 20, 10),   g(20, 20, -50, -20), g(0, 0, 8, 0),
                   g(-8, 0, 16, 8),     g(8, 0, -16, -8),   //
                   g(8, 0, -16, -8),    g(0, 0, 8, 0),      g(28, 28, -50, -28),
                   g(-8, 0, 16, 8),     g(-12, 0, 24, 12),  //
                   g(-4, -4, 0, 4),     g(-8, 0, 16, 8),    g(-8, 0, 16, 8),
                   g(24, 24, -49, -24), Z,                  //
                   g(0, 0, 8, 0),       g(8, 0, -16, -8),   g(-12, 0, 24, 12),
                   Z,                   g(24, 24, -51, -24)});
}

// Same system re-expressed with its second harmonic as the fundamental of a
// doubled period; reindex_fundamental must map it back exactly.
TrigMatrix<Rat> half_indexed(const Prm& f) {
    TrigMatrix<Rat> a = prm_A(f);
    TrigMatrix<Rat> b(2, 1, a.omega_degree());
    Rat pw(1);
    for (int r = 0; r <= a.omega_degree(); ++r) {
        b.set_even(r, 0, RM(a.even(r, 0) / pw));
        b.set_even(r, 1, RM(a.even(r, 2) / pw));
        b.set_odd(r, 1, RM(a.odd(r, 2) / pw));
        pw = pw * Rat(2);
    }
    b.trim();
    return b;
}

bool same_char_poly(const std::vector<OmegaPoly<Rat>>& a, const std::vector<OmegaPoly<Rat>>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

OmegaPolyMatrix<double> to_double_poly(const OmegaPolyMatrix<Rat>& m) {
    std::vector<Eigen::MatrixXd> s;
    for (int r = 0; r <= m.degree(); ++r) s.push_back(to_double_matrix<Rat>(m.slice(r)));
    return OmegaPolyMatrix<double>::from_slices(std::move(s));
}

double poly_gap(const OmegaPolyMatrix<double>& a, const OmegaPolyMatrix<double>& b) {
    double worst = 0;
    for (int r = 0; r <= std::max(a.degree(), b.degree()); ++r)
        worst = std::max(worst, (a.slice(r) - b.slice(r)).cwiseAbs().maxCoeff());
    return worst;
}

}  // namespace

TEST_CASE("assemble reproduces the frozen omega^1 block of the four-harmonic system") {
    const BlockSystem<Rat> sys = assemble(fix::four_harmonic_A(), 2);
    CHECK(sys.n == 2);
    CHECK(sys.p == 2);
    CHECK(sys.block_dim() == 10);
    CHECK(sys.omega_degree() == 1);
    CHECK(sys.blocks[1] == expected_block55());
}

TEST_CASE("assemble reproduces the frozen omega^0 block of the conjugated route") {
    const BlockSystem<Rat> sys = assemble(fix::conjugated_route_A(q(3, 2)), 2);
    CHECK(sys.blocks[0] == expected_block72());
}

TEST_CASE("assemble: omega^0 block depends only on the omega^0 layer of A") {
    auto keep_r0 = [](const TrigMatrix<Rat>& a) {
        TrigMatrix<Rat> out(a.size(), std::max(a.harmonics(), 0), 0);
        for (int l = 0; l <= a.harmonics(); ++l) {
            out.set_even(0, l, a.even(0, l));
            if (l >= 1) out.set_odd(0, l, a.odd(0, l));
        }
        return out;
    };
    for (const TrigMatrix<Rat>& a : {fix::four_harmonic_A(), fix::big3_A()}) {
        const int p = 2;
        CHECK(assemble(a, p).blocks[0] == assemble(keep_r0(a), p).blocks[0]);
    }
    CHECK_THROWS_AS(assemble(fix::four_harmonic_A(), 0), std::invalid_argument);
}

TEST_CASE("the folded sine row at harmonic zero vanishes for real series") {
    CHECK(zero_row_check(fix::four_harmonic_A(), 2) == 0.0);
    CHECK(zero_row_check(fix::big3_A(), 3) == 0.0);
    CHECK(zero_row_check(prm_A(prm_sets[1]), 2) == 0.0);
    CHECK(zero_row_check(fix::conjugated_route_A(q(3, 2)), 4) == 0.0);
}

TEST_CASE("stack_coeffs round-trips with unstack_coeffs") {
    const TrigMatrix<Rat> P = fix::two_harmonic_P();
    const RM st = stack_coeffs(P, 2);
    CHECK(st.rows() == 10);
    CHECK(st.cols() == 2);
    CHECK(st.topRows(2) == RM(RM::Zero(2, 2)));  // no constant block
    CHECK(st.block(2, 0, 2, 2) == P.even(0, 1));
    CHECK(st.block(4, 0, 2, 2) == P.odd(0, 1));
    CHECK(unstack_coeffs(st, 2, 2) == P);

    // padding to a larger p keeps the series intact
    CHECK(unstack_coeffs(stack_coeffs(fix::big3_P(), 3), 3, 3) == fix::big3_P());

    CHECK_THROWS_AS(stack_coeffs(fix::four_harmonic_A(), 2), std::invalid_argument);
    CHECK_THROWS_AS(unstack_coeffs(st, 3, 2), std::invalid_argument);
}

TEST_CASE("residual vanishes exactly on the known factorization triples") {
    CHECK(residual(fix::four_harmonic_A(), fix::two_harmonic_P(), fix::four_harmonic_R())
              .is_zero());
    const Prm& f = prm_sets[1];
    CHECK(residual(prm_A(f), fix::rotation_P(), prm_R(f)).is_zero());
    CHECK(residual(fix::big3_A(), fix::big3_P(), fix::big3_R()).is_zero());

    // constant system: P = I, R = the constant itself
    const RM C = rm2i(0, 1, -2, 0);
    const TrigMatrix<Rat> A = TrigMatrix<Rat>::constant(C);
    CHECK(residual(A, TrigMatrix<Rat>::identity(2), OmegaPolyMatrix<Rat>::from_slices({C}))
              .is_zero());

    CHECK_THROWS_AS(residual(fix::big3_A(), fix::rotation_P(), fix::four_harmonic_R()),
                    std::invalid_argument);
}

TEST_CASE("residual flags a perturbed periodic factor") {
    const TrigMatrix<double> A = fix::four_harmonic_A().cast<double>();
    TrigMatrix<double> P = fix::two_harmonic_P().cast<double>();
    Eigen::MatrixXd bump = Eigen::MatrixXd::Zero(2, 2);
    bump(0, 0) = 1e-3;
    P.add_even(0, 1, bump);
    std::vector<Eigen::MatrixXd> s;
    for (int r = 0; r <= 1; ++r) s.push_back(to_double_matrix<Rat>(fix::four_harmonic_R().slice(r)));
    const auto R = OmegaPolyMatrix<double>::from_slices(std::move(s));
    CHECK(residual(A, P, R).max_abs_coeff() > 1e-4);
}

TEST_CASE("recover_R reproduces the constant factor from samples") {
    const std::vector<double> ws = {0.3, 0.7, 1.1, 1.6, 2.2};
    const std::vector<double> ts = {0.1, 0.5, 0.9, 1.7, 2.3};

    const Prm& f = prm_sets[3];
    const auto Rnum = recover_R(prm_A(f).cast<double>(), fix::rotation_P().cast<double>(), ws, ts);
    CHECK(Rnum.degree() == 1);
    CHECK(poly_gap(Rnum, to_double_poly(prm_R(f))) < 1e-9);

    const auto Rfour = recover_R(fix::four_harmonic_A().cast<double>(),
                                 fix::two_harmonic_P().cast<double>(), ws, ts);
    CHECK(poly_gap(Rfour, to_double_poly(fix::four_harmonic_R())) < 1e-7);

    const std::vector<double> ts3 = {0.0, 0.4, 0.9, 1.3, 2.0, 2.6};
    const auto Rbig = recover_R(fix::big3_A().cast<double>(), fix::big3_P().cast<double>(), ws, ts3);
    CHECK(poly_gap(Rbig, to_double_poly(fix::big3_R())) < 1e-7);
}

TEST_CASE("recover_R rejects a wrong or singular periodic factor") {
    const std::vector<double> ws = {0.4, 0.9, 1.5};
    const std::vector<double> ts = {0.2, 0.8, 1.9};
    CHECK_THROWS_AS(recover_R(fix::four_harmonic_A().cast<double>(),
                              fix::rotation_P().cast<double>(), ws, ts),
                    NotConstantInT);

    TrigMatrix<double> allcos(2, 1, 0);
    allcos.set_even(0, 1, Eigen::MatrixXd::Ones(2, 2));
    CHECK_THROWS_AS(recover_R(fix::four_harmonic_A().cast<double>(), allcos, ws, ts), SingularP);

    CHECK_THROWS_AS(recover_R(fix::four_harmonic_A().cast<double>(),
                              fix::rotation_P().cast<double>(), {}, ts),
                    std::invalid_argument);
}

TEST_CASE("recover_R_symbolic is exact on rational triples") {
    CHECK(recover_R_symbolic(fix::four_harmonic_A(), fix::two_harmonic_P()) ==
          fix::four_harmonic_R());
    CHECK(recover_R_symbolic(fix::big3_A(), fix::big3_P()) == fix::big3_R());
    const Prm& f = prm_sets[2];
    CHECK(recover_R_symbolic(prm_A(f), fix::rotation_P()) == prm_R(f));
}

TEST_CASE("recover_R_symbolic rejects bad periodic factors") {
    CHECK_THROWS_AS(recover_R_symbolic(fix::four_harmonic_A(), fix::rotation_P()),
                    NotConstantInT);

    TrigMatrix<Rat> allcos(2, 1, 0);
    allcos.set_even(0, 1, RM(RM::Ones(2, 2)));
    CHECK_THROWS_AS(recover_R_symbolic(fix::four_harmonic_A(), allcos), SingularP);

    TrigMatrix<Rat> wobbly(2, 1, 0);  // det = 2 + cos, genuinely t-dependent
    wobbly.set_even(0, 0, rm2i(2, 0, 0, 1));
    wobbly.set_even(0, 1, rm2i(1, 0, 0, 0));
    CHECK_THROWS_AS(recover_R_symbolic(fix::four_harmonic_A(), wobbly), NonConstantDeterminant);
}

TEST_CASE("shift_trace splits the trace and leaves a trace-free system") {
    const Prm& f = prm_sets[3];
    const auto [sh, rec] = shift_trace(prm_A(f));
    CHECK(rec.psi0 == OmegaPoly<Rat>::from_coeffs({f.a0, f.a1}));
    CHECK(rec.psi1.is_zero());
    CHECK(sh == prm_A({q(0), q(0), f.b0, f.b1, f.c0, f.c1, f.d0, f.d1}));

    // already trace-free input passes through untouched
    const auto [sh2, rec2] = shift_trace(fix::four_harmonic_A());
    CHECK(rec2.is_zero());
    CHECK(sh2 == fix::four_harmonic_A());
}

TEST_CASE("shift_trace handles an oscillating trace") {
    TrigMatrix<Rat> a(2, 1, 0);
    a.set_even(0, 1, rm2i(1, 0, 0, 1));  // A = cos(wt) I
    const auto [sh, rec] = shift_trace(a);
    CHECK(sh.is_zero());
    CHECK(rec.psi0 == OmegaPoly<Rat>(Rat(0)));
    CHECK(rec.psi1.even(0, 1)(0, 0) == Rat(1));
    for (const auto [w, t] : {std::pair{1.3, 0.7}, std::pair{0.9, 2.1}})
        CHECK(std::fabs(rec.psi1_antiderivative(w, t) - std::sin(w * t) / w) < 1e-14);

    // a mixed system: constant trace plus an oscillation on the diagonal
    TrigMatrix<Rat> mixed = prm_A(prm_sets[1]);
    mixed.add_even(0, 1, rm2i(1, 0, 0, 1));
    const auto [shm, recm] = shift_trace(mixed);
    CHECK(recm.psi1.even(0, 1)(0, 0) == Rat(1));
    for (int i = 0; i < 32; ++i) {
        const double w = 0.4 + 0.5 * (i % 4);
        const double t = 0.1 + 0.37 * (i / 4);
        CHECK(std::fabs(sh.evaluate(w, t).trace()) < 1e-12);
        CHECK(std::fabs(shm.evaluate(w, t).trace()) < 1e-12);
    }
}

TEST_CASE("unshift restores the removed trace share onto R") {
    const Prm& f = prm_sets[2];
    FloquetSolution<Rat> sol;
    sol.P = fix::rotation_P();
    sol.R = prm_R({q(0), q(0), f.b0, f.b1, f.c0, f.c1, f.d0, f.d1});
    sol.p = 1;
    sol.detP = OmegaPoly<Rat>(Rat(1));
    TraceShift<Rat> sh{OmegaPoly<Rat>::from_coeffs({f.a0, f.a1}), TrigMatrix<Rat>(1, 0, 0)};
    const auto out = unshift(sol, sh);
    CHECK(out.R == prm_R(f));
    CHECK(out.transforms.shift.psi0 == sh.psi0);

    TraceShift<Rat> none{OmegaPoly<Rat>(Rat(0)), TrigMatrix<Rat>(1, 0, 0)};
    CHECK(unshift(sol, none).R == sol.R);
}

TEST_CASE("similarity_R re-gauges a solution by a constant factor") {
    FloquetSolution<Rat> sol;
    sol.P = fix::big3_P();
    sol.R = fix::big3_R();
    sol.p = 2;
    sol.detP = OmegaPoly<Rat>(Rat(1));

    RM I3 = RM::Identity(3, 3);
    const auto same = similarity_R(sol, I3);
    CHECK(same.R == sol.R);
    CHECK(same.P == sol.P);
    CHECK(same.detP == sol.detP);

    // the frozen companion-style gauge of the 3x3 system
    RM V(3, 3);
    V << Rat(44), Rat(150), Rat(2), Rat(484), Rat(198), Rat(0), Rat(-44), Rat(70), Rat(0);
    const auto sim = similarity_R(sol, V);
    RM s0(3, 3), s1(3, 3);
    s0 << Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(0);
    s1 << q(-562, 121), q(-3024, 1331), q(-8, 1331), q(120, 11), q(892, 121), q(3, 121),
        Rat(-320), q(-3024, 11), q(-30, 11);
    CHECK(sim.R.slice(0) == s0);
    CHECK(sim.R.slice(1) == s1);
    CHECK(same_char_poly(sim.R.char_poly(), sol.R.char_poly()));
    CHECK(residual(fix::big3_A(), sim.P, sim.R).is_zero());
    CHECK(sim.detP == OmegaPoly<Rat>(Rat(85184)));
    CHECK(sim.transforms.similarity == V);

    RM V3(3, 3);
    V3 << Rat(1), Rat(2), Rat(0), Rat(0), Rat(1), Rat(-1), Rat(1), Rat(0), Rat(3);
    CHECK(same_char_poly(similarity_R(sol, V3).R.char_poly(), sol.R.char_poly()));

    FloquetSolution<Rat> flat;
    flat.P = fix::rotation_P();
    flat.R = fix::four_harmonic_R();
    CHECK_THROWS_AS(similarity_R(flat, rm2i(1, 1, 1, 1)), std::invalid_argument);
}

TEST_CASE("similarity_A conjugates the coefficients") {
    const TrigMatrix<Rat> a = fix::nilpotent_route_A(q(3, 2));
    CHECK(similarity_A(a, RM(RM::Identity(2, 2))) == a);

    const RM U = rm2i(-1, -1, 1, 0);
    CHECK(similarity_A(a, U) == fix::conjugated_route_A(q(3, 2)));

    const auto sim = similarity_A(a, U);
    for (const auto [w, t] : {std::pair{0.8, 0.3}, std::pair{1.4, 1.9}})
        CHECK(std::fabs(sim.evaluate(w, t).trace() - a.evaluate(w, t).trace()) < 1e-12);

    CHECK_THROWS_AS(similarity_A(a, rm2i(2, 4, 1, 2)), std::invalid_argument);
}

TEST_CASE("canonicalize_at_zero handles nilpotent omega->0 constants") {
    const auto c = canonicalize_at_zero(fix::four_harmonic_A());
    CHECK(c.U == rm2(Rat(1), Rat(1), q(1, 3), Rat(0)));
    CHECK(c.J == rm2i(0, 1, 0, 0));
    CHECK(c.canon.at_omega_zero() == c.J);

    const auto c3 = canonicalize_at_zero(fix::big3_A());
    RM U3(3, 3), J3 = RM::Zero(3, 3);
    U3 << Rat(22), Rat(75), Rat(1), Rat(242), Rat(99), Rat(0), Rat(-22), Rat(35), Rat(0);
    J3(0, 1) = Rat(1);
    J3(1, 2) = Rat(1);
    CHECK(c3.U == U3);
    CHECK(c3.J == J3);
    CHECK(c3.canon.at_omega_zero() == J3);
}

TEST_CASE("canonicalize_at_zero handles the 2x2 spectra") {
    // complex pair: the nilpotent-route system has A(.|0) = (3/2)[[1,2],[-1,-1]]
    const auto cf = canonicalize_at_zero(fix::nilpotent_route_A(q(3, 2)));
    CHECK(cf.U == rm2i(1, 1, -1, 0));
    CHECK(cf.J == rm2(Rat(0), q(3, 2), q(-3, 2), Rat(0)));
    CHECK(cf.canon.at_omega_zero() == cf.J);

    // split real eigenvalues
    TrigMatrix<Rat> split = TrigMatrix<Rat>::constant(rm2i(1, 2, 0, 3));
    split.set_odd(0, 1, rm2i(0, 1, 0, 0));  // sine content leaves A(.|0) alone
    const auto cs = canonicalize_at_zero(split);
    CHECK(cs.U == rm2i(2, 2, 0, 2));
    CHECK(cs.J == rm2i(1, 0, 0, 3));
    CHECK(cs.canon.at_omega_zero() == cs.J);

    // defective eigenvalue
    TrigMatrix<Rat> defect = TrigMatrix<Rat>::constant(rm2i(2, 1, -1, 0));
    defect.set_odd(0, 1, rm2i(0, 0, 1, 0));
    const auto cd = canonicalize_at_zero(defect);
    CHECK(cd.U == rm2i(1, 1, -1, 0));
    CHECK(cd.J == rm2i(1, 1, 0, 1));
    CHECK(cd.canon.at_omega_zero() == cd.J);
}

TEST_CASE("canonicalize_at_zero leaves canonical inputs untouched") {
    const TrigMatrix<Rat> diag = TrigMatrix<Rat>::constant(rm2i(1, 0, 0, 2));
    const auto cd = canonicalize_at_zero(diag);
    CHECK(cd.U == RM(RM::Identity(2, 2)));
    CHECK(cd.J == rm2i(1, 0, 0, 2));
    CHECK(cd.canon == diag);

    const TrigMatrix<Rat> planar = TrigMatrix<Rat>::constant(rm2i(0, 2, -2, 0));
    CHECK(canonicalize_at_zero(planar).U == RM(RM::Identity(2, 2)));
}

TEST_CASE("canonicalize_at_zero refuses unreliable cases") {
    const TrigMatrix<Rat> irr = TrigMatrix<Rat>::constant(rm2i(0, 1, 2, 0));
    CHECK_THROWS_AS(canonicalize_at_zero(irr), CanonicalFormUnreliable);

    Eigen::MatrixXd close(2, 2);
    close << 1.0, 1e-10, 0.0, 1.0 + 1e-10;
    const TrigMatrix<double> tight = TrigMatrix<double>::constant(close);
    CHECK_THROWS_AS(canonicalize_at_zero(tight), CanonicalFormUnreliable);

    // well-separated float spectrum still works
    Eigen::MatrixXd fine(2, 2);
    fine << 1.0, 2.0, 0.0, 3.0;
    const auto cf = canonicalize_at_zero(TrigMatrix<double>::constant(fine));
    CHECK(std::fabs(cf.J(0, 0) - 1.0) < 1e-9);
    CHECK(std::fabs(cf.J(1, 1) - 3.0) < 1e-9);
}

TEST_CASE("solve factors the two-parameter family exactly") {
    for (std::size_t i = 0; i < prm_sets.size(); ++i) {
        const Prm& f = prm_sets[i];
        const TrigMatrix<Rat> A = prm_A(f);
        const auto sol = solve(A);
        CHECK(sol.p == 1);
        CHECK(sol.transforms.omega_divisor == 1);
        CHECK(sol.P.at_omega_zero() == RM(RM::Identity(2, 2)));
        CHECK(same_char_poly(sol.R.char_poly(), prm_R(f).char_poly()));
        CHECK(residual(A, sol.P, sol.R).is_zero());
        CHECK(sol.transforms.shift.psi0 == OmegaPoly<Rat>::from_coeffs({f.a0, f.a1}));
        if (i == 0) {
            CHECK(sol.P == fix::rotation_P());
            CHECK(sol.R == prm_R(f));
            CHECK(sol.detP == OmegaPoly<Rat>(Rat(1)));
        }
    }
}

TEST_CASE("solve honors a harmonic-order hint") {
    const Prm& f = prm_sets[0];
    SolveOptions o;
    o.p_hint = 2;
    const auto sol = solve(prm_A(f), o);
    CHECK(sol.p == 2);
    CHECK(same_char_poly(sol.R.char_poly(), prm_R(f).char_poly()));
    CHECK(residual(prm_A(f), sol.P, sol.R).is_zero());
}

TEST_CASE("solve factors the four-harmonic system") {
    const TrigMatrix<Rat> A = fix::four_harmonic_A();
    const auto sol = solve(A);
    CHECK(sol.p == 2);
    CHECK(sol.P.at_omega_zero() == RM(RM::Identity(2, 2)));
    CHECK(same_char_poly(sol.R.char_poly(), fix::four_harmonic_R().char_poly()));
    CHECK(residual(A, sol.P, sol.R).is_zero());
    CHECK(!(sol.detP.coeff(0) == Rat(0)));
}

TEST_CASE("solve factors the 3x3 five-harmonic system") {
    const TrigMatrix<Rat> A = fix::big3_A();
    const auto sol = solve(A);
    CHECK(sol.p == 2);
    CHECK(sol.P == fix::big3_P());
    CHECK(sol.R == fix::big3_R());
    CHECK(same_char_poly(sol.R.char_poly(), fix::big3_R().char_poly()));
    CHECK(residual(A, sol.P, sol.R).is_zero());
}

TEST_CASE("solve handles the nilpotent route and its conjugate") {
    const std::vector<OmegaPoly<Rat>> expect = {OmegaPoly<Rat>(q(9, 4)), OmegaPoly<Rat>(Rat(0)),
                                                OmegaPoly<Rat>(Rat(1))};
    for (const TrigMatrix<Rat>& A :
         {fix::nilpotent_route_A(q(3, 2)), fix::conjugated_route_A(q(3, 2))}) {
        const auto sol = solve(A);
        CHECK(sol.p == 2);
        CHECK(same_char_poly(sol.R.char_poly(), expect));
        CHECK(residual(A, sol.P, sol.R).is_zero());
    }
}

TEST_CASE("solve returns the identity factorization for constant systems") {
    const RM C = rm2i(0, 1, -2, 0);
    const TrigMatrix<Rat> A = TrigMatrix<Rat>::constant(C);
    const auto sol = solve(A);
    CHECK(sol.P == TrigMatrix<Rat>::identity(2));
    CHECK(sol.R == OmegaPolyMatrix<Rat>::from_slices({C}));
    CHECK(residual(A, sol.P, sol.R).is_zero());
    CHECK(lemma_checks(A, sol).all_pass());
}

TEST_CASE("solve re-indexes a fundamental-only system to half frequency") {
    const Prm& f = prm_sets[1];
    const TrigMatrix<Rat> B = half_indexed(f);
    CHECK(reindex_fundamental(B) == prm_A(f));

    const auto sol = solve(B);
    CHECK(sol.transforms.omega_divisor == 2);
    CHECK(sol.R == prm_R(f));
    CHECK(sol.P.at_omega_zero() == RM(RM::Identity(2, 2)));

    const TrigMatrix<Rat> Pdot = sol.P.differentiate();
    for (const auto [w, t] : {std::pair{0.9, 0.4}, std::pair{1.7, 1.2}, std::pair{2.3, 2.8}}) {
        const Eigen::MatrixXd Pv = sol.P.evaluate(w / 2, t);
        const Eigen::MatrixXd gap = B.evaluate(w, t) * Pv - Pdot.evaluate(w / 2, t) -
                                    Pv * sol.R.eval_d(w / 2);
        CHECK(gap.cwiseAbs().maxCoeff() < 1e-9);
        CHECK((sol.eval_P(w, t) - Pv).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(lemma_checks(B, sol).all_pass());
}

TEST_CASE("solve reports failure when no trigonometric factor exists") {
    TrigMatrix<Rat> A(2, 1, 0);
    A.set_even(0, 0, rm2i(0, 1, -1, 0));
    A.set_even(0, 1, rm2(Rat(0), Rat(0), q(3, 5), Rat(0)));
    CHECK_THROWS_AS(solve(A), NoSolutionWithinPMax);
}

TEST_CASE("solve eigen-block route factors the four-harmonic system in floats") {
    const TrigMatrix<double> A = fix::four_harmonic_A().cast<double>();
    SolveOptions o;
    o.r_select = 1;
    const auto sol = solve(A, o);
    CHECK(sol.p == 2);
    CHECK(sol.residual_norm < 1e-8);
    CHECK(std::fabs(sol.transforms.scale) > 1e-6);

    const TrigMatrix<double> expect = fix::two_harmonic_P().cast<double>().scale(0.5);
    CHECK((sol.P - expect).max_abs_coeff() < 1e-7);

    const auto got = sol.R.char_poly();
    const auto want = to_double_poly(fix::four_harmonic_R()).char_poly();
    REQUIRE(got.size() == want.size());
    for (double w : {0.7, 1.9})
        for (std::size_t k = 0; k < got.size(); ++k)
            CHECK(std::fabs(got[k].eval_d(w) - want[k].eval_d(w)) < 1e-7);
}

TEST_CASE("solve eigen-block route rejects unsupported inputs") {
    SolveOptions o;
    o.r_select = 1;
    CHECK_THROWS_AS(solve(fix::four_harmonic_A(), o), std::invalid_argument);
    CHECK_THROWS_AS(solve(fix::big3_A().cast<double>(), o), std::invalid_argument);
    SolveOptions deep;
    deep.r_select = 7;
    CHECK_THROWS_AS(solve(fix::four_harmonic_A().cast<double>(), deep), std::invalid_argument);
}

TEST_CASE("lemma_checks validates a solution and flags a broken one") {
    const Prm& f = prm_sets[1];
    const TrigMatrix<Rat> A = prm_A(f);
    const auto sol = solve(A);
    const auto rep = lemma_checks(A, sol);
    CHECK(rep.all_pass());
    CHECK(rep.trace_gap == 0.0);
    CHECK(rep.phi_gap < 1e-9);

    auto broken = sol;
    broken.R = sol.R.add_scalar_diag(OmegaPoly<Rat>(q(1, 1000)));
    const auto rep2 = lemma_checks(A, broken);
    CHECK(!rep2.trace_identity);
    CHECK(!rep2.trace_free_shifted);
    CHECK(std::fabs(rep2.trace_gap - 0.002) < 1e-12);
    CHECK(rep2.det_constant);
    CHECK(!rep2.all_pass());
}

TEST_CASE("generate-then-solve round trips on seeded pairs") {
    auto gen = [](const TrigMatrix<Rat>& P, const OmegaPolyMatrix<Rat>& R, Rat d0) {
        const TrigMatrix<Rat> num = P.differentiate() + P * TrigMatrix<Rat>::from_omega_poly(R);
        return (num * P.adjugate()).scale(Rat(1) / d0);
    };
    struct Seed {
        TrigMatrix<Rat> P;
        OmegaPolyMatrix<Rat> R;
        Rat d0;
        int p;
    };
    const std::vector<Seed> seeds = {
        {fix::rotation_P(),
         OmegaPolyMatrix<Rat>::from_slices({rm2i(1, 2, 0, -1), rm2i(0, 1, 1, 0)}), Rat(1), 1},
        {fix::rotation_P(), OmegaPolyMatrix<Rat>::from_slices({rm2(q(1, 2), Rat(0), Rat(1), q(-1, 2))}),
         Rat(1), 1},
        {fix::rotation_P(),
         OmegaPolyMatrix<Rat>::from_slices({rm2i(1, 0, 0, -2), rm2i(0, 1, -1, 0)}), Rat(1), 1},
        {fix::two_harmonic_P(),
         OmegaPolyMatrix<Rat>::from_slices({rm2i(1, -1, 1, -1), rm2i(0, 1, -1, 0)}), Rat(3), 2},
    };
    for (const Seed& s : seeds) {
        const TrigMatrix<Rat> A = gen(s.P, s.R, s.d0);
        const auto sol = solve(A);
        CHECK(sol.p == s.p);
        CHECK(same_char_poly(sol.R.char_poly(), s.R.char_poly()));
        CHECK(residual(A, sol.P, sol.R).is_zero());
    }
}
