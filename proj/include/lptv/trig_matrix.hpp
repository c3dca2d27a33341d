// Matrix-valued trigonometric polynomials
//
//     M(omega, t) = sum_r omega^r [ C_r + sum_{l=1}^{L} ( E_{r,l} cos(l omega t)
//                                                       + O_{r,l} sin(l omega t) ) ]
//
// with constant real n x n coefficient matrices.  The l = 0 slot stores the
// whole constant block C_r, not the doubled Fourier coefficient: with the
// conventional series written as A_0^even/2 + sum_l (A_l^even cos + A_l^odd sin),
// our even(r,0) equals A_0^{r,even}/2 and even(r,l) equals A_l^{r,even} for
// l >= 1.  Negative harmonics are never stored; they are defined through the
// parity rules E_{-l} = E_l, O_{-l} = -O_l.
//
// All operations are exact on the rational scalar and carry a relative
// trimming tolerance on the float scalar.  Values are treated as immutable
// once built; the mutating setters exist for construction only.

#pragma once

#include "lptv/omega_poly.hpp"

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lptv {

struct NonConstantDeterminant : std::domain_error {
    explicit NonConstantDeterminant(const std::string& msg) : std::domain_error(msg) {}
};
struct SingularDeterminant : std::domain_error {
    explicit SingularDeterminant(const std::string& msg) : std::domain_error(msg) {}
};

template <class S>
class TrigMatrix {
public:
    using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

    TrigMatrix() = default;

    // Zero series of shape n x n with room for harmonics 0..L and
    // omega-powers 0..N.
    TrigMatrix(int n, int L, int N) : n_(n) {
        if (n < 1 || L < 0 || N < 0) throw std::invalid_argument("TrigMatrix: bad shape");
        even_.assign(static_cast<std::size_t>(N) + 1,
                     std::vector<Mat>(static_cast<std::size_t>(L) + 1, Mat::Zero(n, n)));
        odd_.assign(static_cast<std::size_t>(N) + 1,
                    std::vector<Mat>(static_cast<std::size_t>(L), Mat::Zero(n, n)));
    }

    static TrigMatrix zero(int n) { return TrigMatrix(n, 0, 0); }

    static TrigMatrix constant(Mat c) {
        TrigMatrix m(static_cast<int>(c.rows()), 0, 0);
        if (c.rows() != c.cols()) throw std::invalid_argument("TrigMatrix::constant: must be square");
        m.even_[0][0] = std::move(c);
        return m;
    }

    static TrigMatrix identity(int n) { return constant(Mat::Identity(n, n)); }

    static TrigMatrix from_omega_poly(const OmegaPolyMatrix<S>& p) {
        TrigMatrix m(p.size(), 0, p.degree());
        for (int r = 0; r <= p.degree(); ++r) m.even_[static_cast<std::size_t>(r)][0] = p.slice(r);
        m.trim();
        return m;
    }

    int size() const { return n_; }
    int harmonics() const { return static_cast<int>(even_.empty() ? 0 : even_[0].size()) - 1; }
    int omega_degree() const { return static_cast<int>(even_.size()) - 1; }

    // Coefficient of omega^r cos(l omega t); even(r, 0) is the full constant
    // block of the omega^r slice.
    Mat even(int r, int l) const {
        if (r < 0 || l < 0 || r > omega_degree() || l > harmonics()) return Mat::Zero(n_, n_);
        return even_[static_cast<std::size_t>(r)][static_cast<std::size_t>(l)];
    }

    // Coefficient of omega^r sin(l omega t), l >= 1.
    Mat odd(int r, int l) const {
        if (r < 0 || l < 1 || r > omega_degree() || l > harmonics()) return Mat::Zero(n_, n_);
        return odd_[static_cast<std::size_t>(r)][static_cast<std::size_t>(l - 1)];
    }

    void set_even(int r, int l, Mat m) { grow(r, l); even_[static_cast<std::size_t>(r)][static_cast<std::size_t>(l)] = std::move(m); }
    void set_odd(int r, int l, Mat m) {
        if (l < 1) throw std::invalid_argument("TrigMatrix::set_odd: l must be >= 1");
        grow(r, l);
        odd_[static_cast<std::size_t>(r)][static_cast<std::size_t>(l - 1)] = std::move(m);
    }
    void add_even(int r, int l, const Mat& m) { grow(r, l); even_[static_cast<std::size_t>(r)][static_cast<std::size_t>(l)] += m; }
    void add_odd(int r, int l, const Mat& m) {
        if (l == 0) return;  // sin(0) contributes nothing
        int la = l < 0 ? -l : l;
        grow(r, la);
        // sin(-x) = -sin(x): negative target harmonics fold with a sign flip.
        if (l > 0)
            odd_[static_cast<std::size_t>(r)][static_cast<std::size_t>(la - 1)] += m;
        else
            odd_[static_cast<std::size_t>(r)][static_cast<std::size_t>(la - 1)] -= m;
    }

    Eigen::MatrixXd evaluate(double omega, double t) const {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, n_);
        double wr = 1;
        for (int r = 0; r <= omega_degree(); ++r) {
            Eigen::MatrixXd slice = to_double_matrix<S>(even(r, 0));
            for (int l = 1; l <= harmonics(); ++l) {
                double c = std::cos(l * omega * t), s = std::sin(l * omega * t);
                slice += c * to_double_matrix<S>(even(r, l)) + s * to_double_matrix<S>(odd(r, l));
            }
            out += wr * slice;
            wr *= omega;
        }
        return out;
    }

    // M(t | omega = 0): every omega power above zero vanishes and each cosine
    // collapses to one, so the result is the constant matrix
    // even(0,0) + sum_l even(0,l).
    Mat at_omega_zero() const {
        Mat out = even(0, 0);
        for (int l = 1; l <= harmonics(); ++l) out += even(0, l);
        return out;
    }

    TrigMatrix operator+(const TrigMatrix& o) const {
        check_size(o);
        TrigMatrix out(n_, std::max(harmonics(), o.harmonics()), std::max(omega_degree(), o.omega_degree()));
        for (int r = 0; r <= out.omega_degree(); ++r)
            for (int l = 0; l <= out.harmonics(); ++l) {
                out.even_[r][l] = even(r, l) + o.even(r, l);
                if (l >= 1) out.odd_[r][l - 1] = odd(r, l) + o.odd(r, l);
            }
        out.trim();
        return out;
    }

    TrigMatrix operator-(const TrigMatrix& o) const { return *this + (-o); }

    TrigMatrix operator-() const {
        TrigMatrix out = *this;
        for (auto& row : out.even_)
            for (auto& m : row) m = -m;
        for (auto& row : out.odd_)
            for (auto& m : row) m = -m;
        return out;
    }

    TrigMatrix scale(const S& s) const {
        TrigMatrix out = *this;
        for (auto& row : out.even_)
            for (auto& m : row) m *= s;
        for (auto& row : out.odd_)
            for (auto& m : row) m *= s;
        out.trim();
        return out;
    }

    // Multiplication by a scalar omega-polynomial shifts omega powers.
    TrigMatrix scale(const OmegaPoly<S>& p) const {
        TrigMatrix out(n_, harmonics(), omega_degree() + p.degree());
        for (int s = 0; s <= p.degree(); ++s) {
            if (p.coeff(s) == S(0)) continue;
            for (int r = 0; r <= omega_degree(); ++r)
                for (int l = 0; l <= harmonics(); ++l) {
                    out.add_even(r + s, l, Mat(even(r, l) * p.coeff(s)));
                    if (l >= 1) out.add_odd(r + s, l, Mat(odd(r, l) * p.coeff(s)));
                }
        }
        out.trim();
        return out;
    }

    // Exact product via the product-to-sum identities
    //   cos a cos b = (cos(a-b) + cos(a+b)) / 2
    //   sin a sin b = (cos(a-b) - cos(a+b)) / 2
    //   sin a cos b = (sin(a-b) + sin(a+b)) / 2
    //   cos a sin b = (sin(a+b) - sin(a-b)) / 2
    // The stored constant term is the l = 0 cosine term, so the generic rules
    // cover it with no special case (the two halves land on the same slot).
    TrigMatrix operator*(const TrigMatrix& o) const {
        check_size(o);
        const S half = ScalarTraits<S>::from_ratio(1, 2);
        TrigMatrix out(n_, harmonics() + o.harmonics(), omega_degree() + o.omega_degree());
        for (int r1 = 0; r1 <= omega_degree(); ++r1)
            for (int l1 = 0; l1 <= harmonics(); ++l1)
                for (int r2 = 0; r2 <= o.omega_degree(); ++r2)
                    for (int l2 = 0; l2 <= o.harmonics(); ++l2) {
                        int r = r1 + r2;
                        const Mat e1 = even(r1, l1), e2 = o.even(r2, l2);
                        // cos * cos
                        {
                            Mat c = e1 * e2 * half;
                            out.add_even(r, std::abs(l1 - l2), c);
                            out.add_even(r, l1 + l2, c);
                        }
                        if (l2 >= 1) {  // cos * sin
                            Mat c = e1 * o.odd(r2, l2) * half;
                            out.add_odd(r, l1 + l2, c);
                            out.add_odd(r, l2 - l1, c);
                        }
                        if (l1 >= 1) {  // sin * cos
                            Mat c = odd(r1, l1) * e2 * half;
                            out.add_odd(r, l1 - l2, c);
                            out.add_odd(r, l1 + l2, c);
                        }
                        if (l1 >= 1 && l2 >= 1) {  // sin * sin
                            Mat c = odd(r1, l1) * o.odd(r2, l2) * half;
                            out.add_even(r, std::abs(l1 - l2), c);
                            out.add_even(r, l1 + l2, Mat(-c));
                        }
                    }
        out.trim();
        return out;
    }

    // d/dt, term by term: cos(l omega t) -> -l omega sin(l omega t) and
    // sin(l omega t) -> l omega cos(l omega t).  Raises the omega degree by 1.
    TrigMatrix differentiate() const {
        TrigMatrix out(n_, std::max(harmonics(), 0), omega_degree() + 1);
        for (int r = 0; r <= omega_degree(); ++r)
            for (int l = 1; l <= harmonics(); ++l) {
                out.add_odd(r + 1, l, Mat(even(r, l) * S(-l)));
                out.add_even(r + 1, l, Mat(odd(r, l) * S(l)));
            }
        out.trim();
        return out;
    }

    // (cosine part incl. constant, sine part); the halves satisfy
    // f(-t) = f(t) and f(-t) = -f(t) respectively.
    std::pair<TrigMatrix, TrigMatrix> even_odd_split() const {
        TrigMatrix ev = *this, od(n_, harmonics(), omega_degree());
        for (auto& row : ev.odd_)
            for (auto& m : row) m.setZero();
        for (int r = 0; r <= omega_degree(); ++r)
            for (int l = 1; l <= harmonics(); ++l) od.set_odd(r, l, odd(r, l));
        ev.trim();
        od.trim();
        return {ev, od};
    }

    // Time average over one period: the oscillating terms integrate to zero,
    // leaving the constant (l = 0) blocks per omega power.
    OmegaPolyMatrix<S> average() const {
        std::vector<Mat> slices;
        for (int r = 0; r <= omega_degree(); ++r) slices.push_back(even(r, 0));
        return OmegaPolyMatrix<S>::from_slices(std::move(slices));
    }

    TrigMatrix transpose() const {
        TrigMatrix out(n_, harmonics(), omega_degree());
        for (int r = 0; r <= omega_degree(); ++r)
            for (int l = 0; l <= harmonics(); ++l) {
                out.even_[r][l] = even(r, l).transpose();
                if (l >= 1) out.odd_[r][l - 1] = odd(r, l).transpose();
            }
        out.trim();
        return out;
    }

    // Submatrix with row i and column j removed from every coefficient.
    TrigMatrix minor_matrix(int i, int j) const {
        if (n_ < 2) throw std::logic_error("TrigMatrix::minor_matrix: size 1 has no minors");
        TrigMatrix out(n_ - 1, harmonics(), omega_degree());
        auto drop = [&](const Mat& m) {
            Mat s(n_ - 1, n_ - 1);
            for (int a = 0, ai = 0; a < n_; ++a) {
                if (a == i) continue;
                for (int b = 0, bj = 0; b < n_; ++b) {
                    if (b == j) continue;
                    s(ai, bj) = m(a, b);
                    ++bj;
                }
                ++ai;
            }
            return s;
        };
        for (int r = 0; r <= omega_degree(); ++r)
            for (int l = 0; l <= harmonics(); ++l) {
                out.even_[r][l] = drop(even(r, l));
                if (l >= 1) out.odd_[r][l - 1] = drop(odd(r, l));
            }
        out.trim();
        return out;
    }

    // Cofactor-expansion determinant (1 x 1 result).  The harmonic count of
    // the result is bounded by n * L.
    TrigMatrix determinant() const {
        if (n_ == 1) return *this;
        TrigMatrix out(1, 0, 0);
        for (int j = 0; j < n_; ++j) {
            TrigMatrix entry = pick_entry(0, j);
            TrigMatrix sub = minor_matrix(0, j).determinant();
            TrigMatrix term = entry * sub;
            if (j % 2 == 1) term = -term;
            out = out + term;
        }
        return out;
    }

    // Transposed cofactor matrix; M * adjugate(M) = det(M) * I.  Harmonic
    // count bounded by (n - 1) * L.
    TrigMatrix adjugate() const {
        if (n_ == 1) return identity(1);
        TrigMatrix out(n_, 0, 0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                TrigMatrix cof = minor_matrix(i, j).determinant();
                if ((i + j) % 2 == 1) cof = -cof;
                // adj(j, i) = cofactor(i, j)
                out = out + cof.place_entry(n_, j, i);
            }
        out.trim();
        return out;
    }

    // adjugate / det, valid only when the determinant carries no trig terms.
    TrigMatrix inverse_if_const_det(double tol = 1e-12) const {
        TrigMatrix det = determinant();
        OmegaPoly<S> d = det.constant_part_or_throw(
            "TrigMatrix::inverse_if_const_det: determinant is not constant in t", tol);
        bool zero;
        if constexpr (is_exact_v<S>)
            zero = d.is_zero();
        else
            zero = d.max_abs() <= tol * (1 + det.max_abs_coeff());
        if (zero)
            throw SingularDeterminant("TrigMatrix::inverse_if_const_det: determinant is identically zero");
        TrigMatrix adj = adjugate();
        if (d.degree() == 0) return adj.scale(S(1) / d.coeff(0));
        return adj.divide_by_poly(d);
    }

    // The series as a scalar omega-polynomial, provided no trig term remains.
    OmegaPoly<S> constant_part_or_throw(const std::string& msg, double tol = 1e-12) const {
        if (n_ != 1) throw std::logic_error("TrigMatrix::constant_part_or_throw: scalar series expected");
        double scale = 1 + max_abs_coeff();
        for (int r = 0; r <= omega_degree(); ++r)
            for (int l = 1; l <= harmonics(); ++l) {
                bool bad;
                if constexpr (is_exact_v<S>)
                    bad = !(even(r, l)(0, 0) == S(0)) || !(odd(r, l)(0, 0) == S(0));
                else
                    bad = std::fabs(ScalarTraits<S>::to_double(even(r, l)(0, 0))) > tol * scale ||
                          std::fabs(ScalarTraits<S>::to_double(odd(r, l)(0, 0))) > tol * scale;
                if (bad) throw NonConstantDeterminant(msg);
            }
        std::vector<S> c;
        for (int r = 0; r <= omega_degree(); ++r) c.push_back(even(r, 0)(0, 0));
        return OmegaPoly<S>::from_coeffs(std::move(c));
    }

    double max_abs_coeff() const {
        double m = 0;
        for (const auto& row : even_)
            for (const auto& mat : row)
                for (int i = 0; i < n_; ++i)
                    for (int j = 0; j < n_; ++j)
                        m = std::max(m, std::fabs(ScalarTraits<S>::to_double(mat(i, j))));
        for (const auto& row : odd_)
            for (const auto& mat : row)
                for (int i = 0; i < n_; ++i)
                    for (int j = 0; j < n_; ++j)
                        m = std::max(m, std::fabs(ScalarTraits<S>::to_double(mat(i, j))));
        return m;
    }

    bool is_zero(double tol = 0) const {
        if constexpr (is_exact_v<S>) {
            for (const auto& row : even_)
                for (const auto& mat : row)
                    if (!mat.isZero(S(0))) return false;
            for (const auto& row : odd_)
                for (const auto& mat : row)
                    if (!mat.isZero(S(0))) return false;
            return true;
        } else {
            return max_abs_coeff() <= tol;
        }
    }

    // Removes top harmonics / omega powers whose coefficients vanish.  The
    // float path treats entries below tol * (1 + series max) as zero.
    void trim(double tol = 1e-12) {
        double scale = 1 + max_abs_coeff();
        auto zero_mat = [&](const Mat& m) {
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) {
                    if constexpr (is_exact_v<S>) {
                        if (!(m(i, j) == S(0))) return false;
                    } else {
                        if (std::fabs(ScalarTraits<S>::to_double(m(i, j))) > tol * scale) return false;
                    }
                }
            return true;
        };
        if constexpr (!is_exact_v<S>) {
            // Flush sub-tolerance entries so structural zero tests are stable.
            for (auto& row : even_)
                for (auto& m : row)
                    for (int i = 0; i < n_; ++i)
                        for (int j = 0; j < n_; ++j)
                            if (std::fabs(ScalarTraits<S>::to_double(m(i, j))) <= tol * scale) m(i, j) = S(0);
            for (auto& row : odd_)
                for (auto& m : row)
                    for (int i = 0; i < n_; ++i)
                        for (int j = 0; j < n_; ++j)
                            if (std::fabs(ScalarTraits<S>::to_double(m(i, j))) <= tol * scale) m(i, j) = S(0);
        }
        // Shrink L.
        while (harmonics() > 0) {
            int L = harmonics();
            bool top_zero = true;
            for (int r = 0; r <= omega_degree() && top_zero; ++r)
                top_zero = zero_mat(even(r, L)) && zero_mat(odd(r, L));
            if (!top_zero) break;
            for (auto& row : even_) row.pop_back();
            for (auto& row : odd_) row.pop_back();
        }
        // Shrink N.
        while (omega_degree() > 0) {
            bool top_zero = true;
            for (const auto& m : even_.back())
                if (!zero_mat(m)) { top_zero = false; break; }
            if (top_zero)
                for (const auto& m : odd_.back())
                    if (!zero_mat(m)) { top_zero = false; break; }
            if (!top_zero) break;
            even_.pop_back();
            odd_.pop_back();
        }
    }

    template <class T>
    TrigMatrix<T> cast() const {
        TrigMatrix<T> out(n_, harmonics(), omega_degree());
        for (int r = 0; r <= omega_degree(); ++r)
            for (int l = 0; l <= harmonics(); ++l) {
                typename TrigMatrix<T>::Mat e(n_, n_), o(n_, n_);
                for (int i = 0; i < n_; ++i)
                    for (int j = 0; j < n_; ++j) {
                        e(i, j) = T(ScalarTraits<S>::to_double(even(r, l)(i, j)));
                        if (l >= 1) o(i, j) = T(ScalarTraits<S>::to_double(odd(r, l)(i, j)));
                    }
                out.set_even(r, l, e);
                if (l >= 1) out.set_odd(r, l, o);
            }
        out.trim();
        return out;
    }

    friend bool operator==(const TrigMatrix& a, const TrigMatrix& b) {
        if (a.n_ != b.n_) return false;
        int L = std::max(a.harmonics(), b.harmonics());
        int N = std::max(a.omega_degree(), b.omega_degree());
        for (int r = 0; r <= N; ++r)
            for (int l = 0; l <= L; ++l) {
                if (a.even(r, l) != b.even(r, l)) return false;
                if (l >= 1 && a.odd(r, l) != b.odd(r, l)) return false;
            }
        return true;
    }
    friend bool operator!=(const TrigMatrix& a, const TrigMatrix& b) { return !(a == b); }

    // Entry-wise exact division of every omega-polynomial coefficient by d.
    // Throws std::domain_error when any entry is not divisible.
    TrigMatrix divide_by_poly(const OmegaPoly<S>& d) const {
        int qdeg = omega_degree();  // upper bound; trim fixes it up
        TrigMatrix out(n_, harmonics(), qdeg);
        for (int l = 0; l <= harmonics(); ++l)
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    for (int parity = 0; parity < (l >= 1 ? 2 : 1); ++parity) {
                        std::vector<S> c;
                        for (int r = 0; r <= omega_degree(); ++r)
                            c.push_back(parity == 0 ? even(r, l)(i, j) : odd(r, l)(i, j));
                        OmegaPoly<S> q = OmegaPoly<S>::from_coeffs(std::move(c)).divide_exact(d);
                        for (int r = 0; r <= q.degree(); ++r) {
                            if (r > qdeg)
                                throw std::domain_error("TrigMatrix: quotient degree overflow");
                            if (parity == 0)
                                out.even_[r][l](i, j) = q.coeff(r);
                            else
                                out.odd_[r][l - 1](i, j) = q.coeff(r);
                        }
                    }
        out.trim();
        return out;
    }

private:
    // 1 x 1 series holding entry (i, j).
    TrigMatrix pick_entry(int i, int j) const {
        TrigMatrix out(1, harmonics(), omega_degree());
        for (int r = 0; r <= omega_degree(); ++r)
            for (int l = 0; l <= harmonics(); ++l) {
                out.even_[r][l](0, 0) = even(r, l)(i, j);
                if (l >= 1) out.odd_[r][l - 1](0, 0) = odd(r, l)(i, j);
            }
        out.trim();
        return out;
    }

    // Embeds this 1 x 1 series as entry (i, j) of an n x n zero series.
    TrigMatrix place_entry(int n, int i, int j) const {
        if (n_ != 1) throw std::logic_error("TrigMatrix::place_entry: scalar series expected");
        TrigMatrix out(n, harmonics(), omega_degree());
        for (int r = 0; r <= omega_degree(); ++r)
            for (int l = 0; l <= harmonics(); ++l) {
                out.even_[r][l](i, j) = even(r, l)(0, 0);
                if (l >= 1) out.odd_[r][l - 1](i, j) = odd(r, l)(0, 0);
            }
        return out;
    }

    void grow(int r, int l) {
        if (r < 0 || l < 0) throw std::invalid_argument("TrigMatrix: negative index");
        while (static_cast<int>(even_[0].size()) - 1 < l) {
            for (auto& row : even_) row.push_back(Mat::Zero(n_, n_));
            for (auto& row : odd_) row.push_back(Mat::Zero(n_, n_));
        }
        while (static_cast<int>(even_.size()) - 1 < r) {
            even_.push_back(std::vector<Mat>(even_[0].size(), Mat::Zero(n_, n_)));
            odd_.push_back(std::vector<Mat>(odd_[0].size(), Mat::Zero(n_, n_)));
        }
    }

    void check_size(const TrigMatrix& o) const {
        if (n_ != o.n_) throw std::invalid_argument("TrigMatrix: size mismatch");
    }

    template <class T>
    friend class TrigMatrix;

    int n_ = 0;
    std::vector<std::vector<Mat>> even_;  // even_[r][l]
    std::vector<std::vector<Mat>> odd_;   // odd_[r][l-1]
};

// ---------------------------------------------------------------------------
// Trace data for the diagonal-shift transformation: psi(t) = trace(M)/n is
// split into its constant part psi0 (an omega-polynomial) and the zero-mean
// oscillation psi1.  The antiderivative of psi1 divides each harmonic by
// l*omega, which leaves the polynomial-in-omega class, so it is exposed as a
// numeric evaluator normalized to vanish at t = 0.

template <class S>
struct TraceSeries {
    TrigMatrix<S> trace;  // 1 x 1: trace of the source series
    OmegaPoly<S> psi0;    // constant part of trace/n
    TrigMatrix<S> psi1;   // zero-mean part of trace/n

    double psi1_integral(double omega, double t) const {
        double acc = 0;
        for (int r = 0; r <= psi1.omega_degree(); ++r) {
            double wr1 = std::pow(omega, r - 1);
            for (int l = 1; l <= psi1.harmonics(); ++l) {
                double e = ScalarTraits<S>::to_double(psi1.even(r, l)(0, 0));
                double o = ScalarTraits<S>::to_double(psi1.odd(r, l)(0, 0));
                acc += wr1 * (e * std::sin(l * omega * t) - o * (std::cos(l * omega * t) - 1)) / l;
            }
        }
        return acc;
    }
};

template <class S>
TraceSeries<S> trace_series(const TrigMatrix<S>& m) {
    TraceSeries<S> out;
    TrigMatrix<S> tr(1, m.harmonics(), m.omega_degree());
    for (int r = 0; r <= m.omega_degree(); ++r)
        for (int l = 0; l <= m.harmonics(); ++l) {
            typename TrigMatrix<S>::Mat e(1, 1), o(1, 1);
            e(0, 0) = m.even(r, l).trace();
            tr.set_even(r, l, e);
            if (l >= 1) {
                o(0, 0) = m.odd(r, l).trace();
                tr.set_odd(r, l, o);
            }
        }
    tr.trim();
    const S inv_n = ScalarTraits<S>::from_ratio(1, m.size());
    std::vector<S> p0;
    for (int r = 0; r <= tr.omega_degree(); ++r) p0.push_back(tr.even(r, 0)(0, 0) * inv_n);
    out.psi0 = OmegaPoly<S>::from_coeffs(std::move(p0));
    TrigMatrix<S> psi1 = tr.scale(inv_n);
    for (int r = 0; r <= psi1.omega_degree(); ++r)
        psi1.set_even(r, 0, TrigMatrix<S>::Mat::Zero(1, 1));
    psi1.trim();
    out.psi1 = std::move(psi1);
    out.trace = std::move(tr);
    return out;
}

// ---------------------------------------------------------------------------
// Complex-exponential form  M(t) = sum_{l=-L}^{L} A_l e^{i l omega t}, used by
// the frequency-domain machinery.  omega-polynomial coefficients are
// collapsed at a numeric omega before conversion.

class ExpTrigMatrix {
public:
    ExpTrigMatrix() = default;
    ExpTrigMatrix(int n, int L)
        : n_(n), L_(L), c_(static_cast<std::size_t>(2 * L + 1), Eigen::MatrixXcd::Zero(n, n)) {}

    int size() const { return n_; }
    int harmonics() const { return L_; }

    const Eigen::MatrixXcd& coeff(int l) const {
        static const Eigen::MatrixXcd empty;
        if (l < -L_ || l > L_) {
            zero_.setZero(n_, n_);
            return zero_;
        }
        return c_[static_cast<std::size_t>(l + L_)];
    }
    void set_coeff(int l, Eigen::MatrixXcd m) { c_[static_cast<std::size_t>(l + L_)] = std::move(m); }

    // A real series satisfies A_{-l} = conj(A_l).
    bool is_real(double tol = 1e-12) const {
        for (int l = 0; l <= L_; ++l)
            if ((coeff(-l) - coeff(l).conjugate()).cwiseAbs().maxCoeff() > tol) return false;
        return true;
    }

    Eigen::MatrixXcd evaluate(double omega, double t) const {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_, n_);
        for (int l = -L_; l <= L_; ++l)
            out += coeff(l) * std::exp(std::complex<double>(0, l * omega * t));
        return out;
    }

private:
    int n_ = 0, L_ = 0;
    std::vector<Eigen::MatrixXcd> c_;
    mutable Eigen::MatrixXcd zero_;
};

// Collapses omega powers at the given numeric omega and maps the cosine-sine
// coefficients to exponential ones: A_0 = C, A_{+-l} = (E_l -+ i O_l) / 2.
template <class S>
ExpTrigMatrix to_exponential(const TrigMatrix<S>& m, double omega) {
    ExpTrigMatrix out(m.size(), m.harmonics());
    for (int l = 0; l <= m.harmonics(); ++l) {
        Eigen::MatrixXd E = Eigen::MatrixXd::Zero(m.size(), m.size());
        Eigen::MatrixXd O = Eigen::MatrixXd::Zero(m.size(), m.size());
        double wr = 1;
        for (int r = 0; r <= m.omega_degree(); ++r) {
            E += wr * to_double_matrix<S>(m.even(r, l));
            if (l >= 1) O += wr * to_double_matrix<S>(m.odd(r, l));
            wr *= omega;
        }
        if (l == 0) {
            out.set_coeff(0, E.cast<std::complex<double>>());
        } else {
            std::complex<double> i(0, 1);
            out.set_coeff(l, (E.cast<std::complex<double>>() - i * O.cast<std::complex<double>>()) / 2.0);
            out.set_coeff(-l, (E.cast<std::complex<double>>() + i * O.cast<std::complex<double>>()) / 2.0);
        }
    }
    return out;
}

inline TrigMatrix<double> from_exponential(const ExpTrigMatrix& e, double tol = 1e-10) {
    if (!e.is_real(tol))
        throw std::invalid_argument("from_exponential: coefficients are not conjugate-symmetric");
    TrigMatrix<double> out(e.size(), std::max(e.harmonics(), 0), 0);
    out.set_even(0, 0, e.coeff(0).real());
    for (int l = 1; l <= e.harmonics(); ++l) {
        out.set_even(0, l, (e.coeff(l) + e.coeff(-l)).real());
        out.set_odd(0, l, ((e.coeff(l) - e.coeff(-l)) * std::complex<double>(0, 1)).real());
    }
    out.trim();
    return out;
}

// ---------------------------------------------------------------------------
// 2n x 2n real block embeddings.

// a + ib -> [[a, -b], [b, a]]; multiplicative for the complex product.
template <class S>
TrigMatrix<S> complex_embed(const TrigMatrix<S>& re, const TrigMatrix<S>& im) {
    if (re.size() != im.size()) throw std::invalid_argument("complex_embed: size mismatch");
    int n = re.size();
    int L = std::max(re.harmonics(), im.harmonics());
    int N = std::max(re.omega_degree(), im.omega_degree());
    TrigMatrix<S> out(2 * n, L, N);
    auto blocks = [&](const typename TrigMatrix<S>::Mat& a, const typename TrigMatrix<S>::Mat& b) {
        typename TrigMatrix<S>::Mat m = TrigMatrix<S>::Mat::Zero(2 * n, 2 * n);
        m.topLeftCorner(n, n) = a;
        m.bottomRightCorner(n, n) = a;
        m.topRightCorner(n, n) = -b;
        m.bottomLeftCorner(n, n) = b;
        return m;
    };
    for (int r = 0; r <= N; ++r)
        for (int l = 0; l <= L; ++l) {
            out.set_even(r, l, blocks(re.even(r, l), im.even(r, l)));
            if (l >= 1) out.set_odd(r, l, blocks(re.odd(r, l), im.odd(r, l)));
        }
    out.trim();
    return out;
}

// a + jb with j^2 = +1 -> [[a, b], [b, a]]; multiplicative for the
// split-complex product.
template <class S>
TrigMatrix<S> split_embed(const TrigMatrix<S>& re, const TrigMatrix<S>& im) {
    if (re.size() != im.size()) throw std::invalid_argument("split_embed: size mismatch");
    int n = re.size();
    int L = std::max(re.harmonics(), im.harmonics());
    int N = std::max(re.omega_degree(), im.omega_degree());
    TrigMatrix<S> out(2 * n, L, N);
    auto blocks = [&](const typename TrigMatrix<S>::Mat& a, const typename TrigMatrix<S>::Mat& b) {
        typename TrigMatrix<S>::Mat m = TrigMatrix<S>::Mat::Zero(2 * n, 2 * n);
        m.topLeftCorner(n, n) = a;
        m.bottomRightCorner(n, n) = a;
        m.topRightCorner(n, n) = b;
        m.bottomLeftCorner(n, n) = b;
        return m;
    };
    for (int r = 0; r <= N; ++r)
        for (int l = 0; l <= L; ++l) {
            out.set_even(r, l, blocks(re.even(r, l), im.even(r, l)));
            if (l >= 1) out.set_odd(r, l, blocks(re.odd(r, l), im.odd(r, l)));
        }
    out.trim();
    return out;
}

// Parity-coupled embedding [[A_odd, A_even], [A_even, A_odd]] built directly
// on coefficients: sine terms populate the diagonal blocks, cosine terms the
// off-diagonal ones.
template <class S>
TrigMatrix<S> evenodd_embed(const TrigMatrix<S>& a) {
    int n = a.size();
    TrigMatrix<S> out(2 * n, a.harmonics(), a.omega_degree());
    for (int r = 0; r <= a.omega_degree(); ++r)
        for (int l = 0; l <= a.harmonics(); ++l) {
            typename TrigMatrix<S>::Mat e = TrigMatrix<S>::Mat::Zero(2 * n, 2 * n);
            e.topRightCorner(n, n) = a.even(r, l);
            e.bottomLeftCorner(n, n) = a.even(r, l);
            out.set_even(r, l, e);
            if (l >= 1) {
                typename TrigMatrix<S>::Mat o = TrigMatrix<S>::Mat::Zero(2 * n, 2 * n);
                o.topLeftCorner(n, n) = a.odd(r, l);
                o.bottomRightCorner(n, n) = a.odd(r, l);
                out.set_odd(r, l, o);
            }
        }
    out.trim();
    return out;
}

}  // namespace lptv
