// Polynomials in the free frequency omega, and constant-in-time square
// matrices whose entries are such polynomials.  These carry the constant part
// R of a factorization Phi(t,t0) = P(t) e^{(t-t0)R} P(t0)^-1 as well as
// averages and trace data of the periodic coefficient matrices.

#pragma once

#include "lptv/scalar.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>
#include <vector>

namespace lptv {

template <class S>
class OmegaPoly {
public:
    OmegaPoly() : c_{S(0)} {}
    OmegaPoly(S c0) : c_{std::move(c0)} {}

    static OmegaPoly from_coeffs(std::vector<S> coeffs) {
        OmegaPoly p;
        if (!coeffs.empty()) p.c_ = std::move(coeffs);
        p.trim_exact();
        return p;
    }

    // Monomial c * omega^r.
    static OmegaPoly monomial(S c, int r) {
        std::vector<S> v(static_cast<std::size_t>(r) + 1, S(0));
        v.back() = std::move(c);
        return from_coeffs(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }

    S coeff(int r) const {
        if (r < 0 || r >= static_cast<int>(c_.size())) return S(0);
        return c_[static_cast<std::size_t>(r)];
    }

    const std::vector<S>& coeffs() const { return c_; }

    S eval(const S& w) const {  // Horner
        S acc = c_.back();
        for (int r = static_cast<int>(c_.size()) - 2; r >= 0; --r)
            acc = acc * w + c_[static_cast<std::size_t>(r)];
        return acc;
    }

    double eval_d(double w) const {
        double acc = ScalarTraits<S>::to_double(c_.back());
        for (int r = static_cast<int>(c_.size()) - 2; r >= 0; --r)
            acc = acc * w + ScalarTraits<S>::to_double(c_[static_cast<std::size_t>(r)]);
        return acc;
    }

    bool is_zero() const { return c_.size() == 1 && c_[0] == S(0); }

    double max_abs() const {
        double m = 0;
        for (const S& c : c_) {
            double a = std::fabs(ScalarTraits<S>::to_double(c));
            if (a > m) m = a;
        }
        return m;
    }

    OmegaPoly operator+(const OmegaPoly& o) const {
        std::vector<S> v(std::max(c_.size(), o.c_.size()), S(0));
        for (std::size_t r = 0; r < v.size(); ++r)
            v[r] = coeff(static_cast<int>(r)) + o.coeff(static_cast<int>(r));
        return from_coeffs(std::move(v));
    }
    OmegaPoly operator-(const OmegaPoly& o) const {
        std::vector<S> v(std::max(c_.size(), o.c_.size()), S(0));
        for (std::size_t r = 0; r < v.size(); ++r)
            v[r] = coeff(static_cast<int>(r)) - o.coeff(static_cast<int>(r));
        return from_coeffs(std::move(v));
    }
    OmegaPoly operator-() const {
        std::vector<S> v = c_;
        for (S& x : v) x = -x;
        return from_coeffs(std::move(v));
    }
    OmegaPoly operator*(const OmegaPoly& o) const {
        std::vector<S> v(c_.size() + o.c_.size() - 1, S(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
        return from_coeffs(std::move(v));
    }
    OmegaPoly operator*(const S& s) const {
        std::vector<S> v = c_;
        for (S& x : v) x = x * s;
        return from_coeffs(std::move(v));
    }

    // Exact division: returns the quotient when `d` divides this polynomial
    // with zero remainder; throws otherwise.  On the float path "zero" means
    // |remainder| <= tol * (1 + |dividend|).
    OmegaPoly divide_exact(const OmegaPoly& d, double tol = 1e-9) const {
        if (d.is_zero()) throw std::domain_error("OmegaPoly::divide_exact: division by zero polynomial");
        std::vector<S> rem = c_;
        int dn = d.degree();
        S lead = d.c_[static_cast<std::size_t>(dn)];
        int qn = static_cast<int>(rem.size()) - 1 - dn;
        if (qn < 0) qn = -1;
        std::vector<S> q(static_cast<std::size_t>(qn + 1 > 0 ? qn + 1 : 1), S(0));
        for (int k = qn; k >= 0; --k) {
            S f = rem[static_cast<std::size_t>(k + dn)] / lead;
            q[static_cast<std::size_t>(k)] = f;
            for (int j = 0; j <= dn; ++j)
                rem[static_cast<std::size_t>(k + j)] -= f * d.c_[static_cast<std::size_t>(j)];
        }
        double scale = 1 + max_abs();
        for (const S& r : rem) {
            if constexpr (is_exact_v<S>) {
                if (!(r == S(0)))
                    throw std::domain_error("OmegaPoly::divide_exact: nonzero remainder");
            } else {
                if (std::fabs(ScalarTraits<S>::to_double(r)) > tol * scale)
                    throw std::domain_error("OmegaPoly::divide_exact: nonzero remainder");
            }
        }
        return from_coeffs(std::move(q));
    }

    // Drops trailing coefficients that are zero (float path: relatively tiny).
    void trim(double tol = 1e-12) {
        if constexpr (is_exact_v<S>) {
            trim_exact();
        } else {
            double scale = 1 + max_abs();
            while (c_.size() > 1 && std::fabs(ScalarTraits<S>::to_double(c_.back())) <= tol * scale)
                c_.pop_back();
        }
    }

    friend bool operator==(const OmegaPoly& a, const OmegaPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const OmegaPoly& a, const OmegaPoly& b) { return !(a == b); }

private:
    void trim_exact() {
        while (c_.size() > 1 && c_.back() == S(0)) c_.pop_back();
    }

    std::vector<S> c_;  // c_[r] multiplies omega^r; never empty
};

template <class S>
class OmegaPolyMatrix {
public:
    using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

    OmegaPolyMatrix() = default;

    explicit OmegaPolyMatrix(Mat constant) : n_(static_cast<int>(constant.rows())) {
        if (constant.rows() != constant.cols())
            throw std::invalid_argument("OmegaPolyMatrix: matrix must be square");
        slices_.push_back(std::move(constant));
    }

    static OmegaPolyMatrix zero(int n) { return OmegaPolyMatrix(Mat::Zero(n, n)); }

    static OmegaPolyMatrix identity(int n) { return OmegaPolyMatrix(Mat::Identity(n, n)); }

    static OmegaPolyMatrix from_slices(std::vector<Mat> slices) {
        if (slices.empty()) throw std::invalid_argument("OmegaPolyMatrix: no slices");
        OmegaPolyMatrix m;
        m.n_ = static_cast<int>(slices[0].rows());
        for (const Mat& s : slices)
            if (s.rows() != m.n_ || s.cols() != m.n_)
                throw std::invalid_argument("OmegaPolyMatrix: slice size mismatch");
        m.slices_ = std::move(slices);
        m.trim();
        return m;
    }

    int size() const { return n_; }
    int degree() const { return static_cast<int>(slices_.size()) - 1; }

    Mat slice(int r) const {
        if (r < 0 || r >= static_cast<int>(slices_.size())) return Mat::Zero(n_, n_);
        return slices_[static_cast<std::size_t>(r)];
    }

    OmegaPoly<S> entry(int i, int j) const {
        std::vector<S> c;
        c.reserve(slices_.size());
        for (const Mat& s : slices_) c.push_back(s(i, j));
        return OmegaPoly<S>::from_coeffs(std::move(c));
    }

    Mat eval(const S& w) const {
        Mat acc = slices_.back();
        for (int r = degree() - 1; r >= 0; --r)
            acc = (acc * w + slices_[static_cast<std::size_t>(r)]).eval();
        return acc;
    }

    Eigen::MatrixXd eval_d(double w) const {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n_, n_);
        for (int r = degree(); r >= 0; --r) {
            Eigen::MatrixXd s(n_, n_);
            const Mat& src = slices_[static_cast<std::size_t>(r)];
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) s(i, j) = ScalarTraits<S>::to_double(src(i, j));
            acc = acc * w + s;
        }
        return acc;
    }

    OmegaPolyMatrix operator+(const OmegaPolyMatrix& o) const {
        check_size(o);
        std::vector<Mat> v;
        int d = std::max(degree(), o.degree());
        for (int r = 0; r <= d; ++r) v.push_back(slice(r) + o.slice(r));
        return from_slices(std::move(v));
    }
    OmegaPolyMatrix operator-(const OmegaPolyMatrix& o) const {
        check_size(o);
        std::vector<Mat> v;
        int d = std::max(degree(), o.degree());
        for (int r = 0; r <= d; ++r) v.push_back(slice(r) - o.slice(r));
        return from_slices(std::move(v));
    }
    OmegaPolyMatrix operator*(const OmegaPolyMatrix& o) const {
        check_size(o);
        int d = degree() + o.degree();
        std::vector<Mat> v(static_cast<std::size_t>(d) + 1, Mat::Zero(n_, n_));
        for (int r1 = 0; r1 <= degree(); ++r1)
            for (int r2 = 0; r2 <= o.degree(); ++r2)
                v[static_cast<std::size_t>(r1 + r2)] +=
                    slices_[static_cast<std::size_t>(r1)] * o.slices_[static_cast<std::size_t>(r2)];
        return from_slices(std::move(v));
    }
    OmegaPolyMatrix operator*(const S& s) const {
        std::vector<Mat> v = slices_;
        for (Mat& m : v) m *= s;
        return from_slices(std::move(v));
    }
    OmegaPolyMatrix operator-() const {
        std::vector<Mat> v = slices_;
        for (Mat& m : v) m = -m;
        return from_slices(std::move(v));
    }

    // Adds c * omega^r * I.
    OmegaPolyMatrix add_scalar_diag(const OmegaPoly<S>& p) const {
        std::vector<Mat> v;
        int d = std::max(degree(), p.degree());
        for (int r = 0; r <= d; ++r)
            v.push_back(slice(r) + Mat(Mat::Identity(n_, n_) * p.coeff(r)));
        return from_slices(std::move(v));
    }

    OmegaPoly<S> trace() const {
        std::vector<S> c;
        for (const Mat& s : slices_) c.push_back(s.trace());
        return OmegaPoly<S>::from_coeffs(std::move(c));
    }

    // Characteristic polynomial det(lambda I - M) as omega-polynomial
    // coefficients: returns [c_0 .. c_n] with c_n = 1, via the
    // Faddeev-LeVerrier recursion (exact over a field).
    std::vector<OmegaPoly<S>> char_poly() const {
        std::vector<OmegaPoly<S>> c(static_cast<std::size_t>(n_) + 1, OmegaPoly<S>(S(0)));
        c[static_cast<std::size_t>(n_)] = OmegaPoly<S>(S(1));
        OmegaPolyMatrix Mk = *this;  // M_1 = A
        for (int k = 1; k <= n_; ++k) {
            OmegaPoly<S> ck = -(Mk.trace() * ScalarTraits<S>::from_ratio(1, k));
            c[static_cast<std::size_t>(n_ - k)] = ck;
            if (k < n_) Mk = (*this) * Mk.add_scalar_diag(ck);
        }
        return c;
    }

    double max_abs() const {
        double m = 0;
        for (const Mat& s : slices_)
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    m = std::max(m, std::fabs(ScalarTraits<S>::to_double(s(i, j))));
        return m;
    }

    void trim(double tol = 1e-12) {
        double scale = 1 + max_abs();
        auto is_zero_slice = [&](const Mat& s) {
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) {
                    if constexpr (is_exact_v<S>) {
                        if (!(s(i, j) == S(0))) return false;
                    } else {
                        if (std::fabs(ScalarTraits<S>::to_double(s(i, j))) > tol * scale) return false;
                    }
                }
            return true;
        };
        while (slices_.size() > 1 && is_zero_slice(slices_.back())) slices_.pop_back();
    }

    friend bool operator==(const OmegaPolyMatrix& a, const OmegaPolyMatrix& b) {
        if (a.n_ != b.n_) return false;
        int d = std::max(a.degree(), b.degree());
        for (int r = 0; r <= d; ++r)
            if (a.slice(r) != b.slice(r)) return false;
        return true;
    }

private:
    void check_size(const OmegaPolyMatrix& o) const {
        if (n_ != o.n_) throw std::invalid_argument("OmegaPolyMatrix: size mismatch");
    }

    int n_ = 0;
    std::vector<Mat> slices_;  // slices_[r] multiplies omega^r
};

template <class S>
Eigen::MatrixXd to_double_matrix(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = ScalarTraits<S>::to_double(m(i, j));
    return out;
}

}  // namespace lptv
