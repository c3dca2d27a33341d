// Exact rational scalar type used by the "rational path" of the toolkit.
//
// Rat wraps an arbitrary-precision rational and plugs into Eigen dense
// matrices so that LU / kernel computations run without rounding.  The float
// path uses plain double; everything that is generic over the two scalar
// kinds lives behind ScalarTraits (see scalar.hpp).

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace lptv {

class Rat {
public:
    using rep = boost::multiprecision::cpp_rational;

    Rat() : v_(0) {}
    Rat(int i) : v_(i) {}
    Rat(long i) : v_(i) {}
    Rat(long long i) : v_(static_cast<std::int64_t>(i)) {}
    explicit Rat(rep v) : v_(std::move(v)) {}

    static Rat ratio(long long num, long long den) {
        if (den == 0) throw std::invalid_argument("Rat::ratio: zero denominator");
        return Rat(rep(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)));
    }

    // Accepts "p/q", integers, and plain decimal strings ("-1.25", "3e2").
    // Decimals are converted exactly (1.25 -> 5/4), keeping file input on the
    // rational path lossless.
    static Rat parse(const std::string& text);

    const rep& raw() const { return v_; }

    double to_double() const { return v_.template convert_to<double>(); }

    bool is_zero() const { return v_.is_zero(); }
    int sign() const { return v_.sign(); }

    // "p/q" when the denominator is not 1, otherwise just "p".
    std::string str() const;

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
    friend Rat operator-(const Rat& a) { return Rat(-a.v_); }
    friend Rat operator+(const Rat& a) { return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    rep v_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

// Square root when it exists in the rationals, nullopt otherwise.
inline std::optional<Rat> exact_sqrt(const Rat& x) {
    if (x.sign() < 0) return std::nullopt;
    namespace mp = boost::multiprecision;
    const mp::cpp_int nu = mp::numerator(x.raw());
    const mp::cpp_int de = mp::denominator(x.raw());
    mp::cpp_int sn = mp::sqrt(nu);
    mp::cpp_int sd = mp::sqrt(de);
    if (sn * sn != nu || sd * sd != de) return std::nullopt;
    return Rat(Rat::rep(sn, sd));
}

namespace detail {
// cpp_int's string constructor treats a leading 0 as an octal prefix, so
// integer text goes through this instead.
inline boost::multiprecision::cpp_int parse_int(std::string s, const std::string& original) {
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("Rat::parse: bad integer in '" + original + "'");
    boost::multiprecision::cpp_int v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("Rat::parse: bad integer in '" + original + "'");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? boost::multiprecision::cpp_int(-v) : v;
}
}  // namespace detail

inline Rat Rat::parse(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t end = text.find_last_not_of(" \t");
    if (begin == std::string::npos)
        throw std::invalid_argument("Rat::parse: empty string");
    std::string s = text.substr(begin, end - begin + 1);

    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        using boost::multiprecision::cpp_int;
        cpp_int num = detail::parse_int(s.substr(0, slash), text);
        cpp_int den = detail::parse_int(s.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("Rat::parse: zero denominator in '" + text + "'");
        return Rat(rep(num, den));
    }

    // Decimal / integer form, optionally with an exponent.
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    std::string digits;
    long frac_len = 0;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_len;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            break;
        } else {
            throw std::invalid_argument("Rat::parse: bad numeric literal '" + text + "'");
        }
    }
    long exp10 = 0;
    if (i < s.size()) {  // exponent part
        ++i;             // consume 'e'
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = (s[i] == '-');
            ++i;
        }
        if (i >= s.size()) throw std::invalid_argument("Rat::parse: bad exponent in '" + text + "'");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("Rat::parse: bad exponent in '" + text + "'");
            exp10 = exp10 * 10 + (s[i] - '0');
            if (exp10 > 100000) throw std::invalid_argument("Rat::parse: exponent out of range");
        }
        if (eneg) exp10 = -exp10;
    }
    if (!seen_digit) throw std::invalid_argument("Rat::parse: bad numeric literal '" + text + "'");

    using boost::multiprecision::cpp_int;
    cpp_int mant = digits.empty() ? cpp_int(0) : detail::parse_int(digits, text);
    if (neg) mant = -mant;
    long shift = exp10 - frac_len;
    cpp_int num = mant, den = 1;
    if (shift > 0)
        num *= boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(shift));
    else if (shift < 0)
        den = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(-shift));
    return Rat(rep(num, den));
}

inline std::string Rat::str() const {
    const auto& num = boost::multiprecision::numerator(v_);
    const auto& den = boost::multiprecision::denominator(v_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace lptv

namespace Eigen {

template <>
struct NumTraits<lptv::Rat> {
    using Real = lptv::Rat;
    using NonInteger = lptv::Rat;
    using Literal = lptv::Rat;
    using Nested = lptv::Rat;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 32,
    };

    // Zero tolerances make pivoting and rank decisions exact.
    static inline lptv::Rat epsilon() { return lptv::Rat(0); }
    static inline lptv::Rat dummy_precision() { return lptv::Rat(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
