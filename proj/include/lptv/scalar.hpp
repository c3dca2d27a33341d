// Bridge between the two scalar kinds (double and Rat) so the series types
// can be written once.  "Exact" scalars compare for zero literally; the float
// side uses relative tolerances chosen by the caller.

#pragma once

#include "lptv/rational.hpp"

#include <cmath>
#include <string>
#include <type_traits>

namespace lptv {

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from_ratio(long long num, long long den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    static double to_double(double x) { return x; }
    static double abs(double x) { return std::fabs(x); }
    static std::string str(double x);
};

template <>
struct ScalarTraits<Rat> {
    static constexpr bool exact = true;
    static Rat from_ratio(long long num, long long den) { return Rat::ratio(num, den); }
    static double to_double(const Rat& x) { return x.to_double(); }
    static Rat abs(const Rat& x) { return lptv::abs(x); }
    static std::string str(const Rat& x) { return x.str(); }
};

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

// Shortest decimal form that round-trips through strtod; keeps emitted
// reports byte-stable across runs.
inline std::string format_double(double x);

inline std::string ScalarTraits<double>::str(double x) { return format_double(x); }

}  // namespace lptv

#include <cstdio>
#include <cstdlib>

namespace lptv {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

}  // namespace lptv
