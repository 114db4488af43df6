#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "coarse/errors.hpp"

namespace coarse {

// Exact lengths. Graph distances are integers; Gromov products and tripod
// midpoints live in (1/2)Z; Fekete quotients and homogenized Busemann values
// are general rationals. int64 components are far beyond desk scale.
using Rat = boost::rational<long long>;

inline Rat rat(long long n) { return Rat(n); }
inline Rat rat(long long n, long long d) { return Rat(n, d); }
inline Rat half(long long n) { return Rat(n, 2); }

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

inline long long to_int(const Rat& r) {
    if (!is_integer(r)) fail(ErrKind::BadArgument, "expected integral length, got " +
                             std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()));
    return r.numerator();
}

inline Rat rat_abs(const Rat& r) { return r < Rat(0) ? -r : r; }
inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string rat_str(const Rat& r) {
    if (is_integer(r)) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace coarse
