#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace tormori {

// Arbitrary-precision integers and exact rationals. Every mathematical
// path in the library runs on these; there is no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input/output failures, kept apart from mathematical validation failures
// so callers can map them to different exit codes.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

inline int sign(const Int& x) { return x == 0 ? 0 : (x < 0 ? -1 : 1); }
inline int sign(const Rat& x) { return x == 0 ? 0 : (x < 0 ? -1 : 1); }

// Floor division (gcc's % truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Parses "p" or "p/q"; used by the divisor JSON format.
inline Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw Error("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw Error("cannot parse rational: " + s);
    }
}

}  // namespace tormori
