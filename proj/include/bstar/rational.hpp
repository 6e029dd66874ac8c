#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace bstar {

// All coefficient arithmetic is exact. Int/Rational are arbitrary precision;
// a Rational is always stored reduced with positive denominator.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline std::string to_string(const Int& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// "p/q" with the "/q" part omitted for integers.
inline std::string to_string(const Rational& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

}  // namespace bstar
