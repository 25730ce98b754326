#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace wmerge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Rational& r) { return r.sign(); }

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace wmerge
