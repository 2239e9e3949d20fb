#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace orbinerve {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using ObjectId = std::uint32_t;
using MorphismId = std::uint32_t;

inline constexpr std::uint32_t kNoMorphism = 0xffffffffu;

// p/q form, or just p when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    return boost::multiprecision::numerator(q).str();
  }
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

}  // namespace orbinerve
