#ifndef PDMLAYER_RATIONAL_HPP
#define PDMLAYER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <sstream>
#include <string>

namespace pdm {

/// Exact rational scalar used everywhere outside the floating-point paths.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigRat& r) { return r.template convert_to<double>(); }

inline bool is_integer(const BigRat& r) { return denominator(r) == 1; }

/// "3", "-5/2" -> rational; nullopt on malformed input or zero denominator.
inline std::optional<BigRat> parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      BigInt n(s);
      return BigRat(n);
    }
    BigInt n(s.substr(0, slash));
    BigInt d(s.substr(slash + 1));
    if (d == 0) return std::nullopt;
    return BigRat(n, d);
  } catch (...) {
    return std::nullopt;
  }
}

inline std::string rat_str(const BigRat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

}  // namespace pdm

#endif
