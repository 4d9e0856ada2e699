#ifndef TROPFAN_NUMERIC_HPP
#define TROPFAN_NUMERIC_HPP

// Arbitrary-precision scalar types used across the library.  Every
// computation is exact: integers for lattice data, rationals for
// intermediate solves.  Floating point is never used.

#include <boost/multiprecision/cpp_int.hpp>

namespace tropfan {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sign(const Int& x) { return x.sign(); }
inline int sign(const Rat& x) { return x.sign(); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

// Floor division: largest q with q*b <= a.  b must be nonzero.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// Smallest integer >= a/b.
inline Int ceil_div(const Int& a, const Int& b) {
  return -floor_div(-a, b);
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline Int rat_floor(const Rat& r) { return floor_div(rat_num(r), rat_den(r)); }
inline Int rat_ceil(const Rat& r) { return ceil_div(rat_num(r), rat_den(r)); }

// Extended gcd: returns g = gcd(a,b) >= 0 and fills x, y with a*x + b*y = g.
inline Int egcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    if (a < 0) {
      x = -1;
      y = 0;
      return -a;
    }
    x = 1;
    y = 0;
    return a;
  }
  Int x1, y1;
  Int g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace tropfan

#endif
