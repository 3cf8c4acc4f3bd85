#include "riffle/numeric.hpp"

#include <cstdio>
#include <sstream>

namespace riffle {

double to_double(const Rat& x) { return x.convert_to<double>(); }

std::string format_fraction(const Rat& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << "/" << denominator(x);
  return os.str();
}

std::string format_decimal(const Rat& x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, to_double(x));
  return buf;
}

}  // namespace riffle
