#include "qmoduli/numeric.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace qmoduli {

namespace mp = boost::multiprecision;

Int to_int(const Integer& value) {
  if (value > std::numeric_limits<Int>::max() || value < std::numeric_limits<Int>::min()) {
    throw std::overflow_error("integer " + value.str() + " does not fit in 64 bits");
  }
  return value.convert_to<Int>();
}

Int to_int(const Rational& value) {
  if (mp::denominator(value) != 1) {
    throw std::domain_error("rational " + to_string(value) + " is not an integer");
  }
  return to_int(Integer(mp::numerator(value)));
}

Integer floor(const Rational& value) {
  Integer num = mp::numerator(value);
  Integer den = mp::denominator(value);
  Integer q = num / den;
  if (num % den != 0 && num < 0) {
    q -= 1;
  }
  return q;
}

Integer ceil(const Rational& value) {
  return -floor(Rational(-value));
}

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value) {
  if (mp::denominator(value) == 1) {
    return Integer(mp::numerator(value)).str();
  }
  return Integer(mp::numerator(value)).str() + "/" + Integer(mp::denominator(value)).str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(Integer(std::string(text)));
    }
    Integer num(std::string(text.substr(0, slash)));
    Integer den(std::string(text.substr(slash + 1)));
    if (den == 0) {
      throw std::invalid_argument("zero denominator");
    }
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("cannot parse rational '" + std::string(text) + "'");
  }
}

Int gcd(std::span<const Int> values) {
  Int g = 0;
  for (Int v : values) {
    g = std::gcd(g, v);
  }
  return g;
}

IntVector make_primitive(IntVector v) {
  Int g = gcd(v);
  if (g > 1) {
    for (Int& x : v) {
      x /= g;
    }
  }
  return v;
}

IntVector primitive_integer_multiple(const RationalVector& v) {
  Integer lcm = 1;
  for (const auto& x : v) {
    lcm = mp::lcm(lcm, Integer(mp::denominator(x)));
  }
  std::vector<Integer> scaled;
  scaled.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer s = Integer(mp::numerator(x)) * (lcm / Integer(mp::denominator(x)));
    g = mp::gcd(g, s);
    scaled.push_back(std::move(s));
  }
  IntVector out;
  out.reserve(v.size());
  for (auto& s : scaled) {
    out.push_back(to_int(g == 0 ? s : Integer(s / g)));
  }
  return out;
}

RationalVector to_rational(std::span<const Int> v) {
  return RationalVector(v.begin(), v.end());
}

Int dot(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: size mismatch");
  }
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dot: size mismatch");
  }
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

Integer binomial(Int n, Int k) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  Integer r = 1;
  for (Int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

}  // namespace qmoduli
