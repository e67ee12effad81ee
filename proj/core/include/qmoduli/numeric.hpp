#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qmoduli {

/// Arbitrary-precision integer used for weights and exact pivoting.
using Integer = boost::multiprecision::cpp_int;
/// Exact rational used for representation scalars and polytope vertices.
using Rational = boost::multiprecision::cpp_rational;

/// Machine integer for lattice data (rays, exponents, characters).
using Int = std::int64_t;
using IntVector = std::vector<Int>;
using RationalVector = std::vector<Rational>;

/// Narrowing conversions. Throw std::overflow_error when the value does not
/// fit, std::domain_error when a rational is not integral.
Int to_int(const Integer& value);
Int to_int(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

std::string to_string(const Integer& value);
/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);
Rational parse_rational(std::string_view text);

Int gcd(std::span<const Int> values);
/// Divides by the gcd of the entries; the zero vector is returned unchanged.
IntVector make_primitive(IntVector v);
/// Smallest positive integer multiple of `v` with coprime entries.
IntVector primitive_integer_multiple(const RationalVector& v);

RationalVector to_rational(std::span<const Int> v);
Int dot(std::span<const Int> a, std::span<const Int> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Binomial coefficient, exact.
Integer binomial(Int n, Int k);

}  // namespace qmoduli
