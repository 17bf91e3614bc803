#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace fredkin {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// n-th Catalan number, exact. catalan(0) == 1.
BigInt catalan(std::int64_t n);

/// Binomial coefficient C(n, k), exact; 0 when k < 0 or k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Quotient num/den as a double. Works for operands far beyond the
/// double exponent range as long as the ratio itself is representable.
double ratio_as_double(const BigInt& num, const BigInt& den);

} // namespace fredkin
