#include "fredkin/bigint.hpp"

#include <stdexcept>

namespace fredkin {

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        result *= (n - i);
        result /= (i + 1); // divides exactly at every step
    }
    return result;
}

BigInt catalan(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("catalan: n must be non-negative");
    return binomial(2 * n, n) / (n + 1);
}

double ratio_as_double(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("ratio_as_double: zero denominator");
    // Scale so the integer quotient keeps ~64 significant bits.
    BigInt q = (num << 64) / den;
    return q.convert_to<double>() / 18446744073709551616.0; // 2^64
}

} // namespace fredkin
