#include "fredkin/airy.hpp"

#include <cmath>
#include <stdexcept>

namespace fredkin {

namespace {

// Ai(0) and -Ai'(0)
const double AI0 = 0.3550280538878172392600631860041831763980;
const double AIP0 = 0.2588194037928067984051835601892039634793;

double ai_maclaurin(double x) {
    // Ai = AI0 * f - AIP0 * g with
    // f = sum x^{3k} prod..., term ratio x^3/((3k+2)(3k+3))
    // g = sum x^{3k+1},      term ratio x^3/((3k+3)(3k+4))
    const double x3 = x * x * x;
    double f = 1.0, tf = 1.0;
    double g = x, tg = x;
    for (int k = 0; k < 200; ++k) {
        tf *= x3 / ((3 * k + 2) * (3 * k + 3));
        tg *= x3 / ((3 * k + 3) * (3 * k + 4));
        f += tf;
        g += tg;
        if (std::abs(tf) < 1e-20 && std::abs(tg) < 1e-20) break;
    }
    return AI0 * f - AIP0 * g;
}

double ai_asymptotic_negative(double x) {
    // z = -x large:
    // Ai(-z) = pi^{-1/2} z^{-1/4} [cos(zeta - pi/4) P(zeta) + sin(zeta - pi/4) Q(zeta)]
    // P = sum (-1)^k u_{2k} zeta^{-2k},  Q = sum (-1)^k u_{2k+1} zeta^{-2k-1},
    // u_j = u_{j-1} (6j-5)(6j-3)(6j-1) / ((2j-1) 216 j)
    const double z = -x;
    const double zeta = (2.0 / 3.0) * std::pow(z, 1.5);
    double P = 1.0, Q = 0.0;
    double u = 1.0;
    double prev_mag = 1e300;
    for (int j = 1; j <= 60; ++j) {
        u *= double(6 * j - 5) * double(6 * j - 3) * double(6 * j - 1) /
             (double(2 * j - 1) * 216.0 * double(j));
        const double term = u / std::pow(zeta, j);
        if (term > prev_mag) break; // asymptotic tail started diverging
        prev_mag = term;
        const double sign = ((j / 2) % 2 == 0) ? 1.0 : -1.0;
        if (j % 2 == 1) Q += sign * term;
        else P += sign * term;
        if (term < 1e-18) break;
    }
    const double phase = zeta - M_PI / 4.0;
    return (std::cos(phase) * P + std::sin(phase) * Q) /
           (std::sqrt(M_PI) * std::pow(z, 0.25));
}

} // namespace

double airy_ai(double x) {
    if (x > 8.0) throw std::invalid_argument("airy_ai: argument above supported range");
    if (x >= -8.0) return ai_maclaurin(x);
    return ai_asymptotic_negative(x);
}

double airy_zero(int j) {
    if (j < 1) throw std::invalid_argument("airy_zero: j >= 1");
    // asymptotic location, then bisection on a bracketing interval
    const double t = 3.0 * M_PI * (4.0 * j - 1.0) / 8.0;
    const double t2 = t * t;
    double guess = std::pow(t, 2.0 / 3.0) *
                   (1.0 + 5.0 / (48.0 * t2) - 5.0 / (36.0 * t2 * t2) +
                    77125.0 / (82944.0 * t2 * t2 * t2));
    double lo = -(guess + 0.3), hi = -(guess - 0.3);
    double flo = airy_ai(lo), fhi = airy_ai(hi);
    for (int widen = 0; widen < 8 && flo * fhi > 0; ++widen) {
        lo -= 0.2;
        hi += 0.2;
        flo = airy_ai(lo);
        fhi = airy_ai(hi);
    }
    if (flo * fhi > 0) throw std::runtime_error("airy_zero: failed to bracket zero");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = airy_ai(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if (hi - lo < 1e-15 * std::abs(lo)) break;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> airy_zeros(int J) {
    std::vector<double> zeros;
    zeros.reserve(std::size_t(J));
    for (int j = 1; j <= J; ++j) zeros.push_back(airy_zero(j));
    return zeros;
}

} // namespace fredkin
