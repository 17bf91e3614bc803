#pragma once

#include <vector>

namespace fredkin {

/// Ai(x): Maclaurin series for |x| <= 8, oscillatory asymptotic expansion
/// for x < -8. Arguments above +8 are not needed here and throw.
double airy_ai(double x);

/// j-th negative zero of Ai (j >= 1), bisected to machine precision from
/// the asymptotic bracket. a_1 = -2.33810741...
double airy_zero(int j);

/// First J zeros, descending in magnitude of position (a_1, a_2, ...).
std::vector<double> airy_zeros(int J);

} // namespace fredkin
