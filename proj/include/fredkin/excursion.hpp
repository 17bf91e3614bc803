#pragma once

#include "fredkin/bigint.hpp"
#include "fredkin/sampling.hpp"

#include <complex>
#include <vector>

namespace fredkin {

/// Mean (1/2)sqrt(pi/2) and standard deviation sqrt(5/12 - pi/8) of the
/// area under a standard Brownian excursion.
struct ExcursionMoments {
    double mean;
    double stddev;
};
ExcursionMoments excursion_moments();

/// Airy-zero series for the excursion-area density:
///   f_A(x) = (2 sqrt6 / x^2) sum_j v_j^{2/3} e^{-v_j} U(-5/6, 4/3; v_j),
///   v_j = 2 |a_j|^3 / (27 x^2).
/// Throws on x <= 0 and when the truncation-error estimate exceeds 1e-8
/// relative to the value.
double density_f_A(double x, int truncation = 40);

/// Tricomi confluent hypergeometric U(-5/6, 4/3; z), z > 0: Kummer
/// connection formula for small z, large-z asymptotic series beyond.
double kummer_u_airy(double z);

/// F_A(theta) = integral f_A(x) e^{2 pi i x theta} dx by quadrature.
std::complex<double> char_function(double theta);

/// Total area of all Dyck paths of length 2n: 4^n - binom(2n+2, n+1)/2.
BigInt dyck_area_closed_form(int n);

/// Counts of Dyck paths of semilength n by area (index = area).
std::vector<BigInt> dyck_area_distribution(int n);

/// Phase scale of the twisted test state at size n:
/// theta_tilde = n^{-3/2} / sqrt(10/3 - pi).
double twist_scale(int n);

struct TwistedEnergy {
    double direct;     // quadratic form with explicit per-word phases
    double pair_count; // (1/ s^n C_n) sum_j (a_j + b_j)(1 - cos 4 pi theta~)
};

/// <phi|H|phi> for the area-twisted Dyck superposition, evaluated along
/// two independent routes; callers assert agreement. Colors enter route
/// (i) as recoloring terms with equal-area endpoints (exact zeros) and
/// cancel from route (ii). The direct route streams over enumerated words
/// for s = 1 (up to n ~ 16) and builds the sector matrix for s >= 2.
TwistedEnergy twisted_energy(int n, int s, double theta_tilde);

/// <D|phi> = (1/C_n) sum_w e^{2 pi i A(w) theta~} (color-independent).
std::complex<double> overlap_with_ground(int n, double theta_tilde);

/// per-window exchange-pair counts a_j (uud<->udu) and b_j (udd<->dud),
/// j = 1..2n-2, via ballot-number dynamic programming.
struct WindowPairCounts {
    std::vector<double> a;
    std::vector<double> b;
};
WindowPairCounts window_pair_counts(int n);

struct ScaledAreaSample {
    double mean = 0;
    double stddev = 0;
    std::vector<double> grid;   // bin centers
    std::vector<double> counts; // raw counts per bin
    std::vector<double> density; // counts / (samples * width)
    std::size_t samples = 0;
    bool scaled = true;
};

/// Monte Carlo over uniform Dyck paths: areas scaled by 1/(2 sqrt2 n^{3/2}),
/// histogrammed on [0.2, 1.5].
ScaledAreaSample mc_scaled_area(int n, std::size_t samples, std::uint64_t seed);

} // namespace fredkin
