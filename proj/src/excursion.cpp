#include "fredkin/excursion.hpp"

#include "fredkin/airy.hpp"
#include "fredkin/enumerate.hpp"
#include "fredkin/eigensolve.hpp"
#include "fredkin/hamiltonian.hpp"
#include "fredkin/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fredkin {

namespace {

const std::vector<double>& cached_zeros(int J) {
    static std::vector<double> zeros; // single-threaded growth
    while (int(zeros.size()) < J) zeros.push_back(airy_zero(int(zeros.size()) + 1));
    return zeros;
}

double kummer_m(double a, double b, double z) {
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 500; ++k) {
        term *= (a + k) * z / ((b + k) * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Simpson rule over [lo, hi]
template <typename F>
auto simpson(F&& f, double lo, double hi, int intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (hi - lo) / intervals;
    auto acc = f(lo) + f(hi);
    for (int k = 1; k < intervals; ++k) acc += f(lo + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
    return acc * (h / 3.0);
}

} // namespace

ExcursionMoments excursion_moments() {
    return {0.5 * std::sqrt(M_PI / 2.0), std::sqrt(5.0 / 12.0 - M_PI / 8.0)};
}

double kummer_u_airy(double z) {
    if (z <= 0) throw std::invalid_argument("kummer_u_airy: need z > 0");
    const double a = -5.0 / 6.0, b = 4.0 / 3.0;
    if (z < 18.0) {
        static const double g1 = std::tgamma(1.0 - b) / std::tgamma(a - b + 1.0);
        static const double g2 = std::tgamma(b - 1.0) / std::tgamma(a);
        return g1 * kummer_m(a, b, z) +
               g2 * std::pow(z, 1.0 - b) * kummer_m(a - b + 1.0, 2.0 - b, z);
    }
    // large z: U ~ z^{-a} sum_k (a)_k (a-b+1)_k / (k! (-z)^k)
    double term = 1.0, sum = 1.0, prev = 1e300;
    for (int k = 0; k < 60; ++k) {
        term *= (a + k) * (a - b + 1.0 + k) / ((k + 1) * (-z));
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    }
    return std::pow(z, -a) * sum;
}

double density_f_A(double x, int truncation) {
    if (x <= 0) throw std::invalid_argument("density_f_A: need x > 0");
    const auto& zeros = cached_zeros(truncation);
    double sum = 0.0, last_term = 0.0;
    for (int j = 0; j < truncation; ++j) {
        const double aj = std::abs(zeros[std::size_t(j)]);
        const double v = 2.0 * aj * aj * aj / (27.0 * x * x);
        const double ev = std::exp(-v);
        last_term = (ev > 0) ? std::pow(v, 2.0 / 3.0) * ev * kummer_u_airy(v) : 0.0;
        sum += last_term;
    }
    const double f = 2.0 * std::sqrt(6.0) / (x * x) * sum;
    // v_j grows like j^2, so the dropped tail is below a few times the
    // last term; demand it is negligible at the requested point
    const double tail = 3.0 * std::abs(last_term) * 2.0 * std::sqrt(6.0) / (x * x);
    if (tail > 1e-8 * std::max(std::abs(f), 1e-12))
        throw std::runtime_error("density_f_A: truncation error above tolerance at x = " +
                                 std::to_string(x));
    return f;
}

std::complex<double> char_function(double theta) {
    const auto integrand = [theta](double x) {
        const double f = x > 1e-9 ? density_f_A(x) : 0.0;
        return std::complex<double>(f * std::cos(2.0 * M_PI * x * theta),
                                    f * std::sin(2.0 * M_PI * x * theta));
    };
    return simpson(integrand, 1e-4, 4.0, 8192);
}

BigInt dyck_area_closed_form(int n) {
    if (n < 1) throw std::invalid_argument("dyck_area_closed_form: need n >= 1");
    return (BigInt(1) << (2 * n)) - binomial(2 * n + 2, n + 1) / 2;
}

std::vector<BigInt> dyck_area_distribution(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("dyck_area_distribution: n out of range");
    const int max_area = n * n;
    // slice[h][a]: paths of the current length ending at height h with
    // lattice-point area a so far
    std::vector<std::vector<BigInt>> slice(std::size_t(n) + 1,
                                           std::vector<BigInt>(std::size_t(max_area) + 1));
    slice[0][0] = 1;
    for (int i = 0; i < 2 * n; ++i) {
        std::vector<std::vector<BigInt>> next(std::size_t(n) + 1,
                                              std::vector<BigInt>(std::size_t(max_area) + 1));
        const int hmax = std::min(i, 2 * n - i); // reachable heights
        for (int h = 0; h <= hmax; ++h) {
            for (int a = 0; a <= max_area; ++a) {
                const BigInt& c = slice[std::size_t(h)][std::size_t(a)];
                if (c == 0) continue;
                if (h + 1 <= n && a + h + 1 <= max_area)
                    next[std::size_t(h) + 1][std::size_t(a + h + 1)] += c;
                if (h >= 1) next[std::size_t(h) - 1][std::size_t(a + h - 1)] += c;
            }
        }
        slice = std::move(next);
    }
    return slice[0];
}

double twist_scale(int n) { return std::pow(double(n), -1.5) / std::sqrt(10.0 / 3.0 - M_PI); }

WindowPairCounts window_pair_counts(int n) {
    const int L = 2 * n;
    // ballot[i][h] = nonnegative paths of length i from 0 to h
    std::vector<std::vector<double>> ballot(std::size_t(L) + 1,
                                            std::vector<double>(std::size_t(n) + 2, 0.0));
    ballot[0][0] = 1;
    for (int i = 0; i < L; ++i)
        for (int h = 0; h <= n; ++h) {
            if (ballot[std::size_t(i)][std::size_t(h)] == 0) continue;
            if (h + 1 <= n + 1)
                ballot[std::size_t(i) + 1][std::size_t(h) + 1] += ballot[std::size_t(i)][std::size_t(h)];
            if (h >= 1)
                ballot[std::size_t(i) + 1][std::size_t(h) - 1] += ballot[std::size_t(i)][std::size_t(h)];
        }

    WindowPairCounts counts;
    for (int j = 1; j <= L - 2; ++j) {
        double aj = 0, bj = 0;
        const int suffix = L - j - 2;
        for (int h = 0; h <= n; ++h) {
            const double pre = ballot[std::size_t(j - 1)][std::size_t(h)];
            if (pre == 0) continue;
            if (h + 1 <= n) aj += pre * ballot[std::size_t(suffix)][std::size_t(h) + 1];
            if (h >= 1) bj += pre * ballot[std::size_t(suffix)][std::size_t(h) - 1];
        }
        counts.a.push_back(aj);
        counts.b.push_back(bj);
    }
    return counts;
}

namespace {

// all Dyck words of semilength n as bitmasks (bit i set = step i up)
std::vector<std::uint32_t> dyck_bitmasks(int n) {
    std::vector<std::uint32_t> words;
    struct Frame {
        std::uint32_t word;
        int pos, h;
    };
    std::vector<Frame> stack{{0u, 0, 0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.pos == 2 * n) {
            words.push_back(f.word);
            continue;
        }
        const int rest = 2 * n - f.pos - 1;
        if (f.h >= 1 && f.h - 1 <= rest) stack.push_back({f.word, f.pos + 1, f.h - 1});
        if (f.h + 1 <= rest) stack.push_back({f.word | (1u << f.pos), f.pos + 1, f.h + 1});
    }
    std::sort(words.begin(), words.end());
    return words;
}

long long bitmask_area(std::uint32_t w, int L) {
    long long area = 0, h = 0;
    for (int i = 0; i < L; ++i) {
        h += (w >> i) & 1u ? 1 : -1;
        area += h;
    }
    return area;
}

double twisted_energy_streaming(int n, double theta) {
    const int L = 2 * n;
    const auto words = dyck_bitmasks(n);
    const std::size_t D = words.size();
    std::vector<double> phase(D);
    for (std::size_t i = 0; i < D; ++i)
        phase[i] = 2.0 * M_PI * double(bitmask_area(words[i], L)) * theta;

    // compensated summation: ~20M terms at n = 14 would otherwise cost
    // a digit of the 1e-10 cross-check budget
    double acc = 0.0, comp = 0.0;
    const auto add = [&acc, &comp](double term) {
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    };
    for (std::size_t i = 0; i < D; ++i) {
        const std::uint32_t w = words[i];
        for (int j = 0; j + 2 < L; ++j) {
            const unsigned window = (w >> j) & 7u; // bits j, j+1, j+2
            // step triples read low-bit-first: uud=011, udu=101, udd=001, dud=010
            const bool uud = window == 3u, udu = window == 5u, udd = window == 1u,
                       dud = window == 2u;
            if (!(uud || udu || udd || dud)) continue;
            add(0.5);
            if (uud || dud) {
                // uud: swap bits j+1, j+2; dud: swap bits j, j+1
                const std::uint32_t partner =
                    uud ? (w ^ (1u << (j + 1)) ^ (1u << (j + 2))) : (w ^ (1u << j) ^ (1u << (j + 1)));
                const auto it = std::lower_bound(words.begin(), words.end(), partner);
                add(-std::cos(phase[std::size_t(it - words.begin())] - phase[i]));
            }
        }
    }
    return acc / double(D);
}

double twisted_energy_matrix(int n, int s, double theta) {
    auto sector = build_balanced_sector(n, s);
    std::vector<std::complex<double>> v;
    v.reserve(sector.dim());
    const double norm = 1.0 / std::sqrt(double(sector.dim()));
    for (const PathWord& w : sector.sector_states)
        v.push_back(std::polar(norm, 2.0 * M_PI * double(area(w)) * theta));
    return quadratic_form(sector.matrix, v);
}

} // namespace

TwistedEnergy twisted_energy(int n, int s, double theta_tilde) {
    if (n < 2) throw std::invalid_argument("twisted_energy: need n >= 2");
    const auto counts = window_pair_counts(n);
    double pair_sum = 0;
    for (std::size_t j = 0; j < counts.a.size(); ++j) pair_sum += counts.a[j] + counts.b[j];
    const double cn = pair_sum / catalan(n).convert_to<double>();

    TwistedEnergy res;
    res.pair_count = cn * (1.0 - std::cos(4.0 * M_PI * theta_tilde));
    if (s == 1 && n > 12) {
        if (n > 16) throw std::length_error("twisted_energy: n too large for the direct route");
        res.direct = twisted_energy_streaming(n, theta_tilde);
    } else {
        res.direct = twisted_energy_matrix(n, s, theta_tilde);
    }
    return res;
}

std::complex<double> overlap_with_ground(int n, double theta_tilde) {
    const auto dist = dyck_area_distribution(n);
    std::complex<double> acc = 0.0;
    for (std::size_t a = 0; a < dist.size(); ++a) {
        if (dist[a] == 0) continue;
        acc += dist[a].convert_to<double>() *
               std::polar(1.0, 2.0 * M_PI * double(a) * theta_tilde);
    }
    return acc / catalan(n).convert_to<double>();
}

ScaledAreaSample mc_scaled_area(int n, std::size_t samples, std::uint64_t seed) {
    if (n < 1 || samples == 0) throw std::invalid_argument("mc_scaled_area: bad arguments");
    const double scale = 2.0 * std::sqrt(2.0) * std::pow(double(n), 1.5);

    ScaledAreaSample out;
    out.samples = samples;
    const double lo = 0.2, hi = 1.5, width = 0.05;
    const int bins = int(std::lround((hi - lo) / width));
    out.grid.resize(std::size_t(bins));
    out.counts.assign(std::size_t(bins), 0.0);
    for (int b = 0; b < bins; ++b) out.grid[std::size_t(b)] = lo + (b + 0.5) * width;

    Rng rng(seed);
    double sum = 0, sum2 = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const PathWord w = sample_dyck_uniform(n, 1, rng);
        const double x = double(area(w)) / scale;
        sum += x;
        sum2 += x * x;
        const int b = int(std::floor((x - lo) / width));
        if (b >= 0 && b < bins) out.counts[std::size_t(b)] += 1.0;
    }
    out.mean = sum / double(samples);
    out.stddev = std::sqrt(std::max(0.0, sum2 / double(samples) - out.mean * out.mean));
    out.density.resize(std::size_t(bins));
    for (int b = 0; b < bins; ++b)
        out.density[std::size_t(b)] = out.counts[std::size_t(b)] / (double(samples) * width);
    return out;
}

} // namespace fredkin
