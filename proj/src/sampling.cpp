#include "fredkin/sampling.hpp"

#include <stdexcept>
#include <vector>

namespace fredkin {

std::uint64_t Rng::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::next_below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % bound;
}

PathWord sample_dyck_uniform(int n, int s, Rng& rng) {
    if (n < 1 || s < 1) throw std::invalid_argument("sample_dyck_uniform: need n >= 1, s >= 1");

    // Random arrangement of n+1 ups and n downs (Fisher-Yates), length 2n+1.
    std::vector<signed char> steps(2 * n + 1, -1);
    for (int i = 0; i <= n; ++i) steps[i] = +1;
    for (int i = 2 * n; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(std::uint64_t(i) + 1));
        std::swap(steps[i], steps[j]);
    }

    // Cycle lemma: exactly one rotation keeps every proper prefix sum
    // positive; it starts right after the minimum of the prefix-sum walk
    // (last position attaining the minimum).
    int sum = 0, min_sum = 0, min_pos = -1;
    for (int i = 0; i < 2 * n + 1; ++i) {
        sum += steps[i];
        if (sum <= min_sum) {
            min_sum = sum;
            min_pos = i;
        }
    }
    const int start = (min_pos + 1) % (2 * n + 1);

    // Dominating sequence starts with an up; dropping it leaves a Dyck word.
    PathWord w;
    w.kind = PathKind::Dyck;
    w.steps.reserve(2 * n);
    for (int i = 1; i < 2 * n + 1; ++i) {
        const int idx = (start + i) % (2 * n + 1);
        w.steps.push_back(steps[idx] > 0 ? up() : down());
    }

    if (s > 1) {
        // Color each matched pair independently.
        std::vector<std::size_t> stack;
        for (std::size_t i = 0; i < w.steps.size(); ++i) {
            if (w.steps[i].dir == StepDir::Up) {
                stack.push_back(i);
            } else {
                const auto c = std::uint8_t(1 + rng.next_below(std::uint64_t(s)));
                w.steps[stack.back()].color = c;
                w.steps[i].color = c;
                stack.pop_back();
            }
        }
    }
    return w;
}

} // namespace fredkin
