#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fredkin {

enum class StepDir : std::uint8_t { Up = 0, Flat = 1, Down = 2 };

/// One lattice step. Up/down steps carry a color in [1, s]; flat steps
/// are always color-free (color == 0).
struct Step {
    StepDir dir = StepDir::Up;
    std::uint8_t color = 1;

    bool operator==(const Step&) const = default;
};

inline Step up(std::uint8_t color = 1) { return {StepDir::Up, color}; }
inline Step down(std::uint8_t color = 1) { return {StepDir::Down, color}; }
inline Step flat() { return {StepDir::Flat, 0}; }

enum class PathKind : std::uint8_t { Dyck, Motzkin, Lattice };

/// A word of colored steps. The same type labels Markov-chain states and
/// spin-basis configurations throughout.
struct PathWord {
    std::vector<Step> steps;
    PathKind kind = PathKind::Dyck;

    std::size_t length() const { return steps.size(); }
    bool operator==(const PathWord&) const = default;
};

/// Canonical step order: up colors first, then flat, then down colors.
/// Word comparison is element-wise in this order; enumeration output and
/// basis indexing both follow it.
inline int step_rank(const Step& s) {
    switch (s.dir) {
        case StepDir::Up: return s.color - 1;
        case StepDir::Flat: return 1000;
        case StepDir::Down: return 2000 + s.color - 1;
    }
    return 0;
}

bool word_less(const PathWord& a, const PathWord& b);

/// Heights y_0..y_L visited by the word (y_0 = 0).
std::vector<int> heights(const PathWord& w);

/// Sum of all lattice-point heights, Sum_{i=0..L} y_i.
/// One peak/step exchange changes it by exactly 2; recoloring by 0.
long long area(const PathWord& w);

/// 1-based positions i where step i is up and step i+1 is down.
std::vector<int> peaks(const PathWord& w);

/// Validity under the word's own kind: Dyck/Motzkin words need
/// non-negative prefixes, height-0 endpoint and stack-matched colors;
/// lattice words only need to return to height 0.
bool is_valid(const PathWord& w);

/// Largest color used (1 when the word has no non-flat steps).
int max_color(const PathWord& w);

/// Text form: one char per step ("uudd", "u0d...") when every color is 1,
/// otherwise space-separated tokens "u2 d2 0 u1 d1".
std::string to_string(const PathWord& w);

/// Inverse of to_string. Returns nullopt on malformed input.
std::optional<PathWord> parse_word(const std::string& text, PathKind kind);

} // namespace fredkin
