#pragma once

#include "fredkin/paths.hpp"

#include <vector>

namespace fredkin {

/// Exhaustive generation of all valid words of a given kind, length L and
/// color count s, in canonical (word_less) order, duplicate-free.
/// Lattice words are uncolored (s is ignored). Throws std::length_error
/// when L exceeds `cap`.
///
/// If the FREDKIN_LAB_CACHE environment variable names a directory, results
/// are memoized there as plain word-per-line files.
std::vector<PathWord> enumerate_paths(int L, int s, PathKind kind, int cap = 24);

} // namespace fredkin
