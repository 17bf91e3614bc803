#pragma once

#include "fredkin/paths.hpp"

#include <cstdint>

namespace fredkin {

enum class ChainModel : std::uint8_t { Fredkin, Motzkin };

/// Product basis of a spin chain on 2n sites with the local states labelled
/// by steps: u^1..u^s, (flat for the Motzkin model), d^1..d^s. Basis index
/// and canonical word order coincide (site 1 is the most significant digit).
class SpinBasis {
  public:
    SpinBasis(ChainModel model, int n, int s);

    ChainModel model() const { return model_; }
    int n() const { return n_; }
    int s() const { return s_; }
    int sites() const { return 2 * n_; }
    int local_dim() const { return model_ == ChainModel::Motzkin ? 2 * s_ + 1 : 2 * s_; }
    std::size_t dim() const { return dim_; }

    int code_at(std::size_t index, int site) const; // site in [0, 2n)
    std::size_t place_value(int site) const { return pow_[sites() - 1 - site]; }

    bool code_is_up(int c) const { return c < s_; }
    bool code_is_flat(int c) const { return model_ == ChainModel::Motzkin && c == s_; }
    bool code_is_down(int c) const { return c >= local_dim() - s_ && !code_is_flat(c); }
    int up_code(int color) const { return color - 1; }
    int down_code(int color) const { return local_dim() - s_ + color - 1; }
    int color_of(int c) const; // 0 for flat

    std::size_t index_of(const PathWord& w) const;
    PathWord word_at(std::size_t index) const;

  private:
    ChainModel model_;
    int n_, s_;
    std::size_t dim_;
    std::vector<std::size_t> pow_;
};

} // namespace fredkin
