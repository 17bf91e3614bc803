#include "fredkin/spin_basis.hpp"

#include <stdexcept>

namespace fredkin {

SpinBasis::SpinBasis(ChainModel model, int n, int s) : model_(model), n_(n), s_(s) {
    if (n < 1 || s < 1) throw std::invalid_argument("SpinBasis: need n >= 1, s >= 1");
    pow_.resize(std::size_t(sites()) + 1);
    pow_[0] = 1;
    for (int i = 0; i < sites(); ++i) {
        if (pow_[i] > (std::size_t(1) << 62) / std::size_t(local_dim()))
            throw std::length_error("SpinBasis: dimension overflow");
        pow_[i + 1] = pow_[i] * std::size_t(local_dim());
    }
    dim_ = pow_[sites()];
}

int SpinBasis::code_at(std::size_t index, int site) const {
    return int((index / place_value(site)) % std::size_t(local_dim()));
}

int SpinBasis::color_of(int c) const {
    if (code_is_up(c)) return c + 1;
    if (code_is_flat(c)) return 0;
    return c - (local_dim() - s_) + 1;
}

std::size_t SpinBasis::index_of(const PathWord& w) const {
    if (int(w.steps.size()) != sites()) throw std::invalid_argument("SpinBasis: length mismatch");
    std::size_t idx = 0;
    for (int site = 0; site < sites(); ++site) {
        const Step& st = w.steps[std::size_t(site)];
        int code = 0;
        switch (st.dir) {
            case StepDir::Up: code = up_code(st.color); break;
            case StepDir::Down: code = down_code(st.color); break;
            case StepDir::Flat:
                if (model_ != ChainModel::Motzkin)
                    throw std::invalid_argument("SpinBasis: flat step in a Fredkin basis");
                code = s_;
                break;
        }
        if (st.dir != StepDir::Flat && (st.color < 1 || int(st.color) > s_))
            throw std::invalid_argument("SpinBasis: color out of range");
        idx += std::size_t(code) * place_value(site);
    }
    return idx;
}

PathWord SpinBasis::word_at(std::size_t index) const {
    if (index >= dim_) throw std::out_of_range("SpinBasis: index out of range");
    PathWord w;
    w.kind = model_ == ChainModel::Motzkin ? PathKind::Motzkin : PathKind::Dyck;
    w.steps.reserve(std::size_t(sites()));
    for (int site = 0; site < sites(); ++site) {
        const int code = code_at(index, site);
        if (code_is_up(code)) w.steps.push_back(up(std::uint8_t(color_of(code))));
        else if (code_is_flat(code)) w.steps.push_back(flat());
        else w.steps.push_back(down(std::uint8_t(color_of(code))));
    }
    return w;
}

} // namespace fredkin
