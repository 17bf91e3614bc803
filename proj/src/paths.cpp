#include "fredkin/paths.hpp"

#include <sstream>

namespace fredkin {

bool word_less(const PathWord& a, const PathWord& b) {
    const std::size_t n = std::min(a.steps.size(), b.steps.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int ra = step_rank(a.steps[i]);
        const int rb = step_rank(b.steps[i]);
        if (ra != rb) return ra < rb;
    }
    return a.steps.size() < b.steps.size();
}

std::vector<int> heights(const PathWord& w) {
    std::vector<int> y(w.steps.size() + 1, 0);
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        int dy = 0;
        if (w.steps[i].dir == StepDir::Up) dy = 1;
        else if (w.steps[i].dir == StepDir::Down) dy = -1;
        y[i + 1] = y[i] + dy;
    }
    return y;
}

long long area(const PathWord& w) {
    long long total = 0, h = 0;
    for (const Step& s : w.steps) {
        if (s.dir == StepDir::Up) ++h;
        else if (s.dir == StepDir::Down) --h;
        total += h;
    }
    return total; // y_0 = 0 contributes nothing
}

std::vector<int> peaks(const PathWord& w) {
    std::vector<int> out;
    for (std::size_t i = 0; i + 1 < w.steps.size(); ++i) {
        if (w.steps[i].dir == StepDir::Up && w.steps[i + 1].dir == StepDir::Down)
            out.push_back(static_cast<int>(i) + 1);
    }
    return out;
}

bool is_valid(const PathWord& w) {
    int h = 0;
    std::vector<std::uint8_t> stack;
    for (const Step& s : w.steps) {
        switch (s.dir) {
            case StepDir::Up:
                ++h;
                if (s.color < 1) return false;
                if (w.kind != PathKind::Lattice) stack.push_back(s.color);
                break;
            case StepDir::Down:
                --h;
                if (s.color < 1) return false;
                if (w.kind != PathKind::Lattice) {
                    if (stack.empty() || stack.back() != s.color) return false;
                    stack.pop_back();
                }
                break;
            case StepDir::Flat:
                if (w.kind != PathKind::Motzkin) return false;
                if (s.color != 0) return false;
                break;
        }
        if (w.kind != PathKind::Lattice && h < 0) return false;
    }
    return h == 0 && stack.empty();
}

int max_color(const PathWord& w) {
    int c = 1;
    for (const Step& s : w.steps)
        if (s.dir != StepDir::Flat && s.color > c) c = s.color;
    return c;
}

std::string to_string(const PathWord& w) {
    bool compact = true;
    for (const Step& s : w.steps)
        if (s.dir != StepDir::Flat && s.color != 1) { compact = false; break; }
    std::string out;
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        const Step& s = w.steps[i];
        if (!compact && i > 0) out += ' ';
        switch (s.dir) {
            case StepDir::Up: out += 'u'; break;
            case StepDir::Down: out += 'd'; break;
            case StepDir::Flat: out += '0'; break;
        }
        if (!compact && s.dir != StepDir::Flat) out += std::to_string(int(s.color));
    }
    return out;
}

std::optional<PathWord> parse_word(const std::string& text, PathKind kind) {
    PathWord w;
    w.kind = kind;
    const bool tokenized = text.find(' ') != std::string::npos;
    if (tokenized) {
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            if (tok == "0") { w.steps.push_back(flat()); continue; }
            if (tok.size() < 1 || (tok[0] != 'u' && tok[0] != 'd')) return std::nullopt;
            int color = 1;
            if (tok.size() > 1) {
                try { color = std::stoi(tok.substr(1)); } catch (...) { return std::nullopt; }
            }
            if (color < 1 || color > 255) return std::nullopt;
            w.steps.push_back(tok[0] == 'u' ? up(std::uint8_t(color)) : down(std::uint8_t(color)));
        }
    } else {
        for (char c : text) {
            if (c == 'u') w.steps.push_back(up());
            else if (c == 'd') w.steps.push_back(down());
            else if (c == '0') w.steps.push_back(flat());
            else return std::nullopt;
        }
    }
    if (!is_valid(w)) return std::nullopt;
    return w;
}

} // namespace fredkin
