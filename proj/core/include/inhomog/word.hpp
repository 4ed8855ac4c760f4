#pragma once

#include <string>
#include <vector>

namespace inhomog {

// Finite word over map indices {1, ..., N}. The empty word composes to the
// identity and has contraction ratio 1.
struct Word {
    std::vector<int> idx;

    Word() = default;
    explicit Word(std::vector<int> indices) : idx(std::move(indices)) {}

    std::size_t length() const { return idx.size(); }
    bool empty() const { return idx.empty(); }

    Word appended(int i) const {
        Word w = *this;
        w.idx.push_back(i);
        return w;
    }

    bool is_prefix_of(const Word& other) const {
        if (idx.size() > other.idx.size()) return false;
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (idx[k] != other.idx[k]) return false;
        return true;
    }

    // Dash-joined 1-based indices, empty string for the empty word.
    std::string str() const {
        std::string s;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (k) s += '-';
            s += std::to_string(idx[k]);
        }
        return s;
    }

    friend bool operator==(const Word& u, const Word& v) { return u.idx == v.idx; }

    friend Word operator+(const Word& u, const Word& v) {
        Word w = u;
        w.idx.insert(w.idx.end(), v.idx.begin(), v.idx.end());
        return w;
    }
};

} // namespace inhomog
