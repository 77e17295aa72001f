#ifndef SYMBREAK_DOMAIN_HPP
#define SYMBREAK_DOMAIN_HPP

#include <cassert>
#include <cstdint>
#include <vector>

namespace symbreak {

/// Finite set of non-negative integers in [0, cap), stored as a bitset.
/// A domain is never empty outside of a propagation failure; propagators
/// signal failure instead of leaving an empty domain behind.
class Domain {
public:
    Domain() = default;

    /// Full domain {0, ..., cap-1}.
    explicit Domain(int cap) : cap_(cap), words_((cap + 63) / 64, ~0ull) {
        assert(cap >= 1);
        int rem = cap % 64;
        if (rem != 0) words_.back() = (1ull << rem) - 1;
        count_ = cap;
    }

    /// Singleton domain {value} with the given capacity.
    static Domain singleton(int cap, int value) {
        Domain d(cap);
        d.assign(value);
        return d;
    }

    int cap() const { return cap_; }
    int size() const { return count_; }
    bool is_fixed() const { return count_ == 1; }
    bool empty() const { return count_ == 0; }

    bool contains(int v) const {
        if (v < 0 || v >= cap_) return false;
        return (words_[v >> 6] >> (v & 63)) & 1;
    }

    /// Removes v; returns true if the domain changed.
    bool remove(int v) {
        if (!contains(v)) return false;
        words_[v >> 6] &= ~(1ull << (v & 63));
        --count_;
        return true;
    }

    bool remove_above(int ub) {
        bool changed = false;
        for (int v = ub + 1; v < cap_; ++v) changed |= remove(v);
        return changed;
    }

    bool remove_below(int lb) {
        bool changed = false;
        for (int v = 0; v < lb && v < cap_; ++v) changed |= remove(v);
        return changed;
    }

    /// Reduces the domain to {v}; returns true if it changed.
    bool assign(int v) {
        assert(v >= 0 && v < cap_);
        if (is_fixed() && contains(v)) return false;
        for (auto& w : words_) w = 0;
        words_[v >> 6] = 1ull << (v & 63);
        count_ = 1;
        return true;
    }

    int min() const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return int(i * 64) + __builtin_ctzll(words_[i]);
        return -1;
    }

    int max() const {
        for (size_t i = words_.size(); i-- > 0;)
            if (words_[i]) return int(i * 64) + 63 - __builtin_clzll(words_[i]);
        return -1;
    }

    /// Sole value of a fixed domain.
    int value() const {
        assert(is_fixed());
        return min();
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (size_t i = 0; i < words_.size(); ++i) {
            uint64_t w = words_[i];
            while (w) {
                int v = int(i * 64) + __builtin_ctzll(w);
                fn(v);
                w &= w - 1;
            }
        }
    }

    std::vector<int> values() const {
        std::vector<int> out;
        out.reserve(count_);
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    /// True iff this is a subset of other (caps must agree).
    bool subset_of(const Domain& other) const {
        assert(cap_ == other.cap_);
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    bool operator==(const Domain& other) const {
        return cap_ == other.cap_ && words_ == other.words_;
    }

private:
    int cap_ = 0;
    int count_ = 0;
    std::vector<uint64_t> words_;
};

} // namespace symbreak

#endif
