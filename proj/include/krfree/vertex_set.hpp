#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace krf {

// Subset of the vertices 0..n-1 of a fixed universe, stored as 64-bit words.
// All binary operations require both operands to be bound to the same
// universe size; mixing sizes is a programming error and throws.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe) : n_(check_universe(universe)), w_(word_count(universe), 0) {}

    static VertexSet full_set(int universe) {
        VertexSet s(universe);
        for (auto& w : s.w_)
            w = ~std::uint64_t{0};
        s.mask_tail();
        return s;
    }

    static VertexSet of(int universe, std::initializer_list<int> vs) {
        VertexSet s(universe);
        for (int v : vs)
            s.insert(v);
        return s;
    }

    static VertexSet of(int universe, const std::vector<int>& vs) {
        VertexSet s(universe);
        for (int v : vs)
            s.insert(v);
        return s;
    }

    int universe() const { return n_; }

    int count() const {
        int c = 0;
        for (auto w : w_)
            c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (auto w : w_)
            if (w)
                return false;
        return true;
    }

    bool contains(int v) const {
        check_vertex(v);
        return (w_[v >> 6] >> (v & 63)) & 1;
    }

    void insert(int v) {
        check_vertex(v);
        w_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }

    void erase(int v) {
        check_vertex(v);
        w_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }

    // Lowest vertex, or -1 when empty.
    int first() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i])
                return (int)(i * 64 + std::countr_zero(w_[i]));
        return -1;
    }

    template <class F>
    void for_each(F f) const {
        for (size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                f((int)(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    VertexSet& operator&=(const VertexSet& o) {
        check_same(o);
        for (size_t i = 0; i < w_.size(); ++i)
            w_[i] &= o.w_[i];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) {
        check_same(o);
        for (size_t i = 0; i < w_.size(); ++i)
            w_[i] |= o.w_[i];
        return *this;
    }
    // Set difference.
    VertexSet& operator-=(const VertexSet& o) {
        check_same(o);
        for (size_t i = 0; i < w_.size(); ++i)
            w_[i] &= ~o.w_[i];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    VertexSet complement() const {
        VertexSet s(*this);
        for (auto& w : s.w_)
            w = ~w;
        s.mask_tail();
        return s;
    }

    bool intersects(const VertexSet& o) const {
        check_same(o);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i])
                return true;
        return false;
    }

    int intersection_count(const VertexSet& o) const {
        check_same(o);
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i)
            c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    bool is_subset_of(const VertexSet& o) const {
        check_same(o);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i])
                return false;
        return true;
    }

    bool operator==(const VertexSet& o) const = default;

    // Raw words, usable as an exact signature key.
    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    static int check_universe(int n) {
        if (n < 0)
            throw std::invalid_argument("VertexSet: negative universe size");
        return n;
    }
    static size_t word_count(int n) { return ((size_t)n + 63) / 64; }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw std::out_of_range("VertexSet: vertex " + std::to_string(v) +
                                    " outside universe of size " + std::to_string(n_));
    }
    void check_same(const VertexSet& o) const {
        if (n_ != o.n_)
            throw std::invalid_argument("VertexSet: universe size mismatch");
    }
    void mask_tail() {
        if (n_ & 63)
            w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace krf
