#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "equiwitt/abelian.hpp"

namespace equiwitt {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v = true) {
        if (v)
            w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else
            w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    BitVec& operator^=(const BitVec& o);
    bool any() const;
    std::size_t count() const;
    // Lowest set index, or size() when zero.
    std::size_t first() const;
    bool operator==(const BitVec& o) const = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

BitVec apply_mod2(const SparseIntMatrix& a, const BitVec& x);

// Incrementally built F2 span; remembers how each reduced row is
// expressed in the generators that were inserted.
class F2Basis {
public:
    explicit F2Basis(std::size_t dim) : dim_(dim) {}

    // Returns true if v was independent of what was already inserted.
    bool insert(const BitVec& v);
    std::size_t rank() const { return rows_.size(); }
    std::size_t generators() const { return ngen_; }

    struct Reduction {
        BitVec residual;
        std::vector<std::size_t> used;  // generator indices whose sum was subtracted
    };
    Reduction reduce(const BitVec& v) const;
    bool contains(const BitVec& v) const { return !reduce(v).residual.any(); }

private:
    std::size_t dim_;
    std::size_t ngen_ = 0;
    std::vector<BitVec> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<std::size_t>> combo_;
};

// Basis of the null space of A over F2.
std::vector<BitVec> kernel_mod2(const SparseIntMatrix& a);

}  // namespace equiwitt
