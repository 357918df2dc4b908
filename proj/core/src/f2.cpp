#include "equiwitt/f2.hpp"

#include <algorithm>
#include <bit>

namespace equiwitt {

BitVec& BitVec::operator^=(const BitVec& o) {
    if (o.n_ != n_) throw Error("bit vector size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

bool BitVec::any() const {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x != 0; });
}

std::size_t BitVec::count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
}

std::size_t BitVec::first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
    return n_;
}

BitVec apply_mod2(const SparseIntMatrix& a, const BitVec& x) {
    if (x.size() != a.cols()) throw Error("apply_mod2: shape mismatch");
    BitVec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        bool v = false;
        for (auto& e : a.row(i))
            if ((e.val & 1) && x.get(e.col)) v = !v;
        if (v) y.set(i);
    }
    return y;
}

namespace {

void xor_sets(std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    a.swap(out);
}

}  // namespace

bool F2Basis::insert(const BitVec& v) {
    if (v.size() != dim_) throw Error("F2Basis: dimension mismatch");
    std::size_t g = ngen_++;
    Reduction r = reduce(v);
    if (!r.residual.any()) return false;
    r.used.push_back(g);
    std::sort(r.used.begin(), r.used.end());
    pivots_.push_back(r.residual.first());
    rows_.push_back(std::move(r.residual));
    combo_.push_back(std::move(r.used));
    return true;
}

F2Basis::Reduction F2Basis::reduce(const BitVec& v) const {
    Reduction r{v, {}};
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (r.residual.get(pivots_[i])) {
            r.residual ^= rows_[i];
            xor_sets(r.used, combo_[i]);
        }
    return r;
}

std::vector<BitVec> kernel_mod2(const SparseIntMatrix& a) {
    std::size_t n = a.cols();
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BitVec r(n);
        for (auto& e : a.row(i))
            if (e.val & 1) r.flip(e.col);
        if (r.any()) rows.push_back(std::move(r));
    }
    // Reduced row echelon form.
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && !rows[p].get(c)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && rows[i].get(c)) rows[i] ^= rows[rank];
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<char> is_pivot(n, 0);
    for (auto c : pivot_col) is_pivot[c] = 1;
    std::vector<BitVec> kernel;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        BitVec k(n);
        k.set(f);
        for (std::size_t i = 0; i < rank; ++i)
            if (rows[i].get(f)) k.set(pivot_col[i]);
        kernel.push_back(std::move(k));
    }
    return kernel;
}

}  // namespace equiwitt
