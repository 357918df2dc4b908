#include <algorithm>
#include <queue>
#include <utility>

#include "dense_snf.hpp"
#include "equiwitt/abelian.hpp"

namespace equiwitt {

std::size_t SparseIntMatrix::nnz() const {
    std::size_t n = 0;
    for (auto& r : rows_) n += r.size();
    return n;
}

void SparseIntMatrix::add(std::size_t i, std::size_t j, long long v) {
    if (i >= rows_.size() || j >= cols_) throw Error("sparse matrix index out of range");
    rows_[i].push_back({static_cast<int>(j), v});
}

void SparseIntMatrix::finalize() {
    for (auto& r : rows_) {
        std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
        std::vector<Entry> m;
        for (auto& e : r) {
            if (!m.empty() && m.back().col == e.col)
                m.back().val = detail::add(m.back().val, e.val);
            else
                m.push_back(e);
        }
        m.erase(std::remove_if(m.begin(), m.end(), [](const Entry& e) { return e.val == 0; }), m.end());
        r = std::move(m);
    }
}

IntMatrix SparseIntMatrix::to_dense() const {
    IntMatrix d(rows_.size(), cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (auto& e : rows_[i]) d(i, e.col) += e.val;
    return d;
}

SparseIntMatrix SparseIntMatrix::from_dense(const IntMatrix& m) {
    SparseIntMatrix s(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) {
                if (!detail::fits64(m(i, j))) throw Overflow{};
                s.rows_[i].push_back({static_cast<int>(j), static_cast<long long>(m(i, j))});
            }
    return s;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
    SparseIntMatrix t(cols_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (auto& e : rows_[i]) t.rows_[e.col].push_back({static_cast<int>(i), e.val});
    return t;
}

SparseIntMatrix SparseIntMatrix::operator*(const SparseIntMatrix& o) const {
    if (cols_ != o.rows()) throw Error("sparse product: shape mismatch");
    SparseIntMatrix p(rows_.size(), o.cols());
    std::vector<long long> acc(o.cols(), 0);
    std::vector<int> touched;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (auto& e : rows_[i])
            for (auto& f : o.rows_[e.col]) {
                if (acc[f.col] == 0) touched.push_back(f.col);
                acc[f.col] = detail::add(acc[f.col], detail::mul(e.val, f.val));
            }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (int c : touched) {
            if (acc[c] != 0) p.rows_[i].push_back({c, acc[c]});
            acc[c] = 0;
        }
        touched.clear();
    }
    return p;
}

SparseIntMatrix SparseIntMatrix::mod2() const {
    SparseIntMatrix m(rows_.size(), cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (auto& e : rows_[i])
            if (e.val & 1) m.rows_[i].push_back({e.col, 1});
    return m;
}

bool SparseIntMatrix::is_zero() const {
    for (auto& r : rows_)
        for (auto& e : r)
            if (e.val != 0) return false;
    return true;
}

std::vector<long long> SparseIntMatrix::apply(const std::vector<long long>& x) const {
    if (x.size() != cols_) throw Error("sparse apply: shape mismatch");
    std::vector<long long> y(rows_.size(), 0);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (auto& e : rows_[i]) y[i] = detail::add(y[i], detail::mul(e.val, x[e.col]));
    return y;
}

namespace {

// Unit-pivot elimination with a Markowitz ordering by column count.
// Whatever has no unit pivot left is handed to the dense kernel.
template <class T>
class SparseEliminator {
public:
    struct E {
        int col;
        T val;
    };

    explicit SparseEliminator(const SparseIntMatrix& m) : ncols_(m.cols()) {
        rows_.resize(m.rows());
        colrows_.resize(ncols_);
        colcount_.assign(ncols_, 0);
        row_dead_.assign(m.rows(), 0);
        col_dead_.assign(ncols_, 0);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (auto& e : m.row(i)) {
                if (e.val == 0) continue;
                rows_[i].push_back({e.col, T(e.val)});
                colrows_[e.col].push_back(static_cast<int>(i));
                ++colcount_[e.col];
            }
        }
    }

    InvariantFactors run() {
        for (std::size_t c = 0; c < ncols_; ++c)
            if (colcount_[c] > 0) heap_.push({colcount_[c], static_cast<int>(c)});
        for (;;) {
            while (!heap_.empty()) {
                auto [cnt, c] = heap_.top();
                heap_.pop();
                if (col_dead_[c] || cnt != colcount_[c] || cnt == 0) continue;
                int p = find_unit(c);
                if (p < 0) continue;
                eliminate(p, c);
            }
            bool again = false;
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                if (row_dead_[r]) continue;
                for (auto& e : rows_[r])
                    if (!col_dead_[e.col] && is_unit(e.val)) {
                        heap_.push({colcount_[e.col], e.col});
                        again = true;
                    }
            }
            if (!again) break;
        }
        return finish();
    }

private:
    using HeapItem = std::pair<std::size_t, int>;
    std::size_t ncols_;
    std::vector<std::vector<E>> rows_;
    std::vector<std::vector<int>> colrows_;
    std::vector<std::size_t> colcount_;
    std::vector<char> row_dead_, col_dead_;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap_;
    std::size_t rank_ = 0;

    static bool is_unit(const T& v) { return v == 1 || v == -1; }

    const E* entry(int r, int c) const {
        auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const E& e, int cc) { return e.col < cc; });
        if (it == row.end() || it->col != c) return nullptr;
        return &*it;
    }

    int find_unit(int c) {
        auto& list = colrows_[c];
        std::vector<int> live;
        live.reserve(list.size());
        int best = -1;
        for (int r : list) {
            if (row_dead_[r]) continue;
            const E* e = entry(r, c);
            if (!e) continue;
            if (!live.empty() && live.back() == r) continue;
            live.push_back(r);
            if (is_unit(e->val) && (best < 0 || rows_[r].size() < rows_[best].size())) best = r;
        }
        std::sort(live.begin(), live.end());
        live.erase(std::unique(live.begin(), live.end()), live.end());
        list = std::move(live);
        return best;
    }

    void eliminate(int p, int c) {
        T pv = entry(p, c)->val;
        std::vector<int> targets;
        for (int r : colrows_[c])
            if (r != p && !row_dead_[r] && entry(r, c)) targets.push_back(r);
        const auto& prow = rows_[p];
        std::vector<E> merged;
        for (int r : targets) {
            T f = detail::mul(entry(r, c)->val, pv);
            auto& row = rows_[r];
            merged.clear();
            merged.reserve(row.size() + prow.size());
            std::size_t a = 0, b = 0;
            while (a < row.size() || b < prow.size()) {
                if (b == prow.size() || (a < row.size() && row[a].col < prow[b].col)) {
                    merged.push_back(row[a++]);
                } else if (a == row.size() || prow[b].col < row[a].col) {
                    int col = prow[b].col;
                    merged.push_back({col, detail::neg(detail::mul(f, prow[b].val))});
                    ++colcount_[col];
                    colrows_[col].push_back(r);
                    heap_.push({colcount_[col], col});
                    ++b;
                } else {
                    int col = row[a].col;
                    T v = detail::sub(row[a].val, detail::mul(f, prow[b].val));
                    if (v != 0) {
                        merged.push_back({col, v});
                    } else {
                        --colcount_[col];
                        heap_.push({colcount_[col], col});
                    }
                    ++a;
                    ++b;
                }
            }
            row.swap(merged);
        }
        for (auto& e : rows_[p]) {
            --colcount_[e.col];
            if (e.col != c) heap_.push({colcount_[e.col], e.col});
        }
        row_dead_[p] = 1;
        col_dead_[c] = 1;
        rows_[p].clear();
        rows_[p].shrink_to_fit();
        ++rank_;
    }

    InvariantFactors finish() {
        std::vector<int> colmap(ncols_, -1);
        std::vector<int> live_rows;
        int nc = 0;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (row_dead_[r] || rows_[r].empty()) continue;
            live_rows.push_back(static_cast<int>(r));
            for (auto& e : rows_[r])
                if (colmap[e.col] < 0) colmap[e.col] = nc++;
        }
        InvariantFactors out;
        out.rank = rank_;
        if (live_rows.empty()) return out;
        IntMatrix d(live_rows.size(), static_cast<std::size_t>(nc));
        for (std::size_t i = 0; i < live_rows.size(); ++i)
            for (auto& e : rows_[live_rows[i]]) d(i, colmap[e.col]) = Integer(e.val);
        auto diag = detail::dense_invariant_factors(d);
        out.rank += diag.size();
        for (auto& x : diag)
            if (x != 1) out.nonunit.push_back(x);
        return out;
    }
};

class SparseF2Eliminator {
public:
    explicit SparseF2Eliminator(const SparseIntMatrix& m) : ncols_(m.cols()) {
        rows_.resize(m.rows());
        colrows_.resize(ncols_);
        colcount_.assign(ncols_, 0);
        row_dead_.assign(m.rows(), 0);
        col_dead_.assign(ncols_, 0);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (auto& e : m.row(i))
                if (e.val & 1) {
                    rows_[i].push_back(e.col);
                    colrows_[e.col].push_back(static_cast<int>(i));
                    ++colcount_[e.col];
                }
    }

    std::size_t run() {
        using Item = std::pair<std::size_t, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        for (std::size_t c = 0; c < ncols_; ++c)
            if (colcount_[c] > 0) heap.push({colcount_[c], static_cast<int>(c)});
        std::vector<int> merged, targets;
        while (!heap.empty()) {
            auto [cnt, c] = heap.top();
            heap.pop();
            if (col_dead_[c] || cnt != colcount_[c] || cnt == 0) continue;
            // Live rows containing c; pick the shortest as pivot.
            targets.clear();
            int p = -1;
            for (int r : colrows_[c]) {
                if (row_dead_[r] || !std::binary_search(rows_[r].begin(), rows_[r].end(), c)) continue;
                targets.push_back(r);
            }
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            colrows_[c] = targets;
            for (int r : targets)
                if (p < 0 || rows_[r].size() < rows_[p].size()) p = r;
            if (p < 0) continue;
            const auto& prow = rows_[p];
            for (int r : targets) {
                if (r == p) continue;
                auto& row = rows_[r];
                merged.clear();
                std::size_t a = 0, b = 0;
                while (a < row.size() || b < prow.size()) {
                    if (b == prow.size() || (a < row.size() && row[a] < prow[b])) {
                        merged.push_back(row[a++]);
                    } else if (a == row.size() || prow[b] < row[a]) {
                        int col = prow[b++];
                        merged.push_back(col);
                        ++colcount_[col];
                        colrows_[col].push_back(r);
                        heap.push({colcount_[col], col});
                    } else {
                        int col = row[a];
                        --colcount_[col];
                        heap.push({colcount_[col], col});
                        ++a;
                        ++b;
                    }
                }
                row.swap(merged);
            }
            for (int col : rows_[p]) {
                --colcount_[col];
                if (col != c) heap.push({colcount_[col], col});
            }
            row_dead_[p] = 1;
            col_dead_[c] = 1;
            rows_[p].clear();
            rows_[p].shrink_to_fit();
            ++rank_;
        }
        return rank_;
    }

private:
    std::size_t ncols_;
    std::vector<std::vector<int>> rows_;
    std::vector<std::vector<int>> colrows_;
    std::vector<std::size_t> colcount_;
    std::vector<char> row_dead_, col_dead_;
    std::size_t rank_ = 0;
};

}  // namespace

InvariantFactors invariant_factors(const SparseIntMatrix& a) {
    try {
        SparseEliminator<long long> e(a);
        return e.run();
    } catch (const Overflow&) {
        SparseEliminator<Integer> e(a);
        return e.run();
    }
}

std::size_t rank_mod2(const SparseIntMatrix& a) {
    SparseF2Eliminator e(a);
    return e.run();
}

}  // namespace equiwitt
