#pragma once

// Dense Smith normal form kernel shared by abelian.cpp and sparse.cpp.
// Instantiated for checked int64 and for cpp_int.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <type_traits>
#include <cstddef>
#include <utility>
#include <vector>

#include "equiwitt/abelian.hpp"

namespace equiwitt::detail {

inline long long add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline long long sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline long long mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline long long neg(long long a) {
    if (a == LLONG_MIN) throw Overflow{};
    return -a;
}
inline long long absval(long long a) { return a < 0 ? neg(a) : a; }
inline long long quo(long long a, long long b) {
    if (a == LLONG_MIN && b == -1) throw Overflow{};
    return a / b;
}

inline Integer add(const Integer& a, const Integer& b) { return a + b; }
inline Integer sub(const Integer& a, const Integer& b) { return a - b; }
inline Integer mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer neg(const Integer& a) { return -a; }
inline Integer absval(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Integer quo(const Integer& a, const Integer& b) { return a / b; }

inline bool fits64(const Integer& x) {
    static const Integer lim = (Integer(1) << 62);
    return x < lim && x > -lim;
}

// g = s*a + t*b with a, b > 0.
template <class T>
void ext_gcd(const T& a, const T& b, T& g, T& s, T& t) {
    T r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        T q = quo(r0, r1);
        T r2 = sub(r0, mul(q, r1));
        T s2 = sub(s0, mul(q, s1));
        T t2 = sub(t0, mul(q, t1));
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    g = r0; s = s0; t = t0;
}

template <class T>
struct Dense {
    std::size_t r = 0, c = 0;
    std::vector<T> a;
    Dense() = default;
    Dense(std::size_t rr, std::size_t cc) : r(rr), c(cc), a(rr * cc, T(0)) {}
    static Dense identity(std::size_t n) {
        Dense d(n, n);
        for (std::size_t i = 0; i < n; ++i) d(i, i) = 1;
        return d;
    }
    T& operator()(std::size_t i, std::size_t j) { return a[i * c + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * c + j]; }
};

template <class T>
Dense<T> to_engine(const IntMatrix& m) {
    Dense<T> d(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if constexpr (std::is_same_v<T, long long>) {
                if (!fits64(m(i, j))) throw Overflow{};
                d(i, j) = static_cast<long long>(m(i, j));
            } else {
                d(i, j) = m(i, j);
            }
        }
    return d;
}

template <class T>
IntMatrix from_engine(const Dense<T>& d) {
    IntMatrix m(d.r, d.c);
    for (std::size_t i = 0; i < d.r; ++i)
        for (std::size_t j = 0; j < d.c; ++j) m(i, j) = Integer(d(i, j));
    return m;
}

template <class T>
class SnfEngine {
public:
    Dense<T> A, U, Ui, V, Vi;
    std::vector<T> diag;

    SnfEngine(Dense<T> a, bool transforms, bool inverses)
        : A(std::move(a)), track_(transforms), inv_(transforms && inverses) {
        if (track_) {
            U = Dense<T>::identity(A.r);
            V = Dense<T>::identity(A.c);
        }
        if (inv_) {
            Ui = Dense<T>::identity(A.r);
            Vi = Dense<T>::identity(A.c);
        }
    }

    void run() {
        const std::size_t m = A.r, n = A.c;
        std::size_t t = 0;
        std::vector<std::size_t> rc(m), cc(n);
        while (t < m && t < n) {
            if (!select_pivot(t, rc, cc)) break;
            for (;;) {
                bool clean = true;
                for (std::size_t i = t + 1; i < m; ++i) {
                    if (A(i, t) == 0) continue;
                    T q = quo(A(i, t), A(t, t));
                    if (q != 0) row_sub(i, t, q);
                    if (A(i, t) != 0) clean = false;
                }
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (A(t, j) == 0) continue;
                    T q = quo(A(t, j), A(t, t));
                    if (q != 0) col_sub(j, t, q);
                    if (A(t, j) != 0) clean = false;
                }
                if (clean) break;
                // A remainder smaller than the pivot exists; move it in.
                std::size_t bi = t, bj = t;
                T best = absval(A(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (A(i, t) != 0 && absval(A(i, t)) < best) { best = absval(A(i, t)); bi = i; bj = t; }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (A(t, j) != 0 && absval(A(t, j)) < best) { best = absval(A(t, j)); bi = t; bj = j; }
                if (bi != t) swap_rows(bi, t);
                if (bj != t) swap_cols(bj, t);
            }
            ++t;
        }
        for (std::size_t k = 0; k < t; ++k)
            if (A(k, k) < 0) negate_row(k);
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t j = i + 1; j < t; ++j) fix_pair(i, j);
        diag.clear();
        for (std::size_t k = 0; k < t; ++k) diag.push_back(A(k, k));
    }

private:
    bool track_, inv_;

    bool select_pivot(std::size_t t, std::vector<std::size_t>& rc, std::vector<std::size_t>& cc) {
        const std::size_t m = A.r, n = A.c;
        std::fill(rc.begin(), rc.end(), 0);
        std::fill(cc.begin(), cc.end(), 0);
        bool any = false;
        T best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const T& x = A(i, j);
                if (x == 0) continue;
                ++rc[i];
                ++cc[j];
                T ax = absval(x);
                if (!any || ax < best) { best = ax; any = true; }
            }
        if (!any) return false;
        std::size_t pi = 0, pj = 0, cost = SIZE_MAX;
        for (std::size_t i = t; i < m && cost > 0; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const T& x = A(i, j);
                if (x == 0 || absval(x) != best) continue;
                std::size_t c = (rc[i] - 1) * (cc[j] - 1);
                if (c < cost) { cost = c; pi = i; pj = j; if (c == 0) break; }
            }
        if (pi != t) swap_rows(pi, t);
        if (pj != t) swap_cols(pj, t);
        return true;
    }

    // row_i -= q * row_k
    void row_sub(std::size_t i, std::size_t k, const T& q) {
        for (std::size_t j = 0; j < A.c; ++j)
            if (A(k, j) != 0) A(i, j) = sub(A(i, j), mul(q, A(k, j)));
        if (track_)
            for (std::size_t j = 0; j < U.c; ++j)
                if (U(k, j) != 0) U(i, j) = sub(U(i, j), mul(q, U(k, j)));
        if (inv_)
            for (std::size_t r = 0; r < Ui.r; ++r)
                if (Ui(r, i) != 0) Ui(r, k) = add(Ui(r, k), mul(q, Ui(r, i)));
    }

    // col_j -= q * col_k
    void col_sub(std::size_t j, std::size_t k, const T& q) {
        for (std::size_t i = 0; i < A.r; ++i)
            if (A(i, k) != 0) A(i, j) = sub(A(i, j), mul(q, A(i, k)));
        if (track_)
            for (std::size_t i = 0; i < V.r; ++i)
                if (V(i, k) != 0) V(i, j) = sub(V(i, j), mul(q, V(i, k)));
        if (inv_)
            for (std::size_t c = 0; c < Vi.c; ++c)
                if (Vi(j, c) != 0) Vi(k, c) = add(Vi(k, c), mul(q, Vi(j, c)));
    }

    void swap_rows(std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < A.c; ++j) std::swap(A(i, j), A(k, j));
        if (track_)
            for (std::size_t j = 0; j < U.c; ++j) std::swap(U(i, j), U(k, j));
        if (inv_)
            for (std::size_t r = 0; r < Ui.r; ++r) std::swap(Ui(r, i), Ui(r, k));
    }

    void swap_cols(std::size_t j, std::size_t k) {
        for (std::size_t i = 0; i < A.r; ++i) std::swap(A(i, j), A(i, k));
        if (track_)
            for (std::size_t i = 0; i < V.r; ++i) std::swap(V(i, j), V(i, k));
        if (inv_)
            for (std::size_t c = 0; c < Vi.c; ++c) std::swap(Vi(j, c), Vi(k, c));
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < A.c; ++j) A(i, j) = neg(A(i, j));
        if (track_)
            for (std::size_t j = 0; j < U.c; ++j) U(i, j) = neg(U(i, j));
        if (inv_)
            for (std::size_t r = 0; r < Ui.r; ++r) Ui(r, i) = neg(Ui(r, i));
    }

    // diag(a, b) -> diag(gcd, lcm) on positions i < j.
    void fix_pair(std::size_t i, std::size_t j) {
        T a = A(i, i), b = A(j, j);
        if (mul(quo(b, a), a) == b) return;
        T g, s, t;
        ext_gcd(a, b, g, s, t);
        T ag = quo(a, g), bg = quo(b, g);
        A(i, i) = g;
        A(j, j) = mul(ag, b);
        if (track_) {
            // rows of U: L = [[s, t], [-b/g, a/g]]
            for (std::size_t c = 0; c < U.c; ++c) {
                T ui = U(i, c), uj = U(j, c);
                U(i, c) = add(mul(s, ui), mul(t, uj));
                U(j, c) = add(mul(neg(bg), ui), mul(ag, uj));
            }
            // columns of V: R = [[1, -t*b/g], [1, s*a/g]]
            T r01 = neg(mul(t, bg)), r11 = mul(s, ag);
            for (std::size_t r = 0; r < V.r; ++r) {
                T vi = V(r, i), vj = V(r, j);
                V(r, i) = add(vi, vj);
                V(r, j) = add(mul(r01, vi), mul(r11, vj));
            }
            if (inv_) {
                // Ui <- Ui * L^{-1}, L^{-1} = [[a/g, -t], [b/g, s]]
                for (std::size_t r = 0; r < Ui.r; ++r) {
                    T ci = Ui(r, i), cj = Ui(r, j);
                    Ui(r, i) = add(mul(ag, ci), mul(bg, cj));
                    Ui(r, j) = add(mul(neg(t), ci), mul(s, cj));
                }
                // Vi <- R^{-1} * Vi, R^{-1} = [[s*a/g, t*b/g], [-1, 1]]
                T tb = mul(t, bg);
                for (std::size_t c = 0; c < Vi.c; ++c) {
                    T ri = Vi(i, c), rj = Vi(j, c);
                    Vi(i, c) = add(mul(r11, ri), mul(tb, rj));
                    Vi(j, c) = sub(rj, ri);
                }
            }
        }
    }
};

// Diagonal entries of the SNF of a dense matrix, no transforms.
inline std::vector<Integer> dense_invariant_factors(const IntMatrix& m) {
    try {
        SnfEngine<long long> e(to_engine<long long>(m), false, false);
        e.run();
        std::vector<Integer> out;
        for (auto d : e.diag) out.emplace_back(d);
        return out;
    } catch (const Overflow&) {
        SnfEngine<Integer> e(to_engine<Integer>(m), false, false);
        e.run();
        return e.diag;
    }
}

}  // namespace equiwitt::detail
