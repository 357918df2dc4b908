#include "equiwitt/cochains.hpp"

#include <array>
#include <functional>
#include <map>
#include <span>

namespace equiwitt {

namespace {

using Small = std::vector<long long>;  // row-major dense block

struct Block {
    std::size_t rows = 0, cols = 0;
    Small v;
};

bool fits64(const Integer& x) { return x < (Integer(1) << 62) && x > -(Integer(1) << 62); }

Block to_block(const IntMatrix& m) {
    Block b{m.rows(), m.cols(), Small(m.rows() * m.cols())};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!fits64(m(i, j))) throw Error("coefficient block entry too large");
            b.v[i * m.cols() + j] = m(i, j).convert_to<long long>();
        }
    return b;
}

void add_block(SparseIntMatrix& d, std::size_t r0, std::size_t c0, const Block& b, long long scale) {
    for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            long long v = b.v[i * b.cols + j];
            if (v) d.add(r0 + i, c0 + j, scale * v);
        }
}

bool f2_is_identity(const F2Matrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if ((m[i][j] & 1) != (i == j ? 1 : 0)) return false;
    return true;
}

// Face i of simplex t (dimension d+1) as an index into dimension d.
std::size_t face_index(const SimplicialGComplex& x, int d, std::span<const int> t, std::size_t i,
                       std::vector<int>& scratch) {
    scratch.clear();
    for (std::size_t k = 0; k < t.size(); ++k)
        if (k != i) scratch.push_back(t[k]);
    long f = x.simplices(d).find(scratch);
    if (f < 0) throw Error("face closure is broken");
    return static_cast<std::size_t>(f);
}

// Coboundary skeleton on orbit cells: calls emit(row_orbit, col_orbit, face
// simplex, face position) for every face incidence of every orbit representative.
template <class Emit>
void for_each_incidence(const SimplicialGComplex& x, const OrbitCells& oc, int d, Emit emit) {
    std::vector<int> scratch;
    const auto& reps = oc.cells[static_cast<std::size_t>(d + 1)];
    for (std::size_t t = 0; t < reps.size(); ++t) {
        auto simplex = x.simplices(d + 1)[reps[t].rep];
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            std::size_t s = face_index(x, d, simplex, i, scratch);
            emit(t, static_cast<std::size_t>(oc.orbit_of[static_cast<std::size_t>(d)][s]), s, i);
        }
    }
}

std::vector<std::size_t> prefix(const std::vector<std::size_t>& sizes) {
    std::vector<std::size_t> off(sizes.size() + 1, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) off[i + 1] = off[i] + sizes[i];
    return off;
}

}  // namespace

OrbitCells orbit_cells(const SimplicialGComplex& x) {
    OrbitCells oc;
    for (int d = 0; d <= x.dim(); ++d) {
        std::size_t n = x.count(d);
        std::vector<OrbitCells::Cell> cells;
        std::vector<int> orbit(n, -1);
        for (std::size_t i = 0; i < n; ++i) {
            auto j = static_cast<std::size_t>(x.sigma_index(d, i));
            if (j < i) continue;
            orbit[i] = static_cast<int>(cells.size());
            if (j != i) orbit[j] = static_cast<int>(cells.size());
            cells.push_back({i, j == i, x.sigma_sign(d, i)});
        }
        oc.cells.push_back(std::move(cells));
        oc.orbit_of.push_back(std::move(orbit));
    }
    return oc;
}

FGAbGroup SplitComplex::cohomology(int q) const {
    FGAbGroup g = equiwitt::cohomology(lattice, q);
    std::size_t m = cohomology_dim_mod2(f2, q);
    if (m) g = direct_sum(g, FGAbGroup::elementary(static_cast<int>(m)));
    return g;
}

namespace {

// Orbit cochain complex where each orbit carries a coordinate space chosen by
// kind (0 free, 1 fixed with sign +1, 2 fixed with sign -1) and incidence
// blocks come from a cache keyed by (row kind, column kind, twist).
struct OrbitBuilder {
    const SimplicialGComplex& x;
    const OrbitCells& oc;
    std::array<std::size_t, 3> width;
    // block(row kind, col kind, twist: 0 identity, 1 sigma, 2 -sigma)
    std::function<Block(int, int, int)> make;
    std::map<std::array<int, 3>, Block> cache;

    static int kind(const OrbitCells::Cell& c) { return c.fixed ? (c.sign > 0 ? 1 : 2) : 0; }

    const Block& block(int r, int c, int t) {
        auto key = std::array<int, 3>{r, c, t};
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, make(r, c, t)).first;
        return it->second;
    }

    CochainComplex build() {
        CochainComplex c;
        int dim = x.dim();
        std::vector<std::vector<std::size_t>> offs;
        for (int d = 0; d <= dim; ++d) {
            std::vector<std::size_t> w;
            for (auto& cell : oc.cells[static_cast<std::size_t>(d)]) w.push_back(width[static_cast<std::size_t>(kind(cell))]);
            offs.push_back(prefix(w));
            c.sizes.push_back(offs.back().back());
        }
        for (int d = 0; d <= dim; ++d) {
            auto ud = static_cast<std::size_t>(d);
            if (d == dim) {
                c.coboundary.emplace_back(0, c.sizes[ud]);
                break;
            }
            SparseIntMatrix m(c.sizes[ud + 1], c.sizes[ud]);
            const auto& rows = oc.cells[ud + 1];
            const auto& cols = oc.cells[ud];
            for_each_incidence(x, oc, d, [&](std::size_t t, std::size_t o, std::size_t s, std::size_t i) {
                const auto& oc_cell = cols[o];
                int twist = 0;
                if (s != oc_cell.rep) twist = x.sigma_sign(d, oc_cell.rep) > 0 ? 1 : 2;
                const Block& b = block(kind(rows[t]), kind(oc_cell), twist);
                add_block(m, offs[ud + 1][t], offs[ud][o], b, (i % 2) ? -1 : 1);
            });
            m.finalize();
            c.coboundary.push_back(std::move(m));
        }
        return c;
    }
};

IntMatrix scaled(const IntMatrix& m, int s) {
    IntMatrix r = m;
    if (s < 0)
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = -r(i, j);
    return r;
}

}  // namespace

SplitComplex local_complex(const SimplicialGComplex& x, const GModule& mod) {
    mod.check();
    if (!f2_is_identity(mod.sigma2)) throw InputError("unsupported coefficient shape: nontrivial action on the 2-torsion part");
    OrbitCells oc = orbit_cells(x);
    SplitComplex out;

    std::size_t n = mod.rank();
    KernelBasis plus = integer_kernel(mod.sigma - IntMatrix::identity(n));
    KernelBasis minus = integer_kernel(mod.sigma + IntMatrix::identity(n));
    IntMatrix id = IntMatrix::identity(n);
    auto basis = [&](int k) -> const IntMatrix& { return k == 0 ? id : (k == 1 ? plus.basis : minus.basis); };
    auto left = [&](int k) -> const IntMatrix& { return k == 0 ? id : (k == 1 ? plus.left_inv : minus.left_inv); };
    IntMatrix twist[3] = {id, mod.sigma, scaled(mod.sigma, -1)};

    OrbitBuilder lat{x, oc, {n, plus.basis.cols(), minus.basis.cols()},
                     [&](int r, int c, int t) { return to_block(left(r) * twist[t] * basis(c)); }, {}};
    out.lattice = lat.build();

    std::size_t m = mod.f2_dim();
    IntMatrix id2 = IntMatrix::identity(m);
    OrbitBuilder f2{x, oc, {m, m, m}, [&](int, int, int) { return to_block(id2); }, {}};
    out.f2 = f2.build();
    return out;
}

SplitComplex bredon_complex(const SimplicialGComplex& x, const CoefficientSystem& sys) {
    sys.check();
    if (!f2_is_identity(sys.sigma2)) throw InputError("unsupported coefficient shape: nontrivial action on the 2-torsion part of M(G)");
    OrbitCells oc = orbit_cells(x);
    for (int d = 0; d <= x.dim(); ++d)
        for (auto& c : oc.cells[static_cast<std::size_t>(d)])
            if (c.fixed && !x.fixed_pointwise(d, c.rep))
                throw InputError("Bredon cohomology needs a regular complex (a simplex is flipped by the involution); subdivide first");
    SplitComplex out;

    // Kinds: 0 free orbit (M(G)), 1 fixed cell (M(pt)); kind 2 never occurs.
    std::size_t g = sys.g_rank(), p = sys.pt_rank;
    IntMatrix ig = IntMatrix::identity(g), ip = IntMatrix::identity(p);
    IntMatrix twist[3] = {ig, sys.sigma, scaled(sys.sigma, -1)};
    OrbitBuilder lat{x, oc, {g, p, 0},
                     [&](int r, int c, int t) {
                         if (r == 1) return to_block(ip);   // fixed cells only see fixed faces
                         if (c == 1) return to_block(sys.a);
                         return to_block(twist[t]);
                     },
                     {}};
    out.lattice = lat.build();

    std::size_t g2 = sys.g_dim2(), p2 = sys.pt_dim2;
    IntMatrix a2(g2, p2);
    for (std::size_t i = 0; i < g2; ++i)
        for (std::size_t j = 0; j < p2; ++j) a2(i, j) = sys.a2[i][j] & 1;
    IntMatrix ig2 = IntMatrix::identity(g2), ip2 = IntMatrix::identity(p2);
    OrbitBuilder f2{x, oc, {g2, p2, 0},
                    [&](int r, int c, int) {
                        if (r == 1) return to_block(ip2);
                        if (c == 1) return to_block(a2);
                        return to_block(ig2);
                    },
                    {}};
    out.f2 = f2.build();
    return out;
}

namespace {

CochainComplex borel_part(const SimplicialGComplex& x, const IntMatrix& sigma, int truncation) {
    std::size_t r = sigma.rows();
    int dim = x.dim();
    int top = dim + truncation;
    Block sb = to_block(sigma);
    Block id = to_block(IntMatrix::identity(r));

    // offsets[n][p]: start of block (p, n - p) in total degree n
    std::vector<std::vector<std::size_t>> offsets(static_cast<std::size_t>(top + 1));
    CochainComplex c;
    for (int n = 0; n <= top; ++n) {
        auto& off = offsets[static_cast<std::size_t>(n)];
        off.assign(static_cast<std::size_t>(dim + 2), 0);
        std::size_t acc = 0;
        for (int p = 0; p <= dim; ++p) {
            off[static_cast<std::size_t>(p)] = acc;
            int k = n - p;
            if (k >= 0 && k <= truncation) acc += x.count(p) * r;
        }
        off[static_cast<std::size_t>(dim + 1)] = acc;
        c.sizes.push_back(acc);
    }

    std::vector<int> scratch;
    for (int n = 0; n <= top; ++n) {
        auto un = static_cast<std::size_t>(n);
        std::size_t next = n < top ? c.sizes[un + 1] : 0;
        SparseIntMatrix m(next, c.sizes[un]);
        if (n < top) {
            const auto& src = offsets[un];
            const auto& dst = offsets[un + 1];
            for (int p = 0; p <= dim; ++p) {
                int k = n - p;
                if (k < 0 || k > truncation) continue;
                auto up = static_cast<std::size_t>(p);
                // vertical: delta_X (x) I into (p + 1, k)
                if (p < dim) {
                    const auto& tab = x.simplices(p + 1);
                    for (std::size_t t = 0; t < tab.size(); ++t) {
                        auto simplex = tab[t];
                        for (std::size_t i = 0; i < simplex.size(); ++i) {
                            std::size_t s = face_index(x, p, simplex, i, scratch);
                            add_block(m, dst[up + 1] + t * r, src[up] + s * r, id, (i % 2) ? -1 : 1);
                        }
                    }
                }
                // horizontal: (-1)^p (T -/+ 1) into (p, k + 1)
                if (k + 1 <= truncation) {
                    long long sp = (p % 2) ? -1 : 1;
                    long long c1 = ((k + 1) % 2) ? -1 : 1;
                    for (std::size_t s = 0; s < x.count(p); ++s) {
                        auto j = static_cast<std::size_t>(x.sigma_index(p, s));
                        add_block(m, dst[up] + s * r, src[up] + j * r, sb, sp * x.sigma_sign(p, s));
                        add_block(m, dst[up] + s * r, src[up] + s * r, id, sp * c1);
                    }
                }
            }
        }
        m.finalize();
        c.coboundary.push_back(std::move(m));
    }
    return c;
}

}  // namespace

SplitComplex borel_complex(const SimplicialGComplex& x, const GModule& mod, int truncation) {
    mod.check();
    if (truncation < 1) throw InputError("Borel truncation must be at least 1");
    if (!f2_is_identity(mod.sigma2)) throw InputError("unsupported coefficient shape: nontrivial action on the 2-torsion part");
    SplitComplex out;
    out.lattice = borel_part(x, mod.sigma, truncation);
    out.f2 = borel_part(x, IntMatrix::identity(mod.f2_dim()), truncation);
    return out;
}

// --- representatives -------------------------------------------------------

namespace {

SparseIntMatrix coboundary_or_empty(const CochainComplex& c, int q, std::size_t rows_if_missing, std::size_t cols) {
    if (q >= 0 && q < static_cast<int>(c.sizes.size())) return c.coboundary[static_cast<std::size_t>(q)];
    return SparseIntMatrix(rows_if_missing, cols);
}

std::size_t size_at(const CochainComplex& c, int q) {
    return (q >= 0 && q < static_cast<int>(c.sizes.size())) ? c.sizes[static_cast<std::size_t>(q)] : 0;
}

}  // namespace

F2Cohomology::F2Cohomology(const CochainComplex& c, int q) : n_(size_at(c, q)), basis_(n_) {
    next_ = coboundary_or_empty(c, q, 0, n_).mod2();
    SparseIntMatrix prev = coboundary_or_empty(c, q - 1, n_, 0).mod2();
    // Columns of the incoming coboundary span the coboundaries.
    SparseIntMatrix pt = prev.transpose();
    for (std::size_t j = 0; j < pt.rows(); ++j) {
        BitVec v(n_);
        for (auto& e : pt.row(j))
            if (e.val & 1) v.flip(static_cast<std::size_t>(e.col));
        basis_.insert(v);
        gen_class_.push_back(-1);
    }
    boundary_gens_ = basis_.generators();
    for (auto& z : kernel_mod2(next_)) {
        bool indep = basis_.insert(z);
        gen_class_.push_back(indep ? static_cast<long>(reps_.size()) : -1);
        if (indep) reps_.push_back(z);
    }
}

bool F2Cohomology::is_cocycle(const BitVec& z) const { return !apply_mod2(next_, z).any(); }

BitVec F2Cohomology::coords(const BitVec& z) const {
    if (z.size() != n_) throw Error("cochain has the wrong length");
    if (!is_cocycle(z)) throw Error("not a cocycle");
    auto r = basis_.reduce(z);
    if (r.residual.any()) throw Error("cocycle outside the computed span");
    BitVec out(reps_.size());
    for (auto g : r.used) {
        long cls = gen_class_[g];
        if (cls >= 0) out.flip(static_cast<std::size_t>(cls));
    }
    return out;
}

IntCohomology::IntCohomology(const CochainComplex& c, int q) : n_(size_at(c, q)) {
    next_ = coboundary_or_empty(c, q, 0, n_);
    SparseIntMatrix prev = coboundary_or_empty(c, q - 1, n_, 0);

    SmithForm out = smith_normal_form(next_.to_dense(), true);
    std::size_t r = out.rank();
    std::size_t k = n_ - r;
    IntMatrix kinv = out.V_inv.block(r, 0, k, n_);
    IntMatrix bprime = kinv * prev.to_dense();
    SmithForm in = smith_normal_form(bprime, true);
    proj_ = in.U * kinv;
    gens_ = out.V.block(0, r, n_, k) * in.U_inv;

    for (std::size_t i = 0; i < k; ++i) orders_.push_back(i < in.rank() ? in.diagonal[i] : Integer(0));
    group_ = FGAbGroup(0, orders_);
}

std::vector<Integer> IntCohomology::coords(const std::vector<long long>& z) const {
    if (z.size() != n_) throw Error("cochain has the wrong length");
    for (auto v : next_.apply(z))
        if (v) throw Error("not a cocycle");
    std::vector<Integer> out(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < n_; ++j)
            if (z[j]) s += proj_(i, j) * z[j];
        if (orders_[i] != 0) {
            s %= orders_[i];
            if (s < 0) s += orders_[i];
        }
        out[i] = s;
    }
    return out;
}

bool IntCohomology::is_zero(const std::vector<long long>& z) const {
    auto c = coords(z);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (orders_[i] != 1 && c[i] != 0) return false;
    return true;
}

std::size_t IntCohomology::even_count() const {
    std::size_t m = 0;
    for (auto& d : orders_)
        if (d != 0 && d % 2 == 0) ++m;
    return m;
}

BitVec IntCohomology::two_torsion_bits(const std::vector<long long>& z) const {
    auto c = coords(z);
    BitVec out(even_count());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Integer& d = orders_[i];
        if (d == 1) continue;
        if (d == 0 || d % 2 != 0) {
            if (c[i] != 0) throw Error("class is not 2-torsion");
            continue;
        }
        if (c[i] == d / 2)
            out.set(pos);
        else if (c[i] != 0)
            throw Error("class is not 2-torsion");
        ++pos;
    }
    return out;
}

}  // namespace equiwitt
