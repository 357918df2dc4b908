#include "equiwitt/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dense_snf.hpp"

namespace equiwitt {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (c_ != o.r_) throw Error("matrix product: shape mismatch");
    IntMatrix p(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Integer& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j)
                if (o(k, j) != 0) p(i, j) += x * o(k, j);
        }
    return p;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error("matrix sum: shape mismatch");
    IntMatrix s(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += o.a_[i];
    return s;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error("matrix difference: shape mismatch");
    IntMatrix s(*this);
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] -= o.a_[i];
    return s;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    IntMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < r_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < c_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

Integer determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw Error("determinant of a non-square matrix");
    // Bareiss fraction-free elimination.
    std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m(a);
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

SmithForm smith_normal_form(const IntMatrix& a, bool with_inverses) {
    auto finish = [&](auto& e) {
        SmithForm f;
        f.D = detail::from_engine(e.A);
        f.U = detail::from_engine(e.U);
        f.V = detail::from_engine(e.V);
        if (with_inverses) {
            f.U_inv = detail::from_engine(e.Ui);
            f.V_inv = detail::from_engine(e.Vi);
        }
        for (const auto& d : e.diag) f.diagonal.emplace_back(d);
        return f;
    };
    try {
        detail::SnfEngine<long long> e(detail::to_engine<long long>(a), true, with_inverses);
        e.run();
        return finish(e);
    } catch (const Overflow&) {
        detail::SnfEngine<Integer> e(detail::to_engine<Integer>(a), true, with_inverses);
        e.run();
        return finish(e);
    }
}

InvariantFactors invariant_factors(const IntMatrix& a) {
    InvariantFactors out;
    auto d = detail::dense_invariant_factors(a);
    out.rank = d.size();
    for (auto& x : d)
        if (x != 1) out.nonunit.push_back(x);
    return out;
}

// ---------------------------------------------------------------- groups

namespace {

// Pairwise (gcd, lcm) sweep; zeros removed beforehand.
std::vector<Integer> normalize_orders(std::vector<Integer> v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            Integer g = boost::multiprecision::gcd(v[i], v[j]);
            Integer l = v[i] / g * v[j];
            v[i] = g;
            v[j] = l;
        }
    std::vector<Integer> out;
    for (auto& x : v)
        if (x != 1) out.push_back(x);
    return out;
}

}  // namespace

FGAbGroup::FGAbGroup(int free_rank, const std::vector<Integer>& orders) : free_rank_(free_rank) {
    if (free_rank < 0) throw InputError("negative free rank");
    std::vector<Integer> tors;
    for (const auto& o : orders) {
        Integer x = o < 0 ? Integer(-o) : o;
        if (x == 0)
            ++free_rank_;
        else if (x != 1)
            tors.push_back(x);
    }
    factors_ = normalize_orders(std::move(tors));
}

FGAbGroup FGAbGroup::cyclic(const Integer& n) { return FGAbGroup(0, {n}); }

FGAbGroup FGAbGroup::elementary(int m, int p) {
    return FGAbGroup(0, std::vector<Integer>(static_cast<std::size_t>(std::max(m, 0)), Integer(p)));
}

Integer FGAbGroup::torsion_order() const {
    Integer o = 1;
    for (auto& d : factors_) o *= d;
    return o;
}

Integer FGAbGroup::exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

int FGAbGroup::count_even() const {
    int n = 0;
    for (auto& d : factors_)
        if (d % 2 == 0) ++n;
    return n;
}

bool FGAbGroup::annihilated_by(const Integer& n) const {
    return free_rank_ == 0 && (n % exponent() == 0);
}

std::string FGAbGroup::str() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_ == 1) {
        os << "Z";
        first = false;
    } else if (free_rank_ > 1) {
        os << "Z^" << free_rank_;
        first = false;
    }
    for (auto& d : factors_) {
        if (!first) os << " (+) ";
        os << "Z/" << d;
        first = false;
    }
    return os.str();
}

namespace {

std::string strip(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

Integer parse_int(const std::string& s, std::string_view whole) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw InputError("cannot parse group '" + std::string(whole) + "'");
    return Integer(s);
}

}  // namespace

FGAbGroup FGAbGroup::parse(std::string_view text) {
    std::string t(text);
    // Unify separators.
    for (std::string sep : {"(+)", "\xE2\x8A\x95"}) {
        std::size_t p;
        while ((p = t.find(sep)) != std::string::npos) t.replace(p, sep.size(), "+");
    }
    int free = 0;
    std::vector<Integer> orders;
    std::stringstream ss(t);
    std::string term;
    bool any = false;
    while (std::getline(ss, term, '+')) {
        term = strip(term);
        if (term.empty()) throw InputError("cannot parse group '" + std::string(text) + "'");
        any = true;
        Integer mult = 1;
        std::string base = term;
        if (term.front() == '(') {
            auto close = term.find(')');
            if (close == std::string::npos) throw InputError("cannot parse group '" + std::string(text) + "'");
            base = strip(term.substr(1, close - 1));
            std::string rest = strip(term.substr(close + 1));
            if (!rest.empty()) {
                if (rest.front() != '^') throw InputError("cannot parse group '" + std::string(text) + "'");
                mult = parse_int(strip(rest.substr(1)), text);
            }
        }
        if (base == "0") continue;
        if (base == "Z") {
            free += static_cast<int>(mult);
        } else if (base.rfind("Z^", 0) == 0) {
            free += static_cast<int>(parse_int(strip(base.substr(2)), text) * mult);
        } else if (base.rfind("Z/", 0) == 0) {
            Integer d = parse_int(strip(base.substr(2)), text);
            if (d == 0) throw InputError("Z/0 is ambiguous in '" + std::string(text) + "'");
            for (Integer i = 0; i < mult; ++i) orders.push_back(d);
        } else {
            throw InputError("cannot parse group '" + std::string(text) + "'");
        }
    }
    if (!any) throw InputError("empty group string");
    return FGAbGroup(free, orders);
}

FGAbGroup direct_sum(const FGAbGroup& a, const FGAbGroup& b) {
    std::vector<Integer> o = a.invariant_factors();
    o.insert(o.end(), b.invariant_factors().begin(), b.invariant_factors().end());
    return FGAbGroup(a.free_rank() + b.free_rank(), o);
}

FGAbGroup two_torsion(const FGAbGroup& a) { return FGAbGroup::elementary(a.count_even()); }

FGAbGroup cokernel(const IntMatrix& a) {
    auto f = invariant_factors(a);
    return FGAbGroup(static_cast<int>(a.rows() - f.rank), f.nonunit);
}

FGAbGroup cokernel(const SparseIntMatrix& a) {
    auto f = invariant_factors(a);
    return FGAbGroup(static_cast<int>(a.rows() - f.rank), f.nonunit);
}

// ---------------------------------------------------------------- involutions

void InvolutionModule::check() const {
    if (sigma.rows() != sigma.cols()) throw InputError("involution matrix must be square");
    if (!(sigma * sigma).is_identity()) throw InputError("action does not square to the identity");
}

KernelBasis integer_kernel(const IntMatrix& a) {
    std::size_t n = a.cols();
    KernelBasis k;
    if (a.rows() == 0) {
        k.basis = IntMatrix::identity(n);
        k.left_inv = IntMatrix::identity(n);
        return k;
    }
    SmithForm s = smith_normal_form(a, true);
    std::size_t r = s.rank();
    k.basis = s.V.block(0, r, n, n - r);
    k.left_inv = s.V_inv.block(r, 0, n - r, n);
    return k;
}

namespace {

FGAbGroup tate_piece(const IntMatrix& kill, const IntMatrix& image) {
    KernelBasis k = integer_kernel(kill);
    IntMatrix coords = k.left_inv * image;
    return cokernel(coords);
}

}  // namespace

TateGroups tate_cohomology(const InvolutionModule& m) {
    m.check();
    IntMatrix id = IntMatrix::identity(m.rank());
    IntMatrix minus = id - m.sigma, plus = id + m.sigma;
    return {tate_piece(minus, plus), tate_piece(plus, minus)};
}

TateGroups tate_cohomology(const F2InvolutionModule& m) {
    std::size_t n = m.dim();
    SparseIntMatrix norm(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (m.sigma[i].size() != n) throw InputError("F2 action must be square");
        for (std::size_t j = 0; j < n; ++j) {
            int v = ((m.sigma[i][j] & 1) + (i == j ? 1 : 0)) & 1;
            if (v) norm.add(i, j, 1);
        }
    }
    norm.finalize();
    SparseIntMatrix sq = norm * norm;
    if (!sq.mod2().is_zero()) throw InputError("F2 action does not square to the identity");
    int d = static_cast<int>(n - 2 * rank_mod2(norm));
    return {FGAbGroup::elementary(d), FGAbGroup::elementary(d)};
}

Comessatti comessatti_decompose(const InvolutionModule& m) {
    TateGroups t = tate_cohomology(m);
    for (const auto* g : {&t.even, &t.odd}) {
        if (g->free_rank() != 0) throw Error("Tate cohomology is not torsion; input is not an involution");
        for (auto& d : g->invariant_factors())
            if (d != 2) throw Error("Tate cohomology is not elementary abelian");
    }
    int n = static_cast<int>(m.rank());
    int a = static_cast<int>(t.even.invariant_factors().size());
    int b = static_cast<int>(t.odd.invariant_factors().size());
    if ((n - a - b) < 0 || (n - a - b) % 2 != 0) throw Error("Comessatti parity check failed");
    return {a, b, (n - a - b) / 2};
}

// ---------------------------------------------------------------- complexes

IntMatrix SignedPermutation::to_matrix() const {
    IntMatrix m(image.size(), image.size());
    for (std::size_t j = 0; j < image.size(); ++j) m(image[j], j) = sign[j];
    return m;
}

void ChainComplex::validate() const {
    if (boundary.size() != sizes.size()) throw InputError("chain complex: degree count mismatch");
    for (std::size_t q = 0; q < sizes.size(); ++q) {
        if (boundary[q].cols() != sizes[q] || boundary[q].rows() != (q ? sizes[q - 1] : 0))
            throw InputError("chain complex: boundary shape mismatch in degree " + std::to_string(q));
        if (q >= 2 && !(boundary[q - 1] * boundary[q]).is_zero())
            throw InputError("chain complex: boundary does not square to zero in degree " + std::to_string(q));
    }
}

void ChainComplexZG::validate() const {
    chains.validate();
    if (sigma.size() != chains.sizes.size()) throw InputError("chain complex: missing involution data");
    for (std::size_t q = 0; q < sigma.size(); ++q) {
        const auto& s = sigma[q];
        if (s.image.size() != chains.sizes[q]) throw InputError("involution size mismatch");
        for (std::size_t j = 0; j < s.image.size(); ++j) {
            int k = s.image[j];
            if (s.image[k] != static_cast<int>(j) || s.sign[k] * s.sign[j] != 1)
                throw InputError("involution does not square to identity in degree " + std::to_string(q));
        }
        if (q >= 1) {
            // sigma_{q-1} d_q e_j == d_q sigma_q e_j
            const auto& d = chains.boundary[q];
            SparseIntMatrix dt = d.transpose();
            const auto& sp = sigma[q - 1];
            for (std::size_t j = 0; j < s.image.size(); ++j) {
                std::vector<std::pair<int, long long>> lhs, rhs;
                for (auto& e : dt.row(j)) lhs.push_back({sp.image[e.col], sp.sign[e.col] * e.val});
                for (auto& e : dt.row(s.image[j])) rhs.push_back({e.col, s.sign[j] * e.val});
                std::sort(lhs.begin(), lhs.end());
                std::sort(rhs.begin(), rhs.end());
                if (lhs != rhs) throw InputError("involution does not commute with the boundary");
            }
        }
    }
}

void CochainComplex::validate() const {
    if (coboundary.size() != sizes.size()) throw InputError("cochain complex: degree count mismatch");
    for (std::size_t q = 0; q < sizes.size(); ++q) {
        std::size_t next = q + 1 < sizes.size() ? sizes[q + 1] : 0;
        if (coboundary[q].cols() != sizes[q] || coboundary[q].rows() != next)
            throw InputError("cochain complex: coboundary shape mismatch in degree " + std::to_string(q));
        if (q >= 1 && !(coboundary[q] * coboundary[q - 1]).is_zero())
            throw InputError("cochain complex: coboundary does not square to zero in degree " + std::to_string(q));
    }
}

CochainComplex dual(const ChainComplex& c) {
    CochainComplex d;
    d.sizes = c.sizes;
    for (std::size_t q = 0; q < c.sizes.size(); ++q) {
        if (q + 1 < c.sizes.size())
            d.coboundary.push_back(c.boundary[q + 1].transpose());
        else
            d.coboundary.emplace_back(0, c.sizes[q]);
    }
    return d;
}

FGAbGroup homology(const ChainComplex& c, int q) {
    if (q < 0 || q >= static_cast<int>(c.sizes.size())) return {};
    auto out = invariant_factors(c.boundary[q]);
    InvariantFactors in;
    if (q + 1 < static_cast<int>(c.sizes.size())) in = invariant_factors(c.boundary[q + 1]);
    int free = static_cast<int>(c.sizes[q] - out.rank - in.rank);
    return FGAbGroup(free, in.nonunit);
}

FGAbGroup cohomology(const CochainComplex& c, int q) {
    if (q < 0 || q >= static_cast<int>(c.sizes.size())) return {};
    auto out = invariant_factors(c.coboundary[q]);
    InvariantFactors in;
    if (q >= 1) in = invariant_factors(c.coboundary[q - 1]);
    int free = static_cast<int>(c.sizes[q] - out.rank - in.rank);
    return FGAbGroup(free, in.nonunit);
}

std::size_t cohomology_dim_mod2(const CochainComplex& c, int q) {
    if (q < 0 || q >= static_cast<int>(c.sizes.size())) return 0;
    std::size_t r_out = rank_mod2(c.coboundary[q]);
    std::size_t r_in = q >= 1 ? rank_mod2(c.coboundary[q - 1]) : 0;
    return c.sizes[q] - r_out - r_in;
}

}  // namespace equiwitt
