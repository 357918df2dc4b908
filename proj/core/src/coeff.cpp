#include "equiwitt/coeff.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace equiwitt {

namespace {

std::string squeeze(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

F2Matrix f2_identity(std::size_t n) {
    F2Matrix m(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

F2Matrix f2_mul(const F2Matrix& a, const F2Matrix& b, std::size_t inner, std::size_t cols) {
    F2Matrix p(a.size(), std::vector<int>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            if (a[i][k] & 1)
                for (std::size_t j = 0; j < cols; ++j) p[i][j] ^= b[k][j] & 1;
    return p;
}

IntMatrix block_diag(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix m(x.rows() + y.rows(), x.cols() + y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) m(i, j) = x(i, j);
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) m(x.rows() + i, x.cols() + j) = y(i, j);
    return m;
}

F2Matrix f2_block_diag(const F2Matrix& x, std::size_t xc, const F2Matrix& y, std::size_t yc) {
    F2Matrix m(x.size() + y.size(), std::vector<int>(xc + yc, 0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < xc; ++j) m[i][j] = x[i][j] & 1;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < yc; ++j) m[x.size() + i][xc + j] = y[i][j] & 1;
    return m;
}

int parse_degree(const std::string& s, std::string_view whole) {
    try {
        std::size_t used = 0;
        int q = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        return q;
    } catch (const std::exception&) {
        throw InputError("bad degree in coefficient system '" + std::string(whole) + "'");
    }
}

int mod8(int q) { return ((q % 8) + 8) % 8; }

}  // namespace

void GModule::check() const {
    if (sigma.rows() != sigma.cols()) throw InputError("module action must be square");
    if (!(sigma * sigma).is_identity()) throw InputError("module action does not square to the identity");
    for (auto& r : sigma2)
        if (r.size() != sigma2.size()) throw InputError("F2 action must be square");
    if (f2_mul(sigma2, sigma2, f2_dim(), f2_dim()) != f2_identity(f2_dim()))
        throw InputError("F2 action does not square to the identity");
}

GModule standard_gmodule(std::string_view tag_in) {
    std::string tag = squeeze(tag_in);
    if (tag.find('+') != std::string::npos) {
        GModule acc;
        std::stringstream ss(tag);
        std::string part;
        bool first = true;
        while (std::getline(ss, part, '+')) {
            GModule m = standard_gmodule(part);
            acc = first ? m : direct_sum(acc, m);
            first = false;
        }
        acc.name = tag;
        return acc;
    }
    GModule m;
    m.name = tag;
    if (tag == "Z" || tag == "Z(0)") {
        m.sigma = IntMatrix::from_rows({{1}});
    } else if (tag == "Z1" || tag == "Z(1)") {
        m.sigma = IntMatrix::from_rows({{-1}});
    } else if (tag == "ZG" || tag == "Z[G]") {
        m.sigma = IntMatrix::from_rows({{0, 1}, {1, 0}});
    } else if (tag == "Z2" || tag == "Z/2") {
        m.sigma2 = f2_identity(1);
    } else if (tag == "0") {
    } else {
        throw InputError("unknown module tag '" + tag + "' (expected Z, Z(1), Z[G], Z/2)");
    }
    m.check();
    return m;
}

GModule direct_sum(const GModule& a, const GModule& b) {
    GModule m;
    m.name = a.name + "+" + b.name;
    m.sigma = block_diag(a.sigma, b.sigma);
    m.sigma2 = f2_block_diag(a.sigma2, a.f2_dim(), b.sigma2, b.f2_dim());
    return m;
}

void CoefficientSystem::check() const {
    if (sigma.rows() != sigma.cols()) throw InputError("M(G) action must be square");
    if (!(sigma * sigma).is_identity()) throw InputError("M(G) action does not square to the identity");
    if (a.rows() != g_rank() || a.cols() != pt_rank) throw InputError("map a has the wrong shape");
    if (!(sigma * a == a)) throw InputError("coefficient system violates sigma*a = a");
    if (f2_mul(sigma2, sigma2, g_dim2(), g_dim2()) != f2_identity(g_dim2()))
        throw InputError("F2 action on M(G) does not square to the identity");
    if (a2.size() != g_dim2()) throw InputError("F2 map a has the wrong shape");
    for (auto& r : a2)
        if (r.size() != pt_dim2) throw InputError("F2 map a has the wrong shape");
    auto sa = f2_mul(sigma2, a2, g_dim2(), pt_dim2);
    for (auto& r : sa)
        for (auto& x : r) x &= 1;
    F2Matrix a2m = a2;
    for (auto& r : a2m)
        for (auto& x : r) x &= 1;
    if (sa != a2m) throw InputError("coefficient system violates sigma*a = a over F2");
}

std::string CoefficientSystem::describe() const {
    auto part = [](std::size_t r, std::size_t d2) {
        FGAbGroup g(static_cast<int>(r), std::vector<Integer>(d2, 2));
        return g.str();
    };
    std::ostringstream os;
    os << part(pt_rank, pt_dim2) << " -> " << part(g_rank(), g_dim2());
    if (pt_rank && g_rank()) os << " a=" << a.str();
    if (g_rank()) os << " sigma=" << sigma.str();
    return os.str();
}

CoefficientSystem direct_sum(const CoefficientSystem& x, const CoefficientSystem& y) {
    CoefficientSystem s;
    s.name = x.name + "+" + y.name;
    s.pt_rank = x.pt_rank + y.pt_rank;
    s.sigma = block_diag(x.sigma, y.sigma);
    s.a = block_diag(x.a, y.a);
    s.pt_dim2 = x.pt_dim2 + y.pt_dim2;
    s.sigma2 = f2_block_diag(x.sigma2, x.g_dim2(), y.sigma2, y.g_dim2());
    s.a2 = f2_block_diag(x.a2, x.pt_dim2, y.a2, y.pt_dim2);
    s.check();
    return s;
}

FGAbGroup ko_point(int q) {
    switch (mod8(-q)) {
        case 0:
        case 4:
            return FGAbGroup::free(1);
        case 1:
        case 2:
            return FGAbGroup::cyclic(2);
        default:
            return {};
    }
}

CoefficientSystem ko_g_system(int q) {
    CoefficientSystem s;
    s.name = "KO_G(" + std::to_string(q) + ")";
    FGAbGroup k = ko_point(q);
    if (k.free_rank() == 1) {
        // KO^q (x) RO(G) = two copies, added into KO^q(G).
        s.pt_rank = 2;
        s.sigma = IntMatrix::from_rows({{1}});
        s.a = IntMatrix::from_rows({{1, 1}});
    } else if (!k.is_trivial()) {
        s.pt_dim2 = 2;
        s.sigma2 = f2_identity(1);
        s.a2 = {{1, 1}};
    }
    s.check();
    return s;
}

CoefficientSystem kr_system(int q) {
    CoefficientSystem s;
    s.name = "KR(" + std::to_string(q) + ")";
    switch (mod8(q)) {
        case 0:  // constant Z
            s.pt_rank = 1;
            s.sigma = IntMatrix::from_rows({{1}});
            s.a = IntMatrix::from_rows({{1}});
            break;
        case 2:  // 0 -> Z(1)
            s.sigma = IntMatrix::from_rows({{-1}});
            s.a = IntMatrix(1, 0);
            break;
        case 4:  // Z -2-> Z
            s.pt_rank = 1;
            s.sigma = IntMatrix::from_rows({{1}});
            s.a = IntMatrix::from_rows({{2}});
            break;
        case 6:  // Z/2 -0-> Z(1)
            s.sigma = IntMatrix::from_rows({{-1}});
            s.a = IntMatrix(1, 0);
            s.pt_dim2 = 1;
            break;
        case 7:  // Z/2 -> 0
            s.pt_dim2 = 1;
            break;
        default:  // 1, 3, 5
            break;
    }
    s.check();
    return s;
}

CoefficientSystem constant_system(std::string_view tag) {
    GModule m = standard_gmodule(tag);
    if (!m.sigma.is_identity() && m.rank() > 0) throw InputError("constant systems need a trivial action");
    if (m.f2_dim() && m.sigma2 != f2_identity(m.f2_dim())) throw InputError("constant systems need a trivial action");
    CoefficientSystem s;
    s.name = "const(" + m.name + ")";
    s.pt_rank = m.rank();
    s.sigma = m.sigma;
    s.a = IntMatrix::identity(m.rank());
    s.pt_dim2 = m.f2_dim();
    s.sigma2 = m.sigma2;
    s.a2 = f2_identity(m.f2_dim());
    s.check();
    return s;
}

CoefficientSystem relative_system(std::string_view tag) {
    GModule m = standard_gmodule(tag);
    CoefficientSystem s;
    s.name = "rel(" + m.name + ")";
    s.sigma = m.sigma;
    s.a = IntMatrix(m.rank(), 0);
    s.sigma2 = m.sigma2;
    s.a2 = F2Matrix(m.f2_dim(), std::vector<int>{});
    s.check();
    return s;
}

CoefficientSystem point_system(std::string_view tag) {
    GModule m = standard_gmodule(tag);
    CoefficientSystem s;
    s.name = "pt(" + m.name + ")";
    s.pt_rank = m.rank();
    s.a = IntMatrix(0, m.rank());
    s.pt_dim2 = m.f2_dim();
    s.check();
    return s;
}

CoefficientSystem parse_system(std::string_view text) {
    std::string t = squeeze(text);
    auto inner = [&](std::size_t open) {
        if (t.back() != ')') throw InputError("bad coefficient system '" + t + "'");
        return t.substr(open + 1, t.size() - open - 2);
    };
    if (t.rfind("KO_G(", 0) == 0) return ko_g_system(parse_degree(inner(4), text));
    if (t.rfind("KR(", 0) == 0) return kr_system(parse_degree(inner(2), text));
    if (t.rfind("const(", 0) == 0) return constant_system(inner(5));
    if (t.rfind("rel(", 0) == 0) return relative_system(inner(3));
    if (t.rfind("pt(", 0) == 0) return point_system(inner(2));
    throw InputError("unknown coefficient system '" + t + "' (expected KO_G(q), KR(q), const(A), rel(M), pt(A))");
}

}  // namespace equiwitt
