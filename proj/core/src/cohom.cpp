#include "equiwitt/cohom.hpp"

#include <algorithm>
#include <climits>

namespace equiwitt {

Theory parse_theory(const std::string& s) {
    if (s == "ordinary") return Theory::ordinary;
    if (s == "local") return Theory::local;
    if (s == "bredon") return Theory::bredon;
    if (s == "borel") return Theory::borel;
    throw InputError("unknown theory '" + s + "' (expected ordinary, local, bredon, borel)");
}

std::string to_string(Theory t) {
    switch (t) {
        case Theory::ordinary: return "ordinary";
        case Theory::local: return "local";
        case Theory::bredon: return "bredon";
        case Theory::borel: return "borel";
    }
    return "?";
}

namespace {

bool order_preserving(const SimplicialGComplex& x) {
    if (x.dim() < 1) return true;
    const auto& inv = x.involution();
    const auto& edges = x.simplices(1);
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (inv[edges[i][0]] > inv[edges[i][1]]) return false;
    return true;
}

bool regular(const SimplicialGComplex& x) {
    for (int d = 0; d <= x.dim(); ++d)
        for (std::size_t i = 0; i < x.count(d); ++i)
            if (static_cast<std::size_t>(x.sigma_index(d, i)) == i && !x.fixed_pointwise(d, i)) return false;
    return true;
}

SimplicialGComplex regularized(const SimplicialGComplex& x) { return regular(x) ? x : barycentric_subdivide(x); }

SplitComplex ordinary_complex(const SimplicialGComplex& x, const GModule& m) {
    CochainComplex c = dual(chain_complex(x).chains);
    SplitComplex out;
    // Underlying group only: r lattice copies and f2_dim copies mod 2.
    auto tensor = [&](std::size_t r) {
        CochainComplex t;
        for (std::size_t q = 0; q < c.sizes.size(); ++q) {
            t.sizes.push_back(c.sizes[q] * r);
            const auto& d = c.coboundary[q];
            SparseIntMatrix m2(d.rows() * r, d.cols() * r);
            for (std::size_t i = 0; i < d.rows(); ++i)
                for (auto& e : d.row(i))
                    for (std::size_t k = 0; k < r; ++k) m2.add(i * r + k, static_cast<std::size_t>(e.col) * r + k, e.val);
            m2.finalize();
            t.coboundary.push_back(std::move(m2));
        }
        return t;
    };
    out.lattice = tensor(m.rank());
    out.f2 = tensor(m.f2_dim());
    return out;
}

BitVec to_bits(const std::vector<long long>& v) {
    BitVec b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] & 1) b.set(i);
    return b;
}

std::vector<long long> from_bits(const BitVec& b) {
    std::vector<long long> v(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) v[i] = b.get(i) ? 1 : 0;
    return v;
}

const CochainComplex& checked_degree(const CochainComplex& c, int q) {
    if (q < 0 || q >= static_cast<int>(c.sizes.size())) throw InputError("degree out of range for this complex");
    return c;
}

}  // namespace

SimplicialGComplex prepared(const SimplicialGComplex& x) {
    auto rep = validate(x);
    SimplicialGComplex y = (rep.is_regular && rep.orbit_separated) ? x : barycentric_subdivide(x);
    if (!order_preserving(y)) y = orbit_lex_order(y);
    return y;
}

std::map<int, FGAbGroup> compute(const SimplicialGComplex& x, const CohomologyRequest& req) {
    if (req.lo > req.hi) throw InputError("empty degree range");
    SplitComplex c;
    switch (req.theory) {
        case Theory::ordinary: c = ordinary_complex(x, req.module); break;
        case Theory::local: c = local_complex(x, req.module); break;
        case Theory::bredon: c = bredon_complex(x, req.system); break;
        case Theory::borel: c = borel_complex(x, req.module, std::max(req.hi, 0) + 2); break;
    }
    std::map<int, FGAbGroup> out;
    for (int q = req.lo; q <= req.hi; ++q) out[q] = c.cohomology(q);
    return out;
}

FGAbGroup ordinary_cohomology(const SimplicialGComplex& x, const GModule& m, int q) {
    return ordinary_complex(x, m).cohomology(q);
}

FGAbGroup local_cohomology(const SimplicialGComplex& x, const GModule& m, int q) {
    return local_complex(x, m).cohomology(q);
}

FGAbGroup bredon_cohomology(const SimplicialGComplex& x, const CoefficientSystem& s, int q) {
    return bredon_complex(x, s).cohomology(q);
}

FGAbGroup borel_cohomology(const SimplicialGComplex& x, const GModule& m, int q, int truncation) {
    if (q < 0) return {};
    if (truncation < 0) truncation = q + 2;
    if (truncation < q + 1) throw InputError("Borel truncation must exceed the degree");
    return borel_complex(x, m, truncation).cohomology(q);
}

CochainComplex orbit_complex(const SimplicialGComplex& x, const std::string& coefficients) {
    if (!regular(x)) throw InputError("orbit cochains need a regular complex; subdivide first");
    if (coefficients == "Z" || coefficients == "Z/2") return local_complex(x, standard_gmodule("Z")).lattice;
    if (coefficients == "Z(1)") {
        if (!x.is_free()) throw InputError("twisted orbit cochains need a free action");
        return local_complex(x, standard_gmodule("Z(1)")).lattice;
    }
    throw InputError("unknown cochain coefficients '" + coefficients + "'");
}

MinusOneClass minus_one_class(const SimplicialGComplex& x) {
    MinusOneClass out;
    OrbitCells oc = orbit_cells(x);
    std::size_t n1 = x.dim() >= 1 ? oc.cells[1].size() : 0;
    out.cls = {1, std::vector<long long>(n1, 0), "Z/2"};
    if (!x.is_free()) return out;
    if (!regular(x)) throw InputError("minus_one_class needs a regular complex");
    out.defined = true;
    const auto& inv = x.involution();
    auto sheet = [&](int v) { return v < inv[v] ? 0 : 1; };
    for (std::size_t o = 0; o < n1; ++o) {
        auto e = x.simplices(1)[oc.cells[1][o].rep];
        out.cls.cochain[o] = sheet(e[0]) ^ sheet(e[1]);
    }
    if (n1) {
        F2Cohomology h(orbit_complex(x, "Z/2"), 1);
        out.nonzero = h.coords(to_bits(out.cls.cochain)).any();
    }
    return out;
}

CohomClass cup_mod2(const SimplicialGComplex& x, const CohomClass& u, const CohomClass& v) {
    if (u.coefficients != "Z/2" || v.coefficients != "Z/2") throw InputError("cup_mod2 takes mod 2 classes");
    int p = u.degree, q = v.degree;
    if (p < 0 || q < 0 || p + q > x.dim()) throw InputError("cup product degree exceeds the dimension");
    if (!order_preserving(x)) throw InputError("cup products need an order-preserving involution; use orbit_lex_order");
    OrbitCells oc = orbit_cells(x);
    auto up = static_cast<std::size_t>(p), uq = static_cast<std::size_t>(q), ud = up + uq;
    if (u.cochain.size() != oc.cells[up].size() || v.cochain.size() != oc.cells[uq].size())
        throw InputError("cochain length does not match the orbit complex");
    CohomClass w{p + q, std::vector<long long>(oc.cells[ud].size(), 0), "Z/2"};
    for (std::size_t t = 0; t < oc.cells[ud].size(); ++t) {
        auto s = x.simplices(p + q)[oc.cells[ud][t].rep];
        std::vector<int> front(s.begin(), s.begin() + p + 1), back(s.begin() + p, s.end());
        long f = x.simplices(p).find(front), b = x.simplices(q).find(back);
        int of = oc.orbit_of[up][static_cast<std::size_t>(f)], ob = oc.orbit_of[uq][static_cast<std::size_t>(b)];
        w.cochain[t] = (u.cochain[static_cast<std::size_t>(of)] & v.cochain[static_cast<std::size_t>(ob)]) & 1;
    }
    return w;
}

CohomClass sq2_degree2(const SimplicialGComplex& x, const CohomClass& u) {
    if (u.degree != 2) throw InputError("sq2_degree2 takes a degree 2 class");
    return cup_mod2(x, u, u);
}

CohomClass bockstein_integral(const SimplicialGComplex& x, const CohomClass& u, const std::string& twist) {
    if (u.coefficients != "Z/2") throw InputError("the Bockstein takes a mod 2 class");
    CochainComplex c = orbit_complex(x, twist);
    checked_degree(c, u.degree);
    std::vector<long long> lift(u.cochain.size());
    for (std::size_t i = 0; i < lift.size(); ++i) lift[i] = u.cochain[i] & 1;
    CohomClass out{u.degree + 1, {}, twist};
    if (u.degree + 1 >= static_cast<int>(c.sizes.size())) return out;
    auto y = c.coboundary[static_cast<std::size_t>(u.degree)].apply(lift);
    for (auto& v : y) {
        if (v % 2) throw Error("Bockstein input is not a mod 2 cocycle");
        v /= 2;
    }
    out.cochain = std::move(y);
    return out;
}

bool is_zero_class(const SimplicialGComplex& x, const CohomClass& c) {
    if (c.cochain.empty()) return true;
    CochainComplex cc = orbit_complex(x, c.coefficients);
    checked_degree(cc, c.degree);
    if (c.coefficients == "Z/2") return !F2Cohomology(cc, c.degree).coords(to_bits(c.cochain)).any();
    return IntCohomology(cc, c.degree).is_zero(c.cochain);
}

std::vector<CohomClass> mod2_basis(const SimplicialGComplex& x, int q) {
    F2Cohomology h(orbit_complex(x, "Z/2"), q);
    std::vector<CohomClass> out;
    for (auto& r : h.reps()) out.push_back({q, from_bits(r), "Z/2"});
    return out;
}

namespace {

// Null space of the F2 map sending basis vector j to cols[j].
std::vector<BitVec> f2_null_space(const std::vector<BitVec>& cols) {
    std::size_t n = cols.size();
    // Row-reduce [cols | I] by columns: track combinations that vanish.
    std::vector<BitVec> img = cols, combo;
    for (std::size_t j = 0; j < n; ++j) {
        BitVec e(n);
        e.set(j);
        combo.push_back(e);
    }
    std::vector<BitVec> kernel;
    std::vector<std::size_t> pivot_of;  // pivot bit per kept column
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < kept.size(); ++k)
            if (img[j].get(pivot_of[k])) {
                img[j] ^= img[kept[k]];
                combo[j] ^= combo[kept[k]];
            }
        if (!img[j].any()) {
            kernel.push_back(combo[j]);
        } else {
            kept.push_back(j);
            pivot_of.push_back(img[j].first());
        }
    }
    return kernel;
}

std::size_t f2_rank(std::vector<BitVec> v) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].any()) continue;
        ++r;
        std::size_t p = v[i].first();
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[j].get(p)) v[j] ^= v[i];
    }
    return r;
}

FGAbGroup hbar2_impl(const SimplicialGComplex& x, const std::string& twist) {
    CochainComplex cz = orbit_complex(x, "Z");
    CochainComplex ct = twist == "Z" ? cz : orbit_complex(x, twist);
    FGAbGroup two_h3 = two_torsion(cohomology(ct, 3));
    if (two_h3.is_trivial()) return two_h3;
    FGAbGroup h5 = cohomology(cz, 5);
    if (two_torsion(h5).is_trivial()) return two_h3;

    IntCohomology h5c(cz, 5), h3c(ct, 3);
    std::vector<BitVec> phi, beta;
    for (auto& u : mod2_basis(x, 2)) {
        CohomClass sq = sq2_degree2(x, u);
        phi.push_back(h5c.two_torsion_bits(bockstein_integral(x, sq, "Z").cochain));
        beta.push_back(h3c.two_torsion_bits(bockstein_integral(x, u, twist).cochain));
    }
    std::vector<BitVec> image;
    for (auto& k : f2_null_space(phi)) {
        BitVec b(h3c.even_count());
        for (std::size_t j = 0; j < k.size(); ++j)
            if (k.get(j)) b ^= beta[j];
        image.push_back(b);
    }
    return FGAbGroup::elementary(static_cast<int>(f2_rank(image)));
}

}  // namespace

FGAbGroup hbar2(const SimplicialGComplex& y) {
    if (y.dim() > 6) throw InputError("hbar2 needs dim <= 6");
    SimplicialGComplex plain = SimplicialGComplex::with_trivial_action(y.names(), y.maximal());
    return hbar2_impl(plain, "Z");
}

FGAbGroup hbar2_g(const SimplicialGComplex& x) {
    if (!x.is_free()) throw InputError("hbar2_g needs a free action");
    if (x.dim() > 6) throw InputError("hbar2_g needs dim <= 6");
    return hbar2_impl(prepared(x), "Z(1)");
}

int fixed_components(const SimplicialGComplex& x) {
    return connected_components(fixed_subcomplex(regularized(x))).count;
}

int quotient_h1_mod2(const SimplicialGComplex& x) {
    return static_cast<int>(cohomology_dim_mod2(orbit_complex(regularized(x), "Z/2"), 1));
}

FGAbGroup two_h3_twisted(const SimplicialGComplex& x) {
    return two_torsion(local_cohomology(regularized(x), standard_gmodule("Z(1)"), 3));
}

}  // namespace equiwitt

namespace equiwitt {

IntMatrix cohomology_involution(const SimplicialGComplex& x, int q) {
    CochainComplex c = dual(chain_complex(x).chains);
    if (q < 0 || q > x.dim()) return {};
    IntCohomology h(c, q);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < h.orders().size(); ++i)
        if (h.orders()[i] == 0) free.push_back(i);
    const IntMatrix& g = h.generators();
    std::size_t n = g.rows();
    IntMatrix m(free.size(), free.size());
    for (std::size_t b = 0; b < free.size(); ++b) {
        std::vector<long long> pulled(n);
        for (std::size_t s = 0; s < n; ++s) {
            const Integer& v = g(static_cast<std::size_t>(x.sigma_index(q, s)), free[b]);
            if (v > LLONG_MAX / 2 || v < -(LLONG_MAX / 2)) throw Error("cohomology generator entry too large");
            pulled[s] = x.sigma_sign(q, s) * v.convert_to<long long>();
        }
        auto co = h.coords(pulled);
        for (std::size_t a = 0; a < free.size(); ++a) m(a, b) = co[free[a]];
    }
    return m;
}

}  // namespace equiwitt

namespace equiwitt {

std::optional<int> reduction_cokernel_dim(const SimplicialGComplex& x) {
    SimplicialGComplex y = prepared(x);
    GModule z1 = standard_gmodule("Z(1)");
    FGAbGroup h3z = local_cohomology(y, z1, 3);
    for (auto& d : h3z.invariant_factors())
        if (d % 4 == 0) return std::nullopt;

    // Z(1) orbit cochains mod 2 are the cochains of (X/G, X^G; Z/2). The image of
    // the integral classes is ker(beta), which is ker of the mod 2 Bockstein here.
    CochainComplex c = local_complex(y, z1).lattice;
    F2Cohomology h2(c, 2), h3(c, 3);
    std::vector<BitVec> beta;
    for (auto& w : h2.reps()) {
        std::vector<long long> lift(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) lift[i] = w.get(i) ? 1 : 0;
        auto dz = c.coboundary[2].apply(lift);
        BitVec half(dz.size());
        for (std::size_t i = 0; i < dz.size(); ++i) {
            if (dz[i] % 2) throw Error("mod 2 relative class does not lift to an even coboundary");
            if ((dz[i] / 2) % 2) half.set(i);
        }
        beta.push_back(h3.coords(half));
    }

    // Push ker(beta) to H^2(X/G; Z/2): free orbits keep their value, fixed cells get 0.
    CochainComplex q = local_complex(y, standard_gmodule("Z")).lattice;
    F2Cohomology hq(q, 2);
    OrbitCells oc = orbit_cells(y);
    std::vector<std::size_t> free_pos;
    for (std::size_t o = 0; o < oc.cells[2].size(); ++o)
        if (!oc.cells[2][o].fixed) free_pos.push_back(o);
    std::vector<BitVec> image;
    for (auto& k : f2_null_space(beta)) {
        BitVec s(h2.cochain_dim());
        for (std::size_t j = 0; j < k.size(); ++j)
            if (k.get(j)) s ^= h2.reps()[j];
        BitVec t(hq.cochain_dim());
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s.get(i)) t.set(free_pos[i]);
        image.push_back(hq.coords(t));
    }
    return static_cast<int>(hq.dim()) - static_cast<int>(f2_rank(image));
}

}  // namespace equiwitt
