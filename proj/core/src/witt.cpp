#include "equiwitt/witt.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "equiwitt/cochains.hpp"
#include "equiwitt/cohom.hpp"
#include "equiwitt/f2.hpp"

namespace equiwitt {

using nlohmann::ordered_json;

std::string to_string(DeltaStatus d) {
    switch (d) {
        case DeltaStatus::not_applicable: return "not_applicable";
        case DeltaStatus::zero: return "zero";
        case DeltaStatus::user_supplied: return "user_supplied";
        case DeltaStatus::bounded_unknown: return "bounded_unknown";
    }
    return "?";
}

namespace {

DeltaStatus parse_delta(const std::string& s) {
    if (s == "not_applicable") return DeltaStatus::not_applicable;
    if (s == "zero") return DeltaStatus::zero;
    if (s == "user_supplied") return DeltaStatus::user_supplied;
    if (s == "bounded_unknown") return DeltaStatus::bounded_unknown;
    throw InputError("unknown delta status '" + s + "'");
}

FGAbGroup z2(int m) { return FGAbGroup::elementary(std::max(m, 0)); }

int f2_rank(const std::vector<BitVec>& v, std::size_t dim) {
    F2Basis b(dim);
    for (auto& x : v) b.insert(x);
    return static_cast<int>(b.rank());
}

const std::string kStCaveat = "S_t reported as Z^nu; only a subgroup of finite 2-primary index is guaranteed";

}  // namespace

// ---------------------------------------------------------------- WittResult

WittResult WittResult::of(FGAbGroup g, std::string provenance, int nu) {
    WittResult r;
    r.group = std::move(g);
    r.provenance = std::move(provenance);
    r.nu = nu;
    return r;
}

std::string WittResult::str() const {
    if (resolved) return group.str();
    return "ext(" + sub.str() + " -> ? -> " + quot.str() + ")";
}

std::string WittResult::to_json() const {
    ordered_json j;
    j["status"] = resolved ? "resolved" : "extension";
    if (resolved) {
        j["group"] = group.str();
    } else {
        j["sub"] = sub.str();
        j["quot"] = quot.str();
    }
    ordered_json d;
    d["status"] = to_string(delta);
    if (delta == DeltaStatus::user_supplied || delta == DeltaStatus::bounded_unknown || delta == DeltaStatus::zero)
        d["group"] = delta_group.str();
    j["delta"] = d;
    j["provenance"] = provenance;
    if (nu >= 0) j["nu"] = nu;
    j["caveats"] = caveats;
    return j.dump(2) + "\n";
}

WittResult WittResult::from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("bad WittResult JSON: ") + e.what());
    }
    WittResult r;
    try {
        r.resolved = j.at("status").get<std::string>() == "resolved";
        if (r.resolved) {
            r.group = FGAbGroup::parse(j.at("group").get<std::string>());
        } else {
            r.sub = FGAbGroup::parse(j.at("sub").get<std::string>());
            r.quot = FGAbGroup::parse(j.at("quot").get<std::string>());
        }
        if (j.contains("delta")) {
            r.delta = parse_delta(j["delta"].at("status").get<std::string>());
            if (j["delta"].contains("group")) r.delta_group = FGAbGroup::parse(j["delta"]["group"].get<std::string>());
        }
        r.provenance = j.value("provenance", "");
        r.nu = j.value("nu", -1);
        if (j.contains("caveats")) r.caveats = j["caveats"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad WittResult JSON: ") + e.what());
    }
    return r;
}

bool WittResult::operator==(const WittResult& o) const {
    if (resolved != o.resolved) return false;
    if (resolved ? !(group == o.group) : !(sub == o.sub && quot == o.quot)) return false;
    return delta == o.delta && delta_group == o.delta_group && provenance == o.provenance && nu == o.nu &&
           caveats == o.caveats;
}

// ---------------------------------------------------------------- AbstractInvariants

AbstractInvariants AbstractInvariants::from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("bad invariants JSON: ") + e.what());
    }
    AbstractInvariants a;
    try {
        a.name = j.value("name", "");
        a.dim = j.at("dim").get<int>();
        a.nu = j.at("nu").get<int>();
        a.h1 = j.value("h1", 0);
        if (j.contains("minus_one_nonzero")) a.minus_one_nonzero = j["minus_one_nonzero"].get<bool>();
        if (j.contains("two_h3")) a.two_h3 = FGAbGroup::parse(j["two_h3"].get<std::string>());
        if (j.contains("h2_involution")) {
            auto rows = j["h2_involution"].get<std::vector<std::vector<long long>>>();
            a.h2_involution = IntMatrix::from_rows(rows);
        }
        if (j.contains("hbar2")) a.hbar2 = FGAbGroup::parse(j["hbar2"].get<std::string>());
        if (j.contains("rho0")) a.rho0 = j["rho0"].get<int>();
        if (j.contains("genus")) a.genus = j["genus"].get<int>();
        if (j.contains("etale")) {
            a.etale_j = j["etale"].at("j").get<int>();
            a.etale_k = j["etale"].at("k").get<int>();
            a.etale_l = j["etale"].at("l").get<int>();
        }
        a.g_times_y = j.value("g_times_y", false);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad invariants JSON: ") + e.what());
    }
    if (a.dim < 0 || a.nu < 0 || a.h1 < 0) throw InputError("invariants must be nonnegative");
    return a;
}

std::string AbstractInvariants::to_json() const {
    ordered_json j;
    if (!name.empty()) j["name"] = name;
    j["dim"] = dim;
    j["nu"] = nu;
    j["h1"] = h1;
    if (minus_one_nonzero) j["minus_one_nonzero"] = *minus_one_nonzero;
    if (two_h3) j["two_h3"] = two_h3->str();
    if (h2_involution) {
        std::vector<std::vector<long long>> rows(h2_involution->rows());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t k = 0; k < h2_involution->cols(); ++k)
                rows[i].push_back((*h2_involution)(i, k).convert_to<long long>());
        j["h2_involution"] = rows;
    }
    if (hbar2) j["hbar2"] = hbar2->str();
    if (rho0) j["rho0"] = *rho0;
    if (genus) j["genus"] = *genus;
    if (etale_j) j["etale"] = {{"j", *etale_j}, {"k", *etale_k}, {"l", *etale_l}};
    if (g_times_y) j["g_times_y"] = true;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- formula cores

FGAbGroup graph_formula(int nu, int h1, bool minus_one_nonzero) {
    if (nu > 0) return direct_sum(FGAbGroup::free(nu), z2(h1));
    return direct_sum(FGAbGroup::cyclic(4), z2(h1 - (minus_one_nonzero ? 1 : 0)));
}

FGAbGroup surface_formula(int nu, int h1) {
    if (nu > 0) return direct_sum(FGAbGroup::free(nu), z2(h1));
    if (h1 < 1) throw InputError("a free involution on a closed surface has h >= 1");
    return direct_sum(FGAbGroup::cyclic(4), z2(h1 - 1));
}

FGAbGroup g_times_y_formula(int h1, const FGAbGroup& hbar2) {
    return direct_sum(z2(1 + h1), hbar2);
}

std::optional<FGAbGroup> trichotomy(const IntMatrix& h2) {
    if (h2.rows() != 2) return std::nullopt;
    Comessatti c = comessatti_decompose(InvolutionModule{h2});
    if (c == Comessatti{0, 2, 0}) return FGAbGroup::cyclic(4);
    if (c == Comessatti{0, 0, 1} || c == Comessatti{1, 1, 0})
        return direct_sum(FGAbGroup::cyclic(4), FGAbGroup::cyclic(2));
    return std::nullopt;
}

namespace {

// |torsion| and free rank agree with the extension data.
bool consistent(const FGAbGroup& g, const WittResult& ext) {
    if (g.free_rank() != ext.quot.free_rank() + ext.sub.free_rank()) return false;
    Integer want = ext.sub.torsion_order() * ext.quot.torsion_order();
    if (ext.delta == DeltaStatus::bounded_unknown) {
        Integer have = g.torsion_order();
        return have % want == 0 && (want * ext.delta_group.torsion_order()) % have == 0;
    }
    return g.torsion_order() == want;
}

WittResult resolve_from_table(WittResult ext, const WittOptions& opt) {
    if (ext.resolved || opt.name.empty()) return ext;
    auto it = opt.resolutions.find(opt.name);
    if (it == opt.resolutions.end()) return ext;
    if (!consistent(it->second, ext))
        throw InputError("resolution for '" + opt.name + "' (" + it->second.str() + ") is inconsistent with " + ext.str());
    ext.caveats.push_back("extension " + ext.str() + " resolved from the resolution table");
    ext.resolved = true;
    ext.group = it->second;
    ext.sub = {};
    ext.quot = {};
    return ext;
}

struct Delta {
    DeltaStatus status;
    FGAbGroup group;
};

// Delta = image(d2) intersected with 2 H^3, zero unless H^3_G(X;Z(1)) has a
// cyclic factor of order divisible by 4.
Delta delta_policy(const FGAbGroup& h3, const std::optional<std::vector<std::vector<int>>>& d2) {
    std::vector<bool> div4;
    for (auto& f : h3.invariant_factors())
        if (f % 2 == 0) div4.push_back(f % 4 == 0);
    int w = static_cast<int>(std::count(div4.begin(), div4.end(), true));
    if (div4.empty()) return {DeltaStatus::zero, {}};
    if (d2) {
        const auto& m = *d2;
        if (m.size() != div4.size())
            throw InputError("d2 matrix needs one row per even invariant factor of H^3_G(X;Z(1))");
        std::size_t cols = m.empty() ? 0 : m[0].size();
        std::vector<BitVec> image, projected;
        for (std::size_t c = 0; c < cols; ++c) {
            BitVec v(div4.size()), p(div4.size());
            for (std::size_t r = 0; r < m.size(); ++r) {
                if (m[r].size() != cols) throw InputError("d2 matrix rows differ in length");
                if (m[r][c] & 1) {
                    v.set(r);
                    if (!div4[r]) p.set(r);
                }
            }
            image.push_back(v);
            projected.push_back(p);
        }
        return {DeltaStatus::user_supplied, z2(f2_rank(image, div4.size()) - f2_rank(projected, div4.size()))};
    }
    if (w == 0) return {DeltaStatus::zero, {}};
    return {DeltaStatus::bounded_unknown, z2(w)};
}

// f2: dim coker(H^2_G(X;Z(1)) -> H^2(X/G;Z/2)) when known; otherwise 2H^3 is used.
WittResult fixed4_core(int nu, int h1, const FGAbGroup& h3, const WittOptions& opt, std::optional<int> f2) {
    FGAbGroup two = two_torsion(h3);
    Delta d = delta_policy(h3, opt.d2);
    FGAbGroup base = direct_sum(FGAbGroup::free(nu), z2(h1));
    WittResult r;
    r.provenance = "fixed-locus formula";
    r.nu = nu;
    r.caveats.push_back(kStCaveat);
    r.delta = d.status;
    r.delta_group = d.group;
    FGAbGroup sub = f2 ? z2(*f2) : two;
    if (f2 && !(sub == two))
        r.caveats.push_back("F_2 WR taken as coker(H^2_G(X;Z(1)) -> H^2(X/G;Z/2)) = " + sub.str() +
                            ", 2H^3_G(X;Z(1)) = " + two.str());
    if (!f2 && !two.is_trivial())
        r.caveats.push_back("F_2 WR taken as 2H^3_G(X;Z(1)); exact only when X^G contributes nothing in degree 2");
    if (d.status == DeltaStatus::bounded_unknown) {
        r.caveats.push_back("Delta unknown, bounded by " + d.group.str());
        r.resolved = false;
        r.sub = sub;
        r.quot = base;
        return resolve_from_table(r, opt);
    }
    FGAbGroup quot = direct_sum(base, d.group);
    if (sub.is_trivial()) {
        r.group = quot;
        return r;
    }
    if (quot.invariant_factors().empty()) {
        r.group = direct_sum(quot, sub);
        r.caveats.push_back("extension by a free group splits");
        return r;
    }
    r.resolved = false;
    r.sub = sub;
    r.quot = quot;
    return resolve_from_table(r, opt);
}

WittResult free_core(const char* provenance, const FGAbGroup& sub, int h1, bool minus_one_nonzero,
                     const std::optional<IntMatrix>& h2, const WittOptions& opt) {
    WittResult r;
    r.provenance = provenance;
    r.nu = 0;
    FGAbGroup quot = direct_sum(FGAbGroup::cyclic(4), z2(h1 - (minus_one_nonzero ? 1 : 0)));
    if (sub.is_trivial()) {
        r.group = quot;
        return r;
    }
    r.resolved = false;
    r.sub = sub;
    r.quot = quot;
    if (h2) {
        if (auto g = trichotomy(*h2)) {
            if (consistent(*g, r)) {
                r.resolved = true;
                r.group = *g;
                r.sub = {};
                r.quot = {};
                r.provenance += ", resolved by the H^2 involution type";
                return r;
            }
            r.caveats.push_back("H^2 involution type suggests " + g->str() + " but the orders disagree");
        }
    }
    return resolve_from_table(r, opt);
}

struct Shape {
    SimplicialGComplex y;  // prepared
    int nu = 0;
    int fixed_dim = -1;
    bool free = false;
};

Shape analyse(const SimplicialGComplex& x) {
    Shape s;
    s.y = prepared(x);
    SimplicialGComplex f = fixed_subcomplex(s.y);
    s.nu = connected_components(f).count;
    s.fixed_dim = f.vertex_count() ? f.dim() : -1;
    s.free = s.y.is_free();
    return s;
}

void require_connected(const SimplicialGComplex& x, const char* what) {
    if (connected_components(x).count != 1) throw InputError(std::string(what) + " needs a connected space");
}

bool looks_like_s2xs2(const SimplicialGComplex& y) {
    GModule z = standard_gmodule("Z");
    const int want[5] = {1, 0, 2, 0, 1};
    if (y.dim() != 4) return false;
    for (int q = 0; q <= 4; ++q) {
        FGAbGroup h = ordinary_cohomology(y, z, q);
        if (!h.invariant_factors().empty() || h.free_rank() != want[q]) return false;
    }
    return true;
}

int h2_quotient_mod2(const SimplicialGComplex& y) {
    return static_cast<int>(cohomology_dim_mod2(orbit_complex(y, "Z/2"), 2));
}

}  // namespace

// ---------------------------------------------------------------- evaluators

FGAbGroup wr_dim1(const SimplicialGComplex& x) {
    require_connected(x, "the graph formula");
    if (x.dim() > 1) throw InputError("the graph formula needs dim <= 1");
    Shape s = analyse(x);
    int h1 = quotient_h1_mod2(s.y);
    bool m = s.nu == 0 && minus_one_class(s.y).nonzero;
    return graph_formula(s.nu, h1, m);
}

FGAbGroup wr_surface(const SimplicialGComplex& x) {
    require_connected(x, "the closed-surface formula");
    if (!is_closed_surface(x)) throw InputError("the closed-surface formula needs a closed 2-manifold");
    Shape s = analyse(x);
    if (!is_circle_union(fixed_subcomplex(s.y)))
        throw InputError("the closed-surface formula needs the fixed set to be a union of circles or empty");
    return surface_formula(s.nu, quotient_h1_mod2(s.y));
}

FGAbGroup wr_two_sphere(const SimplicialGComplex& x) {
    require_connected(x, "the two-sphere evaluator");
    if (!is_closed_surface(x) || x.euler_characteristic() != 2)
        throw InputError("the two-sphere evaluator needs a 2-sphere");
    Shape s = analyse(x);
    if (s.nu == 0 || s.fixed_dim != 0) throw InputError("the two-sphere evaluator needs a finite nonempty fixed set");
    return direct_sum(FGAbGroup::free(s.nu), z2(quotient_h1_mod2(s.y) + h2_quotient_mod2(s.y)));
}

FGAbGroup ko_low_dim(const SimplicialGComplex& x) {
    if (!x.trivial_action()) throw InputError("KO evaluator needs the trivial action");
    if (x.dim() > 2) throw InputError("KO evaluator needs dim <= 2");
    require_connected(x, "KO evaluator");
    if (x.dim() < 1) return FGAbGroup::free(1);
    auto h1 = mod2_basis(x, 1);
    std::size_t h = h1.size(), m = 0;
    std::vector<BitVec> squares;
    if (x.dim() == 2) {
        F2Cohomology h2(orbit_complex(x, "Z/2"), 2);
        m = h2.dim();
        for (auto& u : h1) {
            auto sq = cup_mod2(x, u, u);
            BitVec b(sq.cochain.size());
            for (std::size_t i = 0; i < sq.cochain.size(); ++i)
                if (sq.cochain[i] & 1) b.set(i);
            squares.push_back(h2.coords(b));
        }
    }
    // Generators e_i (lifts of H^1) and f_j (H^2); relations 2 f_j and 2 e_i = e_i^2.
    IntMatrix rel(h + m, h + m);
    for (std::size_t j = 0; j < m; ++j) rel(h + j, h + j) = 2;
    for (std::size_t i = 0; i < h; ++i) {
        rel(i, i) = 2;
        for (std::size_t j = 0; j < m; ++j)
            if (!squares.empty() && squares[i].get(j)) rel(h + j, i) = -1;
    }
    return direct_sum(FGAbGroup::free(1), cokernel(rel));
}

WittResult wr_fixed4(const SimplicialGComplex& x, const WittOptions& opt) {
    require_connected(x, "the fixed-locus formula");
    Shape s = analyse(x);
    if (s.y.dim() > 4 || s.nu == 0 || s.fixed_dim > 2)
        throw InputError("the fixed-locus formula needs dim <= 4, a nonempty fixed set, and dim X^G <= 2");
    FGAbGroup h3 = local_cohomology(s.y, standard_gmodule("Z(1)"), 3);
    return fixed4_core(s.nu, quotient_h1_mod2(s.y), h3, opt, reduction_cokernel_dim(s.y));
}

WittResult wr_free4(const SimplicialGComplex& x, const WittOptions& opt) {
    require_connected(x, "the free 4-dim extension");
    Shape s = analyse(x);
    if (!s.free) throw InputError("the free 4-dim extension needs a free action");
    if (s.y.dim() > 4) throw InputError("the free 4-dim extension needs dim <= 4");
    FGAbGroup sub = two_h3_twisted(s.y);
    std::optional<IntMatrix> h2;
    if (!sub.is_trivial() && looks_like_s2xs2(s.y)) h2 = cohomology_involution(s.y, 2);
    return free_core("free 4-dim extension", sub, quotient_h1_mod2(s.y), minus_one_class(s.y).nonzero, h2, opt);
}

WittResult wr_free6(const SimplicialGComplex& x, const WittOptions& opt) {
    require_connected(x, "the free 6-dim extension");
    Shape s = analyse(x);
    if (!s.free) throw InputError("the free 6-dim extension needs a free action");
    if (s.y.dim() > 6) throw InputError("the free 6-dim extension needs dim <= 6");
    FGAbGroup sub = hbar2_g(s.y);
    return free_core("free 6-dim extension", sub, quotient_h1_mod2(s.y), minus_one_class(s.y).nonzero, std::nullopt, opt);
}

FGAbGroup wr_g_times_y(const SimplicialGComplex& y0) {
    SimplicialGComplex y = SimplicialGComplex::with_trivial_action(y0.names(), y0.maximal());
    require_connected(y, "the G x Y formula");
    if (y.dim() > 6) throw InputError("the G x Y formula needs dim Y <= 6");
    int h1 = static_cast<int>(cohomology_dim_mod2(orbit_complex(y, "Z/2"), 1));
    return g_times_y_formula(h1, hbar2(y));
}

namespace {

WittResult sum_results(const std::vector<WittResult>& parts) {
    WittResult r;
    r.provenance = "disjoint union";
    r.nu = 0;
    for (auto& p : parts) {
        if (p.resolved) {
            r.group = direct_sum(r.group, p.group);
        } else {
            r.resolved = false;
            r.sub = direct_sum(r.sub, p.sub);
            r.quot = direct_sum(r.quot, p.quot);
        }
        r.nu += std::max(p.nu, 0);
        for (auto& c : p.caveats)
            if (std::find(r.caveats.begin(), r.caveats.end(), c) == r.caveats.end()) r.caveats.push_back(c);
        if (p.delta == DeltaStatus::bounded_unknown) {
            r.delta = DeltaStatus::bounded_unknown;
            r.delta_group = direct_sum(r.delta_group, p.delta_group);
        }
    }
    if (!r.resolved) {
        // resolved parts go into the quotient
        r.quot = direct_sum(r.quot, r.group);
        r.group = {};
    }
    std::string pieces;
    for (auto& p : parts) pieces += (pieces.empty() ? "" : " + ") + p.provenance;
    r.provenance += ": " + pieces;
    return r;
}

WittResult wr_connected(const SimplicialGComplex& x, const WittOptions& opt) {
    if (x.dim() > 6) throw InputError("no applicable theorem: dimension " + std::to_string(x.dim()) + " exceeds 6");
    if (connected_components(x).count > 1) {
        // A single G-invariant piece that is disconnected is a swapped pair.
        auto comp = connected_components(x);
        std::vector<int> verts;
        for (std::size_t v = 0; v < x.vertex_count(); ++v)
            if (comp.membership[v] == comp.membership[0]) verts.push_back(static_cast<int>(v));
        SimplicialGComplex c = induced_subcomplex(SimplicialGComplex::with_trivial_action(x.names(), x.maximal()), verts);
        return WittResult::of(wr_g_times_y(c), "G x Y formula", 0);
    }
    Shape s = analyse(x);
    int dim = s.y.dim();
    if (dim <= 1) return WittResult::of(wr_dim1(x), "graph formula", s.nu);
    if (x.trivial_action() && dim <= 2) return WittResult::of(ko_low_dim(x), "trivial-action KO", s.nu);
    if (dim == 2 && is_closed_surface(s.y)) {
        SimplicialGComplex f = fixed_subcomplex(s.y);
        if (is_circle_union(f)) return WittResult::of(wr_surface(x), "closed-surface formula", s.nu);
        if (s.fixed_dim == 0 && x.euler_characteristic() == 2)
            return WittResult::of(wr_two_sphere(x), "two-sphere with isolated fixed points", s.nu);
    }
    if (s.nu > 0 && dim <= 4 && s.fixed_dim <= 2) return wr_fixed4(x, opt);
    if (s.free && dim <= 4) return wr_free4(x, opt);
    if (s.free && dim <= 6) return wr_free6(x, opt);
    std::ostringstream os;
    os << "no applicable theorem: dim " << dim << ", nu " << s.nu << ", dim X^G " << s.fixed_dim
       << (s.free ? ", free" : ", not free")
       << "; the fixed-locus formula needs dim <= 4 and dim X^G <= 2, the free formulas need dim <= 6";
    throw InputError(os.str());
}

}  // namespace

WittResult wr(const SimplicialGComplex& x, const WittOptions& opt) {
    if (x.vertex_count() == 0) return WittResult::of({}, "empty space", 0);
    auto pieces = components_of(x);
    if (pieces.size() == 1) return wr_connected(x, opt);
    std::vector<WittResult> parts;
    WittOptions inner = opt;
    inner.name.clear();
    for (auto& p : pieces) parts.push_back(wr_connected(p, inner));
    return resolve_from_table(sum_results(parts), opt);
}

WittResult wr(const AbstractInvariants& a, const WittOptions& opt0) {
    WittOptions opt = opt0;
    if (opt.name.empty()) opt.name = a.name;
    if (a.dim > 6) throw InputError("no applicable theorem: dimension exceeds 6");
    if (a.g_times_y) {
        FGAbGroup hb;
        if (a.hbar2)
            hb = *a.hbar2;
        else if (a.dim > 2)
            throw InputError("the G x Y formula needs hbar2 when dim Y > 2");
        return WittResult::of(g_times_y_formula(a.h1, hb), "G x Y formula", 0);
    }
    bool m = a.minus_one_nonzero.value_or(a.nu == 0);
    if (a.dim <= 1) return WittResult::of(graph_formula(a.nu, a.h1, m), "graph formula", a.nu);
    if (a.dim == 2) return WittResult::of(surface_formula(a.nu, a.h1), "closed-surface formula", a.nu);
    if (a.dim <= 4 && a.nu > 0) {
        if (!a.two_h3) throw InputError("the fixed-locus formula needs two_h3");
        // Only the 2-torsion is known here; treat it as elementary.
        return fixed4_core(a.nu, a.h1, *a.two_h3, opt, std::nullopt);
    }
    if (a.dim <= 4) {
        if (!a.two_h3) throw InputError("the free 4-dim extension needs two_h3");
        return free_core("free 4-dim extension", *a.two_h3, a.h1, m, a.h2_involution, opt);
    }
    if (a.nu == 0) {
        if (!a.hbar2) throw InputError("the free 6-dim extension needs hbar2");
        return free_core("free 6-dim extension", *a.hbar2, a.h1, m, std::nullopt, opt);
    }
    throw InputError("no applicable theorem: dim " + std::to_string(a.dim) + " with real points exceeds 4");
}

// ---------------------------------------------------------------- Pic_G

PicG pic_g(const SimplicialGComplex& x) {
    SimplicialGComplex y = prepared(x);
    SplitComplex c = borel_complex(y, standard_gmodule("Z/2"), 3);
    F2Cohomology h(c.f2, 1);
    PicG out;
    out.group = z2(static_cast<int>(h.dim()));
    SimplicialGComplex f = fixed_subcomplex(y);
    Components comp = connected_components(f);
    out.nu = comp.count;
    // One fixed vertex of y per component; the (p=0, k=1) block comes first.
    std::vector<int> base(static_cast<std::size_t>(comp.count), -1);
    for (std::size_t v = 0; v < f.vertex_count(); ++v) {
        auto& b = base[static_cast<std::size_t>(comp.membership[v])];
        if (b < 0) b = static_cast<int>(v);
    }
    std::vector<int> yvert;
    for (int b : base) {
        const std::string& nm = f.names()[static_cast<std::size_t>(b)];
        auto it = std::find(y.names().begin(), y.names().end(), nm);
        yvert.push_back(static_cast<int>(it - y.names().begin()));
    }
    std::vector<BitVec> rows;
    for (auto& r : h.reps()) {
        BitVec b(yvert.size());
        for (std::size_t i = 0; i < yvert.size(); ++i)
            if (r.get(static_cast<std::size_t>(yvert[i]))) b.set(i);
        rows.push_back(b);
    }
    int rank = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].any()) continue;
        ++rank;
        std::size_t p = rows[i].first();
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (rows[j].get(p)) rows[j] ^= rows[i];
    }
    out.sign_rank = rank;
    return out;
}

// ---------------------------------------------------------------- signature lattice

bool SignatureLattice::contains(const std::vector<long long>& v) const {
    if (static_cast<int>(v.size()) != nu) return false;
    for (auto c : v)
        if ((c - v[0]) % 2 != 0) return false;
    return true;
}

std::vector<long long> SignatureLattice::kernel_generator() const {
    std::vector<long long> g(static_cast<std::size_t>(nu) + 1, -1);
    g[0] = 2;
    return g;
}

SignatureLattice signature_lattice(int nu) {
    if (nu < 1) throw InputError("the signature lattice needs nu >= 1");
    return SignatureLattice{nu};
}

std::vector<long long> rho(long long r, const std::vector<long long>& a) {
    std::vector<long long> out;
    for (auto ai : a) out.push_back(r + 2 * ai);
    return out;
}

// ---------------------------------------------------------------- algebraic formulas

FGAbGroup sujatha_witt(int nu, int j, int k, int l) {
    if (nu < 1) throw InputError("sujatha_witt needs nu > 0");
    if (j < 0 || k < 0 || l < 0) throw InputError("etale invariants must be nonnegative");
    if (j < l) throw InputError("inconsistent etale invariants: j < l");
    if (k + 2 * l < j) throw InputError("inconsistent etale invariants: k + 2l < j");
    std::vector<Integer> f(static_cast<std::size_t>(j - l), 4);
    for (int i = 0; i < k + 2 * l - j; ++i) f.push_back(2);
    return FGAbGroup(nu, f);
}

WittResult w_no_real_points(int j, int k, std::optional<NoRealPointsResolution> res) {
    if (j < 1) throw InputError("w_no_real_points needs j >= 1 (the class of -1 is always present)");
    if (k < 0) throw InputError("w_no_real_points needs k >= 0");
    WittResult r;
    r.provenance = "no-real-points extension";
    r.nu = 0;
    r.sub = z2(k);
    r.quot = direct_sum(FGAbGroup::cyclic(4), z2(j - 1));
    r.caveats.push_back("order 2^" + std::to_string(j + k + 1));
    if (k == 0 && !res) {
        r.group = r.quot;
        r.sub = {};
        r.quot = {};
        return r;
    }
    if (!res) {
        r.resolved = false;
        return r;
    }
    int glued = res->glued, extra = res->cyclic_order == 8 ? 1 : 0;
    if (res->cyclic_order != 4 && res->cyclic_order != 8) throw InputError("cyclic image order must be 4 or 8");
    if (glued < 0 || glued > j - 1 || glued + extra > k) throw InputError("resolution does not fit the extension data");
    std::vector<Integer> f{Integer(res->cyclic_order)};
    for (int i = 0; i < glued; ++i) f.push_back(4);
    for (int i = 0; i < (j - 1 - glued) + (k - glued - extra); ++i) f.push_back(2);
    r.group = FGAbGroup(0, f);
    r.sub = {};
    r.quot = {};
    r.provenance += ", resolved";
    return r;
}

Comparison compare_w_wr(int rho0, const FGAbGroup& st_mod_sa, const FGAbGroup& delta) {
    if (rho0 < 0) throw InputError("rho0 must be nonnegative");
    return {z2(rho0), direct_sum(delta, st_mod_sa)};
}

FundamentalReport fundamental_check(const SimplicialGComplex& x) {
    FundamentalReport rep;
    try {
        WittResult a = wr(x);
        WittResult b = wr(product(x, sphere(1, 1)));
        if (!a.resolved || !b.resolved) {
            rep.verdict = "inconclusive";
            rep.detail = "an unresolved extension on one side";
            rep.lhs = b.str();
            rep.rhs = a.resolved ? direct_sum(a.group, a.group).str() : a.str();
            return rep;
        }
        FGAbGroup twice = direct_sum(a.group, a.group);
        rep.lhs = b.group.str();
        rep.rhs = twice.str();
        rep.verdict = b.group == twice ? "equal" : "not equal";
    } catch (const Error& e) {
        rep.verdict = "inconclusive";
        rep.detail = e.what();
    }
    return rep;
}

}  // namespace equiwitt
