#include "equiwitt/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "equiwitt/cohom.hpp"

namespace equiwitt {

namespace detail {
extern const char* const kCatalogJson;
}

using nlohmann::ordered_json;

namespace {

// Cell budget for the doubly subdivided copy checked by verify.
constexpr std::size_t kSubdivisionBudget = 400'000;

Comessatti parse_type(const ordered_json& j) {
    auto v = j.get<std::vector<int>>();
    if (v.size() != 3) throw InputError("H2 type needs three entries");
    return Comessatti{v[0], v[1], v[2]};
}

std::vector<CatalogEntry> load() {
    ordered_json root = ordered_json::parse(detail::kCatalogJson);
    std::vector<CatalogEntry> out;
    for (auto& j : root.at("entries")) {
        CatalogEntry e;
        e.name = j.at("name").get<std::string>();
        std::string p = j.at("pathway").get<std::string>();
        e.pathway = p == "abstract" ? Pathway::abstract : Pathway::simplicial;
        e.builder_json = j.at("builder").dump();
        if (j.contains("witt")) e.witt = FGAbGroup::parse(j["witt"].get<std::string>());
        if (j.contains("witt_str")) e.witt_str = j["witt_str"].get<std::string>();
        if (j.contains("nu")) e.nu = j["nu"].get<int>();
        if (j.contains("h1")) e.h1 = j["h1"].get<int>();
        if (j.contains("two_h3")) e.two_h3 = FGAbGroup::parse(j["two_h3"].get<std::string>());
        if (j.contains("hbar2")) e.hbar2 = FGAbGroup::parse(j["hbar2"].get<std::string>());
        if (j.contains("h2_type")) e.h2_type = parse_type(j["h2_type"]);
        if (j.contains("cohomology"))
            for (auto& c : j["cohomology"])
                e.cohomology.push_back({c.at("theory").get<std::string>(), c.at("coefficients").get<std::string>(),
                                        c.at("degree").get<int>(), FGAbGroup::parse(c.at("value").get<std::string>())});
        e.citation = j.value("citation", "");
        e.basis = j.value("basis", "");
        if (j.contains("resolution")) e.resolution = FGAbGroup::parse(j["resolution"].get<std::string>());
        e.subdivide_in_verify = j.value("subdivide_in_verify", true);
        out.push_back(std::move(e));
    }
    return out;
}

SimplicialGComplex build_tree(const ordered_json& b) {
    std::string op = b.at("op").get<std::string>();
    if (op == "sphere") return sphere(b.at("p").get<int>(), b.at("q").get<int>());
    if (op == "product") {
        const auto& of = b.at("of");
        SimplicialGComplex x = build_tree(of.at(0));
        for (std::size_t i = 1; i < of.size(); ++i) x = product(x, build_tree(of[i]));
        return x;
    }
    if (op == "disjoint") {
        const auto& of = b.at("of");
        SimplicialGComplex x = build_tree(of.at(0));
        for (std::size_t i = 1; i < of.size(); ++i) x = disjoint_union(x, build_tree(of[i]));
        return x;
    }
    if (op == "swap") {
        // (u, v) -> (s v, s u) on X x X
        SimplicialGComplex p = product(build_tree(b.at("of")), build_tree(b.at("of")));
        std::size_t n = p.vertex_count(), m = 0;
        while (m * m < n) ++m;
        std::vector<int> inv(n);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t c = 0; c < m; ++c) inv[a * m + c] = p.involution()[c * m + a];
        return SimplicialGComplex(p.names(), inv, p.maximal());
    }
    if (op == "double") {
        SimplicialGComplex y = build_tree(b.at("of"));
        SimplicialGComplex u = disjoint_union(SimplicialGComplex::with_trivial_action(y.names(), y.maximal()),
                                              SimplicialGComplex::with_trivial_action(y.names(), y.maximal()));
        int n = static_cast<int>(y.vertex_count());
        std::vector<int> inv(u.vertex_count());
        for (int v = 0; v < n; ++v) {
            inv[static_cast<std::size_t>(v)] = v + n;
            inv[static_cast<std::size_t>(v + n)] = v;
        }
        return SimplicialGComplex(u.names(), inv, u.maximal());
    }
    if (op == "facets") {
        int n = b.at("vertices").get<int>();
        std::vector<std::string> names;
        for (int v = 0; v < n; ++v) names.push_back(std::to_string(v + 1));
        auto f = b.at("facets").get<std::vector<Simplex>>();
        if (b.contains("involution")) return SimplicialGComplex(names, b["involution"].get<std::vector<int>>(), f);
        return SimplicialGComplex::with_trivial_action(names, f);
    }
    throw InputError("unknown builder op '" + op + "'");
}

ordered_json builder_of(const CatalogEntry& e) { return ordered_json::parse(e.builder_json); }

WittOptions options_for(const std::string& name) {
    WittOptions o;
    o.name = name;
    o.resolutions = resolution_table();
    return o;
}

FGAbGroup two_h3_any(const SimplicialGComplex& x) {
    SimplicialGComplex y = prepared(x);
    if (y.is_free()) return two_h3_twisted(y);
    return two_torsion(local_cohomology(y, standard_gmodule("Z(1)"), 3));
}

// Y for an entry of the form G x Y: one component with the trivial action.
SimplicialGComplex one_copy(const SimplicialGComplex& x) {
    auto comp = connected_components(x);
    std::vector<int> verts;
    for (std::size_t v = 0; v < x.vertex_count(); ++v)
        if (comp.membership[v] == comp.membership[0]) verts.push_back(static_cast<int>(v));
    return induced_subcomplex(SimplicialGComplex::with_trivial_action(x.names(), x.maximal()), verts);
}

FGAbGroup cohomology_of(const SimplicialGComplex& x, const CohomExpectation& c) {
    CohomologyRequest r;
    r.theory = parse_theory(c.theory);
    if (r.theory == Theory::bredon)
        r.system = parse_system(c.coefficients);
    else
        r.module = standard_gmodule(c.coefficients);
    r.lo = r.hi = c.degree;
    return compute(x, r).at(c.degree);
}

void expect(VerifyReport& rep, const std::string& what, const std::string& want, const std::string& got) {
    if (want != got) rep.failures.push_back(what + ": expected " + want + ", got " + got);
}

void check_space(VerifyReport& rep, const CatalogEntry& e, const SimplicialGComplex& x, const std::string& tag,
                 bool full) {
    if (e.witt || e.witt_str) {
        WittResult r = wr(x, options_for(e.name));
        if (e.witt) expect(rep, tag + "WR", e.witt->str(), r.str());
        if (e.witt_str) expect(rep, tag + "WR", *e.witt_str, r.str());
    }
    if (e.nu) expect(rep, tag + "nu", std::to_string(*e.nu), std::to_string(fixed_components(x)));
    if (e.h1) expect(rep, tag + "h1", std::to_string(*e.h1), std::to_string(quotient_h1_mod2(x)));
    for (auto& c : e.cohomology)
        expect(rep, tag + c.theory + " H^" + std::to_string(c.degree) + "(" + c.coefficients + ")", c.value.str(),
               cohomology_of(x, c).str());
    if (!full) return;
    if (e.two_h3) expect(rep, tag + "2H^3", e.two_h3->str(), two_h3_any(x).str());
    if (e.hbar2) expect(rep, tag + "hbar2", e.hbar2->str(), hbar2(one_copy(x)).str());
    if (e.h2_type) {
        Comessatti c = comessatti_decompose(InvolutionModule{cohomology_involution(x, 2)});
        auto s = [](const Comessatti& t) {
            return "(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + ")";
        };
        expect(rep, tag + "H2 type", s(*e.h2_type), s(c));
    }
}

std::size_t factorial(int n) {
    std::size_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
    return f;
}

std::string xml_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '&': o += "&amp;"; break;
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '"': o += "&quot;"; break;
            default: o += c;
        }
    }
    return o;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = load();
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (auto& e : catalog())
        if (e.name == name) return e;
    throw InputError("unknown catalog entry '" + name + "'");
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> n;
    for (auto& e : catalog()) n.push_back(e.name);
    return n;
}

SimplicialGComplex build_space(const std::string& name) {
    const CatalogEntry& e = catalog_entry(name);
    if (e.pathway != Pathway::simplicial) throw InputError("'" + name + "' has no simplicial model");
    return build_tree(builder_of(e));
}

AbstractInvariants build_invariants(const std::string& name) {
    const CatalogEntry& e = catalog_entry(name);
    ordered_json b = builder_of(e);
    if (e.pathway != Pathway::abstract || !b.contains("invariants"))
        throw InputError("'" + name + "' has no abstract invariants");
    AbstractInvariants a = AbstractInvariants::from_json(b["invariants"].dump());
    if (a.name.empty()) a.name = name;
    return a;
}

std::string build_json(const std::string& name) {
    const CatalogEntry& e = catalog_entry(name);
    if (e.pathway == Pathway::simplicial) return build_space(name).to_json();
    ordered_json b = builder_of(e);
    if (b.contains("invariants")) return build_invariants(name).to_json();
    return b.dump(2) + "\n";
}

std::map<std::string, FGAbGroup> resolution_table() {
    std::map<std::string, FGAbGroup> t;
    for (auto& e : catalog())
        if (e.resolution) t[e.name] = *e.resolution;
    return t;
}

WittResult evaluate(const std::string& name) {
    const CatalogEntry& e = catalog_entry(name);
    if (e.pathway == Pathway::simplicial) return wr(build_space(name), options_for(name));
    ordered_json b = builder_of(e);
    if (b.contains("invariants")) return wr(build_invariants(name), options_for(name));
    std::string f = b.at("formula").get<std::string>();
    if (f == "sujatha") {
        int nu = b.at("nu").get<int>();
        return WittResult::of(sujatha_witt(nu, b.at("j").get<int>(), b.at("k").get<int>(), b.at("l").get<int>()),
                              "etale invariants", nu);
    }
    if (f == "no_real_points") {
        std::optional<NoRealPointsResolution> res;
        if (b.contains("cyclic_order"))
            res = NoRealPointsResolution{b.value("glued", 0), b.at("cyclic_order").get<int>()};
        return w_no_real_points(b.at("j").get<int>(), b.at("k").get<int>(), res);
    }
    throw InputError("unknown formula '" + f + "'");
}

VerifyReport verify(const std::string& name) {
    auto t0 = std::chrono::steady_clock::now();
    VerifyReport rep;
    rep.name = name;
    try {
        const CatalogEntry& e = catalog_entry(name);
        if (e.pathway == Pathway::abstract) {
            WittResult r = evaluate(name);
            if (e.witt) expect(rep, "WR", e.witt->str(), r.str());
            if (e.witt_str) expect(rep, "WR", *e.witt_str, r.str());
        } else {
            SimplicialGComplex x = build_space(name);
            check_space(rep, e, x, "", true);
            if (!e.subdivide_in_verify) {
                rep.notes.push_back("double subdivision not run for this entry (size)");
            } else {
                SimplicialGComplex s1 = barycentric_subdivide(x);
                if (s1.total_cells() * factorial(s1.dim() + 1) > kSubdivisionBudget) {
                    rep.notes.push_back("double subdivision skipped: over the cell budget");
                } else {
                    check_space(rep, e, barycentric_subdivide(s1), "sd^2 ", false);
                    rep.subdivision_checked = true;
                }
            }
        }
    } catch (const Error& ex) {
        rep.failures.push_back(std::string("error: ") + ex.what());
    }
    rep.passed = rep.failures.empty();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<VerifyReport> verify_all() {
    std::vector<std::string> names = catalog_names();
    std::vector<VerifyReport> out(names.size());
    std::atomic<std::size_t> next{0};
    unsigned n = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < names.size();) out[i] = verify(names[i]);
        });
    for (auto& t : pool) t.join();
    return out;
}

std::string junit_xml(const std::vector<VerifyReport>& reports) {
    std::size_t failures = 0;
    for (auto& r : reports) failures += r.passed ? 0 : 1;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<testsuite name=\"equiwitt-catalog\" tests=\"" << reports.size() << "\" failures=\"" << failures << "\">\n";
    for (auto& r : reports) {
        os << "  <testcase classname=\"catalog\" name=\"" << xml_escape(r.name) << "\">\n";
        for (auto& f : r.failures) os << "    <failure message=\"" << xml_escape(f) << "\"/>\n";
        for (auto& n : r.notes) os << "    <system-out>" << xml_escape(n) << "</system-out>\n";
        os << "  </testcase>\n";
    }
    os << "</testsuite>\n";
    return os.str();
}

}  // namespace equiwitt
