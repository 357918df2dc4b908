#include "equiwitt/gspace.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace equiwitt {

namespace {

std::string simplex_str(const std::vector<std::string>& names, std::span<const int> s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + names[s[i]];
    return out + "]";
}

// Sort rows of a flat array (row length k) and drop duplicates.
std::vector<int> sort_rows(std::vector<int> flat, std::size_t k) {
    std::size_t n = flat.size() / k;
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto row = [&](std::size_t i) { return flat.begin() + static_cast<long>(i * k); };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(row(a), row(a) + static_cast<long>(k), row(b), row(b) + static_cast<long>(k));
    });
    std::vector<int> out;
    out.reserve(flat.size());
    for (std::size_t t = 0; t < n; ++t) {
        auto r = row(idx[t]);
        if (t > 0 && std::equal(r, r + static_cast<long>(k), row(idx[t - 1]))) continue;
        out.insert(out.end(), r, r + static_cast<long>(k));
    }
    return out;
}

// Sorts a small vertex list in place, returning the permutation sign.
int sort_with_sign(std::vector<int>& v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

std::vector<Simplex> maximal_of(std::vector<Simplex> all) {
    for (auto& s : all) std::sort(s.begin(), s.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::set<Simplex> covered;
    for (auto& s : all) {
        if (s.size() < 2) continue;
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex f = s;
            f.erase(f.begin() + static_cast<long>(i));
            covered.insert(f);
        }
    }
    // Faces of covered faces are covered too.
    std::vector<Simplex> work(covered.begin(), covered.end());
    while (!work.empty()) {
        Simplex s = std::move(work.back());
        work.pop_back();
        if (s.size() < 2) continue;
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex f = s;
            f.erase(f.begin() + static_cast<long>(i));
            if (covered.insert(f).second) work.push_back(f);
        }
    }
    std::vector<Simplex> out;
    for (auto& s : all)
        if (!covered.count(s)) out.push_back(s);
    return out;
}

long long fubini(int n) {
    // Ordered set partitions of an n-set.
    std::vector<long long> a(static_cast<std::size_t>(n) + 1, 0);
    a[0] = 1;
    for (int m = 1; m <= n; ++m) {
        long long binom = 1, s = 0;
        for (int k = 1; k <= m; ++k) {
            binom = binom * (m - k + 1) / k;
            s += binom * a[static_cast<std::size_t>(m - k)];
        }
        a[static_cast<std::size_t>(m)] = s;
    }
    return a[static_cast<std::size_t>(n)];
}

}  // namespace

std::size_t max_cells() {
    if (const char* e = std::getenv("EQUIWITT_MAX_CELLS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(e, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 4'000'000;
}

SimplexTable::SimplexTable(int dim, std::vector<int> flat) : dim_(dim), data_(std::move(flat)) {}

long SimplexTable::find(std::span<const int> s) const {
    std::size_t k = static_cast<std::size_t>(dim_ + 1);
    if (s.size() != k) return -1;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto r = (*this)[mid];
        int c = 0;
        for (std::size_t i = 0; i < k && c == 0; ++i) c = (r[i] < s[i]) ? -1 : (r[i] > s[i] ? 1 : 0);
        if (c == 0) return static_cast<long>(mid);
        if (c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return -1;
}

SimplicialGComplex::SimplicialGComplex(std::vector<std::string> names, std::vector<int> involution,
                                       std::vector<Simplex> maximal)
    : names_(std::move(names)), inv_(std::move(involution)), maximal_(std::move(maximal)) {
    const int n = static_cast<int>(names_.size());
    if (static_cast<int>(inv_.size()) != n) throw InputError("involution must list every vertex");
    {
        std::set<std::string> seen(names_.begin(), names_.end());
        if (static_cast<int>(seen.size()) != n) throw InputError("duplicate vertex names");
    }
    for (int v = 0; v < n; ++v) {
        if (inv_[v] < 0 || inv_[v] >= n) throw InputError("involution maps outside the vertex set");
        if (inv_[inv_[v]] != v)
            throw InputError("involution does not square to the identity at vertex " + names_[v]);
    }
    for (auto& s : maximal_) {
        if (s.empty()) throw InputError("empty simplex in maximal_simplices");
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || s[i] >= n) throw InputError("simplex uses an unknown vertex");
            if (i && s[i] == s[i - 1]) throw InputError("simplex repeats a vertex: " + simplex_str(names_, s));
        }
    }
    build();
}

SimplicialGComplex SimplicialGComplex::with_trivial_action(std::vector<std::string> names,
                                                           std::vector<Simplex> maximal) {
    std::vector<int> inv(names.size());
    std::iota(inv.begin(), inv.end(), 0);
    return SimplicialGComplex(std::move(names), std::move(inv), std::move(maximal));
}

void SimplicialGComplex::build() {
    int top = -1;
    std::size_t estimate = 0;
    for (auto& s : maximal_) {
        top = std::max(top, static_cast<int>(s.size()) - 1);
        estimate += (std::size_t{1} << std::min<std::size_t>(s.size(), 40)) - 1;
    }
    // Every vertex is a simplex even when no maximal simplex mentions it.
    std::vector<std::vector<int>> flat(static_cast<std::size_t>(std::max(top, 0) + 1));
    if (names_.empty()) {
        tables_.clear();
        return;
    }
    if (top < 0) top = 0;
    if (estimate > 8 * max_cells()) throw Error("complex exceeds the cell cap (EQUIWITT_MAX_CELLS)");
    for (int v = 0; v < static_cast<int>(names_.size()); ++v) flat[0].push_back(v);
    for (auto& s : maximal_) {
        std::size_t k = s.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
            int d = std::popcount(mask) - 1;
            if (d == 0) continue;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) flat[static_cast<std::size_t>(d)].push_back(s[i]);
        }
        // Keep the intermediate arrays bounded.
        if (flat.back().size() > 64 * max_cells()) throw Error("complex exceeds the cell cap (EQUIWITT_MAX_CELLS)");
    }
    tables_.clear();
    std::size_t total = 0;
    for (int d = 0; d <= top; ++d) {
        auto rows = sort_rows(std::move(flat[static_cast<std::size_t>(d)]), static_cast<std::size_t>(d + 1));
        tables_.emplace_back(d, std::move(rows));
        total += tables_.back().size();
        if (total > max_cells())
            throw Error("complex has more than " + std::to_string(max_cells()) + " cells (EQUIWITT_MAX_CELLS)");
    }
    sig_idx_.assign(tables_.size(), {});
    sig_sgn_.assign(tables_.size(), {});
    std::vector<int> img;
    for (int d = 0; d <= top; ++d) {
        const auto& t = tables_[static_cast<std::size_t>(d)];
        auto& si = sig_idx_[static_cast<std::size_t>(d)];
        auto& ss = sig_sgn_[static_cast<std::size_t>(d)];
        si.resize(t.size());
        ss.resize(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            auto s = t[i];
            img.assign(s.begin(), s.end());
            for (auto& v : img) v = inv_[v];
            int sg = sort_with_sign(img);
            long j = t.find(img);
            if (j < 0)
                throw InputError("involution maps simplex " + simplex_str(names_, s) + " to a non-simplex " +
                                 simplex_str(names_, img));
            si[i] = static_cast<int>(j);
            ss[i] = sg;
        }
    }
}

std::size_t SimplicialGComplex::total_cells() const {
    std::size_t n = 0;
    for (auto& t : tables_) n += t.size();
    return n;
}

std::vector<std::size_t> SimplicialGComplex::f_vector() const {
    std::vector<std::size_t> f;
    for (auto& t : tables_) f.push_back(t.size());
    return f;
}

bool SimplicialGComplex::fixed_pointwise(int d, std::size_t i) const {
    for (int v : tables_[static_cast<std::size_t>(d)][i])
        if (inv_[v] != v) return false;
    return true;
}

bool SimplicialGComplex::trivial_action() const {
    for (std::size_t v = 0; v < inv_.size(); ++v)
        if (inv_[v] != static_cast<int>(v)) return false;
    return true;
}

bool SimplicialGComplex::is_free() const {
    for (std::size_t d = 0; d < tables_.size(); ++d)
        for (std::size_t i = 0; i < tables_[d].size(); ++i)
            if (sig_idx_[d][i] == static_cast<int>(i)) return false;
    return true;
}

long SimplicialGComplex::euler_characteristic() const {
    long chi = 0;
    for (std::size_t d = 0; d < tables_.size(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<long>(tables_[d].size());
    return chi;
}

// ---------------------------------------------------------------- JSON

SimplicialGComplex SimplicialGComplex::from_json(const std::string& text) {
    using json = nlohmann::ordered_json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("space JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("maximal_simplices"))
        throw InputError("space JSON needs 'vertices' and 'maximal_simplices'");
    auto name_of = [](const json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        throw InputError("vertex names must be strings or integers");
    };
    std::vector<std::string> names;
    for (auto& v : j.at("vertices")) names.push_back(name_of(v));
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
    auto lookup = [&](const std::string& s) {
        auto it = index.find(s);
        if (it == index.end()) throw InputError("unknown vertex '" + s + "'");
        return it->second;
    };
    std::vector<int> inv(names.size());
    std::iota(inv.begin(), inv.end(), 0);
    if (j.contains("involution")) {
        const auto& m = j.at("involution");
        if (!m.is_object()) throw InputError("'involution' must be an object");
        for (auto it = m.begin(); it != m.end(); ++it) inv[lookup(it.key())] = lookup(name_of(it.value()));
    }
    std::vector<Simplex> maximal;
    for (auto& s : j.at("maximal_simplices")) {
        if (!s.is_array()) throw InputError("each maximal simplex must be an array");
        Simplex x;
        for (auto& v : s) x.push_back(lookup(name_of(v)));
        maximal.push_back(std::move(x));
    }
    return SimplicialGComplex(std::move(names), std::move(inv), std::move(maximal));
}

std::string SimplicialGComplex::to_json() const {
    using json = nlohmann::ordered_json;
    json j;
    j["vertices"] = names_;
    json inv = json::object();
    for (std::size_t v = 0; v < names_.size(); ++v) inv[names_[v]] = names_[inv_[v]];
    j["involution"] = inv;
    json ms = json::array();
    for (auto& s : maximal_) {
        json a = json::array();
        for (int v : s) a.push_back(names_[v]);
        ms.push_back(a);
    }
    j["maximal_simplices"] = ms;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- validation

RegularityReport validate(const SimplicialGComplex& x) {
    RegularityReport r;
    r.is_regular = true;
    r.orbit_separated = true;
    r.is_free = true;
    const auto& inv = x.involution();
    for (int d = 0; d <= x.dim(); ++d) {
        const auto& t = x.simplices(d);
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (x.sigma_index(d, i) == static_cast<int>(i)) {
                r.is_free = false;
                if (!x.fixed_pointwise(d, i) && r.is_regular) {
                    r.is_regular = false;
                    r.detail = "simplex " + simplex_str(x.names(), t[i]) + " is fixed setwise but not pointwise";
                }
            }
            if (r.orbit_separated) {
                auto s = t[i];
                for (int v : s)
                    if (inv[v] != v && std::binary_search(s.begin(), s.end(), inv[v])) {
                        r.orbit_separated = false;
                        if (r.detail.empty())
                            r.detail = "simplex " + simplex_str(x.names(), s) + " contains two vertices of one orbit";
                        break;
                    }
            }
        }
    }
    // Distinct orbits of simplices must have distinct vertex-orbit images.
    bool images_ok = true;
    if (r.is_regular && r.orbit_separated) {
        for (int d = 1; d <= x.dim() && images_ok; ++d) {
            const auto& t = x.simplices(d);
            std::map<std::vector<int>, std::size_t> seen;
            std::vector<int> key;
            for (std::size_t i = 0; i < t.size(); ++i) {
                key.clear();
                for (int v : t[i]) key.push_back(std::min(v, inv[v]));
                std::sort(key.begin(), key.end());
                auto [it, fresh] = seen.emplace(key, i);
                if (!fresh && it->second != static_cast<std::size_t>(x.sigma_index(d, i))) {
                    images_ok = false;
                    if (r.detail.empty())
                        r.detail = "simplices " + simplex_str(x.names(), t[it->second]) + " and " +
                                   simplex_str(x.names(), t[i]) + " have the same image in the quotient";
                    break;
                }
            }
        }
    }
    r.quotient_ok = r.is_regular && r.orbit_separated && images_ok;
    return r;
}

// ---------------------------------------------------------------- subdivision

SimplicialGComplex barycentric_subdivide(const SimplicialGComplex& x) {
    std::size_t estimate = 0;
    for (int d = 0; d <= x.dim(); ++d) estimate += x.count(d) * static_cast<std::size_t>(fubini(d + 1));
    if (estimate > max_cells())
        throw Error("subdivision would have " + std::to_string(estimate) + " cells, above the cap of " +
                    std::to_string(max_cells()) + " (EQUIWITT_MAX_CELLS)");
    std::vector<std::size_t> offset(static_cast<std::size_t>(std::max(x.dim(), 0)) + 2, 0);
    for (int d = 0; d <= x.dim(); ++d) offset[d + 1] = offset[d] + x.count(d);
    std::vector<std::string> names;
    std::vector<int> inv;
    names.reserve(offset.back());
    for (int d = 0; d <= x.dim(); ++d) {
        const auto& t = x.simplices(d);
        for (std::size_t i = 0; i < t.size(); ++i) {
            names.push_back(d == 0 ? x.names()[t[i][0]] : simplex_str(x.names(), t[i]));
            inv.push_back(static_cast<int>(offset[d] + x.sigma_index(d, i)));
        }
    }
    std::vector<Simplex> maximal;
    std::vector<int> perm, face;
    for (const auto& m : x.maximal()) {
        perm.assign(m.begin(), m.end());
        std::sort(perm.begin(), perm.end());
        do {
            Simplex chain;
            for (std::size_t k = 1; k <= perm.size(); ++k) {
                face.assign(perm.begin(), perm.begin() + static_cast<long>(k));
                std::sort(face.begin(), face.end());
                int d = static_cast<int>(k) - 1;
                long idx = x.simplices(d).find(face);
                chain.push_back(static_cast<int>(offset[d] + static_cast<std::size_t>(idx)));
            }
            maximal.push_back(std::move(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return SimplicialGComplex(std::move(names), std::move(inv), std::move(maximal));
}

Subdivided subdivide_until_quotient_ok(const SimplicialGComplex& x) {
    Subdivided s{x, 0};
    while (!validate(s.complex).quotient_ok) {
        if (s.rounds == 2) throw Error("quotient still invalid after two subdivisions");
        s.complex = barycentric_subdivide(s.complex);
        ++s.rounds;
    }
    return s;
}

SimplicialGComplex orbit_lex_order(const SimplicialGComplex& x) {
    if (!validate(x).orbit_separated) throw Error("orbit_lex_order needs orbit-separated simplices");
    const auto& inv = x.involution();
    std::size_t n = x.vertex_count();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int v) { return std::pair{std::min(v, inv[v]), v == std::min(v, inv[v]) ? 0 : 1}; };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
    std::vector<int> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = static_cast<int>(i);
    std::vector<std::string> names(n);
    std::vector<int> ninv(n);
    for (std::size_t i = 0; i < n; ++i) {
        names[i] = x.names()[order[i]];
        ninv[i] = pos[inv[order[i]]];
    }
    std::vector<Simplex> maximal;
    for (auto& s : x.maximal()) {
        Simplex t;
        for (int v : s) t.push_back(pos[v]);
        maximal.push_back(std::move(t));
    }
    return SimplicialGComplex(std::move(names), std::move(ninv), std::move(maximal));
}

// ---------------------------------------------------------------- fixed set, quotient

SimplicialGComplex induced_subcomplex(const SimplicialGComplex& x, const std::vector<int>& vertices) {
    std::vector<int> pos(x.vertex_count(), -1);
    std::vector<int> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::string> names;
    for (int v : sorted) {
        pos[v] = static_cast<int>(names.size());
        names.push_back(x.names()[v]);
    }
    std::vector<int> inv;
    for (int v : sorted) {
        int w = x.involution()[v];
        if (pos[w] < 0) throw Error("vertex set is not invariant under the involution");
        inv.push_back(pos[w]);
    }
    // Every simplex inside the vertex set is a face of some maximal simplex cut down to it.
    std::vector<Simplex> all;
    for (auto& m : x.maximal()) {
        Simplex s;
        for (int v : m)
            if (pos[v] >= 0) s.push_back(pos[v]);
        if (s.size() >= 2) all.push_back(std::move(s));
    }
    auto maximal = maximal_of(std::move(all));
    // Isolated vertices.
    std::vector<char> used(names.size(), 0);
    for (auto& s : maximal)
        for (int v : s) used[v] = 1;
    for (std::size_t v = 0; v < names.size(); ++v)
        if (!used[v]) maximal.push_back({static_cast<int>(v)});
    std::sort(maximal.begin(), maximal.end());
    return SimplicialGComplex(std::move(names), std::move(inv), std::move(maximal));
}

SimplicialGComplex fixed_subcomplex(const SimplicialGComplex& x) {
    if (!validate(x).is_regular) throw Error("fixed_subcomplex needs a regular complex; subdivide first");
    std::vector<int> fixed;
    for (std::size_t v = 0; v < x.vertex_count(); ++v)
        if (x.involution()[v] == static_cast<int>(v)) fixed.push_back(static_cast<int>(v));
    return induced_subcomplex(x, fixed);
}

QuotientResult quotient(const SimplicialGComplex& x) {
    auto rep = validate(x);
    if (!rep.quotient_ok) throw Error("quotient needs quotient_ok; subdivide first (" + rep.detail + ")");
    const auto& inv = x.involution();
    QuotientResult q;
    q.vertex_map.assign(x.vertex_count(), -1);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < x.vertex_count(); ++v) {
        int w = inv[v];
        if (w < static_cast<int>(v)) continue;
        int id = static_cast<int>(names.size());
        q.vertex_map[v] = id;
        q.vertex_map[w] = id;
        names.push_back(w == static_cast<int>(v) ? x.names()[v] : x.names()[v] + "~" + x.names()[w]);
    }
    std::vector<Simplex> all;
    for (auto& s : x.maximal()) {
        Simplex t;
        for (int v : s) t.push_back(q.vertex_map[v]);
        all.push_back(std::move(t));
    }
    auto maximal = maximal_of(std::move(all));
    q.complex = SimplicialGComplex::with_trivial_action(std::move(names), std::move(maximal));
    return q;
}

// ---------------------------------------------------------------- products, joins, spheres

namespace {

SimplicialGComplex prepare_factor(const SimplicialGComplex& x) {
    SimplicialGComplex y = validate(x).orbit_separated ? x : barycentric_subdivide(x);
    return orbit_lex_order(y);
}

}  // namespace

SimplicialGComplex product(const SimplicialGComplex& x0, const SimplicialGComplex& y0) {
    SimplicialGComplex x = prepare_factor(x0), y = prepare_factor(y0);
    std::size_t nx = x.vertex_count(), ny = y.vertex_count();
    std::vector<std::string> names;
    std::vector<int> inv;
    for (std::size_t a = 0; a < nx; ++a)
        for (std::size_t b = 0; b < ny; ++b) {
            names.push_back("(" + x.names()[a] + "," + y.names()[b] + ")");
            inv.push_back(static_cast<int>(x.involution()[a] * ny + y.involution()[b]));
        }
    std::vector<Simplex> maximal;
    for (auto& s : x.maximal())
        for (auto& t : y.maximal()) {
            std::size_t i = s.size() - 1, j = t.size() - 1;
            // Staircase paths: choose which of the i+j steps move in x.
            std::vector<int> steps(i + j, 1);
            std::fill(steps.begin(), steps.begin() + static_cast<long>(i), 0);
            do {
                Simplex chain;
                std::size_t a = 0, b = 0;
                chain.push_back(static_cast<int>(s[a] * ny + t[b]));
                for (int st : steps) {
                    if (st == 0)
                        ++a;
                    else
                        ++b;
                    chain.push_back(static_cast<int>(s[a] * ny + t[b]));
                }
                maximal.push_back(std::move(chain));
            } while (std::next_permutation(steps.begin(), steps.end()));
        }
    return SimplicialGComplex(std::move(names), std::move(inv), std::move(maximal));
}

SimplicialGComplex join(const SimplicialGComplex& x, const SimplicialGComplex& y) {
    if (x.vertex_count() == 0) return y;
    if (y.vertex_count() == 0) return x;
    std::vector<std::string> names;
    for (auto& n : x.names()) names.push_back("a." + n);
    for (auto& n : y.names()) names.push_back("b." + n);
    int off = static_cast<int>(x.vertex_count());
    std::vector<int> inv = x.involution();
    for (int w : y.involution()) inv.push_back(w + off);
    std::vector<Simplex> maximal;
    for (auto& s : x.maximal())
        for (auto& t : y.maximal()) {
            Simplex u = s;
            for (int v : t) u.push_back(v + off);
            maximal.push_back(std::move(u));
        }
    return SimplicialGComplex(std::move(names), std::move(inv), std::move(maximal));
}

SimplicialGComplex disjoint_union(const SimplicialGComplex& x, const SimplicialGComplex& y) {
    std::vector<std::string> names;
    for (auto& n : x.names()) names.push_back("a." + n);
    for (auto& n : y.names()) names.push_back("b." + n);
    int off = static_cast<int>(x.vertex_count());
    std::vector<int> inv = x.involution();
    for (int w : y.involution()) inv.push_back(w + off);
    std::vector<Simplex> maximal = x.maximal();
    for (auto& t : y.maximal()) {
        Simplex u;
        for (int v : t) u.push_back(v + off);
        maximal.push_back(std::move(u));
    }
    return SimplicialGComplex(std::move(names), std::move(inv), std::move(maximal));
}

SimplicialGComplex sphere(int p, int q) {
    if (p < 0 || q < 0 || p + q < 1) throw InputError("sphere(p,q) needs p,q >= 0 and p+q >= 1");
    int n = p + q;
    if (n > 20) throw InputError("sphere dimension too large");
    std::vector<std::string> names;
    std::vector<int> inv;
    for (int i = 1; i <= n; ++i) {
        names.push_back("+" + std::to_string(i));
        names.push_back("-" + std::to_string(i));
        int a = 2 * (i - 1), b = a + 1;
        if (i <= p) {
            inv.push_back(b);
            inv.push_back(a);
        } else {
            inv.push_back(a);
            inv.push_back(b);
        }
    }
    std::vector<Simplex> maximal;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Simplex s;
        for (int i = 0; i < n; ++i) s.push_back(2 * i + static_cast<int>((mask >> i) & 1));
        maximal.push_back(std::move(s));
    }
    return SimplicialGComplex(std::move(names), std::move(inv), std::move(maximal));
}

// ---------------------------------------------------------------- chains, components

ChainComplexZG chain_complex(const SimplicialGComplex& x) {
    ChainComplexZG c;
    int top = x.dim();
    std::vector<int> face;
    for (int d = 0; d <= top; ++d) {
        const auto& t = x.simplices(d);
        c.chains.sizes.push_back(t.size());
        SparseIntMatrix b(d ? x.count(d - 1) : 0, t.size());
        if (d > 0) {
            const auto& lower = x.simplices(d - 1);
            for (std::size_t j = 0; j < t.size(); ++j) {
                auto s = t[j];
                for (int i = 0; i <= d; ++i) {
                    face.clear();
                    for (int k = 0; k <= d; ++k)
                        if (k != i) face.push_back(s[k]);
                    b.add(static_cast<std::size_t>(lower.find(face)), j, (i % 2) ? -1 : 1);
                }
            }
            b.finalize();
        }
        c.chains.boundary.push_back(std::move(b));
        SignedPermutation sp;
        for (std::size_t i = 0; i < t.size(); ++i) {
            sp.image.push_back(x.sigma_index(d, i));
            sp.sign.push_back(x.sigma_sign(d, i));
        }
        c.sigma.push_back(std::move(sp));
    }
    return c;
}

Components connected_components(const SimplicialGComplex& x) {
    std::size_t n = x.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    if (x.dim() >= 1) {
        const auto& e = x.simplices(1);
        for (std::size_t i = 0; i < e.size(); ++i) {
            int a = find(e[i][0]), b = find(e[i][1]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    Components c;
    c.membership.assign(n, -1);
    std::vector<int> label(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
        int r = find(static_cast<int>(v));
        if (label[r] < 0) label[r] = c.count++;
        c.membership[v] = label[r];
    }
    return c;
}

std::vector<SimplicialGComplex> components_of(const SimplicialGComplex& x) {
    Components c = connected_components(x);
    if (c.count <= 1) return {x};
    std::vector<int> group(static_cast<std::size_t>(c.count), -1);
    int ng = 0;
    for (std::size_t v = 0; v < x.vertex_count(); ++v) {
        int a = c.membership[v], b = c.membership[x.involution()[v]];
        if (group[a] < 0) {
            group[a] = ng;
            if (group[b] < 0) group[b] = ng;
            ++ng;
        }
    }
    std::vector<std::vector<int>> verts(static_cast<std::size_t>(ng));
    for (std::size_t v = 0; v < x.vertex_count(); ++v) verts[group[c.membership[v]]].push_back(static_cast<int>(v));
    std::vector<SimplicialGComplex> out;
    for (auto& vs : verts) out.push_back(induced_subcomplex(x, vs));
    return out;
}

bool is_closed_surface(const SimplicialGComplex& x) {
    if (x.dim() != 2) return false;
    for (auto& m : x.maximal())
        if (m.size() != 3) return false;
    const auto& edges = x.simplices(1);
    const auto& tris = x.simplices(2);
    std::vector<int> edge_deg(edges.size(), 0);
    std::vector<std::vector<std::pair<int, int>>> link(x.vertex_count());
    for (std::size_t i = 0; i < tris.size(); ++i) {
        auto t = tris[i];
        for (int k = 0; k < 3; ++k) {
            std::vector<int> e;
            for (int l = 0; l < 3; ++l)
                if (l != k) e.push_back(t[l]);
            ++edge_deg[static_cast<std::size_t>(edges.find(e))];
            link[t[k]].push_back({e[0], e[1]});
        }
    }
    for (int d : edge_deg)
        if (d != 2) return false;
    for (auto& l : link) {
        if (l.empty()) return false;
        // Each link vertex has degree 2 already; check a single cycle.
        std::map<int, std::vector<int>> adj;
        for (auto [a, b] : l) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::set<int> seen;
        std::vector<int> stack{adj.begin()->first};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (!seen.insert(v).second) continue;
            for (int w : adj[v]) stack.push_back(w);
        }
        if (seen.size() != adj.size()) return false;
    }
    return true;
}

bool is_circle_union(const SimplicialGComplex& x) {
    if (x.vertex_count() == 0) return true;
    if (x.dim() != 1) return false;
    std::vector<int> deg(x.vertex_count(), 0);
    const auto& e = x.simplices(1);
    for (std::size_t i = 0; i < e.size(); ++i) {
        ++deg[e[i][0]];
        ++deg[e[i][1]];
    }
    return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; });
}

}  // namespace equiwitt
