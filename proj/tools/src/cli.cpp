#include "equiwitt_cli/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "equiwitt/catalog.hpp"
#include "equiwitt/cohom.hpp"
#include "equiwitt/witt.hpp"

namespace equiwitt::cli {

using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json parse_json(const std::string& text, const std::string& what) {
    try {
        return ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw InputError("bad " + what + ": " + e.what());
    }
}

IntMatrix parse_matrix(const std::string& text) {
    ordered_json j = parse_json(text, "matrix");
    try {
        return IntMatrix::from_rows(j.get<std::vector<std::vector<long long>>>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad matrix: ") + e.what());
    }
}

std::pair<int, int> parse_degrees(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            int d = std::stoi(s);
            return {d, d};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw InputError("bad degree range '" + s + "', expected A..B");
    }
}

std::string group_json(const FGAbGroup& g) {
    ordered_json j;
    j["free_rank"] = g.free_rank();
    std::vector<std::string> t;
    for (auto& f : g.invariant_factors()) t.push_back(f.str());
    j["torsion"] = t;
    return j.dump();
}

ordered_json group_obj(const FGAbGroup& g) { return ordered_json::parse(group_json(g)); }

struct Source {
    std::string space, invariants, catalog;

    int count() const { return !space.empty() + !invariants.empty() + !catalog.empty(); }
};

SimplicialGComplex load_space(const Source& s) {
    if (!s.space.empty()) return SimplicialGComplex::from_json(read_file(s.space));
    return build_space(s.catalog);
}

std::map<std::string, FGAbGroup> load_resolutions(const std::string& path) {
    std::map<std::string, FGAbGroup> t = resolution_table();
    if (path.empty()) return t;
    ordered_json j = parse_json(read_file(path), "resolution table");
    if (!j.is_object()) throw InputError("resolution table must be an object {name: group}");
    for (auto& [k, v] : j.items()) t[k] = FGAbGroup::parse(v.get<std::string>());
    return t;
}

std::vector<std::vector<int>> load_d2(const std::string& path) {
    ordered_json j = parse_json(read_file(path), "d2 file");
    if (j.is_object()) j = j.at("d2");
    try {
        return j.get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad d2 matrix: ") + e.what());
    }
}

std::string comessatti_str(const Comessatti& c) {
    return "(a,b,c)=(" + std::to_string(c.a) + "," + std::to_string(c.b) + "," + std::to_string(c.c) + ")";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equivariant cohomology and Witt groups of spaces with involution", "equiwitt"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "JSON output");

    Source src;
    std::string theory = "ordinary", system = "Z", degrees = "0..0", d2_path, resolve_path, output, matrix, name;
    bool all = false;
    std::string junit;

    auto add_source = [&](CLI::App* c, bool invariants) {
        c->add_option("--space", src.space, "space JSON file");
        if (invariants) c->add_option("--invariants", src.invariants, "abstract invariants JSON file");
        c->add_option("--catalog", src.catalog, "catalog entry name");
        c->add_flag("--json", json, "JSON output");
    };

    CLI::App* cohom = app.add_subcommand("cohom", "cohomology groups");
    add_source(cohom, false);
    cohom->add_option("--theory", theory, "ordinary, local, bredon or borel");
    cohom->add_option("--system,--module", system, "coefficient module or system, e.g. Z(1), KO_G(0)");
    cohom->add_option("--degrees", degrees, "degree range A..B");

    CLI::App* witt = app.add_subcommand("witt", "WR(X) or W(V)");
    add_source(witt, true);
    witt->add_option("--d2", d2_path, "F2 matrix of the differential used for Delta");
    witt->add_option("--resolve", resolve_path, "JSON table of extension resolutions");

    CLI::App* cat = app.add_subcommand("catalog", "catalog entries");
    cat->require_subcommand(1);
    CLI::App* cat_list = cat->add_subcommand("list", "list entries");
    cat_list->add_flag("--json", json, "JSON output");
    CLI::App* cat_build = cat->add_subcommand("build", "write an entry as JSON");
    cat_build->add_option("name", name, "entry name")->required();
    cat_build->add_option("-o,--output", output, "output file");

    CLI::App* ver = app.add_subcommand("verify", "recompute catalog entries");
    ver->add_flag("--all", all, "every entry");
    ver->add_option("--catalog,--name", name, "one entry");
    ver->add_option("--junit", junit, "JUnit XML report");
    ver->add_flag("--json", json, "JSON output");

    CLI::App* dec = app.add_subcommand("decompose-involution", "Z^a + Z(1)^b + Z[G]^c type of a lattice involution");
    dec->add_option("--matrix", matrix, "integer matrix as JSON rows")->required();
    dec->add_flag("--json", json, "JSON output");

    CLI::App* tate = app.add_subcommand("tate", "Tate cohomology of a lattice involution");
    tate->add_option("--matrix", matrix, "integer matrix as JSON rows")->required();
    tate->add_flag("--json", json, "JSON output");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*cohom) {
            if (src.count() != 1) throw InputError("cohom needs exactly one of --space or --catalog");
            SimplicialGComplex x = load_space(src);
            CohomologyRequest r;
            r.theory = parse_theory(theory);
            if (r.theory == Theory::bredon)
                r.system = parse_system(system);
            else
                r.module = standard_gmodule(system);
            std::tie(r.lo, r.hi) = parse_degrees(degrees);
            if (r.lo < 0 || r.hi < r.lo) throw InputError("degree range must satisfy 0 <= A <= B");
            auto groups = compute(x, r);
            if (json) {
                ordered_json j = ordered_json::object();
                for (auto& [q, g] : groups) j[std::to_string(q)] = group_obj(g);
                out << j.dump(2) << "\n";
            } else {
                for (auto& [q, g] : groups) out << "H^" << q << " = " << g.str() << "\n";
            }
            return 0;
        }
        if (*witt) {
            if (src.count() != 1) throw InputError("witt needs exactly one of --space, --invariants or --catalog");
            WittOptions opt;
            opt.resolutions = load_resolutions(resolve_path);
            if (!d2_path.empty()) opt.d2 = load_d2(d2_path);
            WittResult r;
            if (!src.catalog.empty()) {
                const CatalogEntry& e = catalog_entry(src.catalog);
                if (!d2_path.empty() || !resolve_path.empty()) {
                    opt.name = e.name;
                    if (e.pathway == Pathway::simplicial)
                        r = wr(build_space(e.name), opt);
                    else
                        r = wr(build_invariants(e.name), opt);
                } else {
                    r = evaluate(e.name);
                }
            } else if (!src.space.empty()) {
                r = wr(SimplicialGComplex::from_json(read_file(src.space)), opt);
            } else {
                AbstractInvariants a = AbstractInvariants::from_json(read_file(src.invariants));
                r = wr(a, opt);
            }
            if (json)
                out << r.to_json();
            else
                out << r.str() << "\n";
            return 0;
        }
        if (*cat) {
            if (*cat_list) {
                if (json) {
                    ordered_json j = ordered_json::array();
                    for (auto& e : catalog()) {
                        ordered_json o;
                        o["name"] = e.name;
                        o["pathway"] = e.pathway == Pathway::simplicial ? "simplicial" : "abstract";
                        if (e.witt) o["witt"] = e.witt->str();
                        o["citation"] = e.citation;
                        o["basis"] = e.basis;
                        j.push_back(o);
                    }
                    out << j.dump(2) << "\n";
                } else {
                    std::size_t w = 0;
                    for (auto& e : catalog()) w = std::max(w, e.name.size());
                    for (auto& e : catalog())
                        out << std::left << std::setw(static_cast<int>(w) + 2) << e.name << std::setw(12)
                            << (e.pathway == Pathway::simplicial ? "simplicial" : "abstract")
                            << (e.witt ? e.witt->str() : std::string("-")) << "\n";
                }
                return 0;
            }
            std::string text = build_json(name);
            if (output.empty()) {
                out << text;
            } else {
                std::ofstream f(output, std::ios::binary);
                if (!f) throw InputError("cannot write '" + output + "'");
                f << text;
            }
            return 0;
        }
        if (*ver) {
            if (all == !name.empty()) throw InputError("verify needs exactly one of --all or --catalog NAME");
            std::vector<VerifyReport> reps = all ? verify_all() : std::vector<VerifyReport>{verify(name)};
            bool ok = true;
            for (auto& r : reps) {
                ok = ok && r.passed;
                if (!json) {
                    out << (r.passed ? "PASS " : "FAIL ") << r.name << "\n";
                    for (auto& f : r.failures) out << "  " << f << "\n";
                }
            }
            if (json) {
                ordered_json j = ordered_json::array();
                for (auto& r : reps) j.push_back({{"name", r.name}, {"passed", r.passed}, {"failures", r.failures},
                                                  {"notes", r.notes}, {"subdivision_checked", r.subdivision_checked}});
                out << j.dump(2) << "\n";
            }
            if (!junit.empty()) {
                std::ofstream f(junit, std::ios::binary);
                if (!f) throw InputError("cannot write '" + junit + "'");
                f << junit_xml(reps);
            }
            return ok ? 0 : 1;
        }
        if (*dec) {
            Comessatti c = comessatti_decompose(InvolutionModule{parse_matrix(matrix)});
            if (json)
                out << ordered_json{{"a", c.a}, {"b", c.b}, {"c", c.c}}.dump() << "\n";
            else
                out << comessatti_str(c) << "\n";
            return 0;
        }
        if (*tate) {
            TateGroups t = tate_cohomology(InvolutionModule{parse_matrix(matrix)});
            if (json)
                out << ordered_json{{"even", group_obj(t.even)}, {"odd", group_obj(t.odd)}}.dump() << "\n";
            else
                out << "H^even = " << t.even.str() << "\nH^odd = " << t.odd.str() << "\n";
            return 0;
        }
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace equiwitt::cli
