#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equiwitt/gspace.hpp"
#include "equiwitt/witt.hpp"

namespace equiwitt {

enum class Pathway { simplicial, abstract };

// One cohomology value to check: theory, coefficients, degree, group.
struct CohomExpectation {
    std::string theory;        // ordinary, local, bredon, borel
    std::string coefficients;  // module tag or coefficient system
    int degree = 0;
    FGAbGroup value;
};

struct CatalogEntry {
    std::string name;
    Pathway pathway = Pathway::simplicial;
    std::string builder_json;  // builder tree (simplicial) or invariants/formula (abstract)
    std::optional<FGAbGroup> witt;          // resolved value
    std::optional<std::string> witt_str;    // unresolved value as printed by WittResult::str
    std::optional<int> nu, h1;
    std::optional<FGAbGroup> two_h3, hbar2;
    std::optional<Comessatti> h2_type;
    std::vector<CohomExpectation> cohomology;
    std::string citation;
    std::string basis;  // published, derived, elementary
    std::optional<FGAbGroup> resolution;  // entry in the resolution table
    bool subdivide_in_verify = true;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);  // InputError when unknown
std::vector<std::string> catalog_names();

SimplicialGComplex build_space(const std::string& name);
AbstractInvariants build_invariants(const std::string& name);
// Simplicial model as JSON or the abstract invariants JSON.
std::string build_json(const std::string& name);

// Resolutions of extensions that are settled by hand, keyed by entry name.
std::map<std::string, FGAbGroup> resolution_table();

// Evaluates a catalog entry: wr on the model or the invariants, or the
// formula named in the entry.
WittResult evaluate(const std::string& name);

struct VerifyReport {
    std::string name;
    bool passed = true;
    bool subdivision_checked = false;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    double seconds = 0;
};

VerifyReport verify(const std::string& name);
std::vector<VerifyReport> verify_all();
std::string junit_xml(const std::vector<VerifyReport>& reports);

}  // namespace equiwitt
