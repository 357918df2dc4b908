#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equiwitt/abelian.hpp"
#include "equiwitt/cochains.hpp"
#include "equiwitt/coeff.hpp"
#include "equiwitt/gspace.hpp"

namespace equiwitt {

enum class Theory { ordinary, local, bredon, borel };
Theory parse_theory(const std::string& s);
std::string to_string(Theory t);

// Module or system per theory: ordinary/local/borel read `module`, bredon
// reads `system`. Ordinary cohomology ignores the action.
struct CohomologyRequest {
    Theory theory = Theory::ordinary;
    GModule module = standard_gmodule("Z");
    CoefficientSystem system;
    int lo = 0, hi = 0;
};

std::map<int, FGAbGroup> compute(const SimplicialGComplex& x, const CohomologyRequest& req);

FGAbGroup ordinary_cohomology(const SimplicialGComplex& x, const GModule& m, int q);
FGAbGroup local_cohomology(const SimplicialGComplex& x, const GModule& m, int q);
FGAbGroup bredon_cohomology(const SimplicialGComplex& x, const CoefficientSystem& s, int q);
// Truncation defaults to q + 2.
FGAbGroup borel_cohomology(const SimplicialGComplex& x, const GModule& m, int q, int truncation = -1);

// Mod 2 or integral cochain on the orbit complex of X (one coordinate per
// simplex orbit; X/G when X is regular).
struct CohomClass {
    int degree = 0;
    std::vector<long long> cochain;
    std::string coefficients;  // "Z/2", "Z", "Z(1)"
};

// Orbit cochain complexes used for representatives. Twisted needs a free action.
CochainComplex orbit_complex(const SimplicialGComplex& x, const std::string& coefficients);

struct MinusOneClass {
    CohomClass cls;
    bool defined = false;  // false when the action has fixed points
    bool nonzero = false;
};
MinusOneClass minus_one_class(const SimplicialGComplex& x);

// Alexander-Whitney product of mod 2 orbit cochains. Needs the involution to
// preserve the vertex order on every simplex (see orbit_lex_order).
CohomClass cup_mod2(const SimplicialGComplex& x, const CohomClass& u, const CohomClass& v);
CohomClass sq2_degree2(const SimplicialGComplex& x, const CohomClass& u);
// Lift to 0/1 values, apply the integral coboundary, divide by 2.
CohomClass bockstein_integral(const SimplicialGComplex& x, const CohomClass& u, const std::string& twist);

bool is_zero_class(const SimplicialGComplex& x, const CohomClass& c);

// H^q basis of mod 2 classes on the orbit complex.
std::vector<CohomClass> mod2_basis(const SimplicialGComplex& x, int q);

// Kernel of u -> beta(u u) from the image of beta in 2H^3.
FGAbGroup hbar2(const SimplicialGComplex& y);
FGAbGroup hbar2_g(const SimplicialGComplex& x);

// Action of sigma^* on H^q(X; Z) modulo torsion, in the basis of free
// generators.
IntMatrix cohomology_involution(const SimplicialGComplex& x, int q);

// dim coker(H^2_G(X; Z(1)) -> H^2(X/G; Z/2)), the reduction mod 2 followed by
// forgetting X^G. nullopt when H^3_G(X; Z(1)) has a cyclic factor of order
// divisible by 4 (the mod 2 Bockstein no longer detects the image there).
std::optional<int> reduction_cokernel_dim(const SimplicialGComplex& x);

// Small invariants used by the Witt evaluators.
int fixed_components(const SimplicialGComplex& x);          // nu
int quotient_h1_mod2(const SimplicialGComplex& x);          // dim H^1(X/G; Z/2)
FGAbGroup two_h3_twisted(const SimplicialGComplex& x);      // 2H^3_G(X; Z(1))

// Regular, orbit-separated and order-preserving copy of X: one barycentric
// subdivision when needed, then orbit_lex_order.
SimplicialGComplex prepared(const SimplicialGComplex& x);

}  // namespace equiwitt
