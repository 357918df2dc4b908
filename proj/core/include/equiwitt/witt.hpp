#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equiwitt/abelian.hpp"
#include "equiwitt/gspace.hpp"

namespace equiwitt {

enum class DeltaStatus { not_applicable, zero, user_supplied, bounded_unknown };
std::string to_string(DeltaStatus d);

struct WittResult {
    bool resolved = true;
    FGAbGroup group;       // when resolved
    FGAbGroup sub, quot;   // when an extension
    DeltaStatus delta = DeltaStatus::not_applicable;
    FGAbGroup delta_group;  // the value, or the bound when unknown
    std::string provenance;
    std::vector<std::string> caveats;
    int nu = -1;

    static WittResult of(FGAbGroup g, std::string provenance, int nu = -1);
    // Group when resolved, otherwise "ext(sub -> ? -> quot)".
    std::string str() const;
    std::string to_json() const;  // indented, trailing newline
    static WittResult from_json(const std::string& text);
    bool operator==(const WittResult& o) const;
};

// Integer-valued Bredon-level data for spaces without a practical triangulation.
struct AbstractInvariants {
    std::string name;
    int dim = 0;  // real dimension of X
    int nu = 0;
    int h1 = 0;   // dim H^1(X/G; Z/2)
    std::optional<bool> minus_one_nonzero;
    std::optional<FGAbGroup> two_h3;  // 2H^3_G(X; Z(1))
    std::optional<IntMatrix> h2_involution;
    std::optional<FGAbGroup> hbar2;
    std::optional<int> rho0;
    std::optional<int> genus;
    std::optional<int> etale_j, etale_k, etale_l;
    bool g_times_y = false;  // X = G x Y with h1 = dim H^1(Y; Z/2)

    static AbstractInvariants from_json(const std::string& text);
    std::string to_json() const;
};

struct WittOptions {
    std::string name;  // key into the resolution table
    // d2 : H^1(X^G; Z/2) -> 2H^3_G(X; Z(1)) over F2, rows indexed by the even
    // invariant factors of H^3_G(X; Z(1)) in ascending order.
    std::optional<std::vector<std::vector<int>>> d2;
    std::map<std::string, FGAbGroup> resolutions;
};

WittResult wr(const SimplicialGComplex& x, const WittOptions& opt = {});
WittResult wr(const AbstractInvariants& inv, const WittOptions& opt = {});

// Individual evaluators; each checks its hypotheses.
FGAbGroup wr_dim1(const SimplicialGComplex& x);
FGAbGroup wr_surface(const SimplicialGComplex& x);
WittResult wr_fixed4(const SimplicialGComplex& x, const WittOptions& opt = {});
WittResult wr_free4(const SimplicialGComplex& x, const WittOptions& opt = {});
WittResult wr_free6(const SimplicialGComplex& x, const WittOptions& opt = {});
FGAbGroup wr_g_times_y(const SimplicialGComplex& y);
// KO(X) for the trivial action on a connected complex of dim <= 2.
FGAbGroup ko_low_dim(const SimplicialGComplex& x);
// 2-sphere whose fixed set is finite and nonempty.
FGAbGroup wr_two_sphere(const SimplicialGComplex& x);

// Formula cores shared by both pathways.
FGAbGroup graph_formula(int nu, int h1, bool minus_one_nonzero);
FGAbGroup surface_formula(int nu, int h1);
FGAbGroup g_times_y_formula(int h1, const FGAbGroup& hbar2);
// S^2 x S^2-type free involution resolved by the H^2 Comessatti type.
std::optional<FGAbGroup> trichotomy(const IntMatrix& h2_involution);

struct PicG {
    FGAbGroup group;
    int sign_rank = 0;  // rank of the sign map image in {+-1}^nu
    int nu = 0;
    bool sign_onto() const { return sign_rank == nu; }
};
PicG pic_g(const SimplicialGComplex& x);

struct SignatureLattice {
    int nu = 0;
    bool contains(const std::vector<long long>& v) const;
    int index_of_double() const { return 2; }  // [Gamma : 2 Z^nu]
    std::vector<long long> kernel_generator() const;  // (2, -1, ..., -1)
};
SignatureLattice signature_lattice(int nu);
std::vector<long long> rho(long long r, const std::vector<long long>& a);

FGAbGroup sujatha_witt(int nu, int j, int k, int l);

struct NoRealPointsResolution {
    int glued = 0;         // quotient Z/2 summands glued into Z/4 by sub elements
    int cyclic_order = 4;  // image of Z: 4, or 8 when the level is 4
};
WittResult w_no_real_points(int j, int k, std::optional<NoRealPointsResolution> res = std::nullopt);

struct Comparison {
    FGAbGroup kernel, cokernel;
};
Comparison compare_w_wr(int rho0, const FGAbGroup& st_mod_sa, const FGAbGroup& delta);

struct FundamentalReport {
    std::string verdict;  // "equal", "not equal", "inconclusive"
    std::string lhs, rhs;
    std::string detail;
};
FundamentalReport fundamental_check(const SimplicialGComplex& x);

}  // namespace equiwitt
