#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "equiwitt/abelian.hpp"

namespace equiwitt {

using F2Matrix = std::vector<std::vector<int>>;

// Lattice part (Z^n with an integral involution) plus an elementary
// 2-group part (F2^m with an involution over F2). The two parts are
// preserved separately by the action.
struct GModule {
    std::string name;
    IntMatrix sigma;
    F2Matrix sigma2;

    std::size_t rank() const { return sigma.rows(); }
    std::size_t f2_dim() const { return sigma2.size(); }
    bool is_zero() const { return rank() == 0 && f2_dim() == 0; }
    void check() const;
    bool operator==(const GModule& o) const { return sigma == o.sigma && sigma2 == o.sigma2; }
};

// Tags: Z, Z1 or Z(1), ZG or Z[G], Z2 or Z/2. Sums with '+', e.g. "Z+Z(1)".
GModule standard_gmodule(std::string_view tag);
GModule direct_sum(const GModule& a, const GModule& b);

// M(pt) -a-> M(G) with an involution on M(G) fixing the image of a.
// Lattice and 2-torsion parts are kept apart; a has no cross terms.
struct CoefficientSystem {
    std::string name;
    std::size_t pt_rank = 0;  // M(pt) lattice rank
    IntMatrix sigma;          // M(G) lattice involution
    IntMatrix a;              // rank(M_G) x pt_rank
    std::size_t pt_dim2 = 0;  // M(pt) F2 dimension
    F2Matrix sigma2;          // M(G) F2 involution
    F2Matrix a2;              // f2_dim(M_G) x pt_dim2

    std::size_t g_rank() const { return sigma.rows(); }
    std::size_t g_dim2() const { return sigma2.size(); }
    bool is_zero() const { return pt_rank == 0 && pt_dim2 == 0 && g_rank() == 0 && g_dim2() == 0; }
    void check() const;
    std::string describe() const;
    bool operator==(const CoefficientSystem& o) const {
        return pt_rank == o.pt_rank && sigma == o.sigma && a == o.a && pt_dim2 == o.pt_dim2 &&
               sigma2 == o.sigma2 && a2 == o.a2;
    }
};

CoefficientSystem direct_sum(const CoefficientSystem& x, const CoefficientSystem& y);

// KO^q(pt) for q mod 8: Z, Z/2, Z/2, 0, Z, 0, 0, 0 at q = 0, -1, ..., -7.
FGAbGroup ko_point(int q);

CoefficientSystem ko_g_system(int q);
CoefficientSystem kr_system(int q);
// A(0) -> A with identity; A must carry the trivial action.
CoefficientSystem constant_system(std::string_view tag);
// 0 -> M
CoefficientSystem relative_system(std::string_view tag);
// A -> 0
CoefficientSystem point_system(std::string_view tag);

// "KO_G(q)", "KR(q)", "const(A)", "rel(M)", "pt(A)".
CoefficientSystem parse_system(std::string_view text);

}  // namespace equiwitt
