#pragma once

#include <cstddef>
#include <vector>

#include "equiwitt/abelian.hpp"
#include "equiwitt/coeff.hpp"
#include "equiwitt/f2.hpp"
#include "equiwitt/gspace.hpp"

namespace equiwitt {

// One representative per sigma-orbit of simplices (the smaller index).
struct OrbitCells {
    struct Cell {
        std::size_t rep;
        bool fixed;  // sigma(rep) == rep as a set
        int sign;    // sign of sigma on rep when fixed
    };
    std::vector<std::vector<Cell>> cells;
    std::vector<std::vector<int>> orbit_of;  // simplex -> orbit
};

OrbitCells orbit_cells(const SimplicialGComplex& x);

// A cochain complex split into a lattice part and an F2 part (the latter
// stored with integer entries and read mod 2). Cohomology is the direct sum.
struct SplitComplex {
    CochainComplex lattice;
    CochainComplex f2;
    FGAbGroup cohomology(int q) const;
};

// Hom_G(C_*(X), M); orbit coordinates in the order of orbit_cells.
SplitComplex local_complex(const SimplicialGComplex& x, const GModule& m);
// Fixed cells carry M(pt), free orbits carry M(G). X must be regular.
SplitComplex bredon_complex(const SimplicialGComplex& x, const CoefficientSystem& s);
// Total complex of Hom(C_p(X), M) over resolution degrees k <= truncation.
// In total degree n the blocks (p, n - p) are stacked by ascending p, each
// holding count(p) * rank coordinates (simplex-major).
SplitComplex borel_complex(const SimplicialGComplex& x, const GModule& m, int truncation);

// H^q over F2 with a basis of cocycle representatives.
class F2Cohomology {
public:
    F2Cohomology(const CochainComplex& c, int q);

    std::size_t dim() const { return reps_.size(); }
    const std::vector<BitVec>& reps() const { return reps_; }
    std::size_t cochain_dim() const { return n_; }
    bool is_cocycle(const BitVec& z) const;
    // Coordinates of a cocycle in the representative basis.
    BitVec coords(const BitVec& z) const;

private:
    std::size_t n_;
    SparseIntMatrix next_;
    F2Basis basis_;
    std::size_t boundary_gens_ = 0;
    std::vector<long> gen_class_;
    std::vector<BitVec> reps_;
};

// H^q over Z with coordinates: H = Z^r (+) Z/d_i, coordinate i taken mod
// orders[i] (0 for a free coordinate).
class IntCohomology {
public:
    IntCohomology(const CochainComplex& c, int q);

    const FGAbGroup& group() const { return group_; }
    const std::vector<Integer>& orders() const { return orders_; }
    std::vector<Integer> coords(const std::vector<long long>& z) const;
    bool is_zero(const std::vector<long long>& z) const;
    // Positions of the coordinates whose order is even; a 2-torsion class
    // has coordinate 0 or order/2 there and 0 elsewhere.
    BitVec two_torsion_bits(const std::vector<long long>& z) const;
    std::size_t even_count() const;
    // Cocycle representatives, one column per coordinate.
    const IntMatrix& generators() const { return gens_; }

private:
    std::size_t n_;
    SparseIntMatrix next_;
    IntMatrix proj_, gens_;
    std::vector<Integer> orders_;
    FGAbGroup group_;
};

}  // namespace equiwitt
