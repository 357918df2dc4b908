#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equiwitt/abelian.hpp"

namespace equiwitt {

using Simplex = std::vector<int>;

// All simplices of one dimension, vertex lists ascending, rows sorted
// lexicographically; lookup by binary search.
class SimplexTable {
public:
    SimplexTable() = default;
    SimplexTable(int dim, std::vector<int> flat);  // flat rows must be sorted and unique

    int dim() const { return dim_; }
    std::size_t size() const { return dim_ < 0 ? 0 : data_.size() / static_cast<std::size_t>(dim_ + 1); }
    std::span<const int> operator[](std::size_t i) const {
        return {data_.data() + i * static_cast<std::size_t>(dim_ + 1), static_cast<std::size_t>(dim_ + 1)};
    }
    // Index of the simplex, or -1.
    long find(std::span<const int> s) const;

private:
    int dim_ = -1;
    std::vector<int> data_;
};

// Cap on total cells; EQUIWITT_MAX_CELLS overrides.
std::size_t max_cells();

class SimplicialGComplex {
public:
    SimplicialGComplex() = default;
    // Vertices are indexed in the given order, which fixes orientations.
    // involution[v] is the image of vertex v.
    SimplicialGComplex(std::vector<std::string> names, std::vector<int> involution, std::vector<Simplex> maximal);

    static SimplicialGComplex with_trivial_action(std::vector<std::string> names, std::vector<Simplex> maximal);
    static SimplicialGComplex from_json(const std::string& text);
    std::string to_json() const;

    std::size_t vertex_count() const { return names_.size(); }
    int dim() const { return static_cast<int>(tables_.size()) - 1; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& involution() const { return inv_; }
    const std::vector<Simplex>& maximal() const { return maximal_; }

    const SimplexTable& simplices(int d) const { return tables_.at(static_cast<std::size_t>(d)); }
    std::size_t count(int d) const { return d < 0 || d > dim() ? 0 : tables_[d].size(); }
    std::size_t total_cells() const;
    std::vector<std::size_t> f_vector() const;

    // Index of sigma(s) and the sign of sigma restricted to s as a map of
    // oriented simplices.
    int sigma_index(int d, std::size_t i) const { return sig_idx_[d][i]; }
    int sigma_sign(int d, std::size_t i) const { return sig_sgn_[d][i]; }
    // Pointwise fixed simplex.
    bool fixed_pointwise(int d, std::size_t i) const;

    bool trivial_action() const;
    bool is_free() const;  // no simplex is mapped to itself
    long euler_characteristic() const;

    bool operator==(const SimplicialGComplex& o) const {
        return names_ == o.names_ && inv_ == o.inv_ && maximal_ == o.maximal_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> inv_;
    std::vector<Simplex> maximal_;
    std::vector<SimplexTable> tables_;
    std::vector<std::vector<int>> sig_idx_, sig_sgn_;

    void build();
};

struct RegularityReport {
    bool is_regular = false;
    bool quotient_ok = false;
    // No simplex contains two distinct vertices of one orbit.
    bool orbit_separated = false;
    bool is_free = false;
    std::string detail;
};

RegularityReport validate(const SimplicialGComplex& x);

SimplicialGComplex barycentric_subdivide(const SimplicialGComplex& x);

struct Subdivided {
    SimplicialGComplex complex;
    int rounds = 0;
};
// At most two rounds; the postcondition is checked.
Subdivided subdivide_until_quotient_ok(const SimplicialGComplex& x);

// Reorders vertices by (orbit representative, sheet) so the involution
// preserves the vertex order inside every simplex. Needs orbit separation.
SimplicialGComplex orbit_lex_order(const SimplicialGComplex& x);

SimplicialGComplex fixed_subcomplex(const SimplicialGComplex& x);

struct QuotientResult {
    SimplicialGComplex complex;  // trivial action
    std::vector<int> vertex_map;  // vertex of X -> vertex of X/G
};
QuotientResult quotient(const SimplicialGComplex& x);

SimplicialGComplex product(const SimplicialGComplex& x, const SimplicialGComplex& y);
SimplicialGComplex join(const SimplicialGComplex& x, const SimplicialGComplex& y);
SimplicialGComplex disjoint_union(const SimplicialGComplex& x, const SimplicialGComplex& y);
SimplicialGComplex sphere(int p, int q);

// The complex of G-orbits of components as separate complexes.
std::vector<SimplicialGComplex> components_of(const SimplicialGComplex& x);
SimplicialGComplex induced_subcomplex(const SimplicialGComplex& x, const std::vector<int>& vertices);

ChainComplexZG chain_complex(const SimplicialGComplex& x);

struct Components {
    int count = 0;
    std::vector<int> membership;  // per vertex
};
Components connected_components(const SimplicialGComplex& x);

// Every edge in exactly two triangles, vertex links are circles, pure dim 2.
bool is_closed_surface(const SimplicialGComplex& x);
// Disjoint union of circles (possibly empty): every vertex has degree 2.
bool is_circle_union(const SimplicialGComplex& x);

}  // namespace equiwitt
