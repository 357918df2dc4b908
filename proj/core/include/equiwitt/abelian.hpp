#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace equiwitt {

using Integer = boost::multiprecision::cpp_int;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or contradictory input (CLI exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

// Raised by the checked 64-bit kernels; callers restart in cpp_int.
struct Overflow {};

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix transpose() const;
    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const IntMatrix& o) const = default;

    std::string str() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Integer> a_;
};

Integer determinant(const IntMatrix& a);

// Row-major sparse matrix with small (int64) entries; the shape of every
// boundary and coboundary matrix in the library.
class SparseIntMatrix {
public:
    struct Entry {
        int col;
        long long val;
        bool operator==(const Entry&) const = default;
    };

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const;

    // Accumulates; zero results are dropped by finalize().
    void add(std::size_t i, std::size_t j, long long v);
    void finalize();

    const std::vector<Entry>& row(std::size_t i) const { return rows_[i]; }
    std::vector<Entry>& row_mut(std::size_t i) { return rows_[i]; }

    IntMatrix to_dense() const;
    static SparseIntMatrix from_dense(const IntMatrix& m);
    SparseIntMatrix transpose() const;
    SparseIntMatrix operator*(const SparseIntMatrix& o) const;
    SparseIntMatrix mod2() const;
    bool is_zero() const;
    std::vector<long long> apply(const std::vector<long long>& x) const;

private:
    std::size_t cols_ = 0;
    std::vector<std::vector<Entry>> rows_;
};

struct SmithForm {
    IntMatrix U, D, V;
    // Filled only when requested.
    IntMatrix U_inv, V_inv;
    std::vector<Integer> diagonal;  // nonzero diagonal entries d1 | d2 | ...
    std::size_t rank() const { return diagonal.size(); }
};

// D = U*A*V with U, V unimodular and d1 | d2 | ... on the diagonal.
// Pivot: smallest nonzero |a_ij|, ties broken by the Markowitz count
// (r_i - 1)(c_j - 1), then by position. Runs in checked int64 and restarts
// in cpp_int on overflow.
SmithForm smith_normal_form(const IntMatrix& a, bool with_inverses = false);

struct InvariantFactors {
    std::size_t rank = 0;
    std::vector<Integer> nonunit;  // factors > 1, ascending by divisibility
};

InvariantFactors invariant_factors(const IntMatrix& a);
InvariantFactors invariant_factors(const SparseIntMatrix& a);
std::size_t rank_mod2(const SparseIntMatrix& a);

class FGAbGroup {
public:
    FGAbGroup() = default;
    // Orders are arbitrary cyclic orders: 0 means Z, 1 is dropped.
    FGAbGroup(int free_rank, const std::vector<Integer>& cyclic_orders);

    static FGAbGroup trivial() { return {}; }
    static FGAbGroup free(int r) { return FGAbGroup(r, {}); }
    static FGAbGroup cyclic(const Integer& n);
    static FGAbGroup elementary(int m, int p = 2);
    // Accepts the canonical rendering plus "(Z/d)^n" and "+" separators.
    static FGAbGroup parse(std::string_view text);

    int free_rank() const { return free_rank_; }
    const std::vector<Integer>& invariant_factors() const { return factors_; }
    bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }
    Integer torsion_order() const;
    Integer exponent() const;  // of the torsion subgroup; 1 if torsion-free
    int count_even() const;
    bool annihilated_by(const Integer& n) const;

    // "Z^r (+) Z/d1 (+) Z/d2 ...", "0" for the trivial group.
    std::string str() const;

    bool operator==(const FGAbGroup& o) const = default;

private:
    int free_rank_ = 0;
    std::vector<Integer> factors_;
};

FGAbGroup direct_sum(const FGAbGroup& a, const FGAbGroup& b);
FGAbGroup two_torsion(const FGAbGroup& a);
FGAbGroup cokernel(const IntMatrix& a);
FGAbGroup cokernel(const SparseIntMatrix& a);

struct InvolutionModule {
    IntMatrix sigma;
    std::size_t rank() const { return sigma.rows(); }
    void check() const;
};

// Finite elementary 2-group with an involution, given over F2.
struct F2InvolutionModule {
    std::vector<std::vector<int>> sigma;
    std::size_t dim() const { return sigma.size(); }
};

struct TateGroups {
    FGAbGroup even, odd;
};

TateGroups tate_cohomology(const InvolutionModule& m);
TateGroups tate_cohomology(const F2InvolutionModule& m);

struct Comessatti {
    int a = 0, b = 0, c = 0;
    bool operator==(const Comessatti&) const = default;
};

Comessatti comessatti_decompose(const InvolutionModule& m);

// Saturated basis of ker(A) as columns, and a left inverse mapping
// kernel vectors to coordinates.
struct KernelBasis {
    IntMatrix basis;     // n x k
    IntMatrix left_inv;  // k x n, left_inv * basis = I
};
KernelBasis integer_kernel(const IntMatrix& a);

// Chain complexes. boundary[q] : C_q -> C_{q-1}, shape n_{q-1} x n_q.
struct ChainComplex {
    std::vector<std::size_t> sizes;
    std::vector<SparseIntMatrix> boundary;  // boundary[0] is 0 x n_0
    void validate() const;
};

struct SignedPermutation {
    std::vector<int> image;
    std::vector<int> sign;
    IntMatrix to_matrix() const;
};

struct ChainComplexZG {
    ChainComplex chains;
    std::vector<SignedPermutation> sigma;
    void validate() const;
};

// coboundary[q] : C^q -> C^{q+1}, shape n_{q+1} x n_q.
struct CochainComplex {
    std::vector<std::size_t> sizes;
    std::vector<SparseIntMatrix> coboundary;
    void validate() const;
};

CochainComplex dual(const ChainComplex& c);

FGAbGroup homology(const ChainComplex& c, int q);
FGAbGroup cohomology(const CochainComplex& c, int q);
std::size_t cohomology_dim_mod2(const CochainComplex& c, int q);

}  // namespace equiwitt
