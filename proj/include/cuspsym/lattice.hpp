#pragma once

// Exact integer linear algebra: Smith normal form, cokernels of integer
// matrices, class groups of quotient-cusp germs, fundamental groups of
// complements N / <v_1, ..., v_p>, and smooth toric fans from boundary cycles.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cuspsym/cycle.hpp"
#include "cuspsym/hyperbolic.hpp"

namespace cuspsym {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row_i += k * row_j
    void add_row_multiple(std::size_t i, std::size_t j, const BigInt& k);
    // col_i += k * col_j
    void add_col_multiple(std::size_t i, std::size_t j, const BigInt& k);
    void negate_row(std::size_t i);

    IntMatrix permuted(const std::vector<std::size_t>& row_order, const std::vector<std::size_t>& col_order) const;

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> data_;
};

std::string to_string(const IntMatrix& m);

// Determinant by fraction-free elimination; square matrices only.
BigInt determinant(const IntMatrix& m);

struct SmithForm {
    IntMatrix U, S, V;  // S = U * M * V
    std::size_t rank = 0;
    std::vector<BigInt> diagonal() const;
};

// Pivot: smallest nonzero absolute value in the active block, ties broken by
// row-major position. Checks S = U*M*V, unimodularity and the divisibility chain
// before returning and throws std::logic_error if any fails.
SmithForm smith_normal_form(const IntMatrix& m);

struct FinAbGroup {
    std::size_t free_rank = 0;
    std::vector<BigInt> invariant_factors;  // each >= 2, d_1 | d_2 | ...

    bool trivial() const noexcept { return free_rank == 0 && invariant_factors.empty(); }
    BigInt torsion_order() const;
    friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
};

// "Z^3 x Z/2 x Z/2", "Z" for free rank one, "0" for the trivial group.
std::string to_string(const FinAbGroup& g);

// Z^rows / (column span of m).
FinAbGroup cokernel(const IntMatrix& m);

// Z^{k+4} / Q Z^4 where Q records the intersections of the four (-2)-forks
// with every vertex of the graph.
IntMatrix fork_intersection_matrix(const QuotientGraph& g);
FinAbGroup class_group_of_quotient(const QuotientGraph& g);

struct Pi1Result {
    FinAbGroup group;
    bool no_rays = false;  // empty input: free rank 2, reported rather than rejected
};

// N / <rays>. Rays must be primitive vectors of Z^2.
Pi1Result pi1_complement(const std::vector<LatticeVec>& rays);

// "1,1;-1,1;-1,-1;1,-1"
std::vector<LatticeVec> parse_rays(const std::string& text);

// Rays v_0..v_{n-1} of the smooth complete fan with boundary cycle d, seeded by
// v_0 = (1,0), v_1 = (0,1) and v_{i+1} = d_i v_i - v_{i-1}. Ray i belongs to the
// component with entry d_i. Empty when the recursion does not close after one
// counterclockwise turn.
std::optional<std::vector<LatticeVec>> fan_from_cycle(const CycleWord& d);

// Sorts rays counterclockwise starting from the positive x-axis.
std::vector<LatticeVec> order_counterclockwise(std::vector<LatticeVec> rays);

// Normal form of a cyclically ordered smooth fan under GL(2,Z) and relabelling:
// for each starting ray and each orientation, map the first two rays to the
// standard basis; keep the lexicographically least image. Throws InvalidInput
// if some consecutive pair is not a lattice basis.
std::vector<LatticeVec> fan_normal_form(const std::vector<LatticeVec>& cyclic_rays);
bool fans_equivalent(const std::vector<LatticeVec>& a, const std::vector<LatticeVec>& b);

}  // namespace cuspsym
