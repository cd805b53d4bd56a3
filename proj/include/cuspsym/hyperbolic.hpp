#pragma once

// Integer 2x2 data of the Hirzebruch quotient construction: the monodromy
// matrix A of a cusp cycle, the involution matrix B of a symmetric cusp, the
// boundary lattice vectors v_i and the admissible translation classes.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cuspsym/cycle.hpp"

namespace cuspsym {

// Row-major [[a, b], [c, d]]. Arithmetic throws std::overflow_error instead of
// wrapping.
struct Mat2Z {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    static Mat2Z identity() { return {}; }
    static Mat2Z companion(std::int64_t e) { return {0, -1, 1, e}; }

    std::int64_t det() const;
    std::int64_t trace() const;
    // Exact inverse; requires det = +-1.
    Mat2Z inverse() const;

    friend Mat2Z operator*(const Mat2Z& x, const Mat2Z& y);
    friend bool operator==(const Mat2Z&, const Mat2Z&) = default;
};

struct LatticeVec {
    std::int64_t x = 0, y = 0;
    friend bool operator==(const LatticeVec&, const LatticeVec&) = default;
    friend auto operator<=>(const LatticeVec&, const LatticeVec&) = default;
};

LatticeVec operator*(const Mat2Z& m, const LatticeVec& v);
LatticeVec operator+(const LatticeVec& u, const LatticeVec& v);
LatticeVec operator-(const LatticeVec& u, const LatticeVec& v);
LatticeVec operator*(std::int64_t k, const LatticeVec& v);

std::string to_string(const Mat2Z& m);   // "[[a,b],[c,d]]"
std::string to_string(const LatticeVec& v); // "(x,y)"

// Element of (Z/2)^2, each coordinate 0 or 1.
using Mod2Vec = std::array<int, 2>;

Mod2Vec reduce_mod2(const LatticeVec& v);

// Product of companion factors [[0,-1],[1,e]] over the word read from
// c[start], c[start+1], ... cyclically.
Mat2Z matrix_of_cycle(const CycleWord& c, std::size_t start = 0);

// |trace| > 2. Throws InvalidInput unless det(m) = 1.
bool is_hyperbolic(const Mat2Z& m);

bool check_identity_mod2(const Mat2Z& m);

// v_0 = (1,0), v_1 = (0,1), v_{i+1} = w_{i-1} v_i - v_{i-1} where w is the word
// read from c[start]; so w_{n-1} plays the role of e_0 = e_n. Returns
// v_0 .. v_{count-1}.
std::vector<LatticeVec> boundary_lattice_vectors(const CycleWord& c, std::size_t count, std::size_t start = 0);

struct InvolutionDatum {
    CycleWord word;        // cycle read so that the last entry is a fixed component
    std::size_t start = 0; // index of word[0] in the input cycle
    Mat2Z A;
    Mat2Z B;
    Mod2Vec u0_mod2{};
    Mod2Vec u_half_mod2{};
    // Classes of 2t in the (v_0, v_1) basis, lexicographic order.
    std::vector<Mod2Vec> t_candidates;
    // The same classes in the (v_0, u_0) eigenbasis of B.
    std::vector<Mod2Vec> t_candidates_eigen;
};

// Labels the word so that it ends at the larger fixed index of the axis and
// builds A, B and the translation classes.
InvolutionDatum build_involution_datum(const SymmetricStructure& s);

// Coordinates in the (v_0, u_0) basis of a class given in the (v_0, v_1) basis,
// where u_0 = -(e_n/2) v_0 + v_1.
Mod2Vec to_eigenbasis_mod2(const Mod2Vec& t, std::int64_t e_n);

}  // namespace cuspsym
