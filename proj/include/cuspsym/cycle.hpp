#pragma once

// Cycles of integers (e_1, ..., e_n) describing cusp resolutions and
// anticanonical boundary cycles, together with the combinatorics that act on
// them: validation, duality, dihedral symmetry and the resolution graph of the
// Z/2 quotient.
//
// Indices are 0-based throughout. A cycle written (e_1, ..., e_n) with the
// fixed components labelled n/2 and n is stored so that entry e_k lives at
// index k-1; the fixed components then sit at indices n/2-1 and n-1.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace cuspsym {

using Entry = std::int64_t;

// Cyclic word of integers. Entry i is the negated self-intersection of the
// i-th component. No cusp axioms are enforced here; see validate_cusp().
class CycleWord {
public:
    CycleWord() = default;
    explicit CycleWord(std::vector<Entry> entries);
    CycleWord(std::initializer_list<Entry> entries);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::vector<Entry>& entries() const noexcept { return entries_; }

    Entry operator[](std::size_t i) const { return entries_[i]; }
    // Cyclic access; any integer index is reduced modulo size().
    Entry at_cyclic(std::int64_t i) const;

    Entry sum() const noexcept;
    Entry max_entry() const;

    CycleWord rotated(std::size_t start) const;
    CycleWord reversed() const;

    friend bool operator==(const CycleWord&, const CycleWord&) = default;
    friend auto operator<=>(const CycleWord&, const CycleWord&) = default;

private:
    std::vector<Entry> entries_;
};

// "(3,10,3,4)"
std::string to_string(const CycleWord& c);
// Accepts "3,10,3,4", "(3,10,3,4)" or whitespace-separated entries.
CycleWord parse_cycle(const std::string& text);

// Lexicographically least word among all rotations and reversals.
CycleWord canonicalize(const CycleWord& c);
bool dihedrally_equal(const CycleWord& a, const CycleWord& b);

enum class CuspCondition {
    None,
    EmptyCycle,
    EntryBelowTwo,         // condition i: some e_i < 2 with n >= 2
    NoEntryAtLeastThree,   // condition ii: all e_i == 2
    NodalBelowOne,         // condition iii: n == 1 and e_1 < 1
};

struct ValidationReport {
    bool valid = false;
    CuspCondition failed = CuspCondition::None;
    std::optional<std::size_t> offending_index;
    std::string message;
};

ValidationReport validate_cusp(const CycleWord& c);
// Throws InvalidInput with the report message unless c is a valid cusp.
void require_cusp(const CycleWord& c);

// -E^2: sum(e_i) - 2n for n >= 2, and e_1 for the nodal case.
Entry neg_self_intersection(const CycleWord& c);
// max(2, -E^2).
Entry multiplicity(const CycleWord& c);

struct Run {
    Entry anchor = 0;         // a_k >= 3
    std::size_t twos = 0;     // b_k
    std::size_t position = 0; // index of a_k in the original word
    friend bool operator==(const Run&, const Run&) = default;
};

// The word read as (a_1, 2^{b_1}, ..., a_l, 2^{b_l}) starting from the first
// entry >= 3. Throws InvalidInput when no entry is >= 3.
struct RunDecomposition {
    std::vector<Run> runs;
    CycleWord reassemble() const;
};

RunDecomposition run_decompose(const CycleWord& c);

// Cycle of the dual cusp.
CycleWord dual(const CycleWord& c);

// Reflection sigma(i) = (axis - i) mod n of a cycle of even length n. Only
// vertex-type reflections are represented (axis even); the fixed indices are
// axis/2 and axis/2 + n/2. The axis is normalised into [0, n).
class Reflection {
public:
    Reflection(std::size_t length, std::int64_t axis);

    std::size_t length() const noexcept { return length_; }
    std::size_t axis() const noexcept { return axis_; }

    std::size_t image(std::size_t i) const noexcept;
    std::size_t first_fixed() const noexcept { return axis_ / 2; }
    std::size_t second_fixed() const noexcept { return axis_ / 2 + length_ / 2; }
    bool is_fixed(std::size_t i) const noexcept;
    // Image of node i (the node between components i and i+1).
    std::size_t node_image(std::size_t node) const noexcept;

    static Reflection fixing(std::size_t length, std::size_t fixed_index);

    friend bool operator==(const Reflection&, const Reflection&) = default;
    friend auto operator<=>(const Reflection&, const Reflection&) = default;

private:
    std::size_t length_;
    std::size_t axis_;
};

// True when r preserves c and both fixed entries are even.
bool is_symmetric_under(const CycleWord& c, const Reflection& r);

std::vector<Reflection> find_reflections(const CycleWord& c);

// A cycle together with one of its symmetric axes.
class SymmetricStructure {
public:
    SymmetricStructure(CycleWord cycle, Reflection axis);

    const CycleWord& cycle() const noexcept { return cycle_; }
    const Reflection& axis() const noexcept { return axis_; }

    // The half word (e_f, ..., e_{f+n/2}) read from the first fixed index.
    std::vector<Entry> half_word() const;

    friend bool operator==(const SymmetricStructure&, const SymmetricStructure&) = default;

private:
    CycleWord cycle_;
    Reflection axis_;
};

// Reflection that the symmetric structure induces on dual(s.cycle()), in the
// coordinates of the word returned by dual().
SymmetricStructure induced_dual_reflection(const SymmetricStructure& s);

// Resolution graph of the Z/2 quotient: a chain whose ends each carry two
// (-2)-forks. Values are negated self-intersections.
struct QuotientGraph {
    std::vector<Entry> chain;

    std::size_t chain_length() const noexcept { return chain.size(); }
    std::size_t vertex_count() const noexcept { return chain.size() + 4; }
    // Vertex order: chain[0..k-1], then G1, G2 (on chain front), G3, G4 (on
    // chain back).
    std::vector<Entry> vertex_values() const;
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

QuotientGraph quotient_resolution_graph(const SymmetricStructure& s);

}  // namespace cuspsym
