#pragma once

// Labelled boundary cycles of Looijenga pairs carrying a reflection, the
// corner and interior blowup moves on them, the equivariant toric models
// reachable from (P1 x P1, toric boundary), and the decision procedure for an
// equivariant pair over a given symmetric cycle.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cuspsym/cycle.hpp"

namespace cuspsym {

// Largest cycle length accepted by the toric enumeration and the searches.
inline constexpr std::size_t kMaxPairLength = 20;

// Boundary cycle d (entries may be <= 0) with a reflection whose fixed
// entries are even.
class PairCycle {
public:
    PairCycle(CycleWord d, Reflection axis);

    const CycleWord& d() const noexcept { return d_; }
    const Reflection& axis() const noexcept { return axis_; }
    std::size_t size() const noexcept { return d_.size(); }

    friend bool operator==(const PairCycle&, const PairCycle&) = default;

private:
    CycleWord d_;
    Reflection axis_;
};

// (P1 x P1, toric boundary) with the reflection fixing indices 1 and 3.
PairCycle seed_pair();

// 12 + sum(d) - 3n.
std::int64_t charge(const CycleWord& d);
std::int64_t charge(const PairCycle& p);

// Node i sits between components i and i+1 (mod n).
CycleWord corner_blowup(const CycleWord& d, std::size_t node);
CycleWord interior_blowup(const CycleWord& d, std::size_t index);

struct BlowupStep {
    enum class Kind { Corner, Interior };
    Kind kind;
    std::size_t index;
    friend bool operator==(const BlowupStep&, const BlowupStep&) = default;
};

CycleWord apply_step(const CycleWord& d, const BlowupStep& s);

struct EquivariantStep {
    enum class Kind { CornerPair, InteriorPair, InteriorDouble };
    Kind kind;
    std::size_t index;  // node for CornerPair, component otherwise
    friend bool operator==(const EquivariantStep&, const EquivariantStep&) = default;
};

std::string to_string(const EquivariantStep& s);

// The underlying blowups of s, in the order apply_equivariant_step performs
// them. Throws InvalidInput when s does not respect the orbit structure of
// axis (an InteriorPair on a fixed index, an InteriorDouble off it).
std::vector<BlowupStep> underlying_steps(const EquivariantStep& s, const Reflection& axis);

PairCycle apply_equivariant_step(const PairCycle& p, const EquivariantStep& s);
PairCycle replay(const PairCycle& start, const std::vector<EquivariantStep>& steps);

// Half word (d_f, ..., d_{f+n/2}) from the first fixed index f, and the
// lesser of it and its reverse. Two pairs are related by a rotation or
// reflection carrying axis to axis exactly when their keys agree.
std::vector<std::int64_t> half_word(const PairCycle& p);
std::vector<std::int64_t> pair_key(const PairCycle& p);
// Cycle h_0, ..., h_m, h_{m-1}, ..., h_1 with fixed indices 0 and m.
PairCycle pair_from_half(const std::vector<std::int64_t>& h);

struct ToricModel {
    PairCycle pair;                          // as produced by replaying corner_steps from seed_pair()
    std::vector<EquivariantStep> corner_steps;
    std::vector<std::int64_t> key;
};

// On-disk memo of toric enumerations: one line-delimited JSON file per length,
// written to a temporary and renamed into place.
class ToricCache {
public:
    explicit ToricCache(std::filesystem::path dir);

    // CUSPSYM_CACHE_DIR, else $XDG_DATA_HOME/cuspsym, else ~/.local/share/cuspsym.
    static std::filesystem::path default_directory();

    const std::filesystem::path& directory() const noexcept { return dir_; }
    std::filesystem::path file_for(std::size_t n) const;

    // Returns nothing when the file is absent or fails verification.
    std::optional<std::vector<ToricModel>> load(std::size_t n) const;
    void store(std::size_t n, const std::vector<ToricModel>& models) const;

private:
    std::filesystem::path dir_;
};

struct ToricSet {
    std::size_t n = 0;
    std::vector<ToricModel> models;  // sorted by key
    bool from_cache = false;
    std::optional<std::filesystem::path> cache_file;
};

// All equivariant toric models of length n, up to axis-preserving dihedral
// equivalence. Throws InvalidInput for odd n or n < 4 and BudgetExceeded above
// kMaxPairLength.
ToricSet enumerate_equivariant_toric(std::size_t n, const ToricCache* cache = nullptr);

// alignment[i] is the toric index matched with target index i.
using Alignment = std::vector<std::size_t>;

// The at most four index bijections that carry the toric axis to the target
// axis, in a fixed order.
std::vector<Alignment> axis_alignments(const PairCycle& target, const PairCycle& toric);

std::optional<Alignment> dominates_with_parity(const PairCycle& target, const PairCycle& toric);

struct ToricWitness {
    PairCycle toric;
    std::vector<EquivariantStep> corner_steps;
    std::vector<EquivariantStep> interior_steps;
    Alignment alignment;
};

// Replays corner_steps from the seed, checks the result is w.toric, replays
// interior_steps and checks the outcome matches target under the alignment.
bool verify_witness(const PairCycle& target, const ToricWitness& w, std::string* why = nullptr);

struct Decision {
    bool accepted = false;
    bool semidefinite = false;  // all entries equal 2
    std::optional<ToricWitness> witness;
    std::size_t models_tried = 0;
    std::size_t alignments_tried = 0;
};

Decision decide_equivariant_pair(const PairCycle& target, const ToricCache* cache = nullptr);
Decision decide_with_models(const PairCycle& target, const std::vector<ToricModel>& models);

struct ReachabilityResult {
    bool reachable = false;
    std::size_t states_explored = 0;
};

// Breadth-first search over pair keys from the seed using every equivariant
// move, pruned by length <= n, charge <= charge(target) and largest entry <=
// largest target entry. Throws BudgetExceeded after budget states.
ReachabilityResult brute_force_reachability(const PairCycle& target, std::size_t budget = 2'000'000);

struct AxisVerdict {
    Reflection axis;
    Decision decision;
};

struct ScanFailure {
    CycleWord dual_cycle;  // canonical
    CycleWord cusp;        // canonical dual of dual_cycle
    CycleWord labeled;     // the word the verdict axes refer to
    std::vector<AxisVerdict> verdicts;
};

struct ScanResult {
    std::size_t n = 0;
    std::int64_t max_entry = 0;
    std::size_t cycles_examined = 0;     // canonical symmetric negative-definite cycles
    std::size_t excluded_low_charge = 0; // charge < 3, cannot bound a Looijenga pair
    std::size_t accepted = 0;
    std::size_t witnesses_verified = 0;
    std::vector<ScanFailure> failures;   // sorted by dual_cycle
};

// Every canonical symmetric negative-definite cycle of length n with entries
// <= max_entry. A cycle fails when each of its symmetric axes is rejected.
// The witness of every accepted cycle is replayed before it is counted.
ScanResult scan_length(std::size_t n, std::int64_t max_entry, const ToricCache* cache = nullptr);

// Half words h_0..h_{n/2} with entries in [min_entry, max_entry], even ends and
// h <= reverse(h): one per symmetric (cycle, axis) class of length n.
std::vector<std::vector<std::int64_t>> symmetric_half_words(std::size_t n, std::int64_t min_entry,
                                                            std::int64_t max_entry);

nlohmann::json to_json(const EquivariantStep& s);
EquivariantStep step_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ToricWitness& w);

}  // namespace cuspsym
