#include "cuspsym/pairs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "cuspsym/errors.hpp"

namespace cuspsym {

using Half = std::vector<std::int64_t>;

PairCycle::PairCycle(CycleWord d, Reflection axis) : d_(std::move(d)), axis_(axis)
{
    if (d_.size() < 4 || d_.size() % 2 != 0)
        throw InvalidInput("pair cycles need even length >= 4, got " + to_string(d_));
    if (!is_symmetric_under(d_, axis_))
        throw InvalidInput("pair cycle " + to_string(d_) + " is not symmetric with even fixed entries under axis " +
                           std::to_string(axis_.axis()));
}

PairCycle seed_pair()
{
    return PairCycle(CycleWord{0, 0, 0, 0}, Reflection::fixing(4, 1));
}

std::int64_t charge(const CycleWord& d)
{
    return 12 + d.sum() - 3 * static_cast<std::int64_t>(d.size());
}

std::int64_t charge(const PairCycle& p)
{
    return charge(p.d());
}

CycleWord corner_blowup(const CycleWord& d, std::size_t node)
{
    const std::size_t n = d.size();
    if (n < 2)
        throw InvalidInput("corner blowup needs a cycle of length >= 2");
    if (node >= n)
        throw InvalidInput("node " + std::to_string(node) + " out of range for length " + std::to_string(n));
    std::vector<Entry> e = d.entries();
    ++e[node];
    ++e[(node + 1) % n];
    e.insert(e.begin() + static_cast<std::ptrdiff_t>(node + 1), 1);
    return CycleWord(std::move(e));
}

CycleWord interior_blowup(const CycleWord& d, std::size_t index)
{
    if (index >= d.size())
        throw InvalidInput("component " + std::to_string(index) + " out of range for length " +
                           std::to_string(d.size()));
    std::vector<Entry> e = d.entries();
    ++e[index];
    return CycleWord(std::move(e));
}

CycleWord apply_step(const CycleWord& d, const BlowupStep& s)
{
    return s.kind == BlowupStep::Kind::Corner ? corner_blowup(d, s.index) : interior_blowup(d, s.index);
}

std::string to_string(const EquivariantStep& s)
{
    switch (s.kind) {
    case EquivariantStep::Kind::CornerPair:
        return "corner_pair(" + std::to_string(s.index) + ")";
    case EquivariantStep::Kind::InteriorPair:
        return "interior_pair(" + std::to_string(s.index) + ")";
    case EquivariantStep::Kind::InteriorDouble:
        return "interior_double(" + std::to_string(s.index) + ")";
    }
    return "?";
}

std::vector<BlowupStep> underlying_steps(const EquivariantStep& s, const Reflection& axis)
{
    const std::size_t n = axis.length();
    if (s.index >= n)
        throw InvalidInput(to_string(s) + " out of range for length " + std::to_string(n));
    switch (s.kind) {
    case EquivariantStep::Kind::CornerPair: {
        const std::size_t mirror = axis.node_image(s.index);
        const std::size_t a = std::min(s.index, mirror), b = std::max(s.index, mirror);
        // Blow up the later node first so the earlier index stays valid.
        return {{BlowupStep::Kind::Corner, b}, {BlowupStep::Kind::Corner, a}};
    }
    case EquivariantStep::Kind::InteriorPair:
        if (axis.is_fixed(s.index))
            throw InvalidInput(to_string(s) + " acts on a fixed component");
        return {{BlowupStep::Kind::Interior, s.index}, {BlowupStep::Kind::Interior, axis.image(s.index)}};
    case EquivariantStep::Kind::InteriorDouble:
        if (!axis.is_fixed(s.index))
            throw InvalidInput(to_string(s) + " acts on a component that is not fixed");
        return {{BlowupStep::Kind::Interior, s.index}, {BlowupStep::Kind::Interior, s.index}};
    }
    throw InvalidInput("unknown step kind");
}

PairCycle apply_equivariant_step(const PairCycle& p, const EquivariantStep& s)
{
    const auto steps = underlying_steps(s, p.axis());
    CycleWord d = p.d();
    for (const auto& b : steps)
        d = apply_step(d, b);
    if (s.kind != EquivariantStep::Kind::CornerPair)
        return PairCycle(std::move(d), p.axis());

    const std::size_t b = steps[0].index, a = steps[1].index;
    const std::size_t f = p.axis().first_fixed();
    const std::size_t moved = f + (f > a ? 1 : 0) + (f > b ? 1 : 0);
    Reflection axis = Reflection::fixing(d.size(), moved);
    if (!is_symmetric_under(d, axis))
        throw std::logic_error("corner pair " + to_string(s) + " broke the symmetry of " + to_string(p.d()));
    return PairCycle(std::move(d), axis);
}

PairCycle replay(const PairCycle& start, const std::vector<EquivariantStep>& steps)
{
    PairCycle p = start;
    for (const auto& s : steps)
        p = apply_equivariant_step(p, s);
    return p;
}

Half half_word(const PairCycle& p)
{
    const std::size_t n = p.size();
    const std::size_t f = p.axis().first_fixed();
    Half h(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k)
        h[k] = p.d()[(f + k) % n];
    return h;
}

Half pair_key(const PairCycle& p)
{
    Half h = half_word(p);
    Half r(h.rbegin(), h.rend());
    return std::min(h, r);
}

PairCycle pair_from_half(const Half& h)
{
    if (h.size() < 3)
        throw InvalidInput("half word needs at least three entries");
    const std::size_t m = h.size() - 1;
    std::vector<Entry> d(h.begin(), h.end());
    for (std::size_t k = m - 1; k >= 1; --k)
        d.push_back(h[k]);
    return PairCycle(CycleWord(std::move(d)), Reflection(2 * m, 0));
}

namespace {

void check_length(std::size_t n)
{
    if (n < 4 || n % 2 != 0)
        throw InvalidInput("length must be even and >= 4, got " + std::to_string(n));
    if (n > kMaxPairLength)
        throw BudgetExceeded("length " + std::to_string(n) + " exceeds the configured bound " +
                             std::to_string(kMaxPairLength));
}

std::vector<ToricModel> compute_toric(std::size_t n)
{
    std::map<Half, ToricModel> level;
    {
        PairCycle seed = seed_pair();
        Half k = pair_key(seed);
        level.emplace(k, ToricModel{seed, {}, k});
    }
    for (std::size_t len = 4; len < n; len += 2) {
        std::map<Half, ToricModel> next;
        for (const auto& [key, model] : level) {
            for (std::size_t node = 0; node < len; ++node) {
                const EquivariantStep step{EquivariantStep::Kind::CornerPair, node};
                PairCycle p = apply_equivariant_step(model.pair, step);
                Half k = pair_key(p);
                if (next.count(k))
                    continue;
                auto steps = model.corner_steps;
                steps.push_back(step);
                next.emplace(k, ToricModel{std::move(p), std::move(steps), k});
            }
        }
        level = std::move(next);
    }
    std::vector<ToricModel> out;
    out.reserve(level.size());
    for (auto& [k, m] : level)
        out.push_back(std::move(m));
    return out;
}

}  // namespace

ToricSet enumerate_equivariant_toric(std::size_t n, const ToricCache* cache)
{
    check_length(n);
    ToricSet out;
    out.n = n;
    if (cache) {
        out.cache_file = cache->file_for(n);
        if (auto hit = cache->load(n)) {
            out.models = std::move(*hit);
            out.from_cache = true;
            return out;
        }
    }
    out.models = compute_toric(n);
    if (cache)
        cache->store(n, out.models);
    return out;
}

std::vector<Alignment> axis_alignments(const PairCycle& target, const PairCycle& toric)
{
    const std::size_t n = target.size();
    if (toric.size() != n)
        throw InvalidInput("cannot align cycles of lengths " + std::to_string(n) + " and " +
                           std::to_string(toric.size()));
    const auto N = static_cast<std::int64_t>(n);
    const auto fT = static_cast<std::int64_t>(target.axis().first_fixed());
    const auto ft = static_cast<std::int64_t>(toric.axis().first_fixed());
    std::vector<Alignment> out;
    for (std::int64_t shift : {std::int64_t{0}, N / 2}) {
        for (std::int64_t dir : {std::int64_t{1}, std::int64_t{-1}}) {
            Alignment a(n);
            for (std::int64_t i = 0; i < N; ++i)
                a[static_cast<std::size_t>(i)] = static_cast<std::size_t>((((ft + shift + dir * (i - fT)) % N) + N) % N);
            if (std::find(out.begin(), out.end(), a) == out.end())
                out.push_back(std::move(a));
        }
    }
    return out;
}

namespace {

bool aligned_dominates(const PairCycle& target, const PairCycle& toric, const Alignment& a)
{
    const auto& dT = target.d();
    const auto& dt = toric.d();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto diff = dT[i] - dt[a[i]];
        if (diff < 0)
            return false;
        if (target.axis().is_fixed(i) && diff % 2 != 0)
            return false;
    }
    return true;
}

std::vector<EquivariantStep> interior_schedule(const PairCycle& target, const PairCycle& toric, const Alignment& a)
{
    const std::size_t n = a.size();
    std::vector<Entry> diff(n);
    for (std::size_t i = 0; i < n; ++i)
        diff[a[i]] = target.d()[i] - toric.d()[a[i]];
    std::vector<EquivariantStep> steps;
    const Reflection& ax = toric.axis();
    for (std::size_t j = 0; j < n; ++j) {
        if (ax.is_fixed(j)) {
            for (Entry k = 0; k < diff[j] / 2; ++k)
                steps.push_back({EquivariantStep::Kind::InteriorDouble, j});
        } else if (j < ax.image(j)) {
            for (Entry k = 0; k < diff[j]; ++k)
                steps.push_back({EquivariantStep::Kind::InteriorPair, j});
        }
    }
    return steps;
}

void check_target(const PairCycle& target)
{
    for (std::size_t i = 0; i < target.size(); ++i)
        if (target.d()[i] < 2)
            throw InvalidInput("target " + to_string(target.d()) +
                               " is not negative (semi)definite: every entry must be >= 2");
}

}  // namespace

std::optional<Alignment> dominates_with_parity(const PairCycle& target, const PairCycle& toric)
{
    for (auto& a : axis_alignments(target, toric))
        if (aligned_dominates(target, toric, a))
            return a;
    return std::nullopt;
}

bool verify_witness(const PairCycle& target, const ToricWitness& w, std::string* why)
{
    auto fail = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    try {
        const PairCycle toric = replay(seed_pair(), w.corner_steps);
        if (!(toric == w.toric))
            return fail("corner schedule yields " + to_string(toric.d()) + ", witness claims " +
                        to_string(w.toric.d()));
        for (const auto& s : w.corner_steps)
            if (s.kind != EquivariantStep::Kind::CornerPair)
                return fail("corner schedule contains " + to_string(s));
        for (const auto& s : w.interior_steps)
            if (s.kind == EquivariantStep::Kind::CornerPair)
                return fail("interior schedule contains " + to_string(s));
        const PairCycle result = replay(toric, w.interior_steps);
        const auto allowed = axis_alignments(target, result);
        if (std::find(allowed.begin(), allowed.end(), w.alignment) == allowed.end())
            return fail("alignment does not carry one axis to the other");
        for (std::size_t i = 0; i < target.size(); ++i)
            if (result.d()[w.alignment[i]] != target.d()[i])
                return fail("replayed cycle " + to_string(result.d()) + " differs from target " +
                            to_string(target.d()));
    } catch (const InvalidInput& e) {
        return fail(e.what());
    }
    return true;
}

Decision decide_with_models(const PairCycle& target, const std::vector<ToricModel>& models)
{
    check_target(target);
    Decision d;
    d.semidefinite = target.d().max_entry() == 2;
    for (const auto& m : models) {
        if (m.pair.size() != target.size())
            throw InvalidInput("toric model length does not match the target");
        ++d.models_tried;
        for (const auto& a : axis_alignments(target, m.pair)) {
            ++d.alignments_tried;
            if (!aligned_dominates(target, m.pair, a))
                continue;
            d.accepted = true;
            d.witness = ToricWitness{m.pair, m.corner_steps, interior_schedule(target, m.pair, a), a};
            return d;
        }
    }
    return d;
}

Decision decide_equivariant_pair(const PairCycle& target, const ToricCache* cache)
{
    check_target(target);
    const ToricSet set = enumerate_equivariant_toric(target.size(), cache);
    return decide_with_models(target, set.models);
}

ReachabilityResult brute_force_reachability(const PairCycle& target, std::size_t budget)
{
    check_target(target);
    const std::size_t n = target.size();
    if (n > kMaxPairLength)
        throw BudgetExceeded("length " + std::to_string(n) + " exceeds the configured bound");
    const auto q_max = charge(target);
    const auto e_max = target.d().max_entry();
    const Half goal = pair_key(target);

    ReachabilityResult r;
    std::set<Half> seen;
    std::deque<Half> queue;
    const Half start = pair_key(seed_pair());
    seen.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        const Half key = std::move(queue.front());
        queue.pop_front();
        ++r.states_explored;
        if (key == goal) {
            r.reachable = true;
            return r;
        }
        const PairCycle p = pair_from_half(key);
        const std::size_t len = p.size();
        std::vector<EquivariantStep> moves;
        if (len + 2 <= n)
            for (std::size_t node = 0; node < len; ++node)
                moves.push_back({EquivariantStep::Kind::CornerPair, node});
        for (std::size_t j = 0; j < len; ++j) {
            if (p.axis().is_fixed(j))
                moves.push_back({EquivariantStep::Kind::InteriorDouble, j});
            else if (j < p.axis().image(j))
                moves.push_back({EquivariantStep::Kind::InteriorPair, j});
        }
        for (const auto& m : moves) {
            const PairCycle q = apply_equivariant_step(p, m);
            if (charge(q) > q_max || q.d().max_entry() > e_max)
                continue;
            Half k = pair_key(q);
            if (!seen.insert(k).second)
                continue;
            if (seen.size() > budget)
                throw BudgetExceeded("brute-force search exceeded its budget of " + std::to_string(budget) +
                                     " states");
            queue.push_back(std::move(k));
        }
    }
    return r;
}

std::vector<Half> symmetric_half_words(std::size_t n, std::int64_t min_entry, std::int64_t max_entry)
{
    if (n < 4 || n % 2 != 0)
        throw InvalidInput("length must be even and >= 4");
    const std::size_t m = n / 2;
    std::vector<Half> out;
    if (min_entry > max_entry)
        return out;
    Half h(m + 1, min_entry);
    for (;;) {
        if (h[0] % 2 == 0 && h[m] % 2 == 0 && !std::lexicographical_compare(h.rbegin(), h.rend(), h.begin(), h.end()))
            out.push_back(h);
        std::size_t k = m + 1;
        while (k > 0 && h[k - 1] == max_entry)
            h[--k] = min_entry;
        if (k == 0)
            break;
        ++h[k - 1];
    }
    return out;
}

ScanResult scan_length(std::size_t n, std::int64_t max_entry, const ToricCache* cache)
{
    check_length(n);
    if (max_entry < 4)
        throw InvalidInput("scan needs max_entry >= 4");
    ScanResult r;
    r.n = n;
    r.max_entry = max_entry;
    const ToricSet toric = enumerate_equivariant_toric(n, cache);

    for (const Half& h : symmetric_half_words(n, 2, max_entry)) {
        if (*std::max_element(h.begin(), h.end()) < 3)
            continue;
        const PairCycle p = pair_from_half(h);
        // Visit each cycle once, from the least key among its axes.
        std::vector<Half> keys;
        std::vector<Reflection> axes;
        for (const auto& ax : find_reflections(p.d())) {
            Half k = pair_key(PairCycle(p.d(), ax));
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                keys.push_back(std::move(k));
                axes.push_back(ax);
            }
        }
        if (*std::min_element(keys.begin(), keys.end()) != h)
            continue;
        ++r.cycles_examined;
        if (charge(p) < 3) {
            ++r.excluded_low_charge;
            continue;
        }
        std::vector<AxisVerdict> verdicts;
        bool any = false;
        for (const auto& ax : axes) {
            const PairCycle target(p.d(), ax);
            Decision d = decide_with_models(target, toric.models);
            if (d.accepted) {
                std::string why;
                if (!verify_witness(target, *d.witness, &why))
                    throw std::logic_error("witness for " + to_string(p.d()) + " does not replay: " + why);
                any = true;
                break;
            }
            verdicts.push_back({ax, std::move(d)});
        }
        if (any) {
            ++r.accepted;
            ++r.witnesses_verified;
            continue;
        }
        const CycleWord canon = canonicalize(p.d());
        r.failures.push_back({canon, canonicalize(dual(canon)), p.d(), std::move(verdicts)});
    }
    std::sort(r.failures.begin(), r.failures.end(),
              [](const ScanFailure& a, const ScanFailure& b) { return a.dual_cycle < b.dual_cycle; });
    return r;
}

}  // namespace cuspsym
