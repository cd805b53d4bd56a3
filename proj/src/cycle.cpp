#include "cuspsym/cycle.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "cuspsym/errors.hpp"

namespace cuspsym {

CycleWord::CycleWord(std::vector<Entry> entries) : entries_(std::move(entries)) {}

CycleWord::CycleWord(std::initializer_list<Entry> entries) : entries_(entries) {}

Entry CycleWord::at_cyclic(std::int64_t i) const
{
    const auto n = static_cast<std::int64_t>(entries_.size());
    if (n == 0)
        throw InvalidInput("cyclic access into an empty cycle");
    return entries_[static_cast<std::size_t>(((i % n) + n) % n)];
}

Entry CycleWord::sum() const noexcept
{
    return std::accumulate(entries_.begin(), entries_.end(), Entry{0});
}

Entry CycleWord::max_entry() const
{
    if (entries_.empty())
        throw InvalidInput("max_entry of an empty cycle");
    return *std::max_element(entries_.begin(), entries_.end());
}

CycleWord CycleWord::rotated(std::size_t start) const
{
    if (entries_.empty())
        return {};
    std::vector<Entry> out(entries_.size());
    const std::size_t n = entries_.size();
    for (std::size_t k = 0; k < n; ++k)
        out[k] = entries_[(start + k) % n];
    return CycleWord(std::move(out));
}

CycleWord CycleWord::reversed() const
{
    return CycleWord(std::vector<Entry>(entries_.rbegin(), entries_.rend()));
}

std::string to_string(const CycleWord& c)
{
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(c[i]);
    }
    s += ')';
    return s;
}

CycleWord parse_cycle(const std::string& text)
{
    std::vector<Entry> out;
    std::size_t i = 0;
    const std::size_t len = text.size();
    auto skip_separators = [&] {
        while (i < len && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',' ||
                           text[i] == '(' || text[i] == ')' || text[i] == '[' || text[i] == ']'))
            ++i;
    };
    skip_separators();
    while (i < len) {
        Entry value = 0;
        const char* first = text.data() + i;
        const char* last = text.data() + len;
        if (*first == '+')
            ++first;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr == first)
            throw InvalidInput("cannot parse cycle entry near '" + text.substr(i, 8) + "' in \"" + text + "\"");
        out.push_back(value);
        i = static_cast<std::size_t>(ptr - text.data());
        if (i < len && !(std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',' ||
                         text[i] == ')' || text[i] == ']'))
            throw InvalidInput("unexpected character '" + std::string(1, text[i]) + "' in cycle \"" + text + "\"");
        skip_separators();
    }
    if (out.empty())
        throw InvalidInput("empty cycle \"" + text + "\"");
    return CycleWord(std::move(out));
}

CycleWord canonicalize(const CycleWord& c)
{
    if (c.empty())
        return c;
    const std::size_t n = c.size();
    const auto& e = c.entries();
    std::vector<Entry> best = e;
    std::vector<Entry> cand(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k)
            cand[k] = e[(r + k) % n];
        if (cand < best)
            best = cand;
        for (std::size_t k = 0; k < n; ++k)
            cand[k] = e[(r + n - k) % n];
        if (cand < best)
            best = cand;
    }
    return CycleWord(std::move(best));
}

bool dihedrally_equal(const CycleWord& a, const CycleWord& b)
{
    return a.size() == b.size() && canonicalize(a) == canonicalize(b);
}

ValidationReport validate_cusp(const CycleWord& c)
{
    ValidationReport r;
    if (c.empty()) {
        r.failed = CuspCondition::EmptyCycle;
        r.message = "cycle is empty";
        return r;
    }
    if (c.size() == 1) {
        if (c[0] < 1) {
            r.failed = CuspCondition::NodalBelowOne;
            r.offending_index = 0;
            r.message = "nodal cycle needs e_1 >= 1, got " + std::to_string(c[0]);
            return r;
        }
        r.valid = true;
        return r;
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 2) {
            r.failed = CuspCondition::EntryBelowTwo;
            r.offending_index = i;
            r.message = "entry " + std::to_string(c[i]) + " at index " + std::to_string(i) +
                        " is below 2 (condition i)";
            return r;
        }
    }
    if (c.max_entry() < 3) {
        r.failed = CuspCondition::NoEntryAtLeastThree;
        r.message = "no entry is >= 3 (condition ii)";
        return r;
    }
    r.valid = true;
    return r;
}

void require_cusp(const CycleWord& c)
{
    auto r = validate_cusp(c);
    if (!r.valid)
        throw InvalidInput("not a cusp cycle " + to_string(c) + ": " + r.message);
}

Entry neg_self_intersection(const CycleWord& c)
{
    require_cusp(c);
    if (c.size() == 1)
        return c[0];
    return c.sum() - 2 * static_cast<Entry>(c.size());
}

Entry multiplicity(const CycleWord& c)
{
    return std::max<Entry>(2, neg_self_intersection(c));
}

CycleWord RunDecomposition::reassemble() const
{
    std::vector<Entry> out;
    for (const auto& r : runs) {
        out.push_back(r.anchor);
        out.insert(out.end(), r.twos, 2);
    }
    return CycleWord(std::move(out));
}

RunDecomposition run_decompose(const CycleWord& c)
{
    const std::size_t n = c.size();
    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (c[i] < 2)
            throw InvalidInput("run decomposition needs entries >= 2, got " + to_string(c));
        if (first == n && c[i] >= 3)
            first = i;
    }
    if (first == n)
        throw InvalidInput("run decomposition needs an entry >= 3, got " + to_string(c));
    RunDecomposition d;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = (first + k) % n;
        if (c[i] >= 3)
            d.runs.push_back(Run{c[i], 0, i});
        else
            ++d.runs.back().twos;
    }
    return d;
}

namespace {

// For the general branch of dual(): D index of the entry b_k + 3 for every run,
// and D index where the block of a_k - 3 twos begins.
struct DualLayout {
    CycleWord word;
    std::vector<std::size_t> run_entry;   // run k -> index of b_k + 3
    std::vector<std::size_t> block_start; // run k -> start of a_k - 3 block
};

DualLayout general_dual(const RunDecomposition& rd)
{
    DualLayout out;
    const std::size_t l = rd.runs.size();
    std::vector<Entry> d;
    out.run_entry.resize(l);
    out.block_start.resize(l);
    for (std::size_t k = 0; k < l; ++k) {
        out.run_entry[k] = d.size();
        d.push_back(static_cast<Entry>(rd.runs[k].twos) + 3);
        const auto& next = rd.runs[(k + 1) % l];
        out.block_start[(k + 1) % l] = d.size();
        d.insert(d.end(), static_cast<std::size_t>(next.anchor - 3), 2);
    }
    out.word = CycleWord(std::move(d));
    return out;
}

bool is_three_then_twos(const CycleWord& c)
{
    std::size_t threes = 0;
    for (auto x : c.entries()) {
        if (x == 3)
            ++threes;
        else if (x != 2)
            return false;
    }
    return threes == 1;
}

}  // namespace

CycleWord dual(const CycleWord& c)
{
    require_cusp(c);
    if (c.size() == 1) {
        if (c[0] == 1)
            return CycleWord{1};
        std::vector<Entry> d(static_cast<std::size_t>(c[0]), 2);
        d[0] = 3;
        return CycleWord(std::move(d));
    }
    if (is_three_then_twos(c))
        return CycleWord{static_cast<Entry>(c.size())};
    return general_dual(run_decompose(c)).word;
}

Reflection::Reflection(std::size_t length, std::int64_t axis) : length_(length), axis_(0)
{
    if (length < 2 || length % 2 != 0)
        throw InvalidInput("reflections are defined on cycles of even length >= 2, got length " +
                           std::to_string(length));
    const auto n = static_cast<std::int64_t>(length);
    const auto s = ((axis % n) + n) % n;
    if (s % 2 != 0)
        throw InvalidInput("axis " + std::to_string(axis) + " is odd (edge-type reflection)");
    axis_ = static_cast<std::size_t>(s);
}

std::size_t Reflection::image(std::size_t i) const noexcept
{
    return (axis_ + length_ - i % length_) % length_;
}

bool Reflection::is_fixed(std::size_t i) const noexcept
{
    return image(i) == i % length_;
}

std::size_t Reflection::node_image(std::size_t node) const noexcept
{
    return (axis_ + 2 * length_ - node % length_ - 1) % length_;
}

Reflection Reflection::fixing(std::size_t length, std::size_t fixed_index)
{
    return Reflection(length, 2 * static_cast<std::int64_t>(fixed_index));
}

bool is_symmetric_under(const CycleWord& c, const Reflection& r)
{
    if (c.size() != r.length())
        return false;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != c[r.image(i)])
            return false;
    return c[r.first_fixed()] % 2 == 0 && c[r.second_fixed()] % 2 == 0;
}

std::vector<Reflection> find_reflections(const CycleWord& c)
{
    std::vector<Reflection> out;
    const std::size_t n = c.size();
    if (n < 2 || n % 2 != 0)
        return out;
    for (std::size_t s = 0; s < n; s += 2) {
        Reflection r(n, static_cast<std::int64_t>(s));
        if (is_symmetric_under(c, r))
            out.push_back(r);
    }
    return out;
}

SymmetricStructure::SymmetricStructure(CycleWord cycle, Reflection axis)
    : cycle_(std::move(cycle)), axis_(axis)
{
    if (cycle_.size() != axis_.length())
        throw InvalidInput("axis length " + std::to_string(axis_.length()) + " does not match cycle " +
                           to_string(cycle_));
    if (!is_symmetric_under(cycle_, axis_))
        throw InvalidInput("cycle " + to_string(cycle_) + " is not symmetric under axis " +
                           std::to_string(axis_.axis()));
}

std::vector<Entry> SymmetricStructure::half_word() const
{
    const std::size_t n = cycle_.size();
    const std::size_t f = axis_.first_fixed();
    std::vector<Entry> h(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k)
        h[k] = cycle_[(f + k) % n];
    return h;
}

SymmetricStructure induced_dual_reflection(const SymmetricStructure& s)
{
    const CycleWord& c = s.cycle();
    require_cusp(c);
    if (is_three_then_twos(c))
        throw InvalidInput("cycle " + to_string(c) + " has a single odd anchor and cannot be symmetric");
    const RunDecomposition rd = run_decompose(c);
    const DualLayout layout = general_dual(rd);
    const std::size_t f = s.axis().first_fixed();
    const std::size_t n = c.size();

    // Locate the run containing f: either as its anchor or inside its twos.
    std::size_t target = layout.word.size();
    for (std::size_t k = 0; k < rd.runs.size(); ++k) {
        const Run& r = rd.runs[k];
        const std::size_t offset = (f + n - r.position) % n;
        if (offset == 0) {
            // Even anchor e >= 4 owns an odd block of e - 3 twos; take its centre.
            target = layout.block_start[k] + static_cast<std::size_t>(r.anchor - 4) / 2;
            break;
        }
        if (offset <= r.twos) {
            target = layout.run_entry[k];
            break;
        }
    }
    if (target >= layout.word.size())
        throw std::logic_error("fixed component not located in run decomposition");

    Reflection induced = Reflection::fixing(layout.word.size(), target);
    if (!is_symmetric_under(layout.word, induced))
        throw std::logic_error("induced reflection on " + to_string(layout.word) + " is not a symmetry");
    return SymmetricStructure(layout.word, induced);
}

std::vector<Entry> QuotientGraph::vertex_values() const
{
    std::vector<Entry> v = chain;
    v.insert(v.end(), 4, 2);
    return v;
}

std::vector<std::pair<std::size_t, std::size_t>> QuotientGraph::edges() const
{
    std::vector<std::pair<std::size_t, std::size_t>> e;
    const std::size_t k = chain.size();
    for (std::size_t i = 0; i + 1 < k; ++i)
        e.emplace_back(i, i + 1);
    if (k == 0)
        return e;
    e.emplace_back(0, k);
    e.emplace_back(0, k + 1);
    e.emplace_back(k - 1, k + 2);
    e.emplace_back(k - 1, k + 3);
    return e;
}

QuotientGraph quotient_resolution_graph(const SymmetricStructure& s)
{
    const CycleWord& c = s.cycle();
    require_cusp(c);
    const std::size_t n = c.size();
    if (n < 4)
        throw InvalidInput("quotient graph needs a symmetric cusp of length >= 4, got " + to_string(c));
    const std::vector<Entry> h = s.half_word();
    QuotientGraph g;
    g.chain = h;
    g.chain.front() = h.front() / 2 + 1;
    g.chain.back() = h.back() / 2 + 1;
    return g;
}

}  // namespace cuspsym
