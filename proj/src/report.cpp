#include "cuspsym/report.hpp"

#include <algorithm>
#include <sstream>

#include "cuspsym/errors.hpp"
#include "cuspsym/hyperbolic.hpp"
#include "cuspsym/lattice.hpp"
#include "cuspsym/pairs.hpp"

namespace cuspsym {

using nlohmann::json;

namespace {

json cycle_json(const CycleWord& c)
{
    return c.entries();
}

json matrix_json(const Mat2Z& m)
{
    return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})});
}

json matrix_json(const IntMatrix& m)
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c).convert_to<long long>());
        rows.push_back(row);
    }
    return rows;
}

json group_json(const FinAbGroup& g)
{
    json factors = json::array();
    for (const auto& d : g.invariant_factors)
        factors.push_back(d.convert_to<long long>());
    return {{"text", to_string(g)}, {"free_rank", g.free_rank}, {"invariant_factors", factors}};
}

json axis_json(const Reflection& r)
{
    return {{"axis", r.axis()}, {"fixed", json::array({r.first_fixed(), r.second_fixed()})}};
}

std::vector<Reflection> select_axes(const CycleWord& c, const std::optional<std::int64_t>& axis)
{
    if (!axis)
        return find_reflections(c);
    if (c.size() < 2 || c.size() % 2 != 0)
        throw InvalidInput("--axis given but " + to_string(c) + " has odd length");
    Reflection r(c.size(), *axis);
    if (!is_symmetric_under(c, r))
        throw InvalidInput("axis " + std::to_string(*axis) + " is not a symmetric structure on " + to_string(c));
    return {r};
}

std::optional<ToricCache> make_cache(const CommonOptions& opt)
{
    if (!opt.use_cache)
        return std::nullopt;
    return ToricCache(opt.cache_dir.value_or(ToricCache::default_directory()));
}

const char* condition_label(CuspCondition c)
{
    switch (c) {
    case CuspCondition::None:
        return "none";
    case CuspCondition::EmptyCycle:
        return "empty";
    case CuspCondition::EntryBelowTwo:
        return "i";
    case CuspCondition::NoEntryAtLeastThree:
        return "ii";
    case CuspCondition::NodalBelowOne:
        return "iii";
    }
    return "?";
}

// Axis of the canonical word that matches the class of p.
Reflection canonical_axis(const CycleWord& canon, const PairCycle& p)
{
    const auto key = pair_key(p);
    for (const auto& r : find_reflections(canon))
        if (pair_key(PairCycle(canon, r)) == key)
            return r;
    throw std::logic_error("no axis of the canonical word matches " + to_string(p.d()));
}

json decision_json(const Decision& d)
{
    json j = {{"accepted", d.accepted},
              {"verdict", d.accepted ? kVerdictHolds : kVerdictFails},
              {"semidefinite", d.semidefinite}};
    if (d.witness)
        j["witness"] = to_json(*d.witness);
    else
        j["exhaustion"] = {{"models_tried", d.models_tried}, {"alignments_tried", d.alignments_tried}};
    return j;
}

std::string join_cycle(const json& arr)
{
    std::string s = "(";
    bool first = true;
    for (const auto& x : arr) {
        if (!first)
            s += ',';
        first = false;
        s += x.dump();
    }
    return s + ")";
}

std::string mod2_list(const json& arr)
{
    std::string s = "{";
    bool first = true;
    for (const auto& v : arr) {
        if (!first)
            s += ", ";
        first = false;
        s += "(" + v[0].dump() + "," + v[1].dump() + ")";
    }
    return s + "}";
}

std::string steps_text(const json& steps)
{
    if (steps.empty())
        return "none";
    std::string s;
    for (const auto& st : steps) {
        if (!s.empty())
            s += ' ';
        s += st.at("kind").get<std::string>() + "(" + st.at("index").dump() + ")";
    }
    return s;
}

void render_text_record(std::ostringstream& os, const json& r)
{
    const std::string type = r.at("type");
    if (type == "validation") {
        os << "cycle " << join_cycle(r["cycle"]) << ": " << (r["valid"].get<bool>() ? "valid cusp" : "invalid");
        if (!r["valid"].get<bool>()) {
            os << " (condition " << r["condition"].get<std::string>() << "): " << r["message"].get<std::string>()
               << '\n';
            return;
        }
        os << "\n  -E^2 = " << r["neg_self_intersection"] << ", multiplicity " << r["multiplicity"]
           << "\n  canonical " << join_cycle(r["canonical"]) << "\n  monodromy trace " << r["trace"]
           << (r["hyperbolic"].get<bool>() ? " (hyperbolic)" : " (non-hyperbolic companion matrix)") << '\n';
    } else if (type == "dual") {
        os << "cusp " << join_cycle(r["cusp"]) << "\ndual " << join_cycle(r["dual"]) << "\n  canonical "
           << join_cycle(r["dual_canonical"]) << "\n  length " << r["dual"].size() << " = -E^2 = "
           << r["neg_self_intersection"] << ", multiplicity " << r["multiplicity"] << '\n';
    } else if (type == "symmetry") {
        os << "cycle " << join_cycle(r["cycle"]) << ": ";
        if (r["axes"].empty()) {
            os << kVerdictNotSymmetric << '\n';
            return;
        }
        os << r["axes"].size() << " symmetric axis" << (r["axes"].size() == 1 ? "" : "es") << '\n';
        for (const auto& a : r["axes"]) {
            os << "  axis " << a["axis"] << " fixing indices " << a["fixed"][0] << "," << a["fixed"][1];
            if (a.contains("dual"))
                os << "; dual " << join_cycle(a["dual"]["cycle"]) << " axis " << a["dual"]["axis"] << " fixing "
                   << a["dual"]["fixed"][0] << "," << a["dual"]["fixed"][1];
            os << '\n';
        }
    } else if (type == "involution") {
        os << "cycle " << join_cycle(r["cycle"]) << " axis " << r["axis"] << "\n  word " << join_cycle(r["word"])
           << " (start " << r["start"] << ")\n  A = " << r["A"].dump() << "  trace " << r["trace"]
           << (r["hyperbolic"].get<bool>() ? " hyperbolic" : " not hyperbolic") << ", A = I mod 2: "
           << (r["A_identity_mod2"].get<bool>() ? "yes" : "no") << "\n  B = " << r["B"].dump()
           << "  B^2 = I: " << (r["B_squared_identity"].get<bool>() ? "yes" : "no")
           << ", BA = A^-1 B: " << (r["dihedral_relation"].get<bool>() ? "yes" : "no") << "\n  u0 mod 2 = ("
           << r["u0_mod2"][0] << "," << r["u0_mod2"][1] << "), u_half mod 2 = (" << r["u_half_mod2"][0] << ","
           << r["u_half_mod2"][1] << ")\n  2t in (v0,v1): " << mod2_list(r["t_candidates"])
           << "\n  2t in (v0,u0): " << mod2_list(r["t_candidates_eigen"]) << '\n';
    } else if (type == "quotient") {
        os << "cycle " << join_cycle(r["cycle"]) << " axis " << r["axis"] << "\n  chain " << join_cycle(r["chain"])
           << " with four (-2) forks, " << r["vertex_count"] << " vertices\n  Cl = " << r["class_group"]["text"].get<std::string>()
           << '\n';
    } else if (type == "verdict") {
        if (!r.value("symmetric", true)) {
            const bool given_dual = r.contains("dual");
            os << (given_dual ? "dual " : "cusp ") << join_cycle(given_dual ? r["dual"] : r["cusp"]) << ": "
               << kVerdictNotSymmetric << '\n';
            return;
        }
        if (!r["cusp"].is_null())
            os << "cusp " << join_cycle(r["cusp"]);
        if (!r["cusp_axis"].is_null())
            os << " axis " << r["cusp_axis"];
        os << "\n  dual " << join_cycle(r["dual"]) << " axis " << r["dual_axis"] << "\n  "
           << r["verdict"].get<std::string>() << '\n';
        if (r.contains("reason"))
            os << "  reason: " << r["reason"].get<std::string>() << '\n';
        if (r.value("semidefinite", false))
            os << "  caveat: semidefinite cycle (all entries 2)\n";
        if (r.contains("witness")) {
            const auto& w = r["witness"];
            os << "  toric model " << join_cycle(w["toric_cycle"]) << " axis " << w["axis"]
               << "\n  corner steps: " << steps_text(w["corner_steps"])
               << "\n  interior steps: " << steps_text(w["interior_steps"]) << '\n';
        }
        if (r.contains("exhaustion"))
            os << "  exhausted " << r["exhaustion"]["models_tried"] << " toric models, "
               << r["exhaustion"]["alignments_tried"] << " alignments\n";
        if (r.contains("oracle"))
            os << "  brute force: " << (r["oracle"]["reachable"].get<bool>() ? "reachable" : "unreachable") << " ("
               << r["oracle"]["states_explored"] << " states), "
               << (r["oracle"]["agrees"].get<bool>() ? "agrees" : "DISAGREES") << '\n';
    } else if (type == "toric") {
        os << join_cycle(r["cycle"]) << "  axis " << r["axis"] << "  corner steps " << r["corner_steps"].size()
           << '\n';
    } else if (type == "failure") {
        os << join_cycle(r["cusp"]) << "    " << join_cycle(r["dual"]) << '\n';
    } else if (type == "pi1") {
        os << "rays";
        for (const auto& v : r["rays"])
            os << " (" << v[0] << "," << v[1] << ")";
        os << "\npi1 = " << r["group"]["text"].get<std::string>();
        if (r["no_rays"].get<bool>())
            os << " (no rays given)";
        os << '\n';
    } else if (type == "summary") {
        for (const auto& [k, v] : r.items())
            if (k != "type")
                os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    } else if (type == "error") {
        os << "error (" << r["kind"].get<std::string>() << "): " << r["message"].get<std::string>() << '\n';
    } else {
        os << r.dump() << '\n';
    }
}

}  // namespace

std::string render(const Report& r, Format f)
{
    std::ostringstream os;
    if (f == Format::Machine) {
        const json header = {{"type", "header"},
                             {"schema", kReportSchema},
                             {"toolkit_version", kToolkitVersion},
                             {"command", r.command},
                             {"args", r.args}};
        os << header.dump() << '\n';
        for (const auto& rec : r.records)
            os << rec.dump() << '\n';
        os << json{{"type", "timing"}, {"elapsed_ms", r.elapsed_ms}}.dump() << '\n';
        return os.str();
    }
    if (r.command == "scan")
        os << "cusp    dual\n";
    for (const auto& rec : r.records)
        render_text_record(os, rec);
    os << "(" << r.command << ", cuspsym " << kToolkitVersion << ", " << static_cast<long long>(r.elapsed_ms)
       << " ms)\n";
    return os.str();
}

Report error_report(const std::string& command, const std::string& kind, const std::string& message)
{
    Report r;
    r.command = command;
    r.records.push_back({{"type", "error"}, {"kind", kind}, {"message", message}});
    return r;
}

Report cmd_validate(const CycleWord& c)
{
    Report r;
    r.command = "validate";
    r.args = {{"cycle", cycle_json(c)}};
    const auto v = validate_cusp(c);
    json rec = {{"type", "validation"},
                {"cycle", cycle_json(c)},
                {"valid", v.valid},
                {"condition", condition_label(v.failed)},
                {"message", v.message}};
    if (v.offending_index)
        rec["offending_index"] = *v.offending_index;
    if (v.valid) {
        const Mat2Z a = matrix_of_cycle(c);
        rec["neg_self_intersection"] = neg_self_intersection(c);
        rec["multiplicity"] = multiplicity(c);
        rec["canonical"] = cycle_json(canonicalize(c));
        rec["trace"] = a.trace();
        rec["hyperbolic"] = is_hyperbolic(a);
    }
    r.records.push_back(std::move(rec));
    return r;
}

Report cmd_dual(const CycleWord& c)
{
    Report r;
    r.command = "dual";
    r.args = {{"cycle", cycle_json(c)}};
    const CycleWord d = dual(c);
    r.records.push_back({{"type", "dual"},
                         {"cusp", cycle_json(c)},
                         {"dual", cycle_json(d)},
                         {"dual_canonical", cycle_json(canonicalize(d))},
                         {"neg_self_intersection", neg_self_intersection(c)},
                         {"multiplicity", multiplicity(c)}});
    return r;
}

Report cmd_symmetry(const CycleWord& c)
{
    Report r;
    r.command = "symmetry";
    r.args = {{"cycle", cycle_json(c)}};
    const bool cusp = validate_cusp(c).valid;
    json axes = json::array();
    for (const auto& ax : find_reflections(c)) {
        json a = axis_json(ax);
        if (cusp) {
            const auto s = induced_dual_reflection(SymmetricStructure(c, ax));
            a["dual"] = axis_json(s.axis());
            a["dual"]["cycle"] = cycle_json(s.cycle());
        }
        axes.push_back(std::move(a));
    }
    r.records.push_back({{"type", "symmetry"},
                         {"cycle", cycle_json(c)},
                         {"valid_cusp", cusp},
                         {"symmetric", !axes.empty()},
                         {"axes", axes}});
    return r;
}

Report cmd_involution(const CycleWord& c, const CommonOptions& opt)
{
    Report r;
    r.command = "involution";
    r.args = {{"cycle", cycle_json(c)}};
    if (opt.axis)
        r.args["axis"] = *opt.axis;
    require_cusp(c);
    const auto axes = select_axes(c, opt.axis);
    if (axes.empty())
        throw InvalidInput("cycle " + to_string(c) + " has no symmetric structure");
    for (const auto& ax : axes) {
        const auto d = build_involution_datum(SymmetricStructure(c, ax));
        json t = json::array(), te = json::array();
        for (const auto& x : d.t_candidates)
            t.push_back(x);
        for (const auto& x : d.t_candidates_eigen)
            te.push_back(x);
        r.records.push_back({{"type", "involution"},
                             {"cycle", cycle_json(c)},
                             {"axis", ax.axis()},
                             {"word", cycle_json(d.word)},
                             {"start", d.start},
                             {"A", matrix_json(d.A)},
                             {"trace", d.A.trace()},
                             {"hyperbolic", is_hyperbolic(d.A)},
                             {"A_identity_mod2", check_identity_mod2(d.A)},
                             {"B", matrix_json(d.B)},
                             {"B_squared_identity", d.B * d.B == Mat2Z::identity()},
                             {"dihedral_relation", d.B * d.A == d.A.inverse() * d.B},
                             {"u0_mod2", d.u0_mod2},
                             {"u_half_mod2", d.u_half_mod2},
                             {"t_candidates", t},
                             {"t_candidates_eigen", te}});
    }
    return r;
}

Report cmd_quotient(const CycleWord& c, const CommonOptions& opt)
{
    Report r;
    r.command = "quotient";
    r.args = {{"cycle", cycle_json(c)}};
    if (opt.axis)
        r.args["axis"] = *opt.axis;
    require_cusp(c);
    const auto axes = select_axes(c, opt.axis);
    if (axes.empty())
        throw InvalidInput("cycle " + to_string(c) + " has no symmetric structure");
    for (const auto& ax : axes) {
        const auto g = quotient_resolution_graph(SymmetricStructure(c, ax));
        const auto q = fork_intersection_matrix(g);
        r.records.push_back({{"type", "quotient"},
                             {"cycle", cycle_json(c)},
                             {"axis", ax.axis()},
                             {"chain", g.chain},
                             {"forks", json::array({2, 2, 2, 2})},
                             {"vertex_count", g.vertex_count()},
                             {"q_matrix", matrix_json(q)},
                             {"class_group", group_json(cokernel(q))}});
    }
    return r;
}

namespace {

json decide_record(const json& cusp, const json& cusp_axis, const CycleWord& d, const Reflection& dax,
                   const ToricCache* cache, const SmoothableOptions& sopt)
{
    json rec = {{"type", "verdict"},
                {"symmetric", true},
                {"cusp", cusp},
                {"cusp_axis", cusp_axis},
                {"dual", cycle_json(d)},
                {"dual_axis", dax.axis()}};
    if (d.size() < 4 || charge(d) < 3) {
        rec["accepted"] = false;
        rec["verdict"] = kVerdictFails;
        rec["reason"] = d.size() < 4 ? "dual cycle has fewer than four components"
                                     : "dual cycle has charge below 3 and cannot bound a negative definite pair";
        return rec;
    }
    const PairCycle target(d, dax);
    const Decision dec = decide_equivariant_pair(target, cache);
    rec.update(decision_json(dec));
    if (sopt.oracle) {
        const auto bf = brute_force_reachability(target, sopt.budget);
        rec["oracle"] = {{"reachable", bf.reachable},
                         {"states_explored", bf.states_explored},
                         {"agrees", bf.reachable == dec.accepted}};
    }
    return rec;
}

}  // namespace

Report cmd_smoothable(const CycleWord& c, const CommonOptions& opt, const SmoothableOptions& sopt)
{
    Report r;
    r.command = "smoothable";
    r.args = {{"cycle", cycle_json(c)}, {"dual_given", sopt.dual_given}, {"oracle", sopt.oracle}};
    if (opt.axis)
        r.args["axis"] = *opt.axis;
    const auto cache = make_cache(opt);
    const ToricCache* cp = cache ? &*cache : nullptr;

    if (sopt.dual_given) {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] < 2)
                throw InvalidInput("dual cycle " + to_string(c) + " must have every entry >= 2");
        const bool cusp_ok = validate_cusp(c).valid;
        const json cusp = cusp_ok ? cycle_json(dual(c)) : json(nullptr);
        const auto axes = select_axes(c, opt.axis);
        if (axes.empty())
            r.records.push_back({{"type", "verdict"}, {"symmetric", false}, {"cusp", cusp}, {"dual", cycle_json(c)}});
        for (const auto& ax : axes)
            r.records.push_back(decide_record(cusp, nullptr, c, ax, cp, sopt));
        return r;
    }

    require_cusp(c);
    const auto axes = select_axes(c, opt.axis);
    if (axes.empty()) {
        r.records.push_back({{"type", "verdict"}, {"symmetric", false}, {"cusp", cycle_json(c)}});
        return r;
    }
    for (const auto& ax : axes) {
        const auto s = induced_dual_reflection(SymmetricStructure(c, ax));
        r.records.push_back(decide_record(cycle_json(c), ax.axis(), s.cycle(), s.axis(), cp, sopt));
    }
    return r;
}

Report cmd_enumerate_toric(std::size_t n, const CommonOptions& opt)
{
    Report r;
    r.command = "enumerate-toric";
    r.args = {{"length", n}};
    const auto cache = make_cache(opt);
    const ToricSet set = enumerate_equivariant_toric(n, cache ? &*cache : nullptr);

    std::vector<json> rows;
    for (const auto& m : set.models) {
        const CycleWord canon = canonicalize(m.pair.d());
        json steps = json::array();
        for (const auto& s : m.corner_steps)
            steps.push_back(to_json(s));
        rows.push_back({{"type", "toric"},
                        {"n", n},
                        {"cycle", cycle_json(canon)},
                        {"axis", canonical_axis(canon, m.pair).axis()},
                        {"charge", charge(m.pair)},
                        {"replayed", {{"cycle", cycle_json(m.pair.d())}, {"axis", m.pair.axis().axis()}}},
                        {"corner_steps", steps}});
    }
    std::sort(rows.begin(), rows.end(), [](const json& a, const json& b) {
        const auto ca = a["cycle"].get<std::vector<std::int64_t>>(), cb = b["cycle"].get<std::vector<std::int64_t>>();
        if (ca != cb)
            return ca < cb;
        return a["axis"].get<std::size_t>() < b["axis"].get<std::size_t>();
    });
    r.records = std::move(rows);
    json summary = {{"type", "summary"}, {"length", n}, {"count", set.models.size()}};
    if (set.cache_file) {
        summary["cache_file"] = set.cache_file->string();
        summary["cache_hit"] = set.from_cache;
    }
    r.records.push_back(std::move(summary));
    return r;
}

Report cmd_scan(std::size_t n, std::int64_t max_entry, const CommonOptions& opt)
{
    Report r;
    r.command = "scan";
    r.args = {{"length", n}, {"max_entry", max_entry}};
    const auto cache = make_cache(opt);
    const ScanResult s = scan_length(n, max_entry, cache ? &*cache : nullptr);
    for (const auto& f : s.failures) {
        json axes = json::array();
        for (const auto& v : f.verdicts)
            axes.push_back({{"axis", v.axis.axis()},
                            {"models_tried", v.decision.models_tried},
                            {"alignments_tried", v.decision.alignments_tried}});
        r.records.push_back({{"type", "failure"},
                             {"cusp", cycle_json(f.cusp)},
                             {"dual", cycle_json(f.dual_cycle)},
                             {"labeled", cycle_json(f.labeled)},
                             {"axes", axes},
                             {"verdict", kVerdictFails}});
    }
    r.records.push_back({{"type", "summary"},
                         {"length", n},
                         {"max_entry", max_entry},
                         {"cycles_examined", s.cycles_examined},
                         {"excluded_low_charge", s.excluded_low_charge},
                         {"accepted", s.accepted},
                         {"witnesses_verified", s.witnesses_verified},
                         {"failures", s.failures.size()}});
    return r;
}

Report cmd_pi1(const std::string& rays)
{
    Report r;
    r.command = "pi1";
    r.args = {{"blowup_rays", rays}};
    const auto v = parse_rays(rays);
    const auto res = pi1_complement(v);
    json arr = json::array();
    for (const auto& x : v)
        arr.push_back(json::array({x.x, x.y}));
    r.records.push_back({{"type", "pi1"}, {"rays", arr}, {"group", group_json(res.group)}, {"no_rays", res.no_rays}});
    return r;
}

}  // namespace cuspsym
