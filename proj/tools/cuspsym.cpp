// cuspsym: symmetric cusp cycles, their duals and equivariant Looijenga pairs.
//
// Exit codes: 0 when a report was rendered (negative verdicts included),
// 1 for invalid input, 2 when a budget or length bound was exceeded.

#include <chrono>
#include <iostream>

#include "CLI11.hpp"

#include "cuspsym/errors.hpp"
#include "cuspsym/report.hpp"

using namespace cuspsym;

namespace {

struct Flags {
    std::string cycle;
    std::int64_t axis = 0;
    std::string format = "text";
    std::size_t length = 0;
    std::int64_t max_entry = 10;
    std::size_t budget = 2'000'000;
    std::string cache_dir;
    bool no_cache = false;
    bool dual_given = false;
    bool oracle = false;
    std::string rays;
};

void add_format(CLI::App* sub, Flags& f)
{
    sub->add_option("--format", f.format, "text or machine (line-delimited JSON)")
        ->check(CLI::IsMember({"text", "machine"}));
}

void add_cache(CLI::App* sub, Flags& f)
{
    sub->add_option("--cache-dir", f.cache_dir, "toric cache directory (default: $CUSPSYM_CACHE_DIR)");
    sub->add_flag("--no-cache", f.no_cache, "do not read or write the toric cache");
}

CLI::Option* add_cycle(CLI::App* sub, Flags& f)
{
    return sub->add_option("--cycle", f.cycle, "cycle entries, e.g. 3,10,3,4")->required();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symmetric cusp singularities and equivariant Looijenga pairs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolkitVersion);
    Flags f;
    CLI::Option* axis_opt = nullptr;
    std::vector<CLI::Option*> axis_opts;

    auto* validate = app.add_subcommand("validate", "check the cusp conditions on a cycle");
    add_cycle(validate, f);
    add_format(validate, f);

    auto* dual_cmd = app.add_subcommand("dual", "dual cusp cycle");
    add_cycle(dual_cmd, f);
    add_format(dual_cmd, f);

    auto* symmetry = app.add_subcommand("symmetry", "symmetric axes and the induced axes on the dual");
    add_cycle(symmetry, f);
    add_format(symmetry, f);

    auto* involution = app.add_subcommand("involution", "matrices A, B and translation classes");
    add_cycle(involution, f);
    add_format(involution, f);
    axis_opts.push_back(involution->add_option("--axis", f.axis, "doubled axis s (even)"));

    auto* quotient = app.add_subcommand("quotient", "resolution graph and class group of the Z/2 quotient");
    add_cycle(quotient, f);
    add_format(quotient, f);
    axis_opts.push_back(quotient->add_option("--axis", f.axis, "doubled axis s (even)"));

    auto* smoothable = app.add_subcommand("smoothable", "decide the equivariant pair condition per axis");
    add_cycle(smoothable, f);
    add_format(smoothable, f);
    add_cache(smoothable, f);
    axis_opts.push_back(smoothable->add_option("--axis", f.axis, "doubled axis s (even)"));
    smoothable->add_flag("--dual-given", f.dual_given, "the cycle is already the dual cycle");
    smoothable->add_flag("--oracle", f.oracle, "cross-check with the brute-force search");
    smoothable->add_option("--budget", f.budget, "state budget for --oracle");

    auto* enumerate = app.add_subcommand("enumerate-toric", "equivariant toric models of a given length");
    enumerate->add_option("--length", f.length, "even cycle length")->required();
    add_format(enumerate, f);
    add_cache(enumerate, f);

    auto* scan = app.add_subcommand("scan", "symmetric cycles of a given length failing the pair condition");
    scan->add_option("--length", f.length, "even cycle length")->required();
    scan->add_option("--max-entry", f.max_entry, "largest entry enumerated")->capture_default_str();
    add_format(scan, f);
    add_cache(scan, f);

    auto* pi1 = app.add_subcommand("pi1", "fundamental group N / <rays>");
    pi1->add_option("--blowup-rays", f.rays, "rays as \"x,y;x,y;...\"")->required();
    add_format(pi1, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    for (auto* o : axis_opts)
        if (o->count() > 0)
            axis_opt = o;

    const Format format = f.format == "machine" ? Format::Machine : Format::Text;
    CommonOptions common;
    if (axis_opt)
        common.axis = f.axis;
    if (!f.cache_dir.empty())
        common.cache_dir = f.cache_dir;
    common.use_cache = !f.no_cache;

    const std::string name = sub->get_name();
    const auto t0 = std::chrono::steady_clock::now();
    Report report;
    int code = 0;
    try {
        if (name == "validate")
            report = cmd_validate(parse_cycle(f.cycle));
        else if (name == "dual")
            report = cmd_dual(parse_cycle(f.cycle));
        else if (name == "symmetry")
            report = cmd_symmetry(parse_cycle(f.cycle));
        else if (name == "involution")
            report = cmd_involution(parse_cycle(f.cycle), common);
        else if (name == "quotient")
            report = cmd_quotient(parse_cycle(f.cycle), common);
        else if (name == "smoothable")
            report = cmd_smoothable(parse_cycle(f.cycle), common, {f.dual_given, f.oracle, f.budget});
        else if (name == "enumerate-toric")
            report = cmd_enumerate_toric(f.length, common);
        else if (name == "scan")
            report = cmd_scan(f.length, f.max_entry, common);
        else if (name == "pi1")
            report = cmd_pi1(f.rays);
    } catch (const InvalidInput& e) {
        report = error_report(name, "invalid_input", e.what());
        code = 1;
    } catch (const BudgetExceeded& e) {
        report = error_report(name, "budget_exceeded", e.what());
        code = 2;
    }
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    (code == 0 ? std::cout : std::cerr) << render(report, format);
    return code;
}
