#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <random>
#include <sstream>

#include "cuspsym/errors.hpp"
#include "cuspsym/pairs.hpp"
#include "cuspsym/report.hpp"

using namespace cuspsym;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::vector<json> lines_of(const std::string& text)
{
    std::vector<json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(json::parse(line));
    return out;
}

// Rendered machine output with the timing trailer removed.
std::string untimed(Report r)
{
    r.elapsed_ms = 0.0;
    return render(r, Format::Machine);
}

CommonOptions no_cache()
{
    CommonOptions o;
    o.use_cache = false;
    return o;
}

}  // namespace

TEST_CASE("machine format framing")
{
    auto r = cmd_dual(CycleWord{3, 10, 3, 4});
    r.elapsed_ms = 12.5;
    const auto recs = lines_of(render(r, Format::Machine));
    REQUIRE(recs.size() == 3);
    CHECK(recs[0]["type"] == "header");
    CHECK(recs[0]["schema"] == kReportSchema);
    CHECK(recs[0]["toolkit_version"] == kToolkitVersion);
    CHECK(recs[0]["command"] == "dual");
    CHECK(recs[1]["type"] == "dual");
    CHECK(recs[2]["type"] == "timing");
    CHECK(recs[2]["elapsed_ms"] == 12.5);
}

TEST_CASE("reports are deterministic apart from timing")
{
    const CycleWord c{3, 10, 3, 4};
    CHECK(untimed(cmd_validate(c)) == untimed(cmd_validate(c)));
    CHECK(untimed(cmd_symmetry(c)) == untimed(cmd_symmetry(c)));
    CHECK(untimed(cmd_involution(c, {})) == untimed(cmd_involution(c, {})));
    CHECK(untimed(cmd_smoothable(c, no_cache(), {})) == untimed(cmd_smoothable(c, no_cache(), {})));
    CHECK(untimed(cmd_enumerate_toric(10, no_cache())) == untimed(cmd_enumerate_toric(10, no_cache())));
    CHECK(render(cmd_scan(6, 6, no_cache()), Format::Text) == render(cmd_scan(6, 6, no_cache()), Format::Text));
}

TEST_CASE("cycle records round trip")
{
    std::mt19937_64 rng(79);
    std::uniform_int_distribution<std::size_t> len(1, 9);
    std::uniform_int_distribution<Entry> ent(2, 9);
    for (int t = 0; t < 300; ++t) {
        std::vector<Entry> e(len(rng));
        for (auto& x : e)
            x = ent(rng);
        const CycleWord c(e);
        if (!validate_cusp(c).valid)
            continue;
        const auto recs = lines_of(untimed(cmd_dual(c)));
        const auto& rec = recs[1];
        CHECK(CycleWord(rec["cusp"].get<std::vector<Entry>>()) == c);
        const CycleWord d(rec["dual"].get<std::vector<Entry>>());
        CHECK(d == dual(c));
        CHECK(parse_cycle(to_string(d)) == d);
        CHECK(rec["multiplicity"] == multiplicity(c));
    }
}

TEST_CASE("validation report")
{
    auto recs = lines_of(untimed(cmd_validate(CycleWord{3, 10, 3, 4})));
    CHECK(recs[1]["valid"] == true);
    CHECK(recs[1]["multiplicity"] == 12);
    CHECK(recs[1]["hyperbolic"] == true);
    recs = lines_of(untimed(cmd_validate(CycleWord{2, 2, 2})));
    CHECK(recs[1]["valid"] == false);
}

TEST_CASE("smoothable verdicts")
{
    auto recs = lines_of(untimed(cmd_smoothable(CycleWord{3, 10, 3, 4}, no_cache(), {})));
    REQUIRE(recs.size() == 3);
    CHECK(recs[1]["accepted"] == false);
    CHECK(recs[1]["verdict"] == kVerdictFails);

    recs = lines_of(untimed(cmd_smoothable(CycleWord{4, 2, 4, 2}, no_cache(), {})));
    for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
        CHECK(recs[i]["accepted"] == true);
        CHECK(recs[i]["verdict"] == kVerdictHolds);
    }

    recs = lines_of(untimed(cmd_smoothable(CycleWord{2, 3}, no_cache(), {})));
    CHECK(recs[1]["symmetric"] == false);
    CHECK(render(cmd_smoothable(CycleWord{2, 3}, no_cache(), {}), Format::Text).find(kVerdictNotSymmetric) !=
          std::string::npos);

    SmoothableOptions oracle;
    oracle.oracle = true;
    recs = lines_of(untimed(cmd_smoothable(CycleWord{6, 2, 6, 2}, no_cache(), oracle)));
    CHECK(recs[1]["oracle"]["agrees"] == true);
}

TEST_CASE("text scan output lists cusp then dual")
{
    const auto text = render(cmd_scan(8, 6, no_cache()), Format::Text);
    CHECK(text.rfind("cusp", 0) == 0);
}

TEST_CASE("errors raise the documented exceptions")
{
    CHECK_THROWS_AS(cmd_involution(CycleWord{3, 10, 3, 4}, CommonOptions{3, std::nullopt, false}), InvalidInput);
    CHECK_THROWS_AS(cmd_enumerate_toric(24, no_cache()), BudgetExceeded);
    CHECK_THROWS_AS(cmd_pi1("2,2"), InvalidInput);
    const auto e = lines_of(untimed(error_report("dual", "invalid_input", "bad")));
    CHECK(e[1]["type"] == "error");
    CHECK(e[1]["kind"] == "invalid_input");
}

TEST_CASE("enumerate report and cache coherence")
{
    const fs::path dir = fs::temp_directory_path() / ("cuspsym_report_" + std::to_string(std::random_device{}()));
    CommonOptions opt;
    opt.cache_dir = dir;
    const auto a = lines_of(untimed(cmd_enumerate_toric(10, opt)));
    const auto b = lines_of(untimed(cmd_enumerate_toric(10, opt)));
    REQUIRE(a.size() == b.size());
    CHECK(a[a.size() - 2]["cache_hit"] == false);
    CHECK(b[b.size() - 2]["cache_hit"] == true);
    for (std::size_t i = 1; i + 2 < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(a[i]["charge"] == 0);
    }
    CHECK(a[a.size() - 2]["count"] == enumerate_equivariant_toric(10).models.size());
    fs::remove_all(dir);
}

TEST_CASE("pi1 report")
{
    const auto recs = lines_of(untimed(cmd_pi1("1,1;-1,1;-1,-1;1,-1")));
    CHECK(recs[1]["type"] == "pi1");
    CHECK(render(cmd_pi1("1,1;-1,1;-1,-1;1,-1"), Format::Text).find("Z/2") != std::string::npos);
}
