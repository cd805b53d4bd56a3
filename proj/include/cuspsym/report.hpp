#pragma once

// Report assembly for the command-line tool. A report is a list of JSON
// records, each tagged with a "type"; the machine format writes them one per
// line, the text format renders the same records for reading.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cuspsym/cycle.hpp"

namespace cuspsym {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr const char* kReportSchema = "cuspsym.report/1";

struct Report {
    std::string command;
    nlohmann::json args = nlohmann::json::object();
    std::vector<nlohmann::json> records;
    double elapsed_ms = 0.0;
};

enum class Format { Text, Machine };

// Header record, body records, then a trailer carrying the timing.
std::string render(const Report& r, Format f);

// Report for an error raised while running a command.
Report error_report(const std::string& command, const std::string& kind, const std::string& message);

struct CommonOptions {
    std::optional<std::int64_t> axis;
    std::optional<std::filesystem::path> cache_dir;
    bool use_cache = true;
};

Report cmd_validate(const CycleWord& c);
Report cmd_dual(const CycleWord& c);
Report cmd_symmetry(const CycleWord& c);
Report cmd_involution(const CycleWord& c, const CommonOptions& opt);
Report cmd_quotient(const CycleWord& c, const CommonOptions& opt);

struct SmoothableOptions {
    bool dual_given = false;
    bool oracle = false;
    std::size_t budget = 2'000'000;
};

Report cmd_smoothable(const CycleWord& c, const CommonOptions& opt, const SmoothableOptions& sopt);
Report cmd_enumerate_toric(std::size_t n, const CommonOptions& opt);
Report cmd_scan(std::size_t n, std::int64_t max_entry, const CommonOptions& opt);
Report cmd_pi1(const std::string& rays);

// Verdict wording for a decided axis.
inline constexpr const char* kVerdictHolds =
    "equivariant Looijenga pair exists (sufficient condition holds)";
inline constexpr const char* kVerdictFails =
    "no equivariant pair (sufficient condition fails; conjecturally not equivariantly smoothable)";
inline constexpr const char* kVerdictNotSymmetric = "no symmetric structure";

}  // namespace cuspsym
