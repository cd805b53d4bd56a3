#include <cstdlib>
#include <fstream>
#include <set>
#include <unistd.h>

#include "cuspsym/errors.hpp"
#include "cuspsym/pairs.hpp"

namespace cuspsym {

namespace fs = std::filesystem;

nlohmann::json to_json(const EquivariantStep& s)
{
    const char* kind = "corner_pair";
    if (s.kind == EquivariantStep::Kind::InteriorPair)
        kind = "interior_pair";
    else if (s.kind == EquivariantStep::Kind::InteriorDouble)
        kind = "interior_double";
    return {{"kind", kind}, {"index", s.index}};
}

EquivariantStep step_from_json(const nlohmann::json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    const auto index = j.at("index").get<std::size_t>();
    if (kind == "corner_pair")
        return {EquivariantStep::Kind::CornerPair, index};
    if (kind == "interior_pair")
        return {EquivariantStep::Kind::InteriorPair, index};
    if (kind == "interior_double")
        return {EquivariantStep::Kind::InteriorDouble, index};
    throw InvalidInput("unknown step kind \"" + kind + "\"");
}

nlohmann::json to_json(const ToricWitness& w)
{
    nlohmann::json corner = nlohmann::json::array(), interior = nlohmann::json::array();
    for (const auto& s : w.corner_steps)
        corner.push_back(to_json(s));
    for (const auto& s : w.interior_steps)
        interior.push_back(to_json(s));
    return {{"toric_cycle", w.toric.d().entries()},
            {"axis", w.toric.axis().axis()},
            {"alignment", w.alignment},
            {"corner_steps", corner},
            {"interior_steps", interior}};
}

ToricCache::ToricCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ToricCache::default_directory()
{
    if (const char* env = std::getenv("CUSPSYM_CACHE_DIR"); env && *env)
        return env;
    if (const char* xdg = std::getenv("XDG_DATA_HOME"); xdg && *xdg)
        return fs::path(xdg) / "cuspsym";
    if (const char* home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".local" / "share" / "cuspsym";
    return fs::temp_directory_path() / "cuspsym";
}

fs::path ToricCache::file_for(std::size_t n) const
{
    return dir_ / ("toric_v1_n" + std::to_string(n) + ".jsonl");
}

std::optional<std::vector<ToricModel>> ToricCache::load(std::size_t n) const
{
    std::ifstream in(file_for(n));
    if (!in)
        return std::nullopt;
    std::vector<ToricModel> models;
    std::set<std::vector<std::int64_t>> keys;
    std::string line;
    try {
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            const auto j = nlohmann::json::parse(line);
            if (j.at("n").get<std::size_t>() != n)
                return std::nullopt;
            std::vector<EquivariantStep> steps;
            for (const auto& s : j.at("corner_steps"))
                steps.push_back(step_from_json(s));
            // Records are trusted only if they replay.
            PairCycle p = replay(seed_pair(), steps);
            if (p.d().entries() != j.at("cycle").get<std::vector<std::int64_t>>() ||
                p.axis().axis() != j.at("axis").get<std::size_t>() || p.size() != n)
                return std::nullopt;
            auto key = pair_key(p);
            if (!keys.insert(key).second)
                return std::nullopt;
            models.push_back({std::move(p), std::move(steps), std::move(key)});
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (models.empty())
        return std::nullopt;
    for (std::size_t i = 1; i < models.size(); ++i)
        if (!(models[i - 1].key < models[i].key))
            return std::nullopt;
    return models;
}

void ToricCache::store(std::size_t n, const std::vector<ToricModel>& models) const
{
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
        return;  // an unwritable cache only costs recomputation
    const fs::path target = file_for(n);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            return;
        for (const auto& m : models) {
            nlohmann::json steps = nlohmann::json::array();
            for (const auto& s : m.corner_steps)
                steps.push_back(to_json(s));
            const nlohmann::json rec = {{"n", n},
                                        {"cycle", m.pair.d().entries()},
                                        {"axis", m.pair.axis().axis()},
                                        {"corner_steps", steps}};
            out << rec.dump() << '\n';
        }
        if (!out) {
            fs::remove(tmp, ec);
            return;
        }
    }
    fs::rename(tmp, target, ec);
    if (ec)
        fs::remove(tmp, ec);
}

}  // namespace cuspsym
