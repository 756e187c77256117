#pragma once

#include <jetdisc/algebra/field.hpp>
#include <jetdisc/dimension/dimension.hpp>
#include <jetdisc/error.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace jetdisc::cli {

/// Malformed job file; carries the 1-based line of the offending entry (0 when the problem is a missing key).
class JobError : public Error {
public:
    JobError(std::string const& origin, std::size_t line, std::string const& what)
        : Error(origin + (line ? ":" + std::to_string(line) : std::string()) + ": " + what), line_(line)
    {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class Task { jets, mld, ioa, classify, cdv, sweep };

inline std::string to_string(Task t)
{
    switch (t) {
    case Task::jets: return "jets";
    case Task::mld: return "mld";
    case Task::ioa: return "ioa";
    case Task::classify: return "classify";
    case Task::cdv: return "cdv";
    case Task::sweep: return "sweep";
    }
    return "?";
}

/// A job as written in the file; polynomials stay strings until a ring is built.
struct Job {
    std::string origin; ///< file the job came from (for messages and relative corpus paths)
    std::string name;
    FieldSpec field;
    std::vector<std::string> vars;
    std::vector<std::string> generators;
    int dim = -1;
    std::vector<std::string> point; ///< empty: the origin
    Task task = Task::mld;
    unsigned max_level = 5;
    std::uint64_t seed = 42;
    Oracle oracle = Oracle::both;
    std::optional<std::uint64_t> budget_count;
    std::optional<std::uint64_t> budget_groebner;
    std::vector<std::string> subvariety;
    std::vector<std::string> corpus;
    unsigned trials = 5;
};

namespace detail {

inline std::string trim(std::string s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(std::string const& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline std::uint64_t parse_unsigned(std::string const& s)
{
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("expected a non-negative integer, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (std::out_of_range const&) {
        throw DomainError("integer '" + s + "' is out of range");
    }
}

} // namespace detail

/// Field names: Q, QQ, F_p, GF(p) or a bare prime p.
inline FieldSpec parse_field(std::string const& s)
{
    if (s == "Q" || s == "QQ") return FieldSpec::rationals();
    std::string digits = s;
    if (s.rfind("F_", 0) == 0)
        digits = s.substr(2);
    else if (s.rfind("GF(", 0) == 0 && s.back() == ')')
        digits = s.substr(3, s.size() - 4);
    auto p = detail::parse_unsigned(digits);
    if (p > 0x7fffffffu) throw DomainError("field characteristic " + digits + " is too large");
    return FieldSpec::prime(static_cast<std::uint32_t>(p));
}

inline Task parse_task(std::string const& s)
{
    for (Task t : {Task::jets, Task::mld, Task::ioa, Task::classify, Task::cdv, Task::sweep})
        if (to_string(t) == s) return t;
    throw DomainError("unknown task '" + s + "' (expected jets, mld, ioa, classify, cdv or sweep)");
}

/// Reads the flat `key = value` format: one key per line, lists comma-separated, '#' starts a comment.
inline Job parse_job(std::string const& text, std::string const& origin = "<job>")
{
    Job job;
    job.origin = origin;
    std::map<std::string, std::size_t> seen;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto line = detail::trim(raw);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw JobError(origin, line_no, "expected 'key = value'");
        auto key = detail::trim(line.substr(0, eq));
        auto value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw JobError(origin, line_no, "missing key");
        if (auto [it, fresh] = seen.emplace(key, line_no); !fresh)
            throw JobError(origin, line_no, "duplicate key '" + key + "' (first on line " + std::to_string(it->second) + ")");
        try {
            if (key == "name") job.name = value;
            else if (key == "field") job.field = parse_field(value);
            else if (key == "vars") job.vars = detail::split_list(value);
            else if (key == "generators") job.generators = detail::split_list(value);
            else if (key == "dim") job.dim = static_cast<int>(detail::parse_unsigned(value));
            else if (key == "point") job.point = detail::split_list(value);
            else if (key == "task") job.task = parse_task(value);
            else if (key == "max_level") job.max_level = static_cast<unsigned>(detail::parse_unsigned(value));
            else if (key == "seed") job.seed = detail::parse_unsigned(value);
            else if (key == "oracle") job.oracle = parse_oracle(value);
            else if (key == "budget.count") job.budget_count = detail::parse_unsigned(value);
            else if (key == "budget.groebner") job.budget_groebner = detail::parse_unsigned(value);
            else if (key == "subvariety") job.subvariety = detail::split_list(value);
            else if (key == "corpus") job.corpus = detail::split_list(value);
            else if (key == "trials") job.trials = static_cast<unsigned>(detail::parse_unsigned(value));
            else throw DomainError("unknown key '" + key + "'");
        } catch (JobError const&) {
            throw;
        } catch (Error const& e) {
            throw JobError(origin, line_no, e.what());
        }
    }
    if (job.name.empty()) job.name = std::filesystem::path(origin).stem().string();
    bool needs_equations = job.task != Task::sweep || job.corpus.empty();
    if (needs_equations) {
        if (job.vars.empty()) throw JobError(origin, 0, "missing key 'vars'");
        if (job.generators.empty()) throw JobError(origin, 0, "missing key 'generators'");
        if (job.dim < 0) {
            if (job.task == Task::classify) job.dim = 2;
            else if (job.task == Task::cdv) job.dim = 3;
            else throw JobError(origin, 0, "missing key 'dim'");
        }
        if (!job.point.empty() && job.point.size() != job.vars.size())
            throw JobError(origin, seen["point"], "point has " + std::to_string(job.point.size()) +
                                                      " coordinates for " + std::to_string(job.vars.size()) + " variables");
    }
    return job;
}

inline Job load_job(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot read job file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_job(ss.str(), path.string());
}

/// Budgets from the job, overridden by JETDISC_BUDGET: either one integer for both budgets or a list such as
/// "count=1000000,groebner=500000".
inline DimensionConfig dimension_config(Job const& job, char const* env = std::getenv("JETDISC_BUDGET"))
{
    DimensionConfig cfg;
    cfg.oracle = job.oracle;
    if (job.budget_count) cfg.count_budget = *job.budget_count;
    if (job.budget_groebner) cfg.groebner.max_steps = *job.budget_groebner;
    if (env && *env) {
        std::string s = env;
        try {
            if (s.find('=') == std::string::npos) {
                auto n = detail::parse_unsigned(detail::trim(s));
                cfg.count_budget = n;
                cfg.groebner.max_steps = n;
            } else {
                for (auto const& item : detail::split_list(s)) {
                    auto eq = item.find('=');
                    auto key = detail::trim(item.substr(0, eq));
                    auto n = detail::parse_unsigned(detail::trim(item.substr(eq + 1)));
                    if (key == "count") cfg.count_budget = n;
                    else if (key == "groebner") cfg.groebner.max_steps = n;
                    else throw DomainError("unknown budget '" + key + "'");
                }
            }
        } catch (Error const& e) {
            throw Error(std::string("JETDISC_BUDGET: ") + e.what());
        }
    }
    return cfg;
}

} // namespace jetdisc::cli
