#pragma once

#include <jetdisc/algebra/parse.hpp>
#include <jetdisc/classify/top.hpp>
#include <jetdisc/cli/job.hpp>
#include <jetdisc/jets/jets.hpp>
#include <jetdisc/mld/generic.hpp>
#include <jetdisc/mld/mld.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace jetdisc::cli {

/// Everything a run produces. Numbers appear once, as strings, so the text and CSV renderings cannot drift apart.
struct Report {
    std::string name;
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;

    void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
    std::string const* find(std::string const& key) const
    {
        for (auto const& [k, v] : fields)
            if (k == key) return &v;
        return nullptr;
    }
};

inline std::string render_text(Report const& r)
{
    std::string out;
    for (auto const& [k, v] : r.fields) out += k + " = " + v + "\n";
    return out;
}

inline std::string render_csv(Report const& r)
{
    auto join = [](std::vector<std::string> const& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
        return line + "\n";
    };
    std::string out = join(r.csv_header);
    for (auto const& row : r.csv_rows) out += join(row);
    return out;
}

/// Writes <dir>/<name>.txt and, when the report has rows, <dir>/<name>.csv for the requested formats.
inline std::vector<std::filesystem::path> emit_report(Report const& r, std::set<std::string> const& formats,
                                                      std::filesystem::path const& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;
    auto write = [&](std::filesystem::path const& p, std::string const& body) {
        std::ofstream out(p, std::ios::binary);
        if (!out || !(out << body)) throw Error("cannot write " + p.string());
        written.push_back(p);
    };
    if (formats.count("text")) write(dir / (r.name + ".txt"), render_text(r));
    if (formats.count("csv") && !r.csv_header.empty()) write(dir / (r.name + ".csv"), render_csv(r));
    return written;
}

namespace detail {

template <typename T>
std::string join(std::vector<T> const& v, char const* sep = ",")
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    return os.str();
}

template <CoefficientField F>
std::vector<typename F::value_type> parse_point(Job const& job, RingPtr<F> const& ring)
{
    auto const& k = ring->field();
    std::vector<typename F::value_type> pt(ring->arity(), k.zero());
    for (std::size_t i = 0; i < job.point.size(); ++i) {
        auto c = parse_poly(job.point[i], ring);
        if (c.total_degree() > 0) throw DomainError("point coordinate '" + job.point[i] + "' is not a constant");
        pt[i] = c.constant_coefficient();
    }
    return pt;
}

template <CoefficientField F>
std::string point_string(F const& k, std::vector<typename F::value_type> const& pt)
{
    std::vector<std::string> s;
    for (auto const& c : pt) s.push_back(k.to_string(c));
    return join(s);
}

template <CoefficientField F>
IdealPresentation<F> parse_ideal(std::vector<std::string> const& gens, RingPtr<F> const& ring)
{
    IdealPresentation<F> I(ring);
    for (auto const& g : gens) {
        try {
            I.generators.push_back(parse_poly(g, ring));
        } catch (ParseError const& e) {
            throw ParseError("in '" + g + "': " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" at ")),
                             e.position());
        }
    }
    return I;
}

inline void add_sequence(Report& r, SSequence const& seq, std::string const& prefix = "")
{
    std::vector<std::string> levels, dims, s, methods, oracles;
    for (auto const& l : seq.levels) {
        levels.push_back(std::to_string(l.m));
        dims.push_back(std::to_string(l.fiber_dim));
        s.push_back(l.s ? std::to_string(*l.s) : "empty");
        methods.push_back(l.method);
        oracles.push_back(l.oracle);
    }
    r.add(prefix + "levels", join(levels));
    r.add(prefix + "fiber_dims", join(dims));
    r.add(prefix + "s", join(s));
    r.add(prefix + "methods", join(methods));
    r.add(prefix + "oracle_status", join(oracles));
    if (seq.partial) r.add(prefix + "partial", seq.partial_reason);
}

inline void add_sequence_csv(Report& r, SSequence const& seq)
{
    r.csv_header = {"level", "fiber_dim", "s_value", "method"};
    for (auto const& l : seq.levels)
        r.csv_rows.push_back({std::to_string(l.m), std::to_string(l.fiber_dim), l.s ? std::to_string(*l.s) : "empty",
                              l.method});
}

inline void add_mld(Report& r, MldReport const& m, std::string const& prefix = "")
{
    r.add(prefix + "mld", m.estimate ? m.estimate->to_string() : "none");
    r.add(prefix + "exact", m.exact ? "true" : "false");
    r.add(prefix + "certificate", m.certificate);
    r.add(prefix + "mj_canonical", to_string(m.mj_canonical));
    r.add(prefix + "mj_log_canonical", to_string(m.mj_log_canonical));
    for (auto const& n : m.notes) r.add(prefix + "note", n);
}

inline void add_class(Report& r, SingularityClass const& c, std::string const& prefix = "")
{
    r.add(prefix + "label", c.name());
    if (c.multiplicity) r.add(prefix + "multiplicity", std::to_string(*c.multiplicity));
    if (c.tau) r.add(prefix + "tau", std::to_string(*c.tau));
    if (c.shape) r.add(prefix + "cubic_shape", to_string(*c.shape));
    if (c.truncation) r.add(prefix + "truncation", std::to_string(c.truncation));
    r.add(prefix + "reason", c.reason);
}

template <CoefficientField F>
void run_task(Job const& job, F const& k, DimensionConfig const& cfg, Report& r)
{
    auto ring = make_ring(k, job.vars);
    auto X = parse_ideal(job.generators, ring);
    auto pt = parse_point(job, ring);
    VarietyJob<F> vj{X, job.dim, pt};
    vj.validate();
    unsigned M = job.max_level;

    switch (job.task) {
    case Task::jets: {
        bool all_graded = true;
        for (unsigned m = 0; m <= M; ++m) {
            auto sys = jet_fiber_ideal(X, vj.point_span(), m);
            bool graded = weight_check(sys);
            all_graded = all_graded && graded;
            std::string p = "jets." + std::to_string(m) + ".";
            r.add(p + "variables", std::to_string(sys.ring.arity()));
            r.add(p + "equations", std::to_string(sys.ideal.nonzero().generators.size()));
            r.add(p + "empty", sys.empty ? "true" : "false");
            r.add(p + "weight_homogeneous", graded ? "true" : "false");
        }
        r.add("weight_homogeneous", all_graded ? "true" : "false");
        auto seq = s_sequence(vj, M, cfg);
        add_sequence(r, seq);
        add_sequence_csv(r, seq);
        break;
    }
    case Task::mld: {
        auto emb = emb_dim_bound_check(vj);
        r.add("emb_dim", std::to_string(emb.emb));
        auto m = mld_mj_estimate(vj, M, cfg);
        add_sequence(r, m.seq);
        add_mld(r, m);
        add_sequence_csv(r, m.seq);
        if (!job.subvariety.empty()) {
            auto V = parse_ideal(job.subvariety, ring);
            auto g = generic_point_s_sequence(vj, V, M, job.seed, cfg);
            r.add("generic.prime", std::to_string(g.prime));
            r.add("generic.point", point_string(PrimeField(g.prime), g.first.point));
            r.add("generic.attempts", std::to_string(g.first.attempts));
            add_sequence(r, g.seq_first, "generic.");
            r.add("generic.replicate_point", point_string(PrimeField(g.prime), g.second.point));
            r.add("generic.replicate_s", join(g.seq_second.values()));
            r.add("generic.disagree", g.disagree ? "true" : "false");
        }
        break;
    }
    case Task::ioa: {
        auto io = inversion_check(vj, M, cfg);
        add_sequence(r, io.lhs.seq, "lhs.");
        add_mld(r, io.lhs, "lhs.");
        std::vector<std::string> terms;
        for (auto const& t : io.rhs_pair.terms)
            terms.push_back(join(t.orders, "/") + ":" + std::to_string(t.codim) + ":" + t.value.to_string());
        r.add("rhs.exponent", std::to_string(static_cast<int>(vj.ambient_arity()) - job.dim));
        r.add("rhs.terms", join(terms, ";"));
        r.add("rhs.mld", io.rhs.to_string());
        r.add("rhs.exact", io.rhs_exact ? "true" : "false");
        r.add("rhs.certificate", io.rhs_certificate);
        r.add("agree", io.agree ? "true" : "false");
        add_sequence_csv(r, io.lhs.seq);
        break;
    }
    case Task::classify: {
        if (X.nonzero().generators.size() != 1 || ring->arity() != 3)
            throw DomainError("classify needs one equation in three variables");
        if (!point_on_variety(vj)) throw DomainError("point is not on the surface");
        auto f = translate(X.nonzero().generators.front(), vj.point_span());
        auto c = classify_surface_dp(f);
        add_class(r, c);
        r.add("du_val", c.is_du_val() ? "true" : "false");
        r.add("top_label", c.is_top() ? "true" : "false");
        break;
    }
    case Task::cdv: {
        auto rep = cdv_hyperplane_test(vj, job.trials, job.seed);
        r.add("trials", std::to_string(rep.cuts.size()));
        std::vector<std::string> ms;
        for (auto const& [label, n] : rep.multiset) ms.push_back(label + "x" + std::to_string(n));
        r.add("multiset", join(ms, ";"));
        r.add("majority", rep.majority);
        r.add("unanimous", rep.unanimous ? "true" : "false");
        r.add("cdv", rep.cdv ? "true" : "false");
        r.add("compound", rep.compound ? *rep.compound : "none");
        r.csv_header = {"trial", "a0", "a1", "a2", "a3", "attempts", "label"};
        for (std::size_t i = 0; i < rep.cuts.size(); ++i) {
            auto const& c = rep.cuts[i];
            std::vector<std::string> row{std::to_string(i)};
            row.insert(row.end(), c.coefficients.begin(), c.coefficients.end());
            row.push_back(std::to_string(c.attempts));
            row.push_back(c.classification.name());
            r.csv_rows.push_back(std::move(row));
        }
        break;
    }
    case Task::sweep: break; // handled by run_job
    }
}

inline void echo_job(Report& r, Job const& job)
{
    r.add("job", job.name);
    r.add("task", to_string(job.task));
    if (!job.vars.empty()) {
        r.add("field", job.field.to_string());
        r.add("vars", join(job.vars));
        r.add("generators", join(job.generators));
        r.add("dim", std::to_string(job.dim));
        r.add("point", job.point.empty() ? "origin" : join(job.point));
    }
    r.add("max_level", std::to_string(job.max_level));
    r.add("seed", std::to_string(job.seed));
    r.add("oracle", to_string(job.oracle));
}

inline std::vector<Job> sweep_members(Job const& job)
{
    std::vector<Job> members;
    if (job.corpus.empty()) {
        members.push_back(job);
        return members;
    }
    auto base = std::filesystem::path(job.origin).parent_path();
    for (auto const& entry : job.corpus) {
        auto m = load_job(base / entry);
        m.max_level = job.max_level;
        m.oracle = job.oracle;
        members.push_back(std::move(m));
    }
    return members;
}

} // namespace detail

/// Runs one job. Mathematical verdicts always produce a report; only operational failures throw.
inline Report run_job(Job const& job)
{
    Report r;
    r.name = job.name;
    detail::echo_job(r, job);
    if (job.task == Task::sweep) {
        std::vector<SweepRow> rows;
        for (auto const& m : detail::sweep_members(job)) {
            auto cfg = dimension_config(m);
            visit_field(m.field, [&](auto const& k) {
                using F = std::decay_t<decltype(k)>;
                auto ring = make_ring(k, m.vars);
                VarietyJob<F> vj{detail::parse_ideal(m.generators, ring), m.dim, detail::parse_point(m, ring)};
                rows.push_back(sweep_row(m.name, s_sequence(vj, job.max_level, cfg)));
            });
        }
        r.csv_header = {"job", "d", "delta", "first_level", "s_values"};
        for (auto const& row : rows) {
            std::string delta = row.delta ? row.delta->to_string() : "none";
            std::string first = row.first_level ? std::to_string(*row.first_level) : "none";
            r.add("row." + row.name, "d=" + std::to_string(row.d) + " delta=" + delta + " first_level=" + first +
                                         " s=" + detail::join(row.values));
            r.csv_rows.push_back({row.name, std::to_string(row.d), delta, first, detail::join(row.values, " ")});
        }
        for (auto const& s : summarize_sweep(rows))
            r.add("summary.d=" + std::to_string(s.d) + ".delta=" + s.delta,
                  "jobs=" + std::to_string(s.jobs) + " max_first_level=" + std::to_string(s.max_first_level));
        return r;
    }
    auto cfg = dimension_config(job);
    visit_field(job.field, [&](auto const& k) { detail::run_task(job, k, cfg, r); });
    return r;
}

} // namespace jetdisc::cli
