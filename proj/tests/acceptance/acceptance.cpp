// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failed criteria.

#include <jetdisc/classify/classify.hpp>
#include <jetdisc/classify/top.hpp>
#include <jetdisc/cli/run.hpp>
#include <jetdisc/mld/generic.hpp>
#include <jetdisc/mld/mld.hpp>

#include "../support.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

using namespace jetdisc;
using jetdisc::testing::ade_corpus;
using jetdisc::testing::non_top_corpus;
using jetdisc::testing::random_invertible;
using jetdisc::testing::xyz;

namespace {

using Q = RationalField;
using Fp = PrimeField;

// Pinned limits. Every comparison below is exact; these are the only tolerances.
constexpr double kJobSeconds = 60.0;        // per ADE job
constexpr unsigned kMaxLevel = 5;           // M for the mld runs and the negativity search
constexpr std::size_t kMinIoaJobs = 12;     // jobs where both inversion certificates must fire
constexpr int kCoordinateChanges = 10;      // random linear changes per corpus equation
constexpr unsigned kCuts = 5;               // hyperplane sections per 3-fold
constexpr std::uint64_t kSeed = 42;
constexpr std::size_t kOracleMaxVars = 8;   // fibers compared against point counts

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(std::string const& why)
    {
        if (pass) detail.clear();
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
};

std::vector<std::string> const xyzw{"x", "y", "z", "w"};

template <CoefficientField F>
VarietyJob<F> variety(F const& k, std::vector<std::string> const& vars, std::vector<std::string> const& gens, int d,
                      std::vector<typename F::value_type> point = {})
{
    auto R = make_ring(k, vars);
    IdealPresentation<F> X(R);
    for (auto const& g : gens) X.generators.push_back(parse_poly(g, R));
    if (point.empty()) point.assign(vars.size(), k.zero());
    return {X, d, std::move(point)};
}

std::string join(std::vector<int> const& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict ac1_ade_top()
{
    Verdict v;
    Fp k(32003);
    double slowest = 0;
    for (auto const& c : ade_corpus()) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = mld_mj_estimate(variety(k, xyz(), {c.equation}, 2), kMaxLevel);
        double t = seconds_since(t0);
        slowest = std::max(slowest, t);
        if (!r.estimate || r.estimate->to_string() != "1" || !r.exact || r.certificate != certificate::top_threshold)
            v.fail(c.name + " gave " + (r.estimate ? r.estimate->to_string() : "none") + " (" + r.certificate + ")");
        if (t > kJobSeconds) v.fail(c.name + " took " + std::to_string(t) + " s");
    }
    if (v.pass) v.detail = "10/10 exact mld 1 via top_threshold, slowest " + std::to_string(slowest) + " s";
    return v;
}

Verdict ac2_smooth()
{
    Verdict v;
    Q k;
    std::vector<VarietyJob<Q>> smooth{
        variety(k, xyz(), {"z"}, 2),
        variety(k, xyz(), {"x^2+y^2+z^2-1"}, 2, {1, 0, 0}),
        variety(k, xyzw, {"x+y^2", "z-w^3"}, 2),
        variety(k, {"x", "y"}, {"y-x^3"}, 1),
        variety(k, xyzw, {"w+x*y*z"}, 3),
    };
    std::vector<VarietyJob<Q>> singular{
        variety(k, xyz(), {"x^2+y^2+z^2"}, 2),
        variety(k, xyz(), {"z^2+x^3"}, 2),
        variety(k, xyz(), {"x^4+y^4+z^4"}, 2),
        variety(k, xyzw, {"x^2+y^2+z^2+w^2"}, 3),
        variety(k, {"x", "y"}, {"y^2-x^3"}, 1),
    };
    for (auto const& j : smooth) {
        auto r = mld_mj_estimate(j, kMaxLevel);
        if (!r.exact || r.certificate != certificate::smooth_point || r.estimate->to_string() != std::to_string(j.d))
            v.fail("smooth job " + to_string(j.X.generators.front()) + " gave " + r.estimate->to_string());
    }
    for (auto const& j : singular) {
        auto r = mld_mj_estimate(j, kMaxLevel);
        if (!(*r.estimate < MldValue::of(j.d)))
            v.fail("singular job " + to_string(j.X.generators.front()) + " gave " + r.estimate->to_string());
    }
    if (v.pass) v.detail = "5 smooth jobs = d exactly, 5 singular jobs < d";
    return v;
}

Verdict ac3_inversion()
{
    Verdict v;
    Q k;
    std::vector<VarietyJob<Q>> jobs;
    for (auto const& c : ade_corpus()) jobs.push_back(variety(k, xyz(), {c.equation}, 2));
    jobs.push_back(variety(k, xyz(), {"z"}, 2));
    jobs.push_back(variety(k, xyz(), {"x^4+y^4+z^4"}, 2));
    jobs.push_back(variety(k, xyzw, {"x^2+y^2+z^2+w^2"}, 3));
    jobs.push_back(variety(k, xyzw, {"w"}, 3));
    std::size_t both = 0;
    for (auto const& j : jobs) {
        auto r = inversion_check(j, kMaxLevel);
        if (!(r.lhs.exact && r.rhs_exact)) continue;
        ++both;
        if (!(*r.lhs.estimate == r.rhs))
            v.fail(to_string(j.X.generators.front()) + ": lhs " + r.lhs.estimate->to_string() + " rhs " + r.rhs.to_string());
    }
    if (both < kMinIoaJobs) v.fail("only " + std::to_string(both) + " jobs with both certificates");
    if (v.pass) v.detail = std::to_string(both) + "/" + std::to_string(jobs.size()) + " jobs certified on both sides, all equal";
    return v;
}

Verdict ac4_minus_infinity()
{
    Verdict v;
    Q k;
    std::vector<VarietyJob<Q>> cones{variety(k, xyz(), {"x^4+y^4+z^4"}, 2),
                                     variety(k, xyzw, {"x^5+y^5+z^5+w^5"}, 3)};
    std::string found;
    for (auto const& j : cones) {
        auto r = mld_mj_estimate(j, kMaxLevel);
        auto row = sweep_row("cone", r.seq);
        if (!r.estimate->minus_infinity || r.certificate != certificate::negative_value || !row.first_level ||
            *row.first_level > kMaxLevel)
            v.fail(to_string(j.X.generators.front()) + " gave " + r.estimate->to_string());
        else
            found += (found.empty() ? "" : ", ") + to_string(j.X.generators.front()) + " negative at m=" +
                     std::to_string(*row.first_level);
    }
    if (v.pass) v.detail = found;
    return v;
}

template <CoefficientField F>
void compare_oracles(IdealPresentation<F> const& I, std::string const& what, Verdict& v, std::size_t& compared)
{
    if (I.arity() > kOracleMaxVars || I.arity() == 0) return;
    auto surrogate = make_ring(Fp(32003), I.ring->names());
    int g = krull_dim(map_coefficients(I, surrogate)).dim;
    int exact = krull_dim(I).dim;
    std::vector<std::pair<std::uint32_t, mpz_class>> counts;
    for (std::uint32_t q : {5u, 7u, 11u, 13u}) counts.emplace_back(q, count_points(I, q, 200'000'000));
    auto c = dim_from_counts(counts);
    ++compared;
    if (!c.reliable || c.dim != g || c.dim != exact)
        v.fail(what + ": groebner " + std::to_string(g) + "/" + std::to_string(exact) + " counts " + std::to_string(c.dim) +
               " (slope " + std::to_string(c.slope) + ")");
}

Verdict ac5_oracles()
{
    Verdict v;
    Q k;
    std::vector<std::pair<std::vector<std::string>, std::string>> eqs;
    for (auto const& c : ade_corpus()) eqs.push_back({xyz(), c.equation});
    for (auto const& c : non_top_corpus()) eqs.push_back({xyz(), c.equation});
    for (auto const* e : {"x^2+y^2+z^2+w^2", "x^2+y^2+z^2+w^3", "x^3+y^3+z^3+w^3", "x*y+z*w"}) eqs.push_back({xyzw, e});
    std::size_t compared = 0;
    try {
        for (auto const& [vars, eq] : eqs) {
            auto j = variety(k, vars, {eq}, static_cast<int>(vars.size()) - 1);
            for (unsigned m = 1; m * vars.size() <= kOracleMaxVars; ++m) {
                auto sys = jet_fiber_ideal(j.X, j.point_span(), m);
                compare_oracles(sys.ideal, eq + " m=" + std::to_string(m), v, compared);
            }
        }
    } catch (BudgetExceeded const& e) {
        v.fail(std::string("budget: ") + e.what());
    }
    if (v.pass) v.detail = std::to_string(compared) + " fibers, primes {5,7,11,13}, zero mismatches";
    return v;
}

Verdict ac6_a1_sequence()
{
    Verdict v;
    auto seq = s_sequence(variety(Q{}, xyz(), {"x^2+y^2+z^2"}, 2), 3);
    std::vector<int> want_s{2, 1, 2, 1}, want_dims{0, 3, 4, 7};
    std::string got = "s = " + join(seq.values()) + ", fiber dims = " + join(seq.dims());
    if (seq.values() != want_s || seq.dims() != want_dims)
        v.fail(got + "; expected s = " + join(want_s) + ", fiber dims = " + join(want_dims));
    else
        v.detail = got;
    return v;
}

Verdict ac7_classifier()
{
    Verdict v;
    Q k;
    auto R = make_ring(k, xyz());
    std::mt19937_64 rng(kSeed);
    std::size_t checked = 0;
    for (auto const& c : ade_corpus()) {
        auto f = parse_poly(c.equation, R);
        auto cls = classify_surface_dp(f);
        if (cls.name() != c.label) v.fail(c.name + " classified " + cls.name());
        if (cls.tau != c.tau) v.fail(c.name + " tau " + (cls.tau ? std::to_string(*cls.tau) : "none"));
        for (int i = 0; i < kCoordinateChanges; ++i) {
            auto g = linear_substitute(f, random_invertible(k, 3, rng));
            auto moved = classify_surface_dp(g);
            ++checked;
            if (moved.name() != c.label) v.fail(c.name + " after change: " + moved.name() + " for " + to_string(g));
        }
    }
    if (v.pass) v.detail = "10 labels and tau values, " + std::to_string(checked) + " coordinate changes";
    return v;
}

Verdict ac8_top_equivalence()
{
    Verdict v;
    Q k;
    std::size_t top = 0, other = 0;
    auto check = [&](std::string const& eq) {
        auto rep = top_singularity_test(variety(k, xyz(), {eq}, 2));
        if (!rep.classification || !rep.consistent || !*rep.consistent)
            v.fail(eq + ": label " + (rep.classification ? rep.classification->name() : "none") + ", mld " +
                   rep.mld.estimate->to_string() + " (" + rep.mld.certificate + ")");
        (rep.top ? top : other) += 1;
    };
    for (auto const& c : ade_corpus()) check(c.equation);
    for (auto const& c : non_top_corpus()) check(c.equation);
    if (top != 10) v.fail(std::to_string(top) + " top points in the ADE corpus");
    if (v.pass) v.detail = std::to_string(top) + " top and " + std::to_string(other) + " non-top surfaces consistent";
    return v;
}

Verdict ac9_hyperplanes()
{
    Verdict v;
    Q k;
    std::vector<std::pair<std::string, std::string>> cases{{"x^2+y^2+z^2+w^2", "A_n(1)"}, {"x^2+y^2+z^2+w^3", "A_n(2)"}};
    std::string summary;
    for (auto const& [eq, want] : cases) {
        auto rep = cdv_hyperplane_test(variety(k, xyzw, {eq}, 3), kCuts, kSeed);
        unsigned hits = rep.multiset.count(want) ? rep.multiset.at(want) : 0;
        std::string line = eq + ": " + std::to_string(hits) + "/" + std::to_string(kCuts) + " " + want;
        if (hits != kCuts) {
            std::string seen;
            for (auto const& [label, n] : rep.multiset) seen += (seen.empty() ? "" : " ") + label + "x" + std::to_string(n);
            v.fail(line + " (cuts: " + seen + ")");
        }
        summary += (summary.empty() ? "" : ", ") + line;
    }
    if (v.pass) v.detail = summary;
    return v;
}

Verdict ac10_sweep()
{
    Verdict v;
    auto job = cli::load_job(std::filesystem::path(JETDISC_JOBS_DIR) / "ade_sweep.job");
    auto r = cli::run_job(job);
    unsigned worst = 0;
    for (auto const& row : r.csv_rows) {
        if (row[1] != "2" || row[2] != "1") continue;
        if (row[3] == "none") {
            v.fail(row[0] + " has no first-minimum level");
            continue;
        }
        unsigned level = static_cast<unsigned>(std::stoul(row[3]));
        worst = std::max(worst, level);
        if (level > kMaxLevel) v.fail(row[0] + " first minimum at m=" + row[3]);
    }
    auto dir = std::filesystem::temp_directory_path() / "jetdisc_acceptance";
    auto written = cli::emit_report(r, {"csv"}, dir);
    if (written.size() != 1 || !std::filesystem::exists(dir / "ade_sweep.csv")) v.fail("no CSV written");
    if (r.csv_rows.size() != 10) v.fail(std::to_string(r.csv_rows.size()) + " sweep rows");
    if (v.pass) v.detail = "10 jobs, max first-min level " + std::to_string(worst) + ", CSV at " + written.front().string();
    return v;
}

Verdict ac11_invariants()
{
    Verdict v;
    Q k;
    std::size_t systems = 0, bases = 0;
    std::vector<std::pair<std::vector<std::string>, std::string>> eqs;
    for (auto const& c : ade_corpus()) eqs.push_back({xyz(), c.equation});
    for (auto const& c : non_top_corpus()) eqs.push_back({xyz(), c.equation});
    eqs.push_back({xyzw, "x^2+y^2+z^2+w^2"});
    for (auto const& [vars, eq] : eqs) {
        auto j = variety(k, vars, {eq}, static_cast<int>(vars.size()) - 1);
        for (unsigned m = 0; m <= kMaxLevel; ++m) {
            auto sys = jet_fiber_ideal(j.X, j.point_span(), m);
            ++systems;
            if (!weight_check(sys)) v.fail(eq + " m=" + std::to_string(m) + " not weight homogeneous");
            if (sys.ideal.arity() > 12) continue;
            auto gb = groebner_basis(map_coefficients(sys.ideal, make_ring(Fp(32003), sys.ideal.ring->names())));
            ++bases;
            if (!satisfies_buchberger(gb) || !is_reduced(gb)) v.fail(eq + " m=" + std::to_string(m) + " basis check");
        }
    }
    std::size_t reports = 0;
    for (auto const& entry : std::filesystem::directory_iterator(JETDISC_JOBS_DIR)) {
        if (entry.path().extension() != ".job") continue;
        auto job = cli::load_job(entry.path());
        auto a = cli::run_job(job), b = cli::run_job(job);
        ++reports;
        if (cli::render_text(a) != cli::render_text(b) || cli::render_csv(a) != cli::render_csv(b))
            v.fail(entry.path().filename().string() + " differs between runs");
    }
    if (v.pass)
        v.detail = std::to_string(systems) + " jet systems graded, " + std::to_string(bases) + " bases checked, " +
                   std::to_string(reports) + " reports byte-identical";
    return v;
}

} // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"AC1 ADE surfaces have mld 1", ac1_ade_top},
        {"AC2 smooth points have mld d", ac2_smooth},
        {"AC3 inversion of adjunction", ac3_inversion},
        {"AC4 minus infinity detection", ac4_minus_infinity},
        {"AC5 Groebner vs point-count dimensions", ac5_oracles},
        {"AC6 A1 s-sequence", ac6_a1_sequence},
        {"AC7 classifier soundness", ac7_classifier},
        {"AC8 top-singularity equivalence", ac8_top_equivalence},
        {"AC9 hyperplane sections", ac9_hyperplanes},
        {"AC10 first-minimum sweep", ac10_sweep},
        {"AC11 invariant suites", ac11_invariants},
    };
    int failed = 0;
    for (auto const& [name, run] : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = run();
        } catch (std::exception const& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        failed += !v.pass;
        std::printf("%s %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    return failed;
}
