// Runs every acceptance criterion and prints one PASS/FAIL line each. Exit status 1 if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "biortho/biortho.hpp"

using namespace biortho;

namespace {

// pinned tolerances
constexpr double reduction_tol = 1e-9;
constexpr double biortho_tol = 1e-7;
constexpr double biortho_quad_tol = 1e-10;
constexpr double oracle_tol = 1e-7;
constexpr double oracle_cond_cap = 1e9;
constexpr double contour_tol = 1e-12;
constexpr double rate_lo = -1.3, rate_hi = -0.7;
constexpr double classical_lo = -1.8, classical_hi = -1.2;
constexpr double envelope_ratio_cap = 10.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

Outcome records_outcome(const std::vector<CheckRecord>& recs) {
    std::size_t bad = 0;
    double worst_ratio = 0.0;
    std::string first_bad;
    for (const auto& r : recs) {
        if (r.status != Status::pass) {
            if (bad++ == 0) first_bad = r.check_id + " residual " + num(r.witness.residual) + (r.note.empty() ? "" : " (" + r.note + ")");
        }
        if (r.tolerance > 0.0) worst_ratio = std::max(worst_ratio, r.witness.residual / r.tolerance);
    }
    std::string d = std::to_string(recs.size()) + " checks, " + std::to_string(bad) + " not passing, worst residual/tol " + num(worst_ratio);
    if (bad > 0) d += "; first: " + first_bad;
    return {bad == 0 && !recs.empty(), d};
}

std::vector<CheckRecord> lemma_records(const std::string& prefix) {
    Settings st;
    const auto all = lemma_tasks(st, 7);
    std::vector<CheckRecord> recs = run_tasks(all, default_jobs());
    std::vector<CheckRecord> out;
    for (auto& r : recs)
        if (r.check_id.rfind(prefix, 0) == 0) out.push_back(std::move(r));
    return out;
}

Outcome ac_reduction() {
    const std::array<double, 4> ps = {-0.5, 0.0, 0.7, 2.3};
    double worst = 0.0;
    for (const double a : ps)
        for (const double b : ps)
            for (int n = 0; n <= 30; ++n)
                for (int i = 0; i <= 40; ++i) {
                    const double x = -1.0 + i / 20.0;
                    const double want = eval_jacobi_recurrence(a, b, n, x);
                    const double got = eval_biortho({1.0, a, b}, n, x).value;
                    worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
                }
    return {worst <= reduction_tol, "max relative difference " + num(worst) + " (tol " + num(reduction_tol) + ")"};
}

Outcome ac_biortho() {
    Settings st;
    st.tol_biortho = biortho_tol;
    st.tol_biortho_quad = biortho_quad_tol;
    st.biortho_n_max = 8;
    return records_outcome(run_tasks(biortho_tasks(st), default_jobs()));
}

Outcome ac_oracle() {
    struct Case {
        Params p;
        int n;
        double theta;
    };
    std::vector<Case> cases;
    for (const double alpha : {1.0, 2.0, 4.0})
        for (const double a : {-0.5, 0.0, 1.2})
            for (const double b : {-0.5, 0.0, 1.2})
                for (int n = 1; n <= 40; ++n)
                    for (const double t : {pi / 4, pi / 2, 3 * pi / 4})
                        if (n >= contour_min_degree({alpha, a, b})) cases.push_back({{alpha, a, b}, n, t});
    std::vector<double> rel(cases.size(), 0.0);
    std::vector<char> used(cases.size(), 0);
    parallel_for(cases.size(), default_jobs(), [&](std::size_t i) {
        const Case& c = cases[i];
        const EvalResult e = eval_biortho(c.p, c.n, x_of_theta(c.p, c.theta));
        if (e.condition_estimate > oracle_cond_cap) return;
        const auto q = rodrigues_contour_eval(c.p, c.n, c.theta, contour_tol);
        rel[i] = std::abs(q.value - e.value) / std::max(std::abs(e.value), q.magnitude);
        used[i] = 1;
    });
    const double worst = *std::max_element(rel.begin(), rel.end());
    const auto count = std::count(used.begin(), used.end(), 1);
    return {worst <= oracle_tol, std::to_string(count) + " points, max relative difference " + num(worst) + " (tol " + num(oracle_tol) + ")"};
}

Outcome ac_rate() {
    struct Combo {
        Params p;
        double theta;
    };
    std::vector<Combo> combos;
    for (const double alpha : {1.0, 2.0, 4.0})
        for (const double a : {0.0, 0.5})
            for (const double b : {0.0, -0.3})
                for (const double t : {pi / 4, 2 * pi / 5, pi / 2}) combos.push_back({{alpha, a, b}, t});
    std::vector<double> slopes(combos.size(), std::nan(""));
    std::vector<std::string> errors(combos.size());
    const std::vector<int> ns = dyadic_degrees(3, 10);
    parallel_for(combos.size(), default_jobs(), [&](std::size_t i) {
        try {
            slopes[i] = convergence_table(combos[i].p, combos[i].theta, ns, ReferenceMode::contour).slope;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    double lo = 0.0, hi = -10.0;
    bool ok = true;
    for (std::size_t i = 0; i < combos.size(); ++i) {
        if (!(slopes[i] >= rate_lo && slopes[i] <= rate_hi)) ok = false;
        if (std::isfinite(slopes[i])) {
            lo = std::min(lo, slopes[i]);
            hi = std::max(hi, slopes[i]);
        }
    }
    std::string d = std::to_string(combos.size()) + " combinations, slopes in [" + num(lo) + ", " + num(hi) + "] (band [" + num(rate_lo) +
                    ", " + num(rate_hi) + "])";
    for (std::size_t i = 0; i < combos.size(); ++i)
        if (!errors[i].empty()) d += "; error: " + errors[i];
    return {ok, d};
}

Outcome ac_classical() {
    const double t = pi / 3;
    std::vector<SlopePoint> pts;
    for (const int n : dyadic_degrees(3, 10)) pts.push_back({n, std::abs(eval_jacobi_recurrence(0.0, 0.0, n, std::cos(t)) - darboux_classical(0.0, 0.0, n, t))});
    const double s = fit_loglog_slope(pts);
    return {s >= classical_lo && s <= classical_hi, "absolute-error slope " + num(s) + " (band [" + num(classical_lo) + ", " + num(classical_hi) + "])"};
}

Outcome ac_envelope() {
    struct Combo {
        Params p;
        double theta;
    };
    const std::vector<Combo> combos = {
        {{1.0, 0.0, 0.0}, pi / 2},  {{2.0, 0.5, -0.3}, 2 * pi / 5}, {{2.0, 0.0, 0.0}, pi / 3},
        {{4.0, 1.2, -0.5}, pi / 4}, {{1.5, 0.0, 0.7}, pi / 2},      {{3.0, 0.5, 0.0}, 3 * pi / 4},
    };
    std::vector<double> ratio(combos.size(), std::nan(""));
    const std::vector<int> ns = dyadic_degrees(3, 9);
    parallel_for(combos.size(), default_jobs(), [&](std::size_t i) {
        ratio[i] = envelope_bound(combos[i].p, combos[i].theta, ns, ReferenceMode::contour).max_over_median;
    });
    double worst = 0.0;
    bool ok = true;
    for (const double r : ratio) {
        if (!(r <= envelope_ratio_cap)) ok = false;
        worst = std::max(worst, r);
    }
    return {ok, std::to_string(combos.size()) + " combinations, worst max/median " + num(worst) + " (cap " + num(envelope_ratio_cap) + ")"};
}

std::string capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    status = pclose(pipe);
    return out;
}

Outcome ac_determinism() {
    const std::string cmd = std::string("\"") + BIORTHO_CLI_PATH + "\" verify --suite all --seed 7 2>/dev/null";
    int s1 = 0, s2 = 0;
    const std::string a = capture(cmd, s1);
    const std::string b = capture(cmd, s2);
    const bool ok = s1 == 0 && s2 == 0 && !a.empty() && a == b;
    return {ok, std::to_string(a.size()) + " bytes per run, identical=" + (a == b ? "yes" : "no") + ", exit statuses " + std::to_string(s1) + "/" +
                    std::to_string(s2)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"AC1 classical reduction", ac_reduction},
        {"AC2 biorthogonality", ac_biortho},
        {"AC3 contour oracle agreement", ac_oracle},
        {"AC4 asymptotic rate", ac_rate},
        {"AC5 classical asymptotic rate", ac_classical},
        {"AC6 lemma suite", [] {
             auto recs = lemma_records("lemma.");
             for (auto& r : lemma_records("map.")) recs.push_back(std::move(r));
             return records_outcome(recs);
         }},
        {"AC7 structure suite", [] { return records_outcome(lemma_records("structure.")); }},
        {"AC8 identities", [] { return records_outcome(run_tasks(identity_tasks(Settings{}, 7), default_jobs())); }},
        {"AC9 envelope bound", ac_envelope},
        {"AC10 determinism", ac_determinism},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << num(secs) << " s]" << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
