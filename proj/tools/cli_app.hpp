#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "biortho/asymptotics.hpp"
#include "biortho/config.hpp"
#include "biortho/parallel.hpp"
#include "biortho/verify.hpp"

namespace biortho::cli {

inline constexpr const char* version_string = "biortho 0.1.0";

enum Exit : int { ok = 0, verify_failed = 1, usage = 2, scope = 3, numerical = 4 };

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal, locale independent.
inline std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// mantissa * exp(log_scale) as a decimal string, also when it is outside the double range.
inline std::string fmt_scaled(double mantissa, double log_scale) {
    if (mantissa == 0.0 || !std::isfinite(mantissa) || log_scale == 0.0) return fmt(mantissa * std::exp(log_scale));
    const double direct = mantissa * std::exp(log_scale);
    if (std::isnormal(direct)) return fmt(direct);
    const double l10 = std::log10(std::abs(mantissa)) + log_scale / std::log(10.0);
    double e = std::floor(l10);
    double d = std::pow(10.0, l10 - e);
    if (d >= 10.0) {
        d /= 10.0;
        e += 1.0;
    }
    std::string out = mantissa < 0.0 ? "-" : "";
    out += fmt(d);
    out += "e";
    out += std::to_string(static_cast<long long>(e));
    return out;
}

// Integral values print as integers so that grid sizes and seeds read naturally.
inline Json number(double v) {
    if (std::isfinite(v) && std::trunc(v) == v && std::abs(v) < 9.0e15) return static_cast<long long>(v);
    return v;
}

inline Json object_of(const NamedValues& nv) {
    Json o = Json::object();
    for (const auto& [k, v] : nv) o[k] = number(v);
    return o;
}

inline Json record_json(const CheckRecord& r) {
    Json j;
    j["check_id"] = r.check_id;
    j["params"] = object_of(r.params);
    j["status"] = to_string(r.status);
    j["witness"] = {{"inputs", object_of(r.witness.inputs)}, {"residual", r.witness.residual}};
    j["tolerance"] = r.tolerance;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

struct Globals {
    unsigned jobs = default_jobs();
    std::string output;
    std::string format = "auto";
    std::string config;
    std::vector<std::string> sets;
};

inline Settings load_settings(const Globals& g) {
    Settings s;
    std::string path = g.config;
    if (path.empty()) {
        if (const char* env = std::getenv("BIORTHO_CONFIG"); env != nullptr) path = env;
    }
    if (!path.empty())
        for (const auto& [k, v] : read_config_file(path)) apply_setting(s, k, v);
    for (const auto& kv : g.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_setting(s, detail::trim(kv.substr(0, eq)), detail::trim(kv.substr(eq + 1)));
    }
    return s;
}

inline std::string resolve_format(const Globals& g, const char* fallback) {
    const std::string f = g.format == "auto" ? fallback : g.format;
    if (f != "json" && f != "csv") throw ParameterError("--format must be json or csv");
    return f;
}

// ---------------------------------------------------------------------------------------------

struct EvalArgs {
    double alpha = 0.0, a = 0.0, b = 0.0;
    int n = 0;
    std::optional<double> x, theta;
    std::string method = "exact";
    double tol = 1e-12;
    bool allow_unproven = false;
};

inline int cmd_eval(const EvalArgs& e, const Globals& g, std::ostream& out) {
    const Params p{e.alpha, e.a, e.b};
    validate(p);
    validate_degree(e.n);
    if (e.x.has_value() == e.theta.has_value()) throw ParameterError("eval needs exactly one of --x and --theta");
    const std::string format = resolve_format(g, "json");

    Json rec;
    Json inputs = {{"alpha", e.alpha}, {"a", e.a}, {"b", e.b}, {"n", e.n}};
    if (e.x) inputs["x"] = *e.x;
    if (e.theta) inputs["theta"] = *e.theta;
    rec["inputs"] = inputs;
    rec["method"] = e.method;

    std::string csv_value, csv_cond, csv_err;
    if (e.method == "exact") {
        const double x = e.x ? *e.x : x_of_theta(p, *e.theta);
        const EvalResult r = eval_biortho(p, e.n, x);
        rec["value"] = r.value;
        rec["condition_estimate"] = r.condition_estimate;
        if (r.unreliable) rec["unreliable"] = true;
        csv_value = fmt(r.value);
        csv_cond = fmt(r.condition_estimate);
    } else if (e.method == "contour" || e.method == "asymptotic") {
        double theta = 0.0;
        if (e.theta) {
            require_open_angle(*e.theta, "theta");
            theta = *e.theta;
        } else {
            if (!(*e.x > -1.0 && *e.x < 1.0)) throw DomainError("x must lie in (-1, 1) for this method");
            theta = theta_of_x(p, *e.x);
            rec["inputs"]["theta"] = theta;
        }
        if (e.method == "contour") {
            const QuadResult<double> q = rodrigues_contour_eval_scaled(p, e.n, theta, e.tol);
            rec["value"] = q.value * std::exp(q.log_scale);
            rec["error_estimate"] = q.error_estimate * std::exp(q.log_scale);
            rec["mantissa"] = q.value;
            rec["log_scale"] = q.log_scale;
            rec["evaluations"] = q.evaluations;
            csv_value = fmt_scaled(q.value, q.log_scale);
            csv_err = fmt_scaled(q.error_estimate, q.log_scale);
        } else {
            if (e.n < 1) throw DomainError("the asymptotic formula needs n >= 1");
            const double scaled = darboux_biortho_scaled(p, e.n, theta, e.allow_unproven);
            const double log_scale = e.n * std::log(sine_ratio(p.alpha, theta));
            rec["value"] = scaled * std::exp(log_scale);
            rec["mantissa"] = scaled;
            rec["log_scale"] = log_scale;
            if (p.alpha < 1.0) rec["note"] = "alpha < 1: formula evaluated outside its proven range";
            csv_value = fmt_scaled(scaled, log_scale);
        }
    } else {
        throw ParameterError("--method must be exact, contour or asymptotic");
    }

    if (format == "json") {
        out << rec.dump() << '\n';
    } else {
        out << "method,value,condition_estimate,error_estimate\n"
            << e.method << ',' << csv_value << ',' << csv_cond << ',' << csv_err << '\n';
    }
    return ok;
}

// ---------------------------------------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    std::uint64_t seed = 7;
};

inline int cmd_verify(const VerifyArgs& v, const Globals& g, std::ostream& out, std::ostream& err) {
    if (!is_suite(v.suite)) throw ParameterError("unknown suite '" + v.suite + "'");
    const Settings st = load_settings(g);
    const std::string format = resolve_format(g, "json");
    const std::vector<CheckRecord> recs = run_suite(v.suite, st, v.seed, g.jobs);
    if (format == "json") {
        for (const auto& r : recs) out << record_json(r).dump() << '\n';
    } else {
        out << "check_id,status,residual,tolerance\n";
        for (const auto& r : recs)
            out << r.check_id << ',' << to_string(r.status) << ',' << fmt(r.witness.residual) << ',' << fmt(r.tolerance)
                << '\n';
    }
    std::size_t pass = 0, fail = 0, skip = 0;
    for (const auto& r : recs) {
        if (r.status == Status::pass) ++pass;
        if (r.status == Status::fail) ++fail;
        if (r.status == Status::skipped) ++skip;
    }
    err << recs.size() << " checks: " << pass << " pass, " << fail << " fail, " << skip << " skipped\n";
    return fail == 0 ? ok : verify_failed;
}

// ---------------------------------------------------------------------------------------------

struct TableArgs {
    double alpha = 0.0, a = 0.0, b = 0.0, theta = 0.0;
    std::string dyadic = "3..10";
    std::string reference = "contour";
    double tol = 1e-12;
    bool allow_unproven = false;
};

inline std::pair<int, int> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw ParameterError("--n-dyadic expects k0..k1");
    int k0 = 0, k1 = 0;
    const std::string l = s.substr(0, dots), r = s.substr(dots + 2);
    const auto rl = std::from_chars(l.data(), l.data() + l.size(), k0);
    const auto rr = std::from_chars(r.data(), r.data() + r.size(), k1);
    if (rl.ec != std::errc() || rl.ptr != l.data() + l.size() || rr.ec != std::errc() || rr.ptr != r.data() + r.size())
        throw ParameterError("--n-dyadic expects k0..k1 with integer bounds");
    return {k0, k1};
}

inline ReferenceMode parse_reference(const std::string& s) {
    if (s == "exact") return ReferenceMode::exact;
    if (s == "contour") return ReferenceMode::contour;
    if (s == "automatic") return ReferenceMode::automatic;
    throw ParameterError("--reference must be exact, contour or automatic");
}

inline int cmd_table(const TableArgs& t, const Globals& g, std::ostream& out, std::ostream& err) {
    const Params p{t.alpha, t.a, t.b};
    validate(p);
    require_open_angle(t.theta, "theta");
    const auto [k0, k1] = parse_range(t.dyadic);
    if (!(k0 >= 3 && k1 > k0)) throw ParameterError("--n-dyadic needs k1 > k0 >= 3");
    if (k1 > 20) throw ParameterError("--n-dyadic: k1 above 20 is not supported");
    const ReferenceMode mode = parse_reference(t.reference);
    require_proven_scope(p, t.allow_unproven);
    const Settings st = load_settings(g);
    const std::string format = resolve_format(g, "csv");

    const std::vector<int> ns = dyadic_degrees(k0, k1);
    TableOptions opt;
    opt.envelope_threshold = st.envelope_threshold;
    opt.tol = t.tol;
    opt.allow_unproven = t.allow_unproven;
    std::vector<ConvergenceRow> rows(ns.size());
    parallel_for(ns.size(), g.jobs, [&](std::size_t i) { rows[i] = convergence_row(p, ns[i], t.theta, mode, opt); });

    std::vector<SlopePoint> pts;
    for (const auto& r : rows)
        if (r.envelope_ok && r.rel_err > 0.0) pts.push_back({r.n, r.rel_err});
    std::optional<double> slope;
    if (pts.size() >= 3) slope = fit_loglog_slope(pts);

    if (format == "csv") {
        out << "n,reference,asymptotic,abs_err,rel_err,envelope_ok\n";
        for (const auto& r : rows)
            out << r.n << ',' << fmt_scaled(r.reference, r.log_scale) << ',' << fmt_scaled(r.asymptotic, r.log_scale) << ','
                << fmt_scaled(r.abs_err, r.log_scale) << ',' << fmt(r.rel_err) << ',' << (r.envelope_ok ? "true" : "false")
                << '\n';
        out << "# slope=" << (slope ? fmt(*slope) : "nan") << " kept=" << pts.size() << " reference=" << to_string(mode)
            << '\n';
    } else {
        Json j;
        j["inputs"] = {{"alpha", t.alpha}, {"a", t.a}, {"b", t.b}, {"theta", t.theta}, {"reference", to_string(mode)}};
        Json arr = Json::array();
        for (const auto& r : rows)
            arr.push_back({{"n", r.n},
                           {"reference", r.reference},
                           {"asymptotic", r.asymptotic},
                           {"abs_err", r.abs_err},
                           {"rel_err", r.rel_err},
                           {"envelope_ok", r.envelope_ok},
                           {"log_scale", r.log_scale}});
        j["rows"] = arr;
        j["slope"] = slope ? Json(*slope) : Json(nullptr);
        j["kept"] = pts.size();
        out << j.dump() << '\n';
    }
    if (!slope) {
        err << "error: fewer than 3 rows pass the envelope filter\n";
        return numerical;
    }
    return ok;
}

// ---------------------------------------------------------------------------------------------

struct DumpArgs {
    double alpha = 0.0;
    int points = 360;
    std::string what = "contour";
    std::optional<double> theta;
    std::optional<int> n;
    double delta = 1.0 / 12.0;
};

inline int cmd_contour_dump(const DumpArgs& d, const Globals& g, std::ostream& out) {
    const Params p{d.alpha, 0.0, 0.0};
    validate(p);
    if (d.points < 2) throw ParameterError("--points must be at least 2");
    const std::string format = resolve_format(g, "csv");
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string trailer;

    if (d.what == "contour") {
        header = {"phi", "re_xi", "im_xi"};
        for (int i = 0; i < d.points; ++i) {
            const double ph = -pi + 2.0 * pi * i / d.points;
            const ContourPoint cp = contour_point(p, ph);
            rows.push_back({fmt(ph), fmt(cp.xi.real()), fmt(cp.xi.imag())});
        }
    } else if (d.what == "T") {
        if (!d.theta) throw ParameterError("--what T requires --theta");
        require_open_angle(*d.theta, "theta");
        header = {"phi", "T"};
        for (int i = 0; i < d.points; ++i) {
            const double ph = pi * i / (d.points - 1);
            rows.push_back({fmt(ph), fmt(t_modulus(p, *d.theta, ph))});
        }
    } else if (d.what == "partition") {
        if (!d.theta || !d.n) throw ParameterError("--what partition requires --theta and --n");
        require_open_angle(*d.theta, "theta");
        if (*d.n < 1) throw ParameterError("--n must be positive");
        if (!(d.delta > 0.0 && d.delta < 0.5)) throw ParameterError("--delta must lie in (0, 1/2)");
        const double eps = std::pow(static_cast<double>(*d.n), -0.5 + d.delta);
        const double lo = *d.theta - eps, hi = *d.theta + eps;
        if (!(lo > 0.0 && hi < pi)) throw ParameterError("partition boundaries fall outside (0, pi)");
        header = {"phi", "re_xi", "im_xi", "segment"};
        for (int i = 0; i < d.points; ++i) {
            const double ph = (i + 0.5) * pi / d.points;
            const ContourPoint cp = contour_point(p, ph);
            const char* seg = ph <= lo ? "left" : (ph < hi ? "center" : "right");
            rows.push_back({fmt(ph), fmt(cp.xi.real()), fmt(cp.xi.imag()), seg});
        }
        trailer = "# boundaries=" + fmt(lo) + "," + fmt(hi);
    } else {
        throw ParameterError("--what must be contour, T or partition");
    }

    if (format == "csv") {
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
            out << '\n';
        }
        if (!trailer.empty()) out << trailer << '\n';
    } else {
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json o;
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (header[i] == "segment")
                    o[header[i]] = r[i];
                else
                    o[header[i]] = std::strtod(r[i].c_str(), nullptr);
            }
            arr.push_back(o);
        }
        out << Json{{"what", d.what}, {"rows", arr}}.dump() << '\n';
    }
    return ok;
}

// ---------------------------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Biorthogonal polynomial evaluation, verification and asymptotics", "biortho"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--jobs", g.jobs, "worker threads for sweeps (default: logical cores)")->check(CLI::Range(1U, 1024U));
    app.add_option("--output", g.output, "write results to this file instead of standard output");
    app.add_option("--format", g.format, "json or csv (default depends on the command)");
    app.add_option("--config", g.config, "key = value file overriding tolerances and grids (default: $BIORTHO_CONFIG)");
    app.add_option("--set", g.sets, "override one setting, key=value (repeatable)");

    EvalArgs ea;
    CLI::App* eval = app.add_subcommand("eval", "evaluate P_n at one point");
    eval->add_option("--alpha", ea.alpha)->required();
    eval->add_option("--a", ea.a);
    eval->add_option("--b", ea.b);
    eval->add_option("--n", ea.n)->required();
    double x_in = 0.0, theta_in = 0.0;
    CLI::Option* xo = eval->add_option("--x", x_in);
    CLI::Option* to = eval->add_option("--theta", theta_in, "angle in radians; x = x(theta)");
    xo->excludes(to);
    eval->add_option("--method", ea.method, "exact, contour or asymptotic");
    eval->add_option("--tol", ea.tol, "contour tolerance");
    eval->add_flag("--allow-unproven", ea.allow_unproven, "evaluate the asymptotic formula for alpha < 1");

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "run certification checks");
    verify->add_option("--suite", va.suite, "all, identities, lemmas, biortho or reduction");
    verify->add_option("--seed", va.seed);

    TableArgs ta;
    CLI::App* table = app.add_subcommand("table", "convergence table of the asymptotic formula");
    table->add_option("--alpha", ta.alpha)->required();
    table->add_option("--a", ta.a);
    table->add_option("--b", ta.b);
    table->add_option("--theta", ta.theta)->required();
    table->add_option("--n-dyadic", ta.dyadic, "k0..k1, degrees 2^k0 .. 2^k1");
    table->add_option("--reference", ta.reference, "exact, contour or automatic");
    table->add_option("--tol", ta.tol, "contour tolerance");
    table->add_flag("--allow-unproven", ta.allow_unproven);

    DumpArgs da;
    CLI::App* dump = app.add_subcommand("contour-dump", "plot data for the contour, T profile or partition");
    dump->add_option("--alpha", da.alpha)->required();
    dump->add_option("--points", da.points);
    dump->add_option("--what", da.what, "contour, T or partition");
    double dump_theta = 0.0, dump_delta = da.delta;
    int dump_n = 0;
    CLI::Option* dto = dump->add_option("--theta", dump_theta);
    CLI::Option* dno = dump->add_option("--n", dump_n);
    dump->add_option("--delta", dump_delta);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!g.output.empty()) {
        file.open(g.output, std::ios::binary);
        if (!file) {
            err << "error: cannot open output file '" << g.output << "'\n";
            return usage;
        }
        sink = &file;
    }

    try {
        if (*eval) {
            if (*xo) ea.x = x_in;
            if (*to) ea.theta = theta_in;
            return cmd_eval(ea, g, *sink);
        }
        if (*verify) return cmd_verify(va, g, *sink, err);
        if (*table) return cmd_table(ta, g, *sink, err);
        if (*dump) {
            if (*dto) da.theta = dump_theta;
            if (*dno) da.n = dump_n;
            da.delta = dump_delta;
            return cmd_contour_dump(da, g, *sink);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return usage;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const ScopeError& e) {
        err << "scope error: " << e.what() << '\n';
        return scope;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return numerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return numerical;
    }
    return usage;
}

}  // namespace biortho::cli
