#include "ubeta/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "ubeta/qseries.hpp"
#include "ubeta/sampling.hpp"
#include "ubeta/suites.hpp"

namespace ubeta {

using ordered_json = nlohmann::ordered_json;

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw DomainError("empty complex literal");

    const bool has_i = s.back() == 'i' || s.back() == 'I';
    if (!has_i) {
        std::size_t pos = 0;
        double re = 0.0;
        try {
            re = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw DomainError("bad complex literal '" + text + "'");
        }
        if (pos != s.size()) throw DomainError("bad complex literal '" + text + "'");
        return {re, 0.0};
    }
    s.pop_back();  // strip the trailing i
    // split at the last +/- that is not an exponent sign and not leading
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto to_d = [&](const std::string& part, bool imag_unit_ok) -> double {
        if (imag_unit_ok && (part.empty() || part == "+")) return 1.0;
        if (imag_unit_ok && part == "-") return -1.0;
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &pos);
        } catch (const std::exception&) {
            throw DomainError("bad complex literal '" + text + "'");
        }
        if (pos != part.size()) throw DomainError("bad complex literal '" + text + "'");
        return v;
    };
    if (split == std::string::npos) return {0.0, to_d(s, true)};
    return {to_d(s.substr(0, split), false), to_d(s.substr(split), true)};
}

std::vector<cplx> parse_complex_list(const std::string& text) {
    std::vector<cplx> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string tok =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        out.push_back(parse_complex(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

namespace {

ordered_json cplx_json(cplx v) { return ordered_json{{"re", v.real()}, {"im", v.imag()}}; }

ordered_json flagged_json(const Flagged& f) {
    ordered_json j = cplx_json(f.value);
    ordered_json flags = ordered_json::array();
    if (f.at_zero) flags.push_back("at_zero");
    if (f.at_pole) flags.push_back("at_pole");
    j["flags"] = flags;
    return j;
}

ordered_json report_json(const VerificationReport& rep, const std::vector<std::string>& args) {
    ordered_json j;
    j["schema"] = "1";
    j["config"] = args;  // echo of the resolved invocation
    j["identity"] = rep.identity;
    j["lhs"] = cplx_json(rep.lhs);
    j["rhs"] = cplx_json(rep.rhs);
    j["rel_error"] = rep.rel_error;
    j["tolerance"] = rep.tolerance;
    j["passed"] = rep.passed;
    j["evaluations"] = rep.evaluations;
    if (!rep.error.empty()) {
        j["error"] = rep.error;
        j["invalid_input"] = rep.invalid_input;
    }
    j["wall_time_ms"] = rep.wall_time_ms;
    return j;
}

void emit(const ordered_json& j, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw DomainError("cannot open output file '" + out_path + "'");
    f << j.dump(2) << "\n";
}

struct PolicyFlags {
    double quad_tol = -1.0, product_tol = -1.0;
    long max_terms = -1;
    int max_panels = -1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--policy-tol", quad_tol, "quadrature relative tolerance");
        cmd->add_option("--product-tol", product_tol, "q-product tail tolerance");
        cmd->add_option("--max-terms", max_terms, "q-product term budget");
        cmd->add_option("--max-panels", max_panels, "quadrature panel budget");
    }
    PrecisionPolicy build() const {
        PrecisionPolicy pol;
        if (quad_tol > 0) pol.quad_rel_tol = quad_tol;
        if (product_tol > 0) pol.product_tol = product_tol;
        if (max_terms > 0) pol.max_terms = max_terms;
        if (max_panels > 0) pol.quad_max_panels = max_panels;
        pol.validate();
        return pol;
    }
};

QuasiPeriods omegas_from(const std::string& spec) {
    const auto ws = parse_complex_list(spec);
    if (ws.size() != 3) throw DomainError("--omega needs three comma-separated values");
    return QuasiPeriods::derive(ws[0], ws[1], ws[2]);
}

SinePair pair_from(const std::string& spec) {
    const auto ws = parse_complex_list(spec);
    if (ws.size() != 2) throw DomainError("--pair needs two comma-separated values");
    return SinePair::make(ws[0], ws[1]);
}

int cmd_eval(const std::string& fn, const std::string& z_s, const std::string& p_s,
             const std::string& q_s, const std::string& u_s, const std::string& tau_s,
             const std::string& omega_s, const std::string& pair_s, double tscale,
             const PrecisionPolicy& pol, const std::string& out_path, std::ostream& out) {
    auto need = [](const std::string& s, const char* what) {
        if (s.empty()) throw DomainError(std::string("missing required option ") + what);
        return s;
    };
    Flagged val;
    if (fn == "theta") {
        val = theta(parse_complex(need(z_s, "--z")), Base(parse_complex(need(p_s, "--p"))), pol);
    } else if (fn == "theta1") {
        val = theta1(parse_complex(need(u_s, "--u")), parse_complex(need(tau_s, "--tau")), pol);
    } else if (fn == "egamma") {
        const cplx z = parse_complex(need(z_s, "--z"));
        if (z == cplx{}) throw DomainError("z=0 outside domain");
        val = elliptic_gamma(z, Base(parse_complex(need(q_s, "--q"))),
                             Base(parse_complex(need(p_s, "--p"))), pol);
    } else if (fn == "megamma") {
        val = modified_gamma(parse_complex(need(u_s, "--u")), omegas_from(need(omega_s, "--omega")),
                             pol);
    } else if (fn == "dsine") {
        val = double_sine(parse_complex(need(u_s, "--u")), pair_from(need(pair_s, "--pair")), pol);
    } else if (fn == "b22") {
        const auto ws = parse_complex_list(need(omega_s, "--omega"));
        if (ws.size() < 2) throw DomainError("--omega needs at least omega1,omega2");
        val = {b22(parse_complex(need(u_s, "--u")), ws[0], ws[1]), false, false};
    } else if (fn == "pcubic") {
        val = {p_cubic(parse_complex(need(u_s, "--u")), omegas_from(need(omega_s, "--omega"))),
               false, false};
    } else if (fn == "kappa") {
        val = {kappa_constant(omegas_from(need(omega_s, "--omega")), pol), false, false};
    } else if (fn == "dsine-limit") {
        const auto ws = parse_complex_list(need(omega_s, "--omega"));
        if (ws.size() < 2) throw DomainError("--omega needs omega1,omega2");
        val = {cplx{double_sine_limit_check(parse_complex(need(u_s, "--u")), ws[0], ws[1],
                                            tscale, pol),
                    0.0},
               false, false};
    } else {
        throw DomainError("unknown function '" + fn + "'");
    }
    emit(flagged_json(val), out_path, out);
    return 0;
}

struct VerifyArgs {
    std::string identity;
    std::string t_s, g_s, q_s, p_s, omega_s, pair_s, coupling_s;
    int N = 1;
    std::uint64_t seed = 1;
    bool strict = false;
};

VerificationReport dispatch_verify(const VerifyArgs& a, const PrecisionPolicy& pol) {
    Rng rng(a.seed);
    const Regime reg = a.strict ? Regime::StrictlyElliptic : Regime::UnitCircle;
    if (a.identity == "elliptic-beta") {
        EllipticBetaParams par = sample_elliptic_beta(rng);
        if (!a.t_s.empty()) {
            const auto ts = parse_complex_list(a.t_s);
            if (ts.size() != 5) throw DomainError("--t needs five comma-separated values");
            std::copy(ts.begin(), ts.end(), par.t.begin());
        }
        if (!a.q_s.empty()) par.q = parse_complex(a.q_s);
        if (!a.p_s.empty()) par.p = parse_complex(a.p_s);
        return verify(par, pol);
    }
    if (a.identity == "unit-circle-beta") {
        UnitCircleBetaParams par = sample_unit_circle_beta(rng, reg);
        if (!a.omega_s.empty()) par.omegas = omegas_from(a.omega_s);
        if (!a.g_s.empty()) {
            const auto gs = parse_complex_list(a.g_s);
            if (gs.size() != 5) throw DomainError("--g needs five comma-separated values");
            std::copy(gs.begin(), gs.end(), par.g.begin());
        }
        return verify(par, pol);
    }
    if (a.identity == "mult-elliptic") {
        MultiEllipticParams par = sample_multiple_elliptic(rng, a.N);
        par.N = a.N;
        if (!a.t_s.empty()) {
            const auto ts = parse_complex_list(a.t_s);
            if (ts.size() != 5) throw DomainError("--t needs five comma-separated values");
            std::copy(ts.begin(), ts.end(), par.tn.begin());
        }
        if (!a.coupling_s.empty()) par.t = parse_complex(a.coupling_s);
        if (!a.q_s.empty()) par.q = parse_complex(a.q_s);
        if (!a.p_s.empty()) par.p = parse_complex(a.p_s);
        return verify(par, pol);
    }
    if (a.identity == "mult-modified") {
        MultiModifiedParams par = sample_multiple_modified(rng, a.N, reg);
        par.N = a.N;
        if (!a.omega_s.empty()) par.omegas = omegas_from(a.omega_s);
        if (!a.g_s.empty()) {
            const auto gs = parse_complex_list(a.g_s);
            if (gs.size() != 5) throw DomainError("--g needs five comma-separated values");
            std::copy(gs.begin(), gs.end(), par.gn.begin());
        }
        if (!a.coupling_s.empty()) par.g = parse_complex(a.coupling_s);
        return verify(par, pol);
    }
    if (a.identity == "hyp-nr" || a.identity == "hyp-aw") {
        const HypKind kind =
            a.identity == "hyp-nr" ? HypKind::NassrallahRahman : HypKind::AskeyWilson;
        HyperbolicParams par = sample_hyperbolic(rng, kind, a.N);
        par.N = a.N;
        if (!a.pair_s.empty()) par.pair = pair_from(a.pair_s);
        if (!a.g_s.empty()) {
            const auto gs = parse_complex_list(a.g_s);
            const std::size_t want = kind == HypKind::NassrallahRahman ? 5 : 4;
            if (gs.size() != want)
                throw DomainError("--g needs " + std::to_string(want) + " values for this identity");
            par.gn = gs;
        }
        if (!a.coupling_s.empty()) par.g = parse_complex(a.coupling_s);
        return verify(par, pol);
    }
    throw DomainError("unknown identity '" + a.identity + "'");
}

ordered_json sample_json(const std::string& identity, std::uint64_t seed, bool strict) {
    Rng rng(seed);
    ordered_json j;
    j["identity"] = identity;
    j["seed"] = seed;
    auto put_list = [&](const char* key, auto begin, auto end) {
        ordered_json arr = ordered_json::array();
        for (auto it = begin; it != end; ++it) arr.push_back(cplx_json(*it));
        j[key] = arr;
    };
    const Regime reg = strict ? Regime::StrictlyElliptic : Regime::UnitCircle;
    if (identity == "elliptic-beta") {
        const auto par = sample_elliptic_beta(rng);
        put_list("t", par.t.begin(), par.t.end());
        j["q"] = cplx_json(par.q);
        j["p"] = cplx_json(par.p);
    } else if (identity == "unit-circle-beta") {
        const auto par = sample_unit_circle_beta(rng, reg);
        put_list("g", par.g.begin(), par.g.end());
        const cplx ws[3] = {par.omegas.omega1, par.omegas.omega2, par.omegas.omega3};
        put_list("omega", ws, ws + 3);
    } else if (identity == "mult-elliptic") {
        const auto par = sample_multiple_elliptic(rng, 2);
        j["coupling"] = cplx_json(par.t);
        put_list("t", par.tn.begin(), par.tn.end());
        j["q"] = cplx_json(par.q);
        j["p"] = cplx_json(par.p);
    } else if (identity == "mult-modified") {
        const auto par = sample_multiple_modified(rng, 2, reg);
        j["coupling"] = cplx_json(par.g);
        put_list("g", par.gn.begin(), par.gn.end());
        const cplx ws[3] = {par.omegas.omega1, par.omegas.omega2, par.omegas.omega3};
        put_list("omega", ws, ws + 3);
    } else if (identity == "hyp-nr" || identity == "hyp-aw") {
        const auto par = sample_hyperbolic(
            rng, identity == "hyp-nr" ? HypKind::NassrallahRahman : HypKind::AskeyWilson, 1);
        j["coupling"] = cplx_json(par.g);
        put_list("g", par.gn.begin(), par.gn.end());
        const cplx ws[2] = {par.pair.omega1, par.pair.omega2};
        put_list("pair", ws, ws + 2);
    } else {
        throw DomainError("unknown identity '" + identity + "'");
    }
    return j;
}

ordered_json suite_json(const SuiteResult& res) {
    ordered_json j;
    j["schema"] = "1";
    j["suite"] = res.suite;
    j["cases_passed"] = res.n_passed();
    j["cases_total"] = res.cases.size();
    ordered_json arr = ordered_json::array();
    for (const auto& c : res.cases) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["passed"] = c.passed;
        cj["metric"] = c.metric;
        cj["threshold"] = c.threshold;
        if (!c.note.empty()) cj["note"] = c.note;
        arr.push_back(cj);
    }
    j["cases"] = arr;
    j["wall_time_ms"] = res.wall_time_ms;
    return j;
}

// Expands "--config FILE" (a flat JSON object of long-option values) into
// explicit arguments; options already given on the command line win.
std::vector<std::string> apply_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw DomainError("--config needs a file path");
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open config file '" + path + "'");
    nlohmann::json cfg;
    try {
        f >> cfg;
    } catch (const std::exception& e) {
        throw DomainError("bad config file: " + std::string(e.what()));
    }
    if (!cfg.is_object()) throw DomainError("config file must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_string()) {
            args.push_back(flag);
            args.push_back(value.get<std::string>());
        } else {
            args.push_back(flag);
            args.push_back(value.dump());
        }
    }
    return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    try {
        args = apply_config(raw_args);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"elliptic/modified-elliptic gamma function toolkit and beta-integral verifier"};
    app.require_subcommand(1);

    std::string out_path;
    bool compact = false;
    app.add_option("--out", out_path, "write the JSON result to a file");
    app.add_flag("--json", compact, "JSON output (always on; kept for scripts)");

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate one function at given arguments");
    std::string fn, z_s, p_s, q_s, u_s, tau_s, omega_s, pair_s;
    double tscale = 40.0;
    eval->add_option("function", fn,
                     "one of: theta theta1 egamma megamma dsine b22 pcubic kappa dsine-limit")
        ->required();
    eval->add_option("--z", z_s, "complex argument z (a+bi)");
    eval->add_option("--p", p_s, "base p");
    eval->add_option("--q", q_s, "base q");
    eval->add_option("--u", u_s, "complex argument u");
    eval->add_option("--tau", tau_s, "modular parameter tau");
    eval->add_option("--omega", omega_s, "quasiperiods w1,w2,w3");
    eval->add_option("--pair", pair_s, "double-sine pair w1,w2");
    eval->add_option("--tscale", tscale, "regulator scale for dsine-limit");
    PolicyFlags eval_pol;
    eval_pol.attach(eval);

    // verify
    auto* ver = app.add_subcommand("verify", "verify one integral identity");
    VerifyArgs va;
    ver->add_option("identity", va.identity,
                    "one of: elliptic-beta unit-circle-beta mult-elliptic mult-modified hyp-nr hyp-aw")
        ->required();
    ver->add_option("--t", va.t_s, "five t parameters, comma separated");
    ver->add_option("--g", va.g_s, "g parameters, comma separated");
    ver->add_option("--q", va.q_s, "base q");
    ver->add_option("--p", va.p_s, "base p");
    ver->add_option("--omega", va.omega_s, "quasiperiods w1,w2,w3");
    ver->add_option("--pair", va.pair_s, "double-sine pair w1,w2");
    ver->add_option("--coupling", va.coupling_s, "coupling parameter (t or g of the N-fold integrals)");
    ver->add_option("--n", va.N, "number of integration variables (1 or 2)");
    ver->add_option("--seed", va.seed, "seed for any parameters left unset");
    ver->add_flag("--strict", va.strict, "sample the strictly elliptic regime");
    PolicyFlags ver_pol;
    ver_pol.attach(ver);

    // suite
    auto* su = app.add_subcommand("suite", "run an acceptance battery");
    std::string suite_name;
    std::uint64_t suite_seed = 1;
    su->add_option("name", suite_name, "functions | identities-1d | identities-2d | rho | all")
        ->required();
    su->add_option("--seed", suite_seed, "sampler seed");
    PolicyFlags su_pol;
    su_pol.attach(su);

    // sample
    auto* sa = app.add_subcommand("sample", "emit admissible random parameters");
    std::string sample_identity;
    std::uint64_t sample_seed = 1;
    bool sample_strict = false;
    sa->add_option("identity", sample_identity, "identity selector")->required();
    sa->add_option("--seed", sample_seed, "sampler seed");
    sa->add_flag("--strict", sample_strict, "strictly elliptic regime");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (eval->parsed())
            return cmd_eval(fn, z_s, p_s, q_s, u_s, tau_s, omega_s, pair_s, tscale,
                            eval_pol.build(), out_path, out);
        if (ver->parsed()) {
            const VerificationReport rep = dispatch_verify(va, ver_pol.build());
            emit(report_json(rep, args), out_path, out);
            if (!rep.error.empty()) {
                err << "error: " << rep.error << "\n";
                return rep.invalid_input ? 2 : 1;
            }
            return rep.passed ? 0 : 1;
        }
        if (su->parsed()) {
            const SuiteResult res = run_suite(suite_name, suite_seed, su_pol.build());
            emit(suite_json(res), out_path, out);
            return res.all_passed() ? 0 : 1;
        }
        if (sa->parsed()) {
            emit(sample_json(sample_identity, sample_seed, sample_strict), out_path, out);
            return 0;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PoleError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PoleOnContour& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace ubeta
