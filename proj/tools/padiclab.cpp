#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "padiclab/acceptance.hpp"
#include "padiclab/cache.hpp"
#include "padiclab/eisenmod.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/fgl.hpp"
#include "padiclab/gammap.hpp"
#include "padiclab/modforms.hpp"
#include "padiclab/report.hpp"
#include "padiclab/ulimits.hpp"
#include "padiclab/weierstrass.hpp"

namespace {

using namespace padiclab;

Rat parse_rat_arg(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw ParseError("not a rational number: '" + s + "'");
    }
}

CurveModel resolve_curve(const std::string& file, const std::string& g2s,
                         const std::string& g3s) {
    if (!file.empty()) return parse_curve_file(file);
    if (!g2s.empty() || !g3s.empty()) {
        if (g2s.empty() || g3s.empty()) throw Error("provide both --g2 and --g3");
        return curve_normalize(parse_rat_arg(g2s), parse_rat_arg(g3s));
    }
    return curve_normalize(Rat(-16), Rat(0)); // the built-in level-32 curve
}

long checked_pow(long base, long e, long limit) {
    long out = 1;
    for (long i = 0; i < e; ++i) {
        out *= base;
        if (out > limit)
            throw BudgetExceeded("p^" + std::to_string(e) + " exceeds the budget limit " +
                                 std::to_string(limit));
    }
    return out;
}

struct AvatarResidue {
    Int value;   // residue mod p^digits
    long digits; // certified digits
};

bool residues_agree(const AvatarResidue& a, const AvatarResidue& b, long cap, const Int& P,
                    long& k_used, int sign = 1) {
    k_used = std::min({a.digits, b.digits, cap});
    if (k_used < 1) return false;
    Int mod = pow_int(P, static_cast<unsigned long>(k_used));
    Int x = a.value % mod;
    Int y = (sign > 0 ? b.value : -b.value) % mod;
    return ((x - y) % mod + mod) % mod == 0;
}

void cmd_gamma32(RunReport& rep, long p, long prec, long m_max) {
    rep.input_digest = "p=" + std::to_string(p) + ";prec=" + std::to_string(prec) +
                       ";m-max=" + std::to_string(m_max);
    if (p < 3 || p % 4 != 3)
        throw Error("gamma32: p must be a prime ≡ 3 mod 4, got " + std::to_string(p));
    if (prec < 1 || m_max < 0) throw Error("gamma32: bad --prec/--m-max");
    const long budget = checked_pow(p, 2 * m_max + 1, 200000);
    const Int P(p);

    Builtin32 b32 = builtin_32(budget);
    ULimitProblem prob = make_problem(b32.W1, b32.form, p, m_max, 1, 2 * m_max + 2);
    BetaGammaEstimate est = estimate_beta_gamma(prob);
    AvatarResidue g_u{est.gamma.value.residue_mod(
                          std::min(static_cast<long>(est.gamma.value.precision), prec)),
                      std::min(static_cast<long>(est.gamma.value.precision), prec)};
    rep.add("u-limit-gamma", true,
            "gamma ≡ " + g_u.value.get_str() + " mod " +
                pow_int(P, static_cast<unsigned long>(g_u.digits)).get_str(),
            g_u.digits);

    // depth-prec denominator rows first appear at exponent p^{prec+1}
    const long T = std::max(p * p * (prec + 1), checked_pow(p, prec + 1, 200000)) + 2 * p;
    FormalLog log = ec_formal_expansion(b32.curve, T);
    DieudonneSolution sol = dieudonne_solve(log, p, T, prec);
    long mu_k = std::min(sol.mu_digits, prec);
    AvatarResidue mu{sol.mu_p.residue_mod(mu_k), mu_k};
    rep.add("dieudonne-mu", true,
            "mu ≡ " + mu.value.get_str() + " mod " +
                pow_int(P, static_cast<unsigned long>(mu_k)).get_str(),
            mu_k);

    CatalanSequence cs = catalan_gamma_sequence(p, m_max);
    // C(n) = binom(2n, n)/(n+1), so term m of the ratio form equals the
    // binomial form times 5(nbot+1)/(3(ntop+1)). The routes agree only in the
    // limit; termwise they must satisfy this exact identity.
    bool forms_consistent = true;
    {
        long podd = p, peven = 1;
        for (long m = 0; m <= m_max; ++m) {
            Rat ntop1((podd + 1) / 4 + 1), nbot1((peven - 1) / 4 + 1);
            if (cs.ratio_form[static_cast<size_t>(m)] * Rat(3) * ntop1 !=
                cs.binomial_form[static_cast<size_t>(m)] * Rat(5) * nbot1)
                forms_consistent = false;
            peven = podd * p;
            podd = peven * p;
        }
    }
    AvatarResidue cat{reduce_mod(cs.last_value, P, prec), prec};
    rep.add("catalan-limit", forms_consistent,
            "last term ≡ " + cat.value.get_str() + " mod p^" + std::to_string(prec) +
                (forms_consistent ? "; ratio and binomial routes consistent"
                                  : "; RATIO/BINOMIAL ROUTES INCONSISTENT"),
            cs.even_m_limit.cauchy ? cs.even_m_limit.value.precision : 0);

    GammaClosedForm cf = gamma_closed_form(p, prec);
    AvatarResidue clo{cf.value.residue_mod(prec), prec};
    rep.add("closed-form", cf.forms_agree,
            "value ≡ " + clo.value.get_str() + " mod p^" + std::to_string(prec) +
                (cf.forms_agree ? "; both sign expressions agree" : "; SIGN FORMS DIFFER"),
            prec);

    long k1 = 0, k2 = 0, k3 = 0;
    bool same_u_mu = residues_agree(g_u, mu, prec, P, k1);
    bool same_cat_clo = residues_agree(cat, clo, prec, P, k2);
    rep.add("u-limit-vs-dieudonne", same_u_mu, "agree mod p^" + std::to_string(k1), k1);
    rep.add("catalan-vs-closed", same_cat_clo, "agree mod p^" + std::to_string(k2), k2);

    bool plus = residues_agree(g_u, cat, prec, P, k3, +1);
    bool minus = residues_agree(g_u, cat, prec, P, k3, -1);
    int eps = (plus && !minus) ? 1 : (minus && !plus) ? -1 : 0;
    rep.epsilon = eps;
    rep.epsilon_evidence = {"p=" + std::to_string(p) + ": u-limit " + g_u.value.get_str() +
                            " vs catalan " + cat.value.get_str() + " mod p^" +
                            std::to_string(k3)};
    rep.add("global-sign", eps != 0,
            eps == 0 ? "no consistent sign" : "epsilon = " + std::to_string(eps), k3);
}

void cmd_mu(RunReport& rep, const CurveModel& curve, long p, long prec) {
    rep.input_digest = "p=" + std::to_string(p) + ";prec=" + std::to_string(prec);
    const Int P(p);
    const long T = std::max({2 * p * p + 6, p * p * (prec + 1) + 2 * p,
                             checked_pow(p, prec + 1, 200000) + 2 * p});
    FormalLog log = ec_formal_expansion(curve, T);
    DieudonneSolution sol = dieudonne_solve(log, p, T, prec);
    rep.add("lambda", true,
            "lambda ≡ " + sol.lambda_p.residue_mod(sol.lambda_digits).get_str() + " mod " +
                pow_int(P, static_cast<unsigned long>(sol.lambda_digits)).get_str(),
            sol.lambda_digits);
    rep.add("mu", true,
            "mu ≡ " + sol.mu_p.residue_mod(sol.mu_digits).get_str() + " mod " +
                pow_int(P, static_cast<unsigned long>(sol.mu_digits)).get_str(),
            sol.mu_digits);
    rep.add("mu-unit", sol.mu_p.is_unit(),
            sol.mu_p.is_unit() ? "ord_p(mu) = 0" : "mu is not a unit");
    MuCongruenceReport mc = verify_mu_congruence(curve, p);
    rep.add("eisenstein-congruence", mc.pass,
            "mu ≡ " + mc.mu_residue.get_str() + ", target " + mc.eisenstein_value.get_str() +
                " mod " + std::to_string(p));
}

void cmd_honda(RunReport& rep, const CurveModel& curve, const std::string& form_file,
               std::vector<long> primes, long T) {
    rep.input_digest = "terms=" + std::to_string(T);
    if (primes.empty()) primes = {3, 5, 7, 11, 13};
    std::shared_ptr<const Eigenform> form;
    if (!form_file.empty())
        form = std::make_shared<const Eigenform>(load_eigenform(form_file, 32));
    else
        form = builtin_32(T).form;
    FormalLog log = ec_formal_expansion(curve, T);
    QSeries t = honda_t_series(*form, log, T);
    for (long p : primes) {
        HondaReport hr = honda_check(t, p);
        rep.add("p-integrality p=" + std::to_string(p), hr.pass,
                hr.pass ? "all coefficients p-integral through q^" + std::to_string(hr.T)
                        : "ord " + std::to_string(hr.min_ord) + " at exponent " +
                              std::to_string(hr.at_exponent));
    }
}

void cmd_verify(RunReport& rep, const std::string& name, long T) {
    rep.input_digest = "identity=" + name + ";terms=" + std::to_string(T);
    if (name == "wp-lift") {
        IdentityReport r = verify_wp_lift(T);
        rep.add(r.name, r.pass, r.detail);
    } else if (name == "20zeta") {
        TwentyZetaReport r = verify_20zeta_identity(T);
        rep.add("20zeta", r.pass,
                r.pass ? "holds with unique sign " + std::to_string(r.sigma) + " through q^" +
                             std::to_string(r.terms)
                       : r.detail);
    } else {
        throw Error("unknown identity '" + name + "' (expected wp-lift or 20zeta)");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic verification toolkit for a weight-2 eigenform, its "
                 "elliptic curve, and their congruences"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string cache_dir_flag;
    long jobs = 1;
    unsigned long seed = 20260814UL;
    bool json = false;
    app.add_option("--cache-dir", cache_dir_flag, "series cache directory (or PADICLAB_CACHE)");
    app.add_option("--jobs", jobs, "worker threads for grid sweeps");
    app.add_option("--seed", seed, "seed for randomized property subsets");
    app.add_flag("--json", json, "emit the JSON report instead of the table");

    long p = 0, prec = 2, m_max = 2, terms = 500, vterms = 200;
    std::string curve_file, g2s, g3s, form_file, identity, battery = "acceptance";
    std::vector<long> honda_primes;

    CLI::App* g32 = app.add_subcommand("gamma32", "four-way gamma consistency at one prime");
    g32->add_option("--p", p, "prime ≡ 3 mod 4")->required();
    g32->add_option("--prec", prec, "target digits (default 2)");
    g32->add_option("--m-max", m_max, "approximant depth (default 2)");

    CLI::App* muc = app.add_subcommand("mu", "Dieudonné pair and the mu congruence");
    muc->add_option("--curve", curve_file, "curve file (g2/g3 or ainv lines)");
    muc->add_option("--g2", g2s, "g2 invariant");
    muc->add_option("--g3", g3s, "g3 invariant");
    muc->add_option("--p", p, "odd prime of good supersingular reduction")->required();
    muc->add_option("--prec", prec, "target digits (default 2)");

    CLI::App* hon = app.add_subcommand("honda", "integrality of the transported parameter");
    hon->add_option("--curve", curve_file, "curve file (defaults to the built-in curve)");
    hon->add_option("--form", form_file, "eigenform file: optional 'level N', then 'n b(n)' lines");
    hon->add_option("--p", honda_primes, "primes to check (default 3 5 7 11 13)");
    hon->add_option("--terms", terms, "expansion depth (default 500)");

    CLI::App* ver = app.add_subcommand("verify", "Laurent-expansion identities");
    ver->add_option("identity", identity, "wp-lift | 20zeta")->required();
    ver->add_option("--terms", vterms, "q-expansion depth (default 200)");

    CLI::App* sui = app.add_subcommand("suite", "verification batteries");
    sui->add_option("battery", battery, "battery name (acceptance)");

    CLI11_PARSE(app, argc, argv);

    RunReport rep;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (g32->parsed()) {
            rep.command = "gamma32";
            cmd_gamma32(rep, p, prec, m_max);
        } else if (muc->parsed()) {
            rep.command = "mu";
            cmd_mu(rep, resolve_curve(curve_file, g2s, g3s), p, prec);
        } else if (hon->parsed()) {
            rep.command = "honda";
            cmd_honda(rep, resolve_curve(curve_file, g2s, g3s), form_file, honda_primes, terms);
        } else if (ver->parsed()) {
            rep.command = "verify";
            cmd_verify(rep, identity, vterms);
        } else if (sui->parsed()) {
            if (battery != "acceptance") throw padiclab::Error("unknown battery: " + battery);
            AcceptanceOptions opts;
            opts.jobs = jobs;
            opts.seed = seed;
            if (!cache_dir_flag.empty())
                opts.cache_dir = cache_dir_flag;
            else
                opts.cache_dir = cache_dir_from_env();
            opts.progress = json ? &std::cerr : &std::cout;
            rep = run_acceptance(opts);
        }
    } catch (const padiclab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (json) {
        std::cout << rep.to_json_string() << "\n";
    } else {
        std::cout << rep.table();
        if (rep.epsilon != 0) std::cout << "global sign: " << rep.epsilon << "\n";
        std::cout << (rep.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}
