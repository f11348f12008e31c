/*
   Copyright 2026 The ckv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ckv/bigint.hpp"
#include "ckv/carlitz.hpp"
#include "ckv/errors.hpp"
#include "ckv/fields.hpp"
#include "ckv/lfunc.hpp"
#include "ckv/poly.hpp"
#include "ckv/search.hpp"
#include "ckv/vandiver.hpp"
#include "ckv/witt.hpp"

namespace ckv::cli {

/* Split q into (p, s) with q = p^s; any other q is rejected. */
inline std::pair<std::uint32_t, std::uint32_t> factor_prime_power(
    std::uint64_t q) {
    check_input(q >= 2, "q must be at least 2");
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    std::uint32_t s = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++s;
    }
    check_input(rest == 1, std::to_string(q) + " is not a prime power");
    return {static_cast<std::uint32_t>(p), s};
}

inline Fq build_field(std::uint64_t q, const std::string& modulus_text) {
    auto [p, s] = factor_prime_power(q);
    if (modulus_text.empty()) return Fq(p, s);
    check_input(s > 1, "a prime field takes no modulus");
    return Fq(p, s, parse_modulus(modulus_text, p, s));
}

namespace detail {

struct LineSink {
    std::ostream* out;
    std::unique_ptr<std::ofstream> file;

    explicit LineSink(std::ostream& o, const std::string& path) : out(&o) {
        if (!path.empty()) {
            file = std::make_unique<std::ofstream>(path);
            check_input(file->good(), "cannot open output file: " + path);
        }
    }

    void line(const std::string& s) {
        *out << s << '\n';
        if (file) *file << s << '\n';
    }
};

inline std::string describe_cond(const CondValue& c) {
    switch (c.state) {
    case CondValue::State::True: return "holds";
    case CondValue::State::False: return "fails";
    default: return c.reason;
    }
}

inline void print_certificate(std::ostream& out, const Certificate& c) {
    out << "q = " << c.q << " (p = " << c.p << ", s = " << c.s << ")\n";
    if (c.field_modulus)
        out << "field modulus = " << *c.field_modulus << "\n";
    out << "P = " << c.P << "   (degree " << c.d << ", irreducible)\n";
    out << "n = " << to_string(c.n);
    if (c.m) out << "   (n = m*(q^d-1)/(q-1) with m = " << to_string(*c.m) << ")";
    out << "\n";
    out << "i(P) = " << c.i_P << "   (nonzero as required)\n";
    out << "beta condition:  " << describe_cond(c.beta) << "\n";
    if (c.l4)
        out << "L-value condition (mod 4): " << describe_cond(*c.l4) << "\n";
    out << "gamma condition: " << describe_cond(c.gamma) << "\n";
    out << "Q = " << c.Q << "   (degree " << c.p * c.d << ", irreducible)\n";
    out << "N = " << to_string(c.N) << ", modulus = " << to_string(c.modulus)
        << ", index = " << to_string(c.index) << "\n";
    out << "theorem " << c.theorem << ": " << c.verdict << "\n";
}

/* ---- verify-paper: replay the two built-in worked examples ---- */

inline void expect(bool ok, const std::string& what) {
    if (!ok) throw internal_error("mismatch: " + what);
}

inline void verify_example_f3(std::ostream& out) {
    Fq f(3, 1);
    Poly P = parse_poly("T^3-T^2+1", f, Var::T);
    expect(is_irreducible(P) && i_of(P) == 2, "P irreducible with i(P) = 2");
    Poly b = beta(f, 13);
    expect(b == parse_poly("1-T^9-T^3-T", f, Var::T), "beta(13) value");
    Poly g = gamma(f, 13);
    expect(g == parse_poly("T^9+T^3+T-T^12-T^10-T^4-1", f, Var::T),
           "gamma(13) value");
    expect((b % P).is_zero(), "P divides beta(13)");
    expect((g % P).is_zero(), "P divides gamma(13)");
    Certificate c = check_kv_odd(P, 13);
    expect(c.verdict == "counterexample", "verdict");
    expect(parse_poly(c.Q, f, Var::T) ==
               parse_poly("T^9-T^6-T^4-T^3-T^2+1", f, Var::T),
           "Q value");
    expect(is_irreducible(parse_poly(c.Q, f, Var::T)), "Q irreducible");
    expect(c.N == 9841, "N = 9841");
    expect(c.modulus == 19682, "modulus = 19682");
    expect(c.index == 9840, "index = 9840");
    expect(c.m && *c.m == 1, "m = 1");
    expect(verify(c).ok, "certificate re-verification");
    out << "ok: worked example over F_3 (d = 3, n = 13)\n";
}

inline void verify_example_f4(std::ostream& out) {
    Fq f(2, 2); // modulus a^2+a+1
    Poly P = parse_poly("T^5+a^2*T^4+T^3+a*T^2+a^2", f, Var::T);
    expect(is_irreducible(P), "P irreducible");
    expect(i_of(P) == 1, "i(P) = 1");
    const bigint n = 341; // (4^5 - 1)/3
    ResidueCtx ctx(P);
    expect(gamma_mod(n, ctx).is_zero(), "P divides gamma(341) (truncated)");
    Poly g = gamma(f, n);
    expect(g.degree() == 576, "exact gamma(341) degree");
    expect((g % P).is_zero(), "P divides gamma(341) (exact)");
    LContext L(ctx, n, 2);
    expect(L.wctx().is_zero(lvalue_base(L)), "L(1) = 0 mod 4");
    Certificate c = check_kv_char2(P, n);
    expect(c.verdict == "counterexample", "verdict");
    Poly Q = parse_poly(c.Q, f, Var::T);
    expect(Q.degree() == 10 && is_irreducible(Q), "Q irreducible of degree 10");
    expect(Q == parse_poly("T^10+T^9+a*T^8+T^8+T^3+a*T^2+a+1", f, Var::T),
           "Q value");
    expect(c.N == 349525, "N = 349525");
    expect(c.modulus == 1048575, "modulus = 1048575");
    expect(c.index == 699049, "index = 699049");
    expect(c.m && *c.m == 1, "m = 1");
    expect(verify(c).ok, "certificate re-verification");
    out << "ok: worked example over F_4 (d = 5, n = 341)\n";
}

} // namespace detail

/* Entry point shared by the binary and the tests: parses argv-style
   arguments (program name excluded), writes reports to out/err, and
   returns the exit code.  0 = success, 3 = hypotheses evaluated and
   not satisfied, 2 = usage or input error, 1 = internal invariant
   failure. */
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"counterexample certification for the function-field "
                 "Kummer-Vandiver question"};
    app.require_subcommand(1);

    // field
    auto* c_field = app.add_subcommand("field", "describe a coefficient field");
    std::uint64_t f_q = 0;
    std::string f_mod;
    c_field->add_option("--q", f_q, "field size (prime power)")->required();
    c_field->add_option("--modulus", f_mod, "modulus of the generator a");

    // beta / gamma
    std::uint64_t b_q = 0;
    std::string b_mod, b_n, b_P;
    auto add_bg = [&](const char* name, const char* what) {
        auto* c = app.add_subcommand(name, what);
        c->add_option("--q", b_q, "field size (prime power)")->required();
        c->add_option("--modulus", b_mod, "modulus of the generator a");
        c->add_option("--n", b_n, "exponent n >= 1")->required();
        c->add_option("--mod", b_P, "reduce mod this irreducible P");
        return c;
    };
    auto* c_beta = add_bg("beta", "the Bernoulli-type sum beta(n)");
    auto* c_gamma = add_bg("gamma", "the i-weighted companion sum gamma(n)");

    // lvalue
    auto* c_lvalue = app.add_subcommand("lvalue", "L-values at X = 1");
    std::uint64_t l_q = 0;
    std::string l_mod, l_P, l_n;
    std::uint32_t l_k = 0, l_psi = 0;
    bool l_tilde = false;
    c_lvalue->add_option("--q", l_q, "field size (prime power)")->required();
    c_lvalue->add_option("--modulus", l_mod, "modulus of the generator a");
    c_lvalue->add_option("--P", l_P, "irreducible P in T")->required();
    c_lvalue->add_option("--n", l_n, "twist exponent")->required();
    c_lvalue->add_option("--precision", l_k, "p-adic precision k >= 1")
        ->required();
    auto* opt_psi =
        c_lvalue->add_option("--psi", l_psi, "psi^j twist (0 <= j < p)");
    auto* opt_tilde = c_lvalue->add_flag(
        "--tilde", l_tilde, "sum over the Artin-Schreier cover instead");
    opt_psi->excludes(opt_tilde);
    opt_tilde->excludes(opt_psi);

    // check
    auto* c_check = app.add_subcommand("check", "run the full theorem engine");
    std::uint64_t k_q = 0;
    std::string k_mod, k_P, k_n;
    bool k_json = false;
    c_check->add_option("--q", k_q, "field size (prime power)")->required();
    c_check->add_option("--modulus", k_mod, "modulus of the generator a");
    c_check->add_option("--P", k_P, "irreducible P in T")->required();
    c_check->add_option("--n", k_n, "exponent n >= 1")->required();
    c_check->add_flag("--json", k_json, "emit the certificate as JSON");

    // census
    auto* c_census =
        app.add_subcommand("census", "exhaustive sweep at one degree");
    std::uint64_t e_q = 0;
    std::string e_mod;
    std::uint32_t e_d = 0, e_m = 0;
    c_census->add_option("--q", e_q, "field size (prime power)")->required();
    c_census->add_option("--modulus", e_mod, "modulus of the generator a");
    c_census->add_option("--d", e_d, "degree of P")->required();
    c_census->add_option("--m", e_m, "exponent multiplier")->required();

    // table1
    auto* c_table =
        app.add_subcommand("table1", "randomized divisibility statistics");
    std::uint64_t t_q = 0, t_samples = 0, t_seed = 0;
    std::string t_mod, t_out;
    std::vector<std::uint32_t> t_degrees;
    std::uint32_t t_threads = 1;
    c_table->add_option("--q", t_q, "field size (odd prime power)")->required();
    c_table->add_option("--modulus", t_mod, "modulus of the generator a");
    c_table->add_option("--degrees", t_degrees, "degrees to sample")
        ->required()
        ->delimiter(',');
    c_table->add_option("--samples", t_samples, "primes per degree")->required();
    c_table->add_option("--seed", t_seed, "PRNG seed")->required();
    c_table->add_option("--threads", t_threads, "worker threads");
    c_table->add_option("--out", t_out, "also write the JSONL to this file");

    // hunt
    auto* c_hunt =
        app.add_subcommand("hunt", "randomized counterexample search");
    std::uint64_t h_q = 0, h_samples = 0, h_seed = 0;
    std::string h_mod, h_out, h_n;
    std::uint32_t h_d = 0, h_m = 0, h_threads = 1;
    c_hunt->add_option("--q", h_q, "field size (prime power)")->required();
    c_hunt->add_option("--modulus", h_mod, "modulus of the generator a");
    c_hunt->add_option("--d", h_d, "degree of P")->required();
    auto* opt_hm = c_hunt->add_option("--m", h_m, "exponent multiplier");
    auto* opt_hn = c_hunt->add_option("--n", h_n, "explicit exponent");
    opt_hm->excludes(opt_hn);
    opt_hn->excludes(opt_hm);
    c_hunt->add_option("--samples", h_samples, "primes to sample")->required();
    c_hunt->add_option("--seed", h_seed, "PRNG seed")->required();
    c_hunt->add_option("--threads", h_threads, "worker threads");
    c_hunt->add_option("--out", h_out, "also write the JSONL to this file");

    // verify-paper
    auto* c_verify = app.add_subcommand(
        "verify-paper", "replay the built-in worked examples");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_field->parsed()) {
            Fq f = build_field(f_q, f_mod);
            out << "q = " << f.q() << " (p = " << f.p() << ", s = " << f.s()
                << ")\n";
            if (f.s() == 1)
                out << "modulus: none (prime field)\n";
            else
                out << "modulus: " << format_field_modulus(f.modulus_coeffs())
                    << "   (a is a root)\n";
        } else if (c_beta->parsed() || c_gamma->parsed()) {
            bool is_beta = c_beta->parsed();
            Fq f = build_field(b_q, b_mod);
            bigint n = parse_bigint(b_n);
            if (b_P.empty()) {
                Poly v = is_beta ? beta(f, n) : gamma(f, n);
                out << format_poly(v) << "\n";
            } else {
                Poly P = parse_poly(b_P, f, Var::T);
                check_input(is_irreducible(P), "--mod P must be irreducible");
                ResidueCtx ctx(P);
                Poly v = is_beta ? beta_mod(n, ctx) : gamma_mod(n, ctx);
                out << format_poly(v) << "\n";
            }
        } else if (c_lvalue->parsed()) {
            Fq f = build_field(l_q, l_mod);
            Poly P = parse_poly(l_P, f, Var::T);
            ResidueCtx ctx(P);
            bigint n = parse_bigint(l_n);
            LContext L(ctx, n, l_k);
            out << "ring: Z/" << L.wctx().pk() << " lift of F_" << f.q()
                << "[T]/(P), d = " << L.d() << "\n";
            if (*opt_psi) {
                check_input(l_psi < f.p(), "psi index must satisfy 0 <= j < p");
                CycloElem v = lvalue_psi(L, l_psi);
                out << "L(1, psi^" << l_psi << " omega^n) =\n";
                for (std::uint32_t i = 0; i + 1 < f.p(); ++i)
                    out << "  z^" << i << ": " << format_witt(L.wctx(), v.c[i])
                        << "\n";
            } else if (l_tilde) {
                WittElem v = lvalue_tilde(L);
                out << "L~(1, omega-hat^n) = " << format_witt(L.wctx(), v)
                    << "\n";
            } else {
                WittElem v = lvalue_base(L);
                out << "L(1, omega^n) = " << format_witt(L.wctx(), v) << "\n";
            }
        } else if (c_check->parsed()) {
            Fq f = build_field(k_q, k_mod);
            Poly P = parse_poly(k_P, f, Var::T);
            Certificate cert = check_kv(P, parse_bigint(k_n));
            if (k_json)
                out << to_json(cert).dump() << "\n";
            else
                detail::print_certificate(out, cert);
            return cert.is_counterexample() ? 0 : 3;
        } else if (c_census->parsed()) {
            Fq f = build_field(e_q, e_mod);
            std::vector<CensusEntry> entries = census(f, e_d, e_m);
            std::uint64_t both = 0;
            for (const CensusEntry& e : entries) {
                out << "P = " << format_poly(e.P) << "   i = " << e.i_P
                    << "   beta_divisible = "
                    << (e.beta_divisible ? "true" : "false")
                    << "   gamma_divisible = "
                    << (e.gamma_divisible ? "true" : "false") << "\n";
                if (e.beta_divisible && e.gamma_divisible) ++both;
            }
            out << "pool = " << entries.size() << ", both conditions = " << both
                << "\n";
        } else if (c_table->parsed()) {
            Fq f = build_field(t_q, t_mod);
            detail::LineSink sink(out, t_out);
            json header;
            header["kind"] = "header";
            header["command"] = "table1";
            header["q"] = f.q();
            header["field_modulus"] =
                f.s() > 1 ? json(format_field_modulus(f.modulus_coeffs()))
                          : json(nullptr);
            header["m"] = (f.q() - 1) / 2;
            header["samples"] = t_samples;
            header["seed"] = t_seed;
            header["degrees"] = t_degrees;
            sink.line(header.dump());
            for (std::uint32_t d : t_degrees) {
                SearchConfig cfg;
                cfg.field = &f;
                cfg.d = d;
                cfg.samples = t_samples;
                cfg.seed = t_seed;
                cfg.threads = t_threads;
                TableRow row = run_table1(cfg);
                json j;
                j["kind"] = "row";
                j["d"] = row.d;
                j["n"] = to_string(row.n);
                j["samples"] = row.samples;
                j["count_beta"] = row.count_beta;
                j["count_gamma"] = row.count_gamma;
                j["count_both"] = row.count_both;
                j["i_zero_rejected"] = row.i_zero_rejected;
                sink.line(j.dump());
            }
        } else if (c_hunt->parsed()) {
            Fq f = build_field(h_q, h_mod);
            SearchConfig cfg;
            cfg.field = &f;
            cfg.d = h_d;
            if (*opt_hn) cfg.n = parse_bigint(h_n);
            if (*opt_hm) cfg.m = h_m;
            cfg.samples = h_samples;
            cfg.seed = h_seed;
            cfg.threads = h_threads;
            bigint n = search_exponent(cfg);
            detail::LineSink sink(out, h_out);
            json header;
            header["kind"] = "header";
            header["command"] = "hunt";
            header["q"] = f.q();
            header["field_modulus"] =
                f.s() > 1 ? json(format_field_modulus(f.modulus_coeffs()))
                          : json(nullptr);
            header["d"] = h_d;
            header["n"] = to_string(n);
            header["samples"] = h_samples;
            header["seed"] = h_seed;
            sink.line(header.dump());
            HuntResult result = hunt(cfg);
            for (const Certificate& cert : result.certificates)
                sink.line(to_json(cert).dump());
            json summary;
            summary["kind"] = "summary";
            summary["samples"] = result.samples;
            summary["counterexamples"] = result.counterexamples;
            summary["i_zero_rejected"] = result.i_zero_rejected;
            sink.line(summary.dump());
        } else if (c_verify->parsed()) {
            detail::verify_example_f3(out);
            detail::verify_example_f4(out);
            out << "all built-in example checks passed\n";
        }
        return 0;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace ckv::cli
