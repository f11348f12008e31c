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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ckv/bigint.hpp"
#include "ckv/carlitz.hpp"
#include "ckv/errors.hpp"
#include "ckv/fields.hpp"
#include "ckv/lfunc.hpp"
#include "ckv/poly.hpp"

namespace ckv {

using json = nlohmann::ordered_json;

/* One divisibility condition of a certificate: evaluated to a boolean,
   or skipped with a reason recorded verbatim. */
struct CondValue {
    enum class State { True, False, Skipped };
    State state = State::Skipped;
    std::string reason;

    static CondValue of(bool b) {
        return {b ? State::True : State::False, ""};
    }
    static CondValue skipped(std::string why) {
        return {State::Skipped, std::move(why)};
    }
    /* A skipped condition never blocks a verdict. */
    bool blocks() const { return state == State::False; }
};

inline json cond_to_json(const CondValue& c) {
    switch (c.state) {
    case CondValue::State::True: return true;
    case CondValue::State::False: return false;
    default: return c.reason;
    }
}

inline CondValue cond_from_json(const json& j) {
    if (j.is_boolean()) return CondValue::of(j.get<bool>());
    check_input(j.is_string(), "condition must be a boolean or a skip reason");
    return CondValue::skipped(j.get<std::string>());
}

/* A self-contained, re-checkable record of one (P, n) instance: the
   field, the prime, the exponent, every hypothesis with its outcome,
   and the resulting cyclotomic data (Q, N, the modulus q^(pd) - 1 and
   the normalized index of the relevant Bernoulli-Carlitz number). */
struct Certificate {
    std::uint64_t q = 0;
    std::uint32_t p = 0;
    std::uint32_t s = 0;
    std::optional<std::string> field_modulus; // in "a"; absent when s == 1
    std::string P;
    std::uint32_t d = 0;
    bigint n;
    std::optional<bigint> m; // present when n = m (q^d - 1)/(q - 1)
    std::uint32_t i_P = 0;
    CondValue beta;
    CondValue gamma;
    std::optional<CondValue> l4; // engaged only in characteristic 2
    std::string Q;
    bigint N;
    bigint modulus;
    bigint index;
    std::string theorem; // "4.1" (p odd) or "5.2" (p = 2)
    std::string verdict; // "counterexample" or "hypotheses-not-satisfied"

    bool is_counterexample() const { return verdict == "counterexample"; }
};

/* The exponent -N - 1 reduced to the canonical representative in
   [0, modulus). */
inline bigint normalize_index(const bigint& N, const bigint& modulus) {
    check_input(modulus >= 1, "modulus must be positive");
    return mod_floor(-N - 1, modulus);
}

inline std::string format_field_modulus(const std::vector<std::uint32_t>& g) {
    std::string out;
    for (std::size_t i = g.size(); i-- > 0;) {
        if (g[i] == 0) continue;
        if (!out.empty()) out += '+';
        std::string piece;
        if (g[i] != 1 || i == 0) piece += std::to_string(g[i]);
        if (i >= 1) {
            if (!piece.empty()) piece += '*';
            piece += 'a';
            if (i >= 2) piece += '^' + std::to_string(i);
        }
        out += piece;
    }
    return out.empty() ? "0" : out;
}

inline json to_json(const Certificate& c) {
    json j;
    j["q"] = c.q;
    j["p"] = c.p;
    j["s"] = c.s;
    j["field_modulus"] =
        c.field_modulus ? json(*c.field_modulus) : json(nullptr);
    j["P"] = c.P;
    j["d"] = c.d;
    j["n"] = to_string(c.n);
    j["m"] = c.m ? json(c.m->convert_to<std::uint64_t>()) : json(nullptr);
    j["i_P"] = c.i_P;
    j["beta_divisible"] = cond_to_json(c.beta);
    j["gamma_divisible"] = cond_to_json(c.gamma);
    j["l4_divisible"] = c.l4 ? cond_to_json(*c.l4) : json(nullptr);
    j["Q"] = c.Q;
    j["N"] = to_string(c.N);
    j["modulus"] = to_string(c.modulus);
    j["index"] = to_string(c.index);
    j["theorem"] = c.theorem;
    j["verdict"] = c.verdict;
    return j;
}

inline Certificate certificate_from_json(const json& j) {
    check_input(j.is_object(), "certificate must be a JSON object");
    Certificate c;
    try {
        c.q = j.at("q").get<std::uint64_t>();
        c.p = j.at("p").get<std::uint32_t>();
        c.s = j.at("s").get<std::uint32_t>();
        if (!j.at("field_modulus").is_null())
            c.field_modulus = j.at("field_modulus").get<std::string>();
        c.P = j.at("P").get<std::string>();
        c.d = j.at("d").get<std::uint32_t>();
        c.n = parse_bigint(j.at("n").get<std::string>());
        if (!j.at("m").is_null()) c.m = bigint(j.at("m").get<std::uint64_t>());
        c.i_P = j.at("i_P").get<std::uint32_t>();
        c.beta = cond_from_json(j.at("beta_divisible"));
        c.gamma = cond_from_json(j.at("gamma_divisible"));
        if (!j.at("l4_divisible").is_null())
            c.l4 = cond_from_json(j.at("l4_divisible"));
        c.Q = j.at("Q").get<std::string>();
        c.N = parse_bigint(j.at("N").get<std::string>());
        c.modulus = parse_bigint(j.at("modulus").get<std::string>());
        c.index = parse_bigint(j.at("index").get<std::string>());
        c.theorem = j.at("theorem").get<std::string>();
        c.verdict = j.at("verdict").get<std::string>();
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed certificate: ") + e.what());
    }
    check_input(c.theorem == "4.1" || c.theorem == "5.2",
                "unknown theorem tag");
    return c;
}

namespace detail {

inline std::string skip_reason(std::uint64_t q) {
    return q == 2 ? "vacuous" : "skipped: (q-1)|n";
}

/* Shared tail of both engines: records the base-change data.  The
   irreducibility of Q = P(T^p - T) is guaranteed by i(P) != 0 and is
   asserted here on every run. */
inline void fill_base_change(Certificate& c, const Poly& P, const bigint& n) {
    const Fq& f = P.field();
    const std::uint32_t p = f.p();
    const std::uint32_t d = static_cast<std::uint32_t>(P.degree());
    std::vector<std::uint32_t> sv(p + 1, 0);
    sv[1] = f.neg(1);
    sv[p] = 1;
    Poly Q = compose(P, Poly(f, Var::T, std::move(sv)));
    check_internal(is_irreducible(Q), "base-changed modulus is reducible");
    c.Q = format_poly(Q);
    bigint qpd = pow_bigint(f.q(), static_cast<std::uint64_t>(p) * d);
    bigint qd = pow_bigint(f.q(), d);
    check_internal((qpd - 1) % (qd - 1) == 0, "exponent ratio not integral");
    bigint ratio = (qpd - 1) / (qd - 1);
    c.N = n * ratio;
    c.modulus = qpd - 1;
    c.index = normalize_index(c.N, c.modulus);
    bigint mq = n * (f.q() - 1);
    if (mq % (qd - 1) == 0 && mq >= (qd - 1)) c.m = mq / (qd - 1);
}

inline Certificate start_certificate(const Poly& P, const bigint& n) {
    const Fq& f = P.field();
    check_input(P.var() == Var::T, "P must be a polynomial in T");
    check_input(n >= 1, "n must be positive");
    check_input(is_irreducible(P), "P is reducible");
    Certificate c;
    c.q = f.q();
    c.p = f.p();
    c.s = f.s();
    if (f.s() > 1) c.field_modulus = format_field_modulus(f.modulus_coeffs());
    c.P = format_poly(P);
    c.d = static_cast<std::uint32_t>(P.degree());
    c.n = n;
    c.i_P = i_of(P);
    check_input(c.i_P != 0, "additive invariant of P vanishes");
    return c;
}

} // namespace detail

/* Odd-characteristic engine: P irreducible with i(P) != 0, and
   (1) P | beta(n) whenever (q - 1) does not divide n,
   (2) P | gamma(n).
   When both hold, omega^(-N-1) cuts out a counterexample instance in
   the degree-pd cyclotomic ring; the certificate records it. */
inline Certificate check_kv_odd(const Poly& P, const bigint& n) {
    const Fq& f = P.field();
    check_input(f.p() != 2, "this engine requires odd characteristic");
    Certificate c = detail::start_certificate(P, n);
    ResidueCtx ctx(P);
    if (n % (f.q() - 1) == 0) {
        c.beta = CondValue::skipped(detail::skip_reason(f.q()));
        c.gamma = CondValue::of(gamma_mod(n, ctx).is_zero());
    } else {
        BetaGammaMod bg = beta_gamma_mod(n, ctx);
        c.beta = CondValue::of(bg.beta.is_zero());
        c.gamma = CondValue::of(bg.gamma.is_zero());
    }
    c.l4 = std::nullopt;
    detail::fill_base_change(c, P, n);
    c.theorem = "4.1";
    c.verdict = (!c.beta.blocks() && !c.gamma.blocks())
                    ? "counterexample"
                    : "hypotheses-not-satisfied";
    return c;
}

/* Characteristic-2 engine: the beta condition is replaced by
   (1) L(1, omega^n) = 0 at precision 4 whenever (q - 1) does not
       divide n,
   (2) P | gamma(n).
   beta(n) mod P is still recorded for information when defined; it
   does not enter the verdict. */
inline Certificate check_kv_char2(const Poly& P, const bigint& n) {
    const Fq& f = P.field();
    check_input(f.p() == 2, "this engine requires characteristic 2");
    Certificate c = detail::start_certificate(P, n);
    ResidueCtx ctx(P);
    bool qm1_divides = n % (f.q() - 1) == 0;
    if (qm1_divides) {
        c.beta = CondValue::skipped(detail::skip_reason(f.q()));
        c.gamma = CondValue::of(gamma_mod(n, ctx).is_zero());
        c.l4 = CondValue::skipped(detail::skip_reason(f.q()));
    } else {
        BetaGammaMod bg = beta_gamma_mod(n, ctx);
        c.beta = CondValue::of(bg.beta.is_zero());
        c.gamma = CondValue::of(bg.gamma.is_zero());
        LContext L(ctx, n, 2);
        c.l4 = CondValue::of(L.wctx().is_zero(lvalue_base(L)));
    }
    detail::fill_base_change(c, P, n);
    c.theorem = "5.2";
    c.verdict = (!c.l4->blocks() && !c.gamma.blocks())
                    ? "counterexample"
                    : "hypotheses-not-satisfied";
    return c;
}

/* Dispatch on the characteristic. */
inline Certificate check_kv(const Poly& P, const bigint& n) {
    return P.field().p() == 2 ? check_kv_char2(P, n) : check_kv_odd(P, n);
}

struct VerifyResult {
    bool ok = false;
    std::vector<std::string> mismatches;
};

/* Recompute everything in a certificate from its (field, P, n) alone
   and report each field that disagrees. */
inline VerifyResult verify(const Certificate& given) {
    VerifyResult r;
    auto mismatch = [&](const std::string& what) {
        r.mismatches.push_back(what);
    };
    Fq f = given.field_modulus
               ? make_field(given.p, given.s,
                            parse_modulus(*given.field_modulus, given.p,
                                          given.s))
               : make_field(given.p, given.s);
    if (f.q() != given.q) {
        mismatch("q does not equal p^s");
        return r;
    }
    Poly P = parse_poly(given.P, f, Var::T);
    Certificate fresh = given.theorem == "5.2" ? check_kv_char2(P, given.n)
                                               : check_kv_odd(P, given.n);
    if (fresh.d != given.d) mismatch("d");
    if (fresh.i_P != given.i_P) mismatch("i_P");
    if (cond_to_json(fresh.beta) != cond_to_json(given.beta))
        mismatch("beta_divisible");
    if (cond_to_json(fresh.gamma) != cond_to_json(given.gamma))
        mismatch("gamma_divisible");
    if (fresh.l4.has_value() != given.l4.has_value() ||
        (fresh.l4 && cond_to_json(*fresh.l4) != cond_to_json(*given.l4)))
        mismatch("l4_divisible");
    if (fresh.m != given.m) mismatch("m");
    if (parse_poly(fresh.Q, f, Var::T) != parse_poly(given.Q, f, Var::T))
        mismatch("Q");
    if (fresh.N != given.N) mismatch("N");
    if (fresh.modulus != given.modulus) mismatch("modulus");
    if (fresh.index != given.index) mismatch("index");
    if (fresh.verdict != given.verdict) mismatch("verdict");
    r.ok = r.mismatches.empty();
    return r;
}

} // namespace ckv
