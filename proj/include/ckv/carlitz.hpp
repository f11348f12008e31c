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
#include <iostream>
#include <optional>
#include <span>
#include <vector>

#include "ckv/bigint.hpp"
#include "ckv/errors.hpp"
#include "ckv/fields.hpp"
#include "ckv/poly.hpp"

namespace ckv {

/* The additive invariant i(a) of a monic polynomial: the absolute
   trace of the coefficient one below the leading one, as a residue in
   [0, p).  i is additive along products and i(1) = 0. */
inline std::uint32_t i_of_codes(const Fq& f,
                                std::span<const std::uint32_t> monic_coeffs) {
    std::size_t m = monic_coeffs.size() - 1;
    if (m == 0) return 0;
    return f.trace(monic_coeffs[m - 1]);
}

inline std::uint32_t i_of(const Poly& a) {
    check_input(a.is_monic(), "i(a) requires a monic polynomial");
    return i_of_codes(a.field(), a.coeffs());
}

/* Sum of the base-q digits of n >= 0. */
inline std::uint64_t digit_sum(bigint n, std::uint64_t q) {
    check_input(n >= 0, "digit sum of a negative integer");
    check_input(q >= 2, "digit base must be at least 2");
    std::uint64_t s = 0;
    while (n > 0) {
        s += (n % q).convert_to<std::uint64_t>();
        n /= q;
    }
    return s;
}

/* Work bounds for the exact (untruncated) sums.  max_degree bounds the
   degree m * n of a single power a^n; max_monics bounds the stratum
   size q^m. */
struct ExactBudget {
    std::uint64_t max_monics = 1ull << 22;
    std::uint64_t max_degree = 1ull << 21;
};

namespace detail {

/* acc *= a^n exactly, where a is monic of degree m given by codes.
   Writes into acc (ascending codes, not trimmed).  Uses the base-q
   digit expansion of n: a^n is the product over digits n_i of
   (a^(q^i))^(n_i), and a(T)^(q^i) = sum_j c_j T^(j q^i) because the
   q-power map fixes F_q. */
inline void pow_exact(const Fq& f, std::span<const std::uint32_t> a,
                      const bigint& n, std::vector<std::uint32_t>& out) {
    out.assign(1, 1);
    if (n == 0) return;
    std::size_t m = a.size() - 1;
    // sparse support of a
    std::vector<std::pair<std::uint64_t, std::uint32_t>> support;
    for (std::size_t j = 0; j <= m; ++j)
        if (a[j] != 0) support.emplace_back(j, a[j]);
    bigint rest = n;
    std::uint64_t qi = 1; // q^i, bounded because m * n is budget-checked
    const std::uint64_t q = f.q();
    std::vector<std::uint32_t> next;
    while (rest > 0) {
        std::uint64_t digit = (rest % q).convert_to<std::uint64_t>();
        rest /= q;
        for (std::uint64_t rep = 0; rep < digit; ++rep) {
            next.assign(out.size() + m * qi, 0);
            for (const auto& [j, c] : support) {
                std::uint64_t off = j * qi;
                for (std::size_t t = 0; t < out.size(); ++t) {
                    if (out[t] == 0) continue;
                    next[t + off] = f.add(next[t + off], f.mul(out[t], c));
                }
            }
            out.swap(next);
        }
        if (rest > 0) {
            check_internal(qi <= UINT64_MAX / q, "exact power overflow");
            qi *= q;
        }
    }
}

inline void add_scaled_into(const Fq& f, std::vector<std::uint32_t>& acc,
                            std::span<const std::uint32_t> x,
                            std::uint32_t scale) {
    if (scale == 0) return;
    if (acc.size() < x.size()) acc.resize(x.size(), 0);
    if (scale == 1) {
        for (std::size_t t = 0; t < x.size(); ++t)
            acc[t] = f.add(acc[t], x[t]);
    } else {
        for (std::size_t t = 0; t < x.size(); ++t)
            acc[t] = f.add(acc[t], f.mul(scale, x[t]));
    }
}

inline void check_stratum_budget(const Fq& f, std::uint32_t m, const bigint& n,
                                 const ExactBudget& budget) {
    check_input(pow_bigint(f.q(), m) <= budget.max_monics,
                "stratum size exceeds budget");
    check_input(bigint(m) * n <= budget.max_degree,
                "power degree exceeds budget");
}

/* One stratum of the exact sum: sum of a^n over monic a of degree m,
   each term weighted by i(a) when weighted is set. */
inline Poly exact_stratum(const Fq& f, std::uint32_t m, const bigint& n,
                          bool weighted, const ExactBudget& budget) {
    check_input(n >= 1, "exponent must be positive");
    check_stratum_budget(f, m, n, budget);
    std::vector<std::uint32_t> acc;
    std::vector<std::uint32_t> power;
    for_each_monic(f, m, [&](std::span<const std::uint32_t> a) {
        std::uint32_t scale = 1;
        if (weighted) {
            scale = i_of_codes(f, a);
            if (scale == 0) return;
        }
        pow_exact(f, a, n, power);
        add_scaled_into(f, acc, power, scale);
    });
    return Poly(f, Var::T, std::move(acc));
}

/* Shared driver for the exact sums: adds strata m = 0, 1, ... and
   stops once the top two strata both vanish.  The analytic cutoff
   predicts where that happens; if a stratum past the prediction is
   nonzero the loop keeps going and warns, since that would contradict
   the vanishing bound the truncated paths rely on. */
inline Poly exact_series(const Fq& f, const bigint& n, bool weighted,
                         const ExactBudget& budget) {
    std::uint64_t ell = digit_sum(n, f.q());
    std::uint64_t bound = ell / (f.q() - 1) + (weighted ? 1 : 0);
    Poly total(f, Var::T);
    std::uint32_t zero_run = 0;
    std::uint32_t m = 0;
    bool warned = false;
    for (;;) {
        Poly s = exact_stratum(f, m, n, weighted, budget);
        total = total + s;
        zero_run = s.is_zero() ? zero_run + 1 : 0;
        if (m >= bound + 2 && zero_run >= 2) break;
        if (m >= bound + 2 && !warned) {
            std::cerr << "warning: stratum " << m
                      << " nonzero past the predicted cutoff " << bound
                      << "; extending\n";
            warned = true;
        }
        check_internal(m < bound + 64, "series failed to terminate");
        ++m;
    }
    return total;
}

} // namespace detail

/* S_m(n): sum of a^n over all monic a of degree m. */
inline Poly power_sum(const Fq& f, std::uint32_t m, const bigint& n,
                      const ExactBudget& budget = {}) {
    return detail::exact_stratum(f, m, n, false, budget);
}

/* S'_m(n): the same sum with each term weighted by i(a). */
inline Poly weighted_power_sum(const Fq& f, std::uint32_t m, const bigint& n,
                               const ExactBudget& budget = {}) {
    return detail::exact_stratum(f, m, n, true, budget);
}

/* beta(n) = sum over m of S_m(n); defined only when (q - 1) does not
   divide n, which makes the series finite. */
inline Poly beta(const Fq& f, const bigint& n, const ExactBudget& budget = {}) {
    check_input(n >= 1, "beta requires n >= 1");
    check_input(n % (f.q() - 1) != 0, "beta undefined: (q-1) divides n");
    return detail::exact_series(f, n, false, budget);
}

/* gamma(n) = sum over m of S'_m(n); finite for every n >= 1. */
inline Poly gamma(const Fq& f, const bigint& n, const ExactBudget& budget = {}) {
    check_input(n >= 1, "gamma requires n >= 1");
    return detail::exact_series(f, n, true, budget);
}

/* ------------------------------------------------------------------ */
/* Truncated sums mod an irreducible P                                 */
/* ------------------------------------------------------------------ */

namespace detail {

struct ModSums {
    std::optional<Poly> beta;
    std::optional<Poly> gamma;
};

/* Shared single pass for the truncated sums mod P (degree d).  Strata
   beyond m = d cancel mod P in residue classes, so beta needs
   m <= min(d, l_q(n)/(q-1)) and gamma one stratum more; at m = d the
   term a = P itself is skipped (it is 0 mod P).  Requires that
   q^d - 1 does not divide n, else the truncation is invalid. */
inline ModSums mod_sums(const bigint& n, const ResidueCtx& ctx, bool want_beta,
                        bool want_gamma) {
    check_input(n >= 1, "truncated sums require n >= 1");
    const Fq& f = ctx.field();
    const std::uint32_t d = ctx.degree();
    check_input(!want_beta || n % (f.q() - 1) != 0,
                "beta undefined: (q-1) divides n");
    check_input(n % (pow_bigint(f.q(), d) - 1) != 0,
                "trivial character: (q^d - 1) divides n");
    std::uint64_t bound = digit_sum(n, f.q()) / (f.q() - 1);
    std::uint32_t mb = static_cast<std::uint32_t>(std::min<std::uint64_t>(d, bound));
    std::uint32_t mg =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(d, bound + 1));
    std::uint32_t mtop = want_gamma ? mg : mb;
    PowPlan plan = make_pow_plan(n);
    ResidueCtx::PowScratch scratch(ctx);
    std::vector<std::uint32_t> acc_b(d, 0), acc_g(d, 0), power;
    for (std::uint32_t m = 0; m <= mtop; ++m) {
        bool in_beta = want_beta && m <= mb;
        for_each_monic(f, m, [&](std::span<const std::uint32_t> a) {
            std::uint32_t w = want_gamma ? i_of_codes(f, a) : 0;
            if (!in_beta && w == 0) return;
            if (m == d && ctx.is_modulus(a)) return;
            scratch.run(a, plan, power);
            if (in_beta) add_scaled_into(f, acc_b, power, 1);
            if (w != 0) add_scaled_into(f, acc_g, power, w);
        });
    }
    ModSums out;
    if (want_beta) out.beta = Poly(f, Var::T, std::move(acc_b));
    if (want_gamma) out.gamma = Poly(f, Var::T, std::move(acc_g));
    return out;
}

} // namespace detail

/* beta(n) mod P, without computing the exact series. */
inline Poly beta_mod(const bigint& n, const ResidueCtx& ctx) {
    return *detail::mod_sums(n, ctx, true, false).beta;
}

/* gamma(n) mod P, without computing the exact series. */
inline Poly gamma_mod(const bigint& n, const ResidueCtx& ctx) {
    return *detail::mod_sums(n, ctx, false, true).gamma;
}

struct BetaGammaMod {
    Poly beta;
    Poly gamma;
};

/* Both truncated sums in one enumeration pass; the workhorse of the
   search drivers. */
inline BetaGammaMod beta_gamma_mod(const bigint& n, const ResidueCtx& ctx) {
    detail::ModSums s = detail::mod_sums(n, ctx, true, true);
    return {std::move(*s.beta), std::move(*s.gamma)};
}

} // namespace ckv
