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

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "ckv/bigint.hpp"
#include "ckv/carlitz.hpp"
#include "ckv/errors.hpp"
#include "ckv/fields.hpp"
#include "ckv/poly.hpp"
#include "ckv/rng.hpp"
#include "ckv/vandiver.hpp"

namespace ckv {

/* Parameters of a randomized sweep over irreducible P of one degree.
   The exponent is either given directly (n) or derived from a
   multiplier m as n = m (q^d - 1)/(q - 1); in the latter case m must
   satisfy 1 <= m < q - 1 and (q - 1) must not divide m d, the regime
   in which both divisibility conditions are nontrivial. */
struct SearchConfig {
    const Fq* field = nullptr;
    std::uint32_t d = 0;
    std::optional<bigint> n;
    std::optional<std::uint32_t> m;
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    std::uint32_t threads = 1;
    std::uint64_t max_draws = 1'000'000; // rejection cap per sample
};

inline bigint search_exponent(const SearchConfig& cfg) {
    check_input(cfg.field != nullptr, "missing field");
    check_input(cfg.d >= 1, "degree must be positive");
    const std::uint64_t q = cfg.field->q();
    bigint qd1 = pow_bigint(q, cfg.d) - 1;
    if (cfg.n) {
        check_input(!cfg.m, "give either n or m, not both");
        check_input(*cfg.n >= 1, "n must be positive");
        check_input(*cfg.n % qd1 != 0, "trivial character: (q^d - 1) divides n");
        return *cfg.n;
    }
    check_input(cfg.m.has_value(), "give either n or m");
    std::uint32_t m = *cfg.m;
    check_input(m >= 1, "m must be positive");
    check_input(m % (q - 1) != 0,
                "trivial character: (q - 1) divides m, so (q^d - 1) divides n");
    return bigint(m) * (qd1 / (q - 1));
}

/* Uniform monic irreducible of degree d by rejection sampling, with an
   optional extra rejection on i(P) = 0.  Counts how many irreducible
   candidates were discarded for vanishing invariant. */
inline Poly random_monic_irreducible(const Fq& f, std::uint32_t d,
                                     SplitMix64& rng, bool require_i_nonzero,
                                     std::uint64_t max_draws = 1'000'000,
                                     std::uint64_t* i_zero_rejections = nullptr) {
    check_input(d >= 1, "degree must be positive");
    std::vector<std::uint32_t> c(d + 1);
    for (std::uint64_t draw = 0; draw < max_draws; ++draw) {
        for (std::uint32_t i = 0; i < d; ++i)
            c[i] = static_cast<std::uint32_t>(rng.below(f.q()));
        c[d] = 1;
        Poly cand(f, Var::T, c);
        if (!is_irreducible(cand)) continue;
        if (require_i_nonzero && i_of_codes(f, c) == 0) {
            if (i_zero_rejections) ++*i_zero_rejections;
            continue;
        }
        return cand;
    }
    throw input_error("no irreducible polynomial found within the draw budget");
}

namespace detail {

/* Run fn(j, rng) for j = 0..samples-1 across cfg.threads workers; each
   sample gets its own substream so results are independent of the
   thread count.  The first exception wins and is rethrown. */
template <class Fn>
inline void for_each_sample(const SearchConfig& cfg, Fn&& fn) {
    std::uint32_t nthreads = cfg.threads == 0 ? 1 : cfg.threads;
    if (nthreads > 64) nthreads = 64;
    std::atomic<std::uint64_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_err;
    auto worker = [&]() {
        for (;;) {
            std::uint64_t j = next.fetch_add(1);
            if (j >= cfg.samples) return;
            {
                std::lock_guard<std::mutex> lk(err_mu);
                if (first_err) return;
            }
            try {
                SplitMix64 rng(substream_seed(
                    cfg.seed, sample_salt(cfg.d, static_cast<std::uint32_t>(j))));
                fn(j, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!first_err) first_err = std::current_exception();
                return;
            }
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (std::uint32_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_err) std::rethrow_exception(first_err);
}

} // namespace detail

/* One row of the randomized divisibility statistics: how often each
   condition (and their conjunction) holds among sampled primes with
   i(P) != 0 at the derived exponent. */
struct TableRow {
    std::uint32_t d = 0;
    bigint n;
    std::uint64_t samples = 0;
    std::uint64_t count_beta = 0;
    std::uint64_t count_gamma = 0;
    std::uint64_t count_both = 0;
    std::uint64_t i_zero_rejected = 0;
};

/* Statistics row at the canonical exponent m = (q - 1)/2 (odd q). */
inline TableRow run_table1(const SearchConfig& cfg) {
    check_input(cfg.field != nullptr, "missing field");
    check_input(cfg.field->q() % 2 == 1, "statistics preset requires odd q");
    SearchConfig local = cfg;
    check_input(!local.n && !local.m, "statistics preset fixes the exponent");
    local.m = static_cast<std::uint32_t>((cfg.field->q() - 1) / 2);
    bigint n = search_exponent(local);
    check_input(n % (cfg.field->q() - 1) != 0,
                "beta counts are undefined: (q - 1) divides the preset exponent");
    TableRow row;
    row.d = cfg.d;
    row.n = n;
    row.samples = cfg.samples;
    std::mutex mu;
    detail::for_each_sample(local, [&](std::uint64_t, SplitMix64& rng) {
        std::uint64_t izr = 0;
        Poly P = random_monic_irreducible(*cfg.field, cfg.d, rng, true,
                                          cfg.max_draws, &izr);
        ResidueCtx ctx(P);
        BetaGammaMod bg = beta_gamma_mod(n, ctx);
        bool b0 = bg.beta.is_zero();
        bool g0 = bg.gamma.is_zero();
        std::lock_guard<std::mutex> lk(mu);
        row.i_zero_rejected += izr;
        if (b0) ++row.count_beta;
        if (g0) ++row.count_gamma;
        if (b0 && g0) ++row.count_both;
    });
    return row;
}

/* Exhaustive sweep at one degree: every monic irreducible P of degree
   d with i(P) != 0, with both divisibility flags at the exponent
   n = m (q^d - 1)/(q - 1). */
struct CensusEntry {
    Poly P;
    std::uint32_t i_P;
    bool beta_divisible;
    bool gamma_divisible;
};

inline std::vector<CensusEntry> census(const Fq& f, std::uint32_t d,
                                       std::uint32_t m,
                                       std::uint64_t budget = 1ull << 22) {
    SearchConfig cfg;
    cfg.field = &f;
    cfg.d = d;
    cfg.m = m;
    bigint n = search_exponent(cfg);
    check_input(pow_bigint(f.q(), d) <= budget, "census exceeds budget");
    std::vector<CensusEntry> out;
    for_each_monic(f, d, [&](std::span<const std::uint32_t> c) {
        std::uint32_t ip = i_of_codes(f, c);
        if (ip == 0) return;
        Poly P(f, Var::T, std::vector<std::uint32_t>(c.begin(), c.end()));
        if (!is_irreducible(P)) return;
        ResidueCtx ctx(P);
        BetaGammaMod bg = beta_gamma_mod(n, ctx);
        out.push_back({std::move(P), ip, bg.beta.is_zero(), bg.gamma.is_zero()});
    });
    return out;
}

/* Randomized counterexample hunt: sample primes with i(P) != 0, run
   the full engine on each, keep the certified counterexamples.  Every
   certificate that will be emitted is re-verified from scratch first. */
struct HuntResult {
    std::uint64_t samples = 0;
    std::uint64_t counterexamples = 0;
    std::uint64_t i_zero_rejected = 0;
    std::vector<Certificate> certificates; // in sample order
};

inline HuntResult hunt(const SearchConfig& cfg) {
    bigint n = search_exponent(cfg);
    HuntResult result;
    result.samples = cfg.samples;
    std::vector<std::optional<Certificate>> found(cfg.samples);
    std::mutex mu;
    detail::for_each_sample(cfg, [&](std::uint64_t j, SplitMix64& rng) {
        std::uint64_t izr = 0;
        Poly P = random_monic_irreducible(*cfg.field, cfg.d, rng, true,
                                          cfg.max_draws, &izr);
        Certificate cert = check_kv(P, n);
        bool keep = cert.is_counterexample();
        if (keep) {
            VerifyResult v = verify(cert);
            check_internal(v.ok, "emitted certificate failed re-verification");
            found[j] = std::move(cert);
        }
        std::lock_guard<std::mutex> lk(mu);
        result.i_zero_rejected += izr;
        if (keep) ++result.counterexamples;
    });
    for (auto& c : found)
        if (c) result.certificates.push_back(std::move(*c));
    return result;
}

} // namespace ckv
