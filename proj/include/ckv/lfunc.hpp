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
#include <vector>

#include "ckv/bigint.hpp"
#include "ckv/carlitz.hpp"
#include "ckv/errors.hpp"
#include "ckv/fields.hpp"
#include "ckv/poly.hpp"
#include "ckv/rng.hpp"
#include "ckv/witt.hpp"

namespace ckv {

/* Everything needed to evaluate L-values at a fixed irreducible P,
   twist exponent n and p-adic precision k: the residue ring A/P, its
   truncated Witt lift, and the exponent bits of n.  The character
   a -> omega(a)^n must be nontrivial, i.e. (q^d - 1) must not divide
   n.  The object is pinned; it holds a reference to the residue
   context, which must outlive it. */
class LContext {
public:
    LContext(const ResidueCtx& rctx, const bigint& n, std::uint32_t k = 2)
        : rctx_(&rctx), wctx_(rctx.field(), rctx.modulus(), k), n_(n) {
        check_input(rctx.var() == Var::T, "L-values live over A = F_q[T]");
        check_input(n >= 1, "twist exponent must be positive");
        check_input(n % (pow_bigint(rctx.field().q(), rctx.degree()) - 1) != 0,
                    "trivial character: (q^d - 1) divides n");
        plan_ = make_pow_plan(n);
        i_P_ = i_of(rctx.modulus());
    }

    LContext(const LContext&) = delete;
    LContext& operator=(const LContext&) = delete;

    const ResidueCtx& rctx() const noexcept { return *rctx_; }
    const WittCtx& wctx() const noexcept { return wctx_; }
    const bigint& n() const noexcept { return n_; }
    const PowPlan& plan() const noexcept { return plan_; }
    std::uint32_t i_P() const noexcept { return i_P_; }
    std::uint32_t d() const noexcept { return rctx_->degree(); }

    void require_nonzero_invariant() const {
        check_input(i_P_ != 0, "additive invariant of P vanishes");
    }

private:
    const ResidueCtx* rctx_;
    WittCtx wctx_;
    bigint n_;
    PowPlan plan_;
    std::uint32_t i_P_;
};

/* omega(a)^n lifted to the Witt ring: 0 when P | a, else the
   Teichmuller representative of a^n mod P. */
inline WittElem omega_pow(const LContext& L, const Poly& a) {
    Poly r = L.rctx().powmod(a, L.n());
    if (r.is_zero()) return L.wctx().zero();
    return L.wctx().teichmuller(r);
}

namespace detail {

/* Visit every monic a of degree m with the pair (omega(a)^n as a Witt
   element, i(a)); terms with omega(a) = 0 are skipped. */
template <class Fn>
inline void omega_stratum(const LContext& L, std::uint32_t m, Fn&& fn) {
    const Fq& f = L.rctx().field();
    ResidueCtx::PowScratch scratch(L.rctx());
    std::vector<std::uint32_t> power;
    for_each_monic(f, m, [&](std::span<const std::uint32_t> a) {
        scratch.run(a, L.plan(), power);
        bool zero = true;
        for (std::uint32_t c : power)
            if (c != 0) { zero = false; break; }
        if (zero) return; // P | a contributes nothing
        Poly r(f, Var::T, std::vector<std::uint32_t>(power.begin(), power.end()));
        fn(L.wctx().teichmuller(r), i_of_codes(f, a));
    });
}

} // namespace detail

/* L(1, omega^n) at the context's precision: the sum of omega(a)^n over
   monic a of degree m < d.  The stratum m = d must itself sum to zero;
   this is recomputed and asserted on every invocation, so the value is
   also the sum over m <= d. */
inline WittElem lvalue_base(const LContext& L) {
    const WittCtx& W = L.wctx();
    WittElem acc = W.zero();
    for (std::uint32_t m = 0; m < L.d(); ++m)
        detail::omega_stratum(L, m,
                              [&](const WittElem& w, std::uint32_t) {
                                  acc = W.add(acc, w);
                              });
    WittElem top = W.zero();
    detail::omega_stratum(L, L.d(),
                          [&](const WittElem& w, std::uint32_t) {
                              top = W.add(top, w);
                          });
    check_internal(W.is_zero(top), "degree-d stratum does not vanish");
    return acc;
}

/* The i-weighted companion sum over m <= d. */
inline WittElem gamma_witt_sum(const LContext& L) {
    const WittCtx& W = L.wctx();
    WittElem acc = W.zero();
    for (std::uint32_t m = 0; m <= L.d(); ++m)
        detail::omega_stratum(L, m,
                              [&](const WittElem& w, std::uint32_t i) {
                                  if (i != 0) acc = W.add(acc, W.scal(i, w));
                              });
    return acc;
}

/* Per-stratum values of the psi^j-twisted sum: entry m holds the sum
   over monic a of degree m of zeta^(j i(a)) omega(a)^n, m = 0..d. */
inline std::vector<CycloElem> lvalue_psi_strata(const LContext& L,
                                                std::uint32_t j) {
    if (j != 0) L.require_nonzero_invariant();
    const WittCtx& W = L.wctx();
    std::vector<CycloElem> out;
    out.reserve(L.d() + 1);
    for (std::uint32_t m = 0; m <= L.d(); ++m) {
        CycloElem c = W.czero();
        detail::omega_stratum(L, m,
                              [&](const WittElem& w, std::uint32_t i) {
                                  W.zeta_mul_add(c, std::uint64_t(j) * i, w);
                              });
        out.push_back(std::move(c));
    }
    return out;
}

/* L(1, psi^j omega^n): the psi^j-twisted sum over m <= d. */
inline CycloElem lvalue_psi(const LContext& L, std::uint32_t j) {
    const WittCtx& W = L.wctx();
    CycloElem acc = W.czero();
    for (CycloElem& c : lvalue_psi_strata(L, j)) acc = W.cadd(acc, c);
    return acc;
}

/* L-value over the Artin-Schreier cover: the sum of
   omega(N(a~))^n over monic a~ in F_q[theta] of degree m < p d, where
   N is the norm down to A along T = theta^p - theta.  Requires
   i(P) != 0, which makes Q = P(theta^p - theta) irreducible.  On every
   run the identity omega-hat(a~) = omega(N(a~)) is spot-checked on 10
   seeded random a~ through both reductions. */
inline WittElem lvalue_tilde(const LContext& L,
                             std::uint64_t budget = 1ull << 22) {
    L.require_nonzero_invariant();
    const Fq& f = L.rctx().field();
    const WittCtx& W = L.wctx();
    const std::uint32_t p = f.p();
    const std::uint32_t pd = p * L.d();
    bigint monics = 0;
    for (std::uint32_t m = 0; m < pd; ++m) monics += pow_bigint(f.q(), m);
    check_input(monics <= budget, "theta-ring sum exceeds budget");

    std::vector<std::uint32_t> sv(p + 1, 0);
    sv[1] = f.neg(1);
    sv[p] = 1;
    Poly splitter(f, Var::Theta, std::move(sv)); // theta^p - theta
    Poly Q = compose(L.rctx().modulus(), splitter);
    check_internal(is_irreducible(Q), "norm modulus is reducible");
    ResidueCtx qctx(Q);
    bigint E = pow_bigint(f.q(), pd) - 1;
    bigint den = pow_bigint(f.q(), L.d()) - 1;
    check_internal(E % den == 0, "norm exponent is not integral");
    E /= den;

    // spot-check: embedding the norm agrees with the (q^pd-1)/(q^d-1)
    // power map mod Q
    SplitMix64 rng(0x6e6f726d63686b31ull);
    for (int trial = 0; trial < 10; ++trial) {
        std::uint32_t deg = 1 + static_cast<std::uint32_t>(rng.below(pd - 1));
        std::vector<std::uint32_t> codes(deg + 1, 0);
        for (std::uint32_t i = 0; i < deg; ++i)
            codes[i] = static_cast<std::uint32_t>(rng.below(f.q()));
        codes[deg] = 1;
        Poly at(f, Var::Theta, std::move(codes));
        Poly nt = L.rctx().reduce(norm_theta(at));
        Poly lhs = qctx.reduce(compose(nt, splitter));
        Poly rhs = qctx.powmod(at, E);
        check_internal(lhs == rhs, "norm incompatible with the power map");
    }

    WittElem acc = W.zero();
    ResidueCtx::PowScratch scratch(L.rctx());
    std::vector<std::uint32_t> power;
    for (std::uint32_t m = 0; m < pd; ++m) {
        for_each_monic(f, m, [&](std::span<const std::uint32_t> a) {
            Poly at(f, Var::Theta,
                    std::vector<std::uint32_t>(a.begin(), a.end()));
            Poly nt = norm_theta(at);
            scratch.run(nt.coeffs(), L.plan(), power);
            bool zero = true;
            for (std::uint32_t c : power)
                if (c != 0) { zero = false; break; }
            if (zero) return;
            Poly r(f, Var::T,
                   std::vector<std::uint32_t>(power.begin(), power.end()));
            acc = W.add(acc, W.teichmuller(r));
        });
    }
    return acc;
}

/* Both sides of the divisibility equivalence at precision >= 2:
   pi^2 | L(1, psi omega^n) on one side, beta(n) = gamma(n) = 0 mod P
   on the other. */
struct Prop31Report {
    bool pi_side;
    bool beta_zero;
    bool gamma_zero;
    bool agree;
};

inline Prop31Report prop31_check(const LContext& L) {
    check_input(L.rctx().field().p() != 2,
                "equivalence check requires odd characteristic");
    check_input(L.n() % (L.rctx().field().q() - 1) != 0,
                "equivalence check requires (q-1) not dividing n");
    L.require_nonzero_invariant();
    Prop31Report r{};
    r.pi_side = L.wctx().pi_divisible(lvalue_psi(L, 1), 2);
    BetaGammaMod bg = beta_gamma_mod(L.n(), L.rctx());
    r.beta_zero = bg.beta.is_zero();
    r.gamma_zero = bg.gamma.is_zero();
    r.agree = r.pi_side == (r.beta_zero && r.gamma_zero);
    return r;
}

} // namespace ckv
