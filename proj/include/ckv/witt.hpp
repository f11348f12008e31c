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
#include "ckv/errors.hpp"
#include "ckv/fields.hpp"
#include "ckv/poly.hpp"

namespace ckv {

class WittCtx;

/* One element of the truncated Witt ring W = W_k(A/P): a polynomial of
   degree < d whose coefficients live in (Z/p^k)[x]/(g~), stored as
   d * s residues mod p^k (coefficient-major, coordinate-minor). */
struct WittElem {
    const WittCtx* ctx = nullptr;
    std::vector<std::uint64_t> v;
};

/* An element of W[z]/(1 + z + ... + z^(p-1)): p - 1 coordinates over
   the Witt ring.  z plays the role of a primitive p-th root of unity;
   for p = 2 the ring degenerates to W itself with z = -1. */
struct CycloElem {
    const WittCtx* ctx = nullptr;
    std::vector<WittElem> c;
};

/* Arithmetic context for W_k(A/P), the coefficient ring of the
   L-values: residues mod p^k are lifted along the minimal lifts of the
   field modulus g and of P, so reduction mod p recovers A/P exactly.
   The object is pinned; elements refer to it by pointer. */
class WittCtx {
public:
    WittCtx(const Fq& field, Poly P, std::uint32_t k)
        : f_(&field), P_(std::move(P)), k_(k) {
        check_input(P_.field().same_as(field), "modulus over a different field");
        check_input(P_.var() == Var::T, "modulus must be a polynomial in T");
        check_input(k >= 1, "precision must be at least 1");
        check_input(is_irreducible(P_), "modulus is reducible");
        p_ = field.p();
        s_ = field.s();
        d_ = static_cast<std::uint32_t>(P_.degree());
        pk_ = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            check_input(pk_ <= (1ull << 31) / p_, "precision too large");
            pk_ *= p_;
        }
        if (s_ > 1) {
            // re-verify the lifted coefficient modulus reduces to an
            // irreducible polynomial; it equals g by minimality
            check_input(detail::prime_poly_irreducible(field.modulus_coeffs(), p_),
                        "coefficient modulus is reducible");
            g_.assign(field.modulus_coeffs().begin(),
                      field.modulus_coeffs().end());
        }
        plift_.assign(static_cast<std::size_t>(d_ + 1) * s_, 0);
        for (std::uint32_t i = 0; i <= d_; ++i) {
            std::vector<std::uint32_t> co = field.coords(P_.coeff(i));
            for (std::uint32_t j = 0; j < s_; ++j)
                plift_[static_cast<std::size_t>(i) * s_ + j] = co[j];
        }
        qd_ = pow_bigint(field.q(), d_);
        qd_plan_ = make_pow_plan(qd_);
    }

    WittCtx(const WittCtx&) = delete;
    WittCtx& operator=(const WittCtx&) = delete;

    const Fq& field() const noexcept { return *f_; }
    const Poly& modulus() const noexcept { return P_; }
    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t s() const noexcept { return s_; }
    std::uint32_t k() const noexcept { return k_; }
    std::uint32_t d() const noexcept { return d_; }
    std::uint64_t pk() const noexcept { return pk_; }
    const bigint& qd() const noexcept { return qd_; }

    /* ---- Witt ring elements ---- */

    WittElem zero() const {
        return {this, std::vector<std::uint64_t>(width(), 0)};
    }

    WittElem one() const {
        WittElem w = zero();
        w.v[0] = 1;
        return w;
    }

    WittElem from_residue(std::uint64_t r) const {
        WittElem w = zero();
        w.v[0] = r % pk_;
        return w;
    }

    /* Coefficientwise minimal lift of a residue r in A/P. */
    WittElem lift(const Poly& r) const {
        check_input(r.field().same_as(*f_) && r.var() == Var::T,
                    "lift of an element of a different ring");
        Poly red = r.degree() >= static_cast<int>(d_) ? r % P_ : r;
        WittElem w = zero();
        for (int i = 0; i <= red.degree(); ++i) {
            std::vector<std::uint32_t> co =
                f_->coords(red.coeff(static_cast<std::size_t>(i)));
            for (std::uint32_t j = 0; j < s_; ++j)
                w.v[static_cast<std::size_t>(i) * s_ + j] = co[j];
        }
        return w;
    }

    /* The Teichmuller representative of r: the unique lift fixed by the
       q^d-power map.  Reached from the minimal lift by k - 1 Frobenius
       iterations, each of which doubles the p-adic accuracy. */
    WittElem teichmuller(const Poly& r) const {
        WittElem w = lift(r);
        for (std::uint32_t t = 1; t < k_; ++t) w = pow_plan(w, qd_plan_);
        return w;
    }

    WittElem add(const WittElem& a, const WittElem& b) const {
        require(a);
        require(b);
        WittElem r = a;
        for (std::size_t i = 0; i < r.v.size(); ++i)
            r.v[i] = madd(r.v[i], b.v[i]);
        return r;
    }

    WittElem sub(const WittElem& a, const WittElem& b) const {
        require(a);
        require(b);
        WittElem r = a;
        for (std::size_t i = 0; i < r.v.size(); ++i)
            r.v[i] = msub(r.v[i], b.v[i]);
        return r;
    }

    WittElem neg(const WittElem& a) const {
        require(a);
        WittElem r = a;
        for (auto& x : r.v) x = x == 0 ? 0 : pk_ - x;
        return r;
    }

    /* Scalar multiple by an integer residue. */
    WittElem scal(std::uint64_t c, const WittElem& a) const {
        require(a);
        c %= pk_;
        WittElem r = a;
        for (auto& x : r.v) x = x * c % pk_;
        return r;
    }

    WittElem mul(const WittElem& a, const WittElem& b) const {
        require(a);
        require(b);
        WittElem r = zero();
        std::vector<std::uint64_t> t(static_cast<std::size_t>(2 * d_ - 1) * s_, 0);
        std::vector<std::uint64_t> scratch(2 * s_, 0);
        for (std::uint32_t i = 0; i < d_; ++i) {
            if (block_zero(&a.v[static_cast<std::size_t>(i) * s_])) continue;
            for (std::uint32_t j = 0; j < d_; ++j)
                b_mul_acc(&t[static_cast<std::size_t>(i + j) * s_],
                          &a.v[static_cast<std::size_t>(i) * s_],
                          &b.v[static_cast<std::size_t>(j) * s_],
                          scratch.data());
        }
        // reduce by the monic lift of P
        for (std::uint32_t i = 2 * d_ - 1; i-- > d_;) {
            std::uint64_t* top = &t[static_cast<std::size_t>(i) * s_];
            if (block_zero(top)) continue;
            for (std::uint32_t j = 0; j < d_; ++j) {
                b_mul(scratch.data(), top,
                      &plift_[static_cast<std::size_t>(j) * s_]);
                std::uint64_t* dst = &t[static_cast<std::size_t>(i - d_ + j) * s_];
                for (std::uint32_t u = 0; u < s_; ++u)
                    dst[u] = msub(dst[u], scratch[u]);
            }
            for (std::uint32_t u = 0; u < s_; ++u) top[u] = 0;
        }
        std::copy(t.begin(), t.begin() + width(), r.v.begin());
        return r;
    }

    WittElem pow(const WittElem& a, const bigint& e) const {
        return pow_plan(a, make_pow_plan(e));
    }

    WittElem pow_plan(const WittElem& a, const PowPlan& plan) const {
        require(a);
        if (plan.bits.empty()) return one();
        WittElem r = a;
        for (std::size_t i = 1; i < plan.bits.size(); ++i) {
            r = mul(r, r);
            if (plan.bits[i]) r = mul(r, a);
        }
        return r;
    }

    bool is_zero(const WittElem& a) const {
        require(a);
        for (std::uint64_t x : a.v)
            if (x != 0) return false;
        return true;
    }

    bool equal(const WittElem& a, const WittElem& b) const {
        require(a);
        require(b);
        return a.v == b.v;
    }

    /* Reduction mod p back to A/P. */
    Poly reduce_mod_p(const WittElem& a) const {
        require(a);
        std::vector<std::uint32_t> coeffs(d_, 0);
        std::vector<std::uint32_t> co(s_);
        for (std::uint32_t i = 0; i < d_; ++i) {
            for (std::uint32_t j = 0; j < s_; ++j)
                co[j] = static_cast<std::uint32_t>(
                    a.v[static_cast<std::size_t>(i) * s_ + j] % p_);
            coeffs[i] = f_->from_coords(co);
        }
        return Poly(*f_, Var::T, std::move(coeffs));
    }

    /* Does p^e divide a?  Requires e <= k, else the truncation cannot
       decide the question. */
    bool divisible(const WittElem& a, std::uint32_t e) const {
        require(a);
        check_input(e <= k_, "insufficient precision for divisibility");
        std::uint64_t pe = 1;
        for (std::uint32_t i = 0; i < e; ++i) pe *= p_;
        for (std::uint64_t x : a.v)
            if (x % pe != 0) return false;
        return true;
    }

    /* ---- cyclotomic extension W[z]/(1 + z + ... + z^(p-1)) ---- */

    CycloElem czero() const {
        CycloElem x;
        x.ctx = this;
        x.c.assign(p_ - 1, zero());
        return x;
    }

    CycloElem cone() const {
        CycloElem x = czero();
        x.c[0] = one();
        return x;
    }

    CycloElem embed(const WittElem& a) const {
        require(a);
        CycloElem x = czero();
        x.c[0] = a;
        return x;
    }

    /* x += z^e * w, the workhorse of character-weighted sums. */
    void zeta_mul_add(CycloElem& x, std::uint64_t e, const WittElem& w) const {
        crequire(x);
        require(w);
        e %= p_;
        if (e < p_ - 1u) {
            x.c[e] = add(x.c[e], w);
        } else {
            // z^(p-1) = -(1 + z + ... + z^(p-2))
            for (auto& coord : x.c) coord = sub(coord, w);
        }
    }

    CycloElem zeta_pow(std::uint64_t e) const {
        CycloElem x = czero();
        zeta_mul_add(x, e, one());
        return x;
    }

    CycloElem zeta() const { return zeta_pow(1); }

    CycloElem cadd(const CycloElem& a, const CycloElem& b) const {
        crequire(a);
        crequire(b);
        CycloElem r = a;
        for (std::uint32_t i = 0; i + 1 < p_; ++i) r.c[i] = add(r.c[i], b.c[i]);
        return r;
    }

    CycloElem csub(const CycloElem& a, const CycloElem& b) const {
        crequire(a);
        crequire(b);
        CycloElem r = a;
        for (std::uint32_t i = 0; i + 1 < p_; ++i) r.c[i] = sub(r.c[i], b.c[i]);
        return r;
    }

    CycloElem cmul(const CycloElem& a, const CycloElem& b) const {
        crequire(a);
        crequire(b);
        std::uint32_t n = p_ - 1;
        std::vector<WittElem> t(2 * n - 1, zero());
        for (std::uint32_t i = 0; i < n; ++i) {
            if (is_zero(a.c[i])) continue;
            for (std::uint32_t j = 0; j < n; ++j)
                t[i + j] = add(t[i + j], mul(a.c[i], b.c[j]));
        }
        for (std::uint32_t e = 2 * n - 1; e-- > n;) {
            if (is_zero(t[e])) continue;
            // z^e = -z^(e-n) * (1 + z + ... + z^(n-1))
            for (std::uint32_t j = 0; j < n; ++j)
                t[e - n + j] = sub(t[e - n + j], t[e]);
            t[e] = zero();
        }
        CycloElem r;
        r.ctx = this;
        r.c.assign(t.begin(), t.begin() + n);
        return r;
    }

    bool cis_zero(const CycloElem& a) const {
        crequire(a);
        for (const auto& w : a.c)
            if (!is_zero(w)) return false;
        return true;
    }

    bool cequal(const CycloElem& a, const CycloElem& b) const {
        crequire(a);
        crequire(b);
        for (std::uint32_t i = 0; i + 1 < p_; ++i)
            if (a.c[i].v != b.c[i].v) return false;
        return true;
    }

    /* x with z replaced by z^j (a ring automorphism for j prime to p). */
    CycloElem subst_zeta(const CycloElem& x, std::uint32_t j) const {
        crequire(x);
        CycloElem r = czero();
        for (std::uint32_t i = 0; i + 1 < p_; ++i)
            zeta_mul_add(r, static_cast<std::uint64_t>(i) * j, x.c[i]);
        return r;
    }

    /* Norm down to W: the product of all substitutions z -> z^j for
       j = 1..p-1.  The result must land in the z^0 component. */
    WittElem norm_to_witt(const CycloElem& x) const {
        crequire(x);
        CycloElem prod = cone();
        for (std::uint32_t j = 1; j < p_; ++j)
            prod = cmul(prod, subst_zeta(x, j));
        for (std::uint32_t i = 1; i + 1 < p_; ++i)
            check_internal(is_zero(prod.c[i]),
                           "norm has a component outside the base ring");
        return prod.c[0];
    }

    /* Divisibility by pi^e where pi = z - 1: as pi^(p-1) and p agree up
       to a unit, x is divisible by pi^e exactly when p^e divides the
       norm of x.  Only meaningful for odd p. */
    bool pi_divisible(const CycloElem& x, std::uint32_t e) const {
        check_input(p_ != 2, "pi-divisibility requires odd characteristic");
        check_input(e <= k_, "insufficient precision for pi-divisibility");
        return divisible(norm_to_witt(x), e);
    }

private:
    std::size_t width() const noexcept {
        return static_cast<std::size_t>(d_) * s_;
    }

    void require(const WittElem& a) const {
        check_input(a.ctx == this, "element from a different Witt context");
    }

    void crequire(const CycloElem& a) const {
        check_input(a.ctx == this, "element from a different Witt context");
    }

    std::uint64_t madd(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t r = a + b;
        return r >= pk_ ? r - pk_ : r;
    }

    std::uint64_t msub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + pk_ - b;
    }

    bool block_zero(const std::uint64_t* x) const {
        for (std::uint32_t u = 0; u < s_; ++u)
            if (x[u] != 0) return false;
        return true;
    }

    /* out = x * y in (Z/p^k)[a]/(g~); out and inputs are length-s
       blocks and out must not alias the inputs. */
    void b_mul(std::uint64_t* out, const std::uint64_t* x,
               const std::uint64_t* y) const {
        if (s_ == 1) {
            out[0] = x[0] * y[0] % pk_;
            return;
        }
        std::uint64_t conv[2 * 8]; // s is tiny in practice
        check_internal(s_ <= 8, "coefficient field degree too large");
        std::uint32_t cn = 2 * s_ - 1;
        for (std::uint32_t i = 0; i < cn; ++i) conv[i] = 0;
        for (std::uint32_t i = 0; i < s_; ++i) {
            if (x[i] == 0) continue;
            for (std::uint32_t j = 0; j < s_; ++j)
                conv[i + j] = (conv[i + j] + x[i] * y[j]) % pk_;
        }
        for (std::uint32_t i = cn; i-- > s_;) {
            std::uint64_t c = conv[i];
            if (c == 0) continue;
            conv[i] = 0;
            for (std::uint32_t j = 0; j < s_; ++j) {
                std::uint64_t sub = c * (g_[j] % pk_) % pk_;
                conv[i - s_ + j] = msub(conv[i - s_ + j], sub);
            }
        }
        for (std::uint32_t u = 0; u < s_; ++u) out[u] = conv[u];
    }

    void b_mul_acc(std::uint64_t* acc, const std::uint64_t* x,
                   const std::uint64_t* y, std::uint64_t* scratch) const {
        b_mul(scratch, x, y);
        for (std::uint32_t u = 0; u < s_; ++u) acc[u] = madd(acc[u], scratch[u]);
    }

    friend std::string format_witt(const WittCtx&, const WittElem&);

    const Fq* f_;
    Poly P_;
    std::uint32_t k_;
    std::uint32_t p_;
    std::uint32_t s_;
    std::uint32_t d_;
    std::uint64_t pk_;
    std::vector<std::uint64_t> g_;     // lift of the field modulus (s > 1)
    std::vector<std::uint64_t> plift_; // lift of P, (d+1) blocks of s
    bigint qd_;
    PowPlan qd_plan_;
};

/* Text form of a Witt element: a polynomial in T of degree < d whose
   coefficients are residues mod p^k, themselves written in powers of
   "a" when s > 1.  Same monomial conventions as polynomial text. */
inline std::string format_witt(const WittCtx& W, const WittElem& a) {
    check_input(a.ctx == &W, "element from a different Witt context");
    std::string out;
    for (std::uint32_t i = W.d(); i-- > 0;) {
        for (std::uint32_t j = W.s(); j-- > 0;) {
            std::uint64_t r = a.v[static_cast<std::size_t>(i) * W.s() + j];
            if (r == 0) continue;
            if (!out.empty()) out += '+';
            std::string piece;
            if (r != 1 || (i == 0 && j == 0)) piece += std::to_string(r);
            if (j >= 1) {
                if (!piece.empty()) piece += '*';
                piece += 'a';
                if (j >= 2) piece += '^' + std::to_string(j);
            }
            if (i >= 1) {
                if (!piece.empty()) piece += '*';
                piece += 'T';
                if (i >= 2) piece += '^' + std::to_string(i);
            }
            out += piece;
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace ckv
