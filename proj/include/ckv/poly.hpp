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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ckv/bigint.hpp"
#include "ckv/errors.hpp"
#include "ckv/fields.hpp"

namespace ckv {

/* The two polynomial rings in play: A = F_q[T] and its Artin-Schreier
   companion F_q[theta].  The tag keeps elements of the two rings from
   being mixed by accident. */
enum class Var : std::uint8_t { T, Theta };

inline const char* var_name(Var v) { return v == Var::T ? "T" : "theta"; }

/* Dense univariate polynomial over F_q.  Coefficients are element
   codes in ascending degree order with no trailing zeros; the zero
   polynomial has an empty coefficient vector and degree -1. */
class Poly {
public:
    Poly(const Fq& field, Var var) : field_(&field), var_(var) {}

    Poly(const Fq& field, Var var, std::vector<std::uint32_t> coeffs)
        : field_(&field), var_(var), c_(std::move(coeffs)) {
        for (std::uint32_t c : c_) field.check_code(c);
        trim();
    }

    static Poly constant(const Fq& field, Var var, std::uint32_t code) {
        Poly r(field, var);
        if (code != 0) r.c_.push_back(field.check_code(code));
        return r;
    }

    static Poly variable(const Fq& field, Var var) {
        Poly r(field, var);
        r.c_ = {0, 1};
        return r;
    }

    const Fq& field() const noexcept { return *field_; }
    Var var() const noexcept { return var_; }
    const std::vector<std::uint32_t>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    std::uint32_t coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : 0;
    }

    std::uint32_t leading() const {
        check_input(!c_.empty(), "zero polynomial has no leading coefficient");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.field_->same_as(*b.field_) && a.var_ == b.var_ && a.c_ == b.c_;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.require_compatible(b);
        Poly r(*a.field_, a.var_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = a.field_->add(a.coeff(i), b.coeff(i));
        r.trim();
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        a.require_compatible(b);
        Poly r(*a.field_, a.var_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = a.field_->sub(a.coeff(i), b.coeff(i));
        r.trim();
        return r;
    }

    Poly operator-() const {
        Poly r(*field_, var_);
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_->neg(c_[i]);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_compatible(b);
        Poly r(*a.field_, a.var_);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        const Fq& f = *a.field_;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            std::uint32_t ai = a.c_[i];
            if (ai == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = f.add(r.c_[i + j], f.mul(ai, b.c_[j]));
        }
        r.trim();
        return r;
    }

    Poly scaled(std::uint32_t code) const {
        Poly r(*field_, var_);
        if (code == 0) return r;
        r.c_.resize(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            r.c_[i] = field_->mul(c_[i], code);
        r.trim();
        return r;
    }

    /* View with a different variable tag (the underlying coefficients
       are unchanged); used when an isomorphism renames the variable. */
    Poly with_var(Var v) const {
        Poly r(*field_, v);
        r.c_ = c_;
        return r;
    }

private:
    void require_compatible(const Poly& other) const {
        check_input(field_->same_as(*other.field_),
                    "polynomials over different fields");
        check_input(var_ == other.var_, "polynomials in different variables");
    }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    const Fq* field_;
    Var var_;
    std::vector<std::uint32_t> c_;
};

/* Quotient and remainder with b monic or at least with invertible
   leading coefficient; b = 0 is an error. */
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    check_input(!b.is_zero(), "division by the zero polynomial");
    check_input(a.field().same_as(b.field()) && a.var() == b.var(),
                "division across rings");
    const Fq& f = a.field();
    int db = b.degree();
    if (a.degree() < db) return {Poly(f, a.var()), a};
    std::vector<std::uint32_t> rem(a.coeffs());
    std::vector<std::uint32_t> quo(a.degree() - db + 1, 0);
    std::uint32_t lc_inv = f.inv(b.leading());
    for (int i = a.degree(); i >= db; --i) {
        std::uint32_t c = rem[i];
        if (c == 0) continue;
        std::uint32_t qc = f.mul(c, lc_inv);
        quo[i - db] = qc;
        for (int j = 0; j <= db; ++j)
            rem[i - db + j] = f.sub(rem[i - db + j], f.mul(qc, b.coeff(j)));
    }
    return {Poly(f, a.var(), std::move(quo)), Poly(f, a.var(), std::move(rem))};
}

inline Poly operator%(const Poly& a, const Poly& b) {
    return divmod(a, b).second;
}

inline Poly operator/(const Poly& a, const Poly& b) {
    return divmod(a, b).first;
}

/* Monic greatest common divisor; gcd(0, 0) = 0. */
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(a.field().inv(a.leading()));
}

/* outer(inner), evaluated by Horner.  The result lives in the ring of
   inner; the variable tag of outer is irrelevant to the substitution. */
inline Poly compose(const Poly& outer, const Poly& inner) {
    check_input(outer.field().same_as(inner.field()),
                "composition across fields");
    const Fq& f = inner.field();
    Poly r(f, inner.var());
    for (int i = outer.degree(); i >= 0; --i)
        r = r * inner + Poly::constant(f, inner.var(), outer.coeff(i));
    return r;
}

/* ------------------------------------------------------------------ */
/* Text form                                                           */
/* ------------------------------------------------------------------ */

/* Canonical text: monomials in strictly descending order of variable
   power, ties broken by descending power of the field generator "a";
   composite coefficients are flattened into separate monomials.  '-'
   never appears.  The zero polynomial prints as "0". */
inline std::string format_poly(const Poly& a) {
    if (a.is_zero()) return "0";
    const Fq& f = a.field();
    const char* var = var_name(a.var());
    std::string out;
    for (int e = a.degree(); e >= 0; --e) {
        std::uint32_t code = a.coeff(static_cast<std::size_t>(e));
        if (code == 0) continue;
        std::vector<std::uint32_t> co = f.coords(code);
        for (std::uint32_t i = f.s(); i-- > 0;) {
            std::uint32_t u = co[i];
            if (u == 0) continue;
            if (!out.empty()) out += '+';
            std::string piece;
            if (u != 1 || (i == 0 && e == 0)) piece += std::to_string(u);
            if (i >= 1) {
                if (!piece.empty()) piece += '*';
                piece += 'a';
                if (i >= 2) piece += '^' + std::to_string(i);
            }
            if (e >= 1) {
                if (!piece.empty()) piece += '*';
                piece += var;
                if (e >= 2) piece += '^' + std::to_string(e);
            }
            out += piece;
        }
    }
    return out;
}

namespace detail {

/* Upper bound on degrees accepted from text, guarding memory. */
inline constexpr std::uint64_t max_parse_degree = 1ull << 20;

class PolyParser {
public:
    PolyParser(std::string_view text, const Fq& field, std::string_view varsym)
        : text_(text), f_(field), varsym_(varsym) {}

    /* poly := term (('+'|'-') term)*   with '-' meaning subtraction of
       the following term; a leading sign is not part of the grammar. */
    std::vector<std::uint32_t> run() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("empty polynomial", pos_);
        parse_term(false);
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == '+' || c == '-') {
                ++pos_;
                skip_ws();
                parse_term(c == '-');
            } else {
                throw parse_error("expected '+' or '-'", pos_);
            }
        }
        while (!acc_.empty() && acc_.back() == 0) acc_.pop_back();
        return std::move(acc_);
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    }

    bool at_var() const {
        return text_.compare(pos_, varsym_.size(), varsym_) == 0;
    }

    std::uint64_t parse_uint() {
        std::uint64_t v = 0;
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
            if (v > (UINT64_MAX - 9) / 10)
                throw parse_error("integer too large", start);
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) throw parse_error("expected digits", pos_);
        return v;
    }

    std::uint64_t parse_exponent() {
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            return parse_uint();
        }
        return 1;
    }

    /* term := coeff ['*' mono] | mono | coeff
       coeff := uint ['*' a-power] | a-power
       Atoms appear in the fixed order uint, a-power, variable-power. */
    void parse_term(bool negate) {
        std::uint32_t coeff = 1;
        std::uint64_t exp = 0;
        int stage = 0; // 0 start, 1 saw uint, 2 saw a-power, 3 saw variable
        bool any = false;
        for (;;) {
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c >= '0' && c <= '9') {
                if (stage >= 1) throw parse_error("misplaced integer", pos_);
                std::uint64_t u = parse_uint();
                coeff = f_.mul(coeff, static_cast<std::uint32_t>(u % f_.p()));
                stage = 1;
                any = true;
            } else if (at_var()) {
                if (stage >= 3) throw parse_error("repeated variable", pos_);
                std::size_t at = pos_;
                pos_ += varsym_.size();
                std::uint64_t e = parse_exponent();
                if (e > max_parse_degree) throw parse_error("degree too large", at);
                exp = e;
                stage = 3;
                any = true;
            } else if (c == 'a') {
                if (f_.s() == 1)
                    throw parse_error("coefficient not in the field", pos_);
                if (stage >= 2) throw parse_error("misplaced generator power", pos_);
                ++pos_;
                std::uint64_t e = parse_exponent();
                coeff = f_.mul(coeff, f_.pow_u64(f_.check_code(f_.p()), e));
                stage = 2;
                any = true;
            } else {
                throw parse_error("unexpected character", pos_);
            }
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                skip_ws();
                continue;
            }
            break;
        }
        if (!any) throw parse_error("empty term", pos_);
        if (negate) coeff = f_.neg(coeff);
        if (exp >= acc_.size()) acc_.resize(exp + 1, 0);
        acc_[exp] = f_.add(acc_[exp], coeff);
    }

    std::string_view text_;
    const Fq& f_;
    std::string_view varsym_;
    std::size_t pos_ = 0;
    std::vector<std::uint32_t> acc_;
};

} // namespace detail

inline Poly parse_poly(std::string_view text, const Fq& field, Var var) {
    detail::PolyParser p(text, field, var_name(var));
    return Poly(field, var, p.run());
}

/* Parse a field modulus: a monic polynomial in "a" over Z/p, given as
   text in the same grammar.  Returns ascending coefficients. */
inline std::vector<std::uint32_t> parse_modulus(std::string_view text,
                                                std::uint32_t p,
                                                std::uint32_t s) {
    Fq prime(p, 1);
    detail::PolyParser parser(text, prime, "a");
    std::vector<std::uint32_t> c = parser.run();
    check_input(c.size() == s + 1 && c.back() == 1,
                "modulus must be monic of degree s");
    return c;
}

/* ------------------------------------------------------------------ */
/* Residue arithmetic mod a monic polynomial                           */
/* ------------------------------------------------------------------ */

/* Exponent bits, most significant first; empty means exponent 0. */
struct PowPlan {
    std::vector<bool> bits;
};

inline PowPlan make_pow_plan(const bigint& e) {
    check_input(e >= 0, "negative exponent");
    PowPlan plan;
    if (e == 0) return plan;
    unsigned top = boost::multiprecision::msb(e);
    plan.bits.reserve(top + 1);
    for (unsigned i = top + 1; i-- > 0;)
        plan.bits.push_back(boost::multiprecision::bit_test(e, i));
    return plan;
}

/* Fixed monic modulus P of degree d >= 1 together with reduction and
   modular exponentiation kernels.  Raw-buffer entry points work on
   unnormalized length-d code vectors to keep inner loops free of
   allocation. */
class ResidueCtx {
public:
    explicit ResidueCtx(Poly modulus) : P_(std::move(modulus)) {
        check_input(P_.is_monic() && P_.degree() >= 1,
                    "modulus must be monic of positive degree");
        pc_ = P_.coeffs();
    }

    const Poly& modulus() const noexcept { return P_; }
    const Fq& field() const noexcept { return P_.field(); }
    Var var() const noexcept { return P_.var(); }
    std::uint32_t degree() const noexcept {
        return static_cast<std::uint32_t>(pc_.size() - 1);
    }
    const std::vector<std::uint32_t>& modulus_codes() const noexcept {
        return pc_;
    }

    bool is_modulus(std::span<const std::uint32_t> codes) const {
        if (codes.size() != pc_.size()) return false;
        return std::equal(codes.begin(), codes.end(), pc_.begin());
    }

    /* In-place reduction of an arbitrary-length code buffer; the result
       is resized to exactly d entries. */
    void reduce_inplace(std::vector<std::uint32_t>& r) const {
        const Fq& f = field();
        std::size_t d = degree();
        for (std::size_t i = r.size(); i-- > d;) {
            std::uint32_t c = r[i];
            if (c != 0) {
                for (std::size_t j = 0; j < d; ++j)
                    r[i - d + j] = f.sub(r[i - d + j], f.mul(c, pc_[j]));
            }
        }
        r.resize(d, 0);
    }

    /* out = x * y mod P for reduced inputs (length <= d). */
    void mulmod_into(std::span<const std::uint32_t> x,
                     std::span<const std::uint32_t> y,
                     std::vector<std::uint32_t>& out,
                     std::vector<std::uint32_t>& tmp) const {
        const Fq& f = field();
        if (x.empty() || y.empty()) {
            out.assign(degree(), 0);
            return;
        }
        tmp.assign(x.size() + y.size() - 1, 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::uint32_t xi = x[i];
            if (xi == 0) continue;
            for (std::size_t j = 0; j < y.size(); ++j)
                tmp[i + j] = f.add(tmp[i + j], f.mul(xi, y[j]));
        }
        reduce_inplace(tmp);
        out = tmp;
    }

    Poly reduce(const Poly& a) const {
        check_input(a.field().same_as(field()) && a.var() == var(),
                    "reduction across rings");
        std::vector<std::uint32_t> r = a.coeffs();
        reduce_inplace(r);
        return Poly(field(), var(), std::move(r));
    }

    Poly mulmod(const Poly& a, const Poly& b) const {
        return reduce(a * b);
    }

    Poly powmod(const Poly& a, const bigint& e) const {
        PowPlan plan = make_pow_plan(e);
        PowScratch scratch(*this);
        std::vector<std::uint32_t> base = a.coeffs();
        reduce_inplace(base);
        std::vector<std::uint32_t> out;
        scratch.run(base, plan, out);
        return Poly(field(), var(), std::move(out));
    }

    /* Reusable square-and-multiply scratch bound to one context. */
    class PowScratch {
    public:
        explicit PowScratch(const ResidueCtx& ctx) : ctx_(&ctx) {}

        /* out = base^e mod P where e is encoded in plan; base may be of
           any length.  By convention base^0 = 1 for every base. */
        void run(std::span<const std::uint32_t> base, const PowPlan& plan,
                 std::vector<std::uint32_t>& out) {
            std::size_t d = ctx_->degree();
            if (plan.bits.empty()) {
                out.assign(d, 0);
                out[0] = 1;
                return;
            }
            base_.assign(base.begin(), base.end());
            ctx_->reduce_inplace(base_);
            acc_ = base_;
            for (std::size_t i = 1; i < plan.bits.size(); ++i) {
                ctx_->mulmod_into(acc_, acc_, acc_, tmp_);
                if (plan.bits[i]) ctx_->mulmod_into(acc_, base_, acc_, tmp_);
            }
            out = acc_;
        }

    private:
        const ResidueCtx* ctx_;
        std::vector<std::uint32_t> base_;
        std::vector<std::uint32_t> acc_;
        std::vector<std::uint32_t> tmp_;
    };

private:
    Poly P_;
    std::vector<std::uint32_t> pc_;
};

inline Poly powmod(const Poly& a, const bigint& e, const ResidueCtx& ctx) {
    return ctx.powmod(a, e);
}

/* ------------------------------------------------------------------ */
/* Irreducibility                                                      */
/* ------------------------------------------------------------------ */

namespace detail {

inline std::vector<std::uint32_t> distinct_prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace detail

/* Deterministic irreducibility test for a monic polynomial of degree
   >= 1: T^(q^n) must reduce to T, and for every prime r | n the map
   T^(q^(n/r)) - T must be coprime to the candidate. */
inline bool is_irreducible(const Poly& f) {
    check_input(f.is_monic() && f.degree() >= 1,
                "irreducibility requires a monic polynomial of positive degree");
    std::uint32_t n = static_cast<std::uint32_t>(f.degree());
    const bigint q = f.field().q();
    ResidueCtx ctx(f);
    Poly t = Poly::variable(f.field(), f.var());
    Poly t_red = ctx.reduce(t);
    if (ctx.powmod(t, pow_bigint(q, n)) != t_red) return false;
    for (std::uint32_t r : detail::distinct_prime_factors(n)) {
        Poly h = ctx.powmod(t, pow_bigint(q, n / r)) - t_red;
        if (gcd(h, f).degree() != 0) return false;
    }
    return true;
}

/* ------------------------------------------------------------------ */
/* Enumeration of monic polynomials                                    */
/* ------------------------------------------------------------------ */

/* Visit every monic polynomial of degree m as a raw coefficient span
   (ascending, length m + 1, leading entry 1).  Order: the non-leading
   coefficient vector counts as a base-q integer, low digit first. */
template <class Fn>
inline void for_each_monic(const Fq& f, std::uint32_t m, Fn&& fn) {
    std::vector<std::uint32_t> c(m + 1, 0);
    c[m] = 1;
    const std::uint64_t q = f.q();
    for (;;) {
        fn(std::span<const std::uint32_t>(c.data(), m + 1));
        std::uint32_t i = 0;
        while (i < m) {
            if (++c[i] == q) {
                c[i] = 0;
                ++i;
            } else {
                break;
            }
        }
        if (i == m) break;
    }
}

/* Materialized stream of all monic polynomials of degree m, in the
   same order as for_each_monic; guarded against oversized requests. */
inline std::vector<Poly> monic_polys(const Fq& f, Var var, std::uint32_t m,
                                     std::uint64_t budget = 1ull << 22) {
    bigint count = pow_bigint(f.q(), m);
    check_input(count <= budget, "monic enumeration exceeds budget");
    std::vector<Poly> out;
    out.reserve(count.convert_to<std::size_t>());
    for_each_monic(f, m, [&](std::span<const std::uint32_t> c) {
        out.emplace_back(f, var, std::vector<std::uint32_t>(c.begin(), c.end()));
    });
    return out;
}

/* ------------------------------------------------------------------ */
/* Norm from the Artin-Schreier ring                                   */
/* ------------------------------------------------------------------ */

/* Norm of a in F_q[theta] down to F_q[T] along T = theta^p - theta:
   the product of the p shifts a(theta - c) is rewritten in base
   theta^p - theta; every digit of that expansion must be a constant,
   and those constants are the T-coefficients of the result. */
inline Poly norm_theta(const Poly& a) {
    check_input(a.var() == Var::Theta, "norm expects a polynomial in theta");
    const Fq& f = a.field();
    const std::uint32_t p = f.p();
    Poly theta = Poly::variable(f, Var::Theta);
    Poly prod = Poly::constant(f, Var::Theta, 1);
    for (std::uint32_t c = 0; c < p; ++c) {
        // a(theta - c); prime-subfield codes coincide with residues mod p
        Poly shifted = compose(a, theta - Poly::constant(f, Var::Theta, c));
        prod = prod * shifted;
    }
    std::vector<std::uint32_t> bv(p + 1, 0);
    bv[1] = f.neg(1);
    bv[p] = 1;
    Poly base(f, Var::Theta, std::move(bv));
    std::vector<std::uint32_t> digits;
    while (!prod.is_zero()) {
        auto [q, r] = divmod(prod, base);
        check_internal(r.degree() <= 0, "norm digit is not a constant");
        digits.push_back(r.is_zero() ? 0 : r.coeff(0));
        prod = std::move(q);
    }
    return Poly(f, Var::T, std::move(digits));
}

} // namespace ckv
