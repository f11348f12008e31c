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
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ckv/bigint.hpp"
#include "ckv/errors.hpp"

namespace ckv {

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/* Polynomials over Z/p as ascending coefficient vectors, used only to
   validate and search field moduli.  Vectors are kept normalized (no
   trailing zeros). */
inline void prime_poly_trim(std::vector<std::uint32_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

/* Remainder of a by monic b over Z/p. */
inline std::vector<std::uint32_t> prime_poly_rem(std::vector<std::uint32_t> a,
                                                 const std::vector<std::uint32_t>& b,
                                                 std::uint32_t p) {
    std::size_t db = b.size() - 1;
    while (a.size() > db) {
        std::uint64_t c = a.back();
        std::size_t shift = a.size() - 1 - db;
        if (c != 0) {
            for (std::size_t j = 0; j < db; ++j) {
                std::uint64_t sub = static_cast<std::uint64_t>(b[j]) * c % p;
                a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
            }
        }
        a.pop_back();
        prime_poly_trim(a);
    }
    return a;
}

/* Irreducibility of a monic polynomial of degree >= 1 over Z/p by trial
   division against every monic polynomial of degree 1..deg/2. */
inline bool prime_poly_irreducible(const std::vector<std::uint32_t>& g,
                                   std::uint32_t p) {
    std::size_t deg = g.size() - 1;
    if (deg == 1) return true;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::vector<std::uint32_t> cand(d + 1, 0);
        cand[d] = 1;
        for (;;) {
            std::vector<std::uint32_t> r = prime_poly_rem(g, cand, p);
            if (r.empty()) return false;
            std::size_t i = 0;
            while (i < d) {
                if (++cand[i] == p) { cand[i] = 0; ++i; } else break;
            }
            if (i == d) break;
        }
    }
    return true;
}

} // namespace detail

class FqElem;

/* The coefficient field F_q, q = p^s.  Elements are encoded as integer
   codes in [0, q): the code of (c_0, ..., c_{s-1}) with respect to the
   power basis of a root "a" of the modulus is sum c_i p^i.  The object
   is pinned in memory because elements and polynomials refer to it by
   pointer. */
class Fq {
public:
    /* Largest supported field size; keeps codes and tables small. */
    static constexpr std::uint64_t max_size = 1ull << 20;
    /* Full multiplication tables are built up to this size. */
    static constexpr std::uint64_t table_cap = 256;

    Fq(std::uint32_t p, std::uint32_t s) : Fq(p, s, {}, true) {}

    Fq(std::uint32_t p, std::uint32_t s, std::vector<std::uint32_t> modulus)
        : Fq(p, s, std::move(modulus), false) {}

    Fq(const Fq&) = delete;
    Fq& operator=(const Fq&) = delete;

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t s() const noexcept { return s_; }
    std::uint64_t q() const noexcept { return q_; }

    /* Ascending coefficients of the modulus of "a" over Z/p, including
       the leading 1; empty when s == 1. */
    const std::vector<std::uint32_t>& modulus_coeffs() const noexcept {
        return modulus_;
    }

    bool same_as(const Fq& other) const noexcept {
        return this == &other ||
               (p_ == other.p_ && s_ == other.s_ && modulus_ == other.modulus_);
    }

    std::uint32_t check_code(std::uint64_t code) const {
        check_input(code < q_, "element code out of range");
        return static_cast<std::uint32_t>(code);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (s_ == 1) {
            std::uint32_t r = a + b;
            return r >= p_ ? r - p_ : r;
        }
        if (!add_tab_.empty()) return add_tab_[a * q_ + b];
        return add_slow(a, b);
    }

    std::uint32_t neg(std::uint32_t a) const {
        if (s_ == 1) return a == 0 ? 0 : p_ - a;
        if (!neg_tab_.empty()) return neg_tab_[a];
        return neg_slow(a);
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return add(a, neg(b));
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (s_ == 1) return static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(a) * b % p_);
        if (!mul_tab_.empty()) return mul_tab_[a * q_ + b];
        return mul_slow(a, b);
    }

    std::uint32_t inv(std::uint32_t a) const {
        check_input(a != 0, "inverse of zero");
        if (!inv_tab_.empty()) return inv_tab_[a];
        return pow_u64(a, q_ - 2);
    }

    std::uint32_t pow_u64(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        std::uint32_t base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return r;
    }

    std::uint32_t pow(std::uint32_t a, const bigint& e) const {
        check_input(e >= 0, "negative exponent");
        if (a == 0) return e == 0 ? 1 : 0;
        // the multiplicative group has order q - 1
        bigint r = e % (q_ - 1);
        return pow_u64(a, r.convert_to<std::uint64_t>());
    }

    /* Absolute trace down to Z/p, returned as a code in [0, p). */
    std::uint32_t trace(std::uint32_t a) const {
        if (!trace_tab_.empty()) return trace_tab_[a];
        return trace_slow(a);
    }

    std::vector<std::uint32_t> coords(std::uint32_t code) const {
        std::vector<std::uint32_t> c(s_);
        for (std::uint32_t i = 0; i < s_; ++i) {
            c[i] = code % p_;
            code /= p_;
        }
        return c;
    }

    std::uint32_t from_coords(std::span<const std::uint32_t> c) const {
        check_input(c.size() == s_, "coordinate count mismatch");
        std::uint64_t code = 0;
        for (std::uint32_t i = s_; i-- > 0;) {
            check_input(c[i] < p_, "coordinate out of range");
            code = code * p_ + c[i];
        }
        return static_cast<std::uint32_t>(code);
    }

    /* Text form of one element: a decimal digit when s == 1, otherwise
       a sum of monomials in "a" with descending powers. */
    std::string format_element(std::uint32_t code) const {
        if (s_ == 1) return std::to_string(code);
        if (code == 0) return "0";
        std::vector<std::uint32_t> c = coords(code);
        std::string out;
        for (std::uint32_t i = s_; i-- > 0;) {
            if (c[i] == 0) continue;
            if (!out.empty()) out += '+';
            if (i == 0) {
                out += std::to_string(c[i]);
            } else {
                if (c[i] != 1) {
                    out += std::to_string(c[i]);
                    out += '*';
                }
                out += 'a';
                if (i >= 2) {
                    out += '^';
                    out += std::to_string(i);
                }
            }
        }
        return out;
    }

    class ElementRange;
    ElementRange elements() const;

private:
    Fq(std::uint32_t p, std::uint32_t s, std::vector<std::uint32_t> modulus,
       bool pick_default)
        : p_(p), s_(s) {
        check_input(detail::is_prime_u32(p), std::to_string(p) + " is not prime");
        check_input(s >= 1, "extension degree must be positive");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < s; ++i) {
            q *= p;
            check_input(q <= max_size, "field size exceeds supported bound");
        }
        q_ = q;
        if (s_ == 1) {
            check_input(pick_default || modulus.empty(),
                        "prime field takes no modulus");
        } else if (pick_default) {
            modulus_ = default_modulus();
        } else {
            check_input(modulus.size() == s_ + 1, "modulus degree mismatch");
            check_input(modulus.back() == 1, "modulus must be monic");
            for (std::uint32_t c : modulus)
                check_input(c < p_, "modulus coefficient out of range");
            check_input(detail::prime_poly_irreducible(modulus, p_),
                        "modulus is reducible");
            modulus_ = std::move(modulus);
        }
        build_tables();
    }

    /* First monic irreducible of degree s in the order that counts the
       non-leading coefficient vector as a base-p integer (low
       coefficient = low digit). */
    std::vector<std::uint32_t> default_modulus() const {
        std::vector<std::uint32_t> g(s_ + 1, 0);
        g[s_] = 1;
        for (std::uint64_t k = 0; k < q_; ++k) {
            std::uint64_t t = k;
            for (std::uint32_t i = 0; i < s_; ++i) {
                g[i] = static_cast<std::uint32_t>(t % p_);
                t /= p_;
            }
            if (detail::prime_poly_irreducible(g, p_)) return g;
        }
        throw internal_error("no irreducible modulus found");
    }

    std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t r = 0;
        std::uint32_t mult = 1;
        for (std::uint32_t i = 0; i < s_; ++i) {
            std::uint32_t da = a % p_, db = b % p_;
            a /= p_;
            b /= p_;
            r += (da + db) % p_ * mult;
            mult *= p_;
        }
        return r;
    }

    std::uint32_t neg_slow(std::uint32_t a) const {
        std::uint32_t r = 0;
        std::uint32_t mult = 1;
        for (std::uint32_t i = 0; i < s_; ++i) {
            std::uint32_t da = a % p_;
            a /= p_;
            r += (da == 0 ? 0 : p_ - da) * mult;
            mult *= p_;
        }
        return r;
    }

    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
        std::vector<std::uint32_t> ca = coords(a), cb = coords(b);
        std::vector<std::uint32_t> t(2 * s_ - 1, 0);
        for (std::uint32_t i = 0; i < s_; ++i) {
            if (ca[i] == 0) continue;
            for (std::uint32_t j = 0; j < s_; ++j)
                t[i + j] = static_cast<std::uint32_t>(
                    (t[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
        }
        for (std::uint32_t i = 2 * s_ - 1; i-- > s_;) {
            std::uint32_t c = t[i];
            if (c == 0) continue;
            t[i] = 0;
            for (std::uint32_t j = 0; j < s_; ++j) {
                std::uint64_t sub = static_cast<std::uint64_t>(c) * modulus_[j] % p_;
                t[i - s_ + j] = static_cast<std::uint32_t>(
                    (t[i - s_ + j] + p_ - sub) % p_);
            }
        }
        std::uint64_t code = 0;
        for (std::uint32_t i = s_; i-- > 0;) code = code * p_ + t[i];
        return static_cast<std::uint32_t>(code);
    }

    std::uint32_t trace_slow(std::uint32_t a) const {
        std::uint32_t sum = 0;
        std::uint32_t x = a;
        for (std::uint32_t i = 0; i < s_; ++i) {
            sum = add(sum, x);
            x = pow_u64(x, p_);
        }
        check_internal(sum < p_, "trace not in the prime field");
        return sum;
    }

    void build_tables() {
        if (s_ == 1) {
            if (q_ <= table_cap) {
                inv_tab_.resize(q_, 0);
                for (std::uint64_t a = 1; a < q_; ++a)
                    inv_tab_[a] = pow_u64(static_cast<std::uint32_t>(a), q_ - 2);
            }
            return;
        }
        if (q_ <= table_cap) {
            add_tab_.resize(q_ * q_);
            mul_tab_.resize(q_ * q_);
            neg_tab_.resize(q_);
            for (std::uint64_t a = 0; a < q_; ++a) {
                neg_tab_[a] = neg_slow(static_cast<std::uint32_t>(a));
                for (std::uint64_t b = 0; b < q_; ++b) {
                    add_tab_[a * q_ + b] =
                        add_slow(static_cast<std::uint32_t>(a),
                                 static_cast<std::uint32_t>(b));
                    mul_tab_[a * q_ + b] =
                        mul_slow(static_cast<std::uint32_t>(a),
                                 static_cast<std::uint32_t>(b));
                }
            }
            inv_tab_.resize(q_, 0);
            for (std::uint64_t a = 1; a < q_; ++a)
                inv_tab_[a] = pow_u64(static_cast<std::uint32_t>(a), q_ - 2);
        }
        if (q_ <= 65536) {
            trace_tab_.resize(q_);
            for (std::uint64_t a = 0; a < q_; ++a)
                trace_tab_[a] = trace_slow(static_cast<std::uint32_t>(a));
        }
    }

    std::uint32_t p_;
    std::uint32_t s_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_; // ascending, monic; empty for s == 1
    std::vector<std::uint32_t> add_tab_;
    std::vector<std::uint32_t> mul_tab_;
    std::vector<std::uint32_t> neg_tab_;
    std::vector<std::uint32_t> inv_tab_;
    std::vector<std::uint32_t> trace_tab_;
};

inline Fq make_field(std::uint32_t p, std::uint32_t s) { return Fq(p, s); }

inline Fq make_field(std::uint32_t p, std::uint32_t s,
                     std::vector<std::uint32_t> modulus) {
    return Fq(p, s, std::move(modulus));
}

/* One field element together with its field.  Mixing elements of
   different fields in an operation is an error. */
class FqElem {
public:
    FqElem(const Fq& field, std::uint64_t code)
        : field_(&field), code_(field.check_code(code)) {}

    static FqElem from_coords(const Fq& field,
                              std::span<const std::uint32_t> coords) {
        return FqElem(field, field.from_coords(coords));
    }

    const Fq& field() const noexcept { return *field_; }
    std::uint32_t code() const noexcept { return code_; }
    std::vector<std::uint32_t> coords() const { return field_->coords(code_); }
    bool is_zero() const noexcept { return code_ == 0; }

    friend FqElem operator+(const FqElem& a, const FqElem& b) {
        a.require_same(b);
        return FqElem(*a.field_, a.field_->add(a.code_, b.code_));
    }
    friend FqElem operator-(const FqElem& a, const FqElem& b) {
        a.require_same(b);
        return FqElem(*a.field_, a.field_->sub(a.code_, b.code_));
    }
    friend FqElem operator*(const FqElem& a, const FqElem& b) {
        a.require_same(b);
        return FqElem(*a.field_, a.field_->mul(a.code_, b.code_));
    }
    FqElem operator-() const { return FqElem(*field_, field_->neg(code_)); }

    FqElem inv() const { return FqElem(*field_, field_->inv(code_)); }
    FqElem pow(const bigint& e) const {
        return FqElem(*field_, field_->pow(code_, e));
    }
    std::uint32_t trace() const { return field_->trace(code_); }

    friend bool operator==(const FqElem& a, const FqElem& b) {
        return a.field_->same_as(*b.field_) && a.code_ == b.code_;
    }

    std::string str() const { return field_->format_element(code_); }

private:
    void require_same(const FqElem& other) const {
        check_input(field_->same_as(*other.field_),
                    "elements of different fields");
    }

    const Fq* field_;
    std::uint32_t code_;
};

/* Ordered stream of all q element codes: 0, 1, ..., q - 1. */
class Fq::ElementRange {
public:
    explicit ElementRange(const Fq& f) : f_(&f) {}

    class iterator {
    public:
        iterator(const Fq* f, std::uint64_t code) : f_(f), code_(code) {}
        FqElem operator*() const { return FqElem(*f_, code_); }
        iterator& operator++() { ++code_; return *this; }
        bool operator!=(const iterator& o) const { return code_ != o.code_; }

    private:
        const Fq* f_;
        std::uint64_t code_;
    };

    iterator begin() const { return iterator(f_, 0); }
    iterator end() const { return iterator(f_, f_->q()); }
    std::uint64_t size() const { return f_->q(); }

private:
    const Fq* f_;
};

inline Fq::ElementRange Fq::elements() const { return ElementRange(*this); }

} // namespace ckv
