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
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ckv/errors.hpp"

namespace ckv {

using bigint = boost::multiprecision::cpp_int;

/* Strict decimal parse: optional leading '-', then digits, nothing else. */
inline bigint parse_bigint(std::string_view text) {
    if (text.empty()) throw parse_error("empty integer", 0);
    std::size_t i = 0;
    if (text[0] == '-') i = 1;
    if (i == text.size()) throw parse_error("expected digits", i);
    bigint value = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9') throw parse_error("expected digit", i);
        value = value * 10 + (c - '0');
    }
    if (text[0] == '-') value = -value;
    return value;
}

inline std::string to_string(const bigint& n) { return n.str(); }

/* base^exp for a machine-word exponent. */
inline bigint pow_bigint(const bigint& base, std::uint64_t exp) {
    bigint result = 1;
    bigint b = base;
    while (exp) {
        if (exp & 1) result *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return result;
}

/* Nonnegative representative of n mod m, for m > 0. */
inline bigint mod_floor(const bigint& n, const bigint& m) {
    bigint r = n % m;
    if (r < 0) r += m;
    return r;
}

} // namespace ckv
