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

#include <catch2/catch_amalgamated.hpp>

#include "ckv/fields.hpp"
#include "ckv/rng.hpp"

using namespace ckv;

TEST_CASE("splitmix64 known answers") {
    SplitMix64 g0(0);
    CHECK(g0.next() == 0xe220a8397b1dcdafull);
    CHECK(g0.next() == 0x6e789e6aa1b965f4ull);
    CHECK(g0.next() == 0x06c45d188009454full);
    SplitMix64 g42(42);
    CHECK(g42.next() == 0xbdd732262feb6e95ull);
    CHECK(g42.next() == 0x28efe333b266f103ull);
    CHECK(g42.next() == 0x47526757130f9f52ull);
    CHECK(mix64(0) == 0xe220a8397b1dcdafull);
    CHECK(substream_seed(7, sample_salt(9, 0)) == 0xaee11f0b5ff89ef6ull);
}

TEST_CASE("splitmix64 bounded draws are uniform rejections") {
    SplitMix64 g(123);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t v = g.below(7);
        CHECK(v < 7);
    }
    // bound 1 always yields 0
    CHECK(SplitMix64(5).below(1) == 0);
}

TEST_CASE("prime field arithmetic") {
    Fq f(3, 1);
    CHECK(f.q() == 3);
    CHECK(f.add(1, 2) == 0);
    CHECK(f.mul(2, 2) == 1);
    CHECK(f.neg(1) == 2);
    CHECK(f.inv(2) == 2);
    CHECK(f.pow_u64(2, 5) == 2);
    CHECK(f.trace(2) == 2);
    CHECK_THROWS_AS(f.inv(0), input_error);
}

TEST_CASE("F_4 multiplication table matches the reference model") {
    Fq f(2, 2); // modulus a^2 + a + 1; codes 0,1,2=a,3=a+1
    CHECK(f.mul(2, 2) == 3);  // a*a = a+1
    CHECK(f.mul(2, 3) == 1);  // a*(a+1) = 1
    CHECK(f.inv(2) == 3);
    CHECK(f.trace(2) == 1);   // Tr(a) = a + a^2 = 1
    CHECK(f.trace(1) == 0);   // Tr(1) = 1 + 1 = 0
    CHECK(f.pow_u64(2, 3) == 1);
    CHECK(f.format_element(3) == "a+1");
}

TEST_CASE("F_9 default modulus is a^2 + 1") {
    Fq f(3, 2);
    std::vector<std::uint32_t> want{1, 0, 1};
    CHECK(f.modulus_coeffs() == want);
    // a^2 = -1, so a^4 = 1 and a has order 4
    std::vector<std::uint32_t> gen{0, 1}, minus1{2, 0};
    CHECK(f.pow_u64(f.from_coords(gen), 4) == 1);
    CHECK(f.pow_u64(f.from_coords(gen), 2) == f.from_coords(minus1));
}

TEST_CASE("explicit modulus must be irreducible and monic") {
    // a^2 + 1 is reducible over F_2: (a+1)^2
    CHECK_THROWS_AS(Fq(2, 2, std::vector<std::uint32_t>{1, 0, 1}), input_error);
    // wrong degree
    CHECK_THROWS_AS(Fq(3, 2, std::vector<std::uint32_t>{1, 1}), input_error);
    // valid alternative modulus for F_9: a^2 + a + 2
    Fq f(3, 2, std::vector<std::uint32_t>{2, 1, 1});
    CHECK(f.q() == 9);
}

TEST_CASE("field element wrappers enforce matching fields") {
    Fq f(3, 1), g(5, 1);
    FqElem x(f, 2), y(g, 2);
    CHECK_THROWS_AS(x + y, input_error);
    CHECK((x * x).code() == 1);
    CHECK((-x).code() == 1);
    CHECK(x.inv().code() == 2);
}

TEST_CASE("every nonzero element satisfies x^(q-1) = 1") {
    for (auto [p, s] : {std::pair<std::uint32_t, std::uint32_t>{2, 3},
                        {3, 2},
                        {5, 1},
                        {7, 1},
                        {2, 4}}) {
        Fq f(p, s);
        for (std::uint32_t x = 1; x < f.q(); ++x) {
            CHECK(f.pow_u64(x, f.q() - 1) == 1);
            CHECK(f.mul(x, f.inv(x)) == 1);
        }
    }
}

TEST_CASE("trace is additive and Frobenius-invariant") {
    Fq f(3, 2);
    for (std::uint32_t x = 0; x < 9; ++x) {
        for (std::uint32_t y = 0; y < 9; ++y)
            CHECK(f.trace(f.add(x, y)) == (f.trace(x) + f.trace(y)) % 3);
        CHECK(f.trace(f.pow_u64(x, 3)) == f.trace(x));
    }
}

TEST_CASE("prime power factoring rejections") {
    CHECK_THROWS_AS(Fq(4, 1), input_error);  // p must be prime
    CHECK_THROWS_AS(Fq(1, 1), input_error);
    CHECK_THROWS_AS(Fq(0, 2), input_error);
}
