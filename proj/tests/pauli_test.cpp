// Copyright 2026 The twistlab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twistlab/pauli.hpp"

#include <complex>
#include <random>
#include <vector>

#include "doctest.h"

using namespace twistlab;

namespace {

// Dense-matrix oracle for small n.
using Mat = std::vector<std::vector<std::complex<double>>>;

Mat mat_mul(const Mat &a, const Mat &b) {
    size_t n = a.size();
    Mat c(n, std::vector<std::complex<double>>(n, 0.0));
    for (size_t i = 0; i < n; i++) {
        for (size_t k = 0; k < n; k++) {
            if (std::abs(a[i][k]) < 1e-12) {
                continue;
            }
            for (size_t j = 0; j < n; j++) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

Mat dense(const PauliOperator &p) {
    // i^phase X^x Z^z acting on basis states: P|b> = i^phase (-1)^{b.z} |b^x>.
    size_t dim = size_t{1} << p.n;
    Mat m(dim, std::vector<std::complex<double>>(dim, 0.0));
    std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    uint64_t xm = p.x.num_words() ? p.x.words()[0] : 0;
    uint64_t zm = p.z.num_words() ? p.z.words()[0] : 0;
    for (uint64_t b = 0; b < dim; b++) {
        double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
        m[b ^ xm][b] = i_pow[p.phase & 3] * sign;
    }
    return m;
}

bool mat_eq(const Mat &a, const Mat &b) {
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < a.size(); j++) {
            if (std::abs(a[i][j] - b[i][j]) > 1e-9) {
                return false;
            }
        }
    }
    return true;
}

PauliOperator random_pauli(size_t n, std::mt19937_64 &rng) {
    PauliOperator p(n);
    for (size_t q = 0; q < n; q++) {
        p.x.set(q, rng() & 1);
        p.z.set(q, rng() & 1);
    }
    p.phase = (uint8_t)(rng() & 3);
    return p;
}

}  // namespace

TEST_CASE("single-qubit products and phases") {
    auto X = PauliOperator::from_string("X");
    auto Y = PauliOperator::from_string("Y");
    auto Z = PauliOperator::from_string("Z");
    // XZ = -iY
    auto xz = X.times(Z);
    CHECK(xz.str() == "-iY");
    // X (x) I times Z (x) I -> -i (Y (x) I)
    auto a = PauliOperator::from_string("XI");
    auto b = PauliOperator::from_string("ZI");
    CHECK(a.times(b).str() == "-iYI");
    // Hermitian involution: s*s = +identity
    for (const auto &s : {X, Y, Z}) {
        auto sq = s.times(s);
        CHECK(sq.is_identity());
    }
    // XX times ZZ = -YY (4x4 oracle)
    auto xx = PauliOperator::from_string("XX");
    auto zz = PauliOperator::from_string("ZZ");
    auto prod = xx.times(zz);
    CHECK(prod.str() == "-YY");
    CHECK(mat_eq(dense(prod), mat_mul(dense(xx), dense(zz))));
}

TEST_CASE("multiply matches the dense oracle on random pairs up to n=4") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + (rng() % 4);
        auto a = random_pauli(n, rng);
        auto b = random_pauli(n, rng);
        CHECK(mat_eq(dense(a.times(b)), mat_mul(dense(a), dense(b))));
    }
}

TEST_CASE("commutes agrees with the dense commutator oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + (rng() % 3);
        auto a = random_pauli(n, rng);
        auto b = random_pauli(n, rng);
        Mat ab = mat_mul(dense(a), dense(b));
        Mat ba = mat_mul(dense(b), dense(a));
        CHECK(a.commutes_with(b) == mat_eq(ab, ba));
    }
}

TEST_CASE("associativity and commutation phase on random triples") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 300; trial++) {
        size_t n = 1 + (rng() % 64);
        auto a = random_pauli(n, rng);
        auto b = random_pauli(n, rng);
        auto c = random_pauli(n, rng);
        CHECK(a.times(b).times(c) == a.times(b.times(c)));
        // ab and ba differ exactly by (-1)^{symplectic product}
        auto ab = a.times(b);
        auto ba = b.times(a);
        CHECK(ab.x == ba.x);
        CHECK(ab.z == ba.z);
        uint8_t diff = (uint8_t)((ab.phase - ba.phase) & 3);
        CHECK(diff == (a.commutes_with(b) ? 0 : 2));
    }
}

TEST_CASE("weight") {
    CHECK(PauliOperator::identity(5).weight() == 0);
    CHECK(PauliOperator::from_string("YIZ").weight() == 2);
}

TEST_CASE("restrict zeroes support outside the kept set and resets the sign") {
    auto p = PauliOperator::from_string("XZY");
    auto r = p.restricted(std::vector<size_t>{0, 1});
    CHECK(r.str() == "+XZI");
    auto full = PauliOperator::from_string("-XZY").restricted(std::vector<size_t>{0, 1, 2});
    CHECK(full.str() == "+XZY");
    CHECK_THROWS_AS(p.restricted(std::vector<size_t>{5}), std::out_of_range);
}

TEST_CASE("canonical Hermitian signs") {
    auto p = PauliOperator::from_string("-YXZ");
    CHECK(p.is_hermitian());
    CHECK(p.sign() == -1);
    p.set_sign(+1);
    CHECK(p.str() == "+YXZ");
    auto sq = p.times(p);
    CHECK(sq.is_identity());
    // Text form round-trips exactly.
    for (const char *s : {"+XIZ", "-YY", "+iXZ", "-iZZY", "+I"}) {
        CHECK(PauliOperator::from_string(s).str() == s);
    }
}

TEST_CASE("length mismatch raises dimension errors") {
    auto a = PauliOperator::from_string("XX");
    auto b = PauliOperator::from_string("X");
    CHECK_THROWS_AS(a.times(b), std::invalid_argument);
    CHECK_THROWS_AS((void)a.commutes_with(b), std::invalid_argument);
}
