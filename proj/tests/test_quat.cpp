#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "quatgroup/errors.hpp"
#include "quatgroup/quat.hpp"

using namespace quatgroup;
using namespace quatgroup::quat;

namespace {

RationalQuaternion rq(std::int64_t x0, std::int64_t x1, std::int64_t x2, std::int64_t x3, const QuatAlgebra& alg) {
    return {Rational(x0), Rational(x1), Rational(x2), Rational(x3), alg};
}

// Same multiset of coefficients up to one global sign.
bool equivalentDiagonal(const TernaryForm& f, std::array<std::int64_t, 3> target) {
    std::array<Rational, 3> c = f.coefficients;
    std::array<Rational, 3> t{Rational(target[0]), Rational(target[1]), Rational(target[2])};
    std::sort(c.begin(), c.end());
    std::sort(t.begin(), t.end());
    if (c == t) return true;
    for (auto& x : c) x = -x;
    std::sort(c.begin(), c.end());
    return c == t;
}

// Volume / pi of Gamma_{p,a} straight from the form -X^2 + aY^2 + pZ^2,
// with plain integer fractions.
std::pair<std::int64_t, std::int64_t> oracleVolume(std::int64_t p, std::int64_t a) {
    std::int64_t num = 4 * a * p, den = 3;
    auto mul = [&](std::int64_t n, std::int64_t d) {
        num *= n;
        den *= d;
        const auto g = std::gcd(num, den);
        num /= g;
        den /= g;
    };
    std::vector<std::int64_t> qs{2};
    for (std::int64_t q = 3; q <= std::max(a, p); q += 2) {
        bool prime = true;
        for (std::int64_t d = 3; d * d <= q; d += 2) prime &= q % d != 0;
        if (prime && ((a % q) == 0 || q == p)) qs.push_back(q);
    }
    for (auto q : qs) {
        int e = 0;
        int ni = 1;
        if (q == 2) {
            // unit norms are x0^2 - p x2^2 mod 4 when 4 | a: all 1 mod 4 iff p = 3 mod 4
            ni = (a % 4 == 0 && p % 4 == 3) ? 2 : 1;
        } else {
            // unit coefficients are -1 and the one of a, p not divisible by q
            const std::int64_t other = q == p ? a : p;
            e = arith::legendre(other, q);
        }
        mul(q * q - 1, ni * q * (q - e));
    }
    return {num, den};
}

}  // namespace

TEST_CASE("multiplication table") {
    const auto alg = QuatAlgebra::create(2, 5);
    const auto one = rq(1, 0, 0, 0, alg), i = rq(0, 1, 0, 0, alg), j = rq(0, 0, 1, 0, alg), ij = rq(0, 0, 0, 1, alg);
    CHECK(i * j == ij);
    CHECK(j * i == rq(0, 0, 0, -1, alg));
    CHECK((one + i) * (one - i) == rq(1 - 2, 0, 0, 0, alg));
    CHECK(i * i == rq(2, 0, 0, 0, alg));
    CHECK(j * j == rq(5, 0, 0, 0, alg));
    CHECK(ij * ij == rq(-10, 0, 0, 0, alg));
    CHECK_THROWS_AS(i * rq(0, 1, 0, 0, QuatAlgebra::create(3, 5)), AlgebraMismatch);
}

TEST_CASE("norm trace conj") {
    const auto alg = QuatAlgebra::create(2, 5);
    auto r = normTraceConj(rq(1, 0, 0, 0, alg));
    CHECK(r.n == Rational(1));
    CHECK(r.tr == Rational(2));
    CHECK(r.conj == rq(1, 0, 0, 0, alg));
    r = normTraceConj(rq(0, 1, 0, 0, alg));
    CHECK(r.n == Rational(-2));
    CHECK(r.tr == Rational(0));
    CHECK(r.conj == rq(0, -1, 0, 0, alg));
    CHECK(norm(rq(1, 1, 1, 0, alg)) == Rational(-6));
}

TEST_CASE("algebra properties") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> d(-9, 9);
    for (auto [a, b] : {std::pair{2, 5}, {7, 11}, {-1, -1}, {3, 13}}) {
        const auto alg = QuatAlgebra::create(a, b);
        for (int it = 0; it < 300; ++it) {
            IntegralQuaternion x(d(rng), d(rng), d(rng), d(rng), alg);
            IntegralQuaternion y(d(rng), d(rng), d(rng), d(rng), alg);
            IntegralQuaternion z(d(rng), d(rng), d(rng), d(rng), alg);
            CHECK((x * y) * z == x * (y * z));
            CHECK(norm(x * y) == norm(x) * norm(y));
            CHECK(conj(x * y) == conj(y) * conj(x));
            CHECK(x * conj(x) == IntegralQuaternion::scalar(norm(x), alg));
            CHECK(x + conj(x) == IntegralQuaternion::scalar(trace(x), alg));
        }
    }
}

TEST_CASE("reduced discriminant") {
    const auto alg = QuatAlgebra::create(2, 5);
    const auto canon = canonicalOrder(alg);
    CHECK(reducedDiscriminant(canon) == 40);
    CHECK(reducedDiscriminant(matrixUnitOrder()) == 1);

    const auto sub = makeOrder(alg, {rq(1, 0, 0, 0, alg), rq(0, 2, 0, 0, alg), rq(0, 0, 1, 0, alg), rq(0, 0, 0, 2, alg)});
    CHECK(reducedDiscriminant(sub) == 160);

    CHECK_FALSE(isMaximal(canon));
    CHECK(isMaximal(matrixUnitOrder()));

    // d(O) = 4ab for Z[1, i, j, ij]
    for (auto [a, b] : {std::pair{2, 5}, {3, 7}, {7, 11}, {5, 13}}) {
        CHECK(reducedDiscriminant(canonicalOrder(QuatAlgebra::create(a, b))) == 4 * a * b);
    }
}

TEST_CASE("order validation") {
    const auto alg = QuatAlgebra::create(2, 5);
    // misses 1
    CHECK_THROWS_AS(makeOrder(alg, {rq(2, 0, 0, 0, alg), rq(0, 1, 0, 0, alg), rq(0, 0, 1, 0, alg), rq(0, 0, 0, 1, alg)}),
                    std::invalid_argument);
    // not closed: i * j = ij is missing from Z[1, i, j, 2ij]
    CHECK_THROWS_AS(makeOrder(alg, {rq(1, 0, 0, 0, alg), rq(0, 1, 0, 0, alg), rq(0, 0, 1, 0, alg), rq(0, 0, 0, 2, alg)}),
                    std::invalid_argument);
    // rank 3
    CHECK_THROWS_AS(makeOrder(alg, {rq(1, 0, 0, 0, alg), rq(0, 1, 0, 0, alg), rq(0, 1, 0, 0, alg), rq(0, 0, 0, 1, alg)}),
                    std::invalid_argument);
}

TEST_CASE("index discriminant relation") {
    const auto alg = QuatAlgebra::create(3, 7);
    const auto d = reducedDiscriminant(canonicalOrder(alg));
    for (std::int64_t s : {1, 2, 3}) {
        for (std::int64_t t : {1, 2, 5}) {
            const auto o = makeOrder(alg, {rq(1, 0, 0, 0, alg), rq(0, s, 0, 0, alg), rq(0, 0, t, 0, alg), rq(0, 0, 0, s * t, alg)});
            CHECK(reducedDiscriminant(o) == s * s * t * t * d);
        }
    }
}

TEST_CASE("ternary form") {
    const auto f52 = ternaryForm(canonicalOrder(QuatAlgebra::create(2, 5)));
    CHECK(f52.diagonal);
    CHECK(equivalentDiagonal(f52, {-1, 2, 5}));
    const auto f117 = ternaryForm(canonicalOrder(QuatAlgebra::create(7, 11)));
    CHECK(equivalentDiagonal(f117, {-1, 7, 11}));
    for (std::int64_t p : {5, 13, 17, 29, 37}) {
        for (std::int64_t a = 2; a < p; ++a) {
            if (arith::legendre(a, p) != -1) continue;
            CHECK(equivalentDiagonal(ternaryForm(canonicalOrder(QuatAlgebra::create(a, p))), {-1, a, p}));
        }
    }
}

TEST_CASE("eichler invariant") {
    CHECK(eichlerInvariant(TernaryForm::diagonalForm(-1, 2, 5), 5) == -1);
    CHECK(eichlerInvariant(TernaryForm::diagonalForm(-1, 7, 11), 7) == 1);
    CHECK(eichlerInvariant(TernaryForm::diagonalForm(-1, 7, 11), 2) == 0);
    CHECK(eichlerInvariant(TernaryForm::diagonalForm(-1, 2, 5), 2) == 0);
    CHECK_THROWS_AS(eichlerInvariant(TernaryForm::diagonalForm(-1, 2, 5), 3), UnsupportedError);
    CHECK_THROWS_AS(eichlerInvariant(TernaryForm::diagonalForm(-1, 15, 5), 5), UnsupportedError);
    // the computed form gives the same answer
    const auto raw = ternaryForm(canonicalOrder(QuatAlgebra::create(7, 11)));
    CHECK(eichlerInvariant(raw, 7) == 1);
    CHECK(eichlerInvariant(raw, 11) == -1);
}

TEST_CASE("local norm index") {
    CHECK(localNormIndex(5, 2) == 1);
    CHECK(localNormIndex(2, 2) == 1);
    CHECK(localNormIndex(2, 4) == 2);
    CHECK(localNormIndex(2, 12) == 2);
    CHECK(localNormIndex(2, 6) == 1);
}

TEST_CASE("unit norm index") {
    CHECK(unitNormIndex(2, 2, 5) == 1);
    CHECK(unitNormIndex(5, 2, 5) == 1);
    CHECK(unitNormIndex(2, 8, 11) == 2);
    CHECK(unitNormIndex(2, 8, 13) == 1);
    CHECK(unitNormIndex(2, 12, 17) == 1);
    CHECK(unitNormIndex(2, 20, 23) == 2);
    for (std::int64_t p : arith::oddPrimesUpTo(37)) {
        for (std::int64_t a = 2; a < p; ++a) {
            CHECK(unitNormIndex(2, a, p) == ((a % 4 == 0 && p % 4 == 3) ? 2 : 1));
            CHECK(unitNormIndex(p, a, p) == 1);
            // agrees with the stated rule whenever 4 does not divide a
            if (a % 4 != 0) CHECK(unitNormIndex(2, a, p) == localNormIndex(2, a));
        }
    }
    CHECK_THROWS_AS(unitNormIndex(4, 2, 5), std::invalid_argument);
}

TEST_CASE("eichler volume") {
    CHECK(eichlerVolume(10) == Rational(4, 3));
    CHECK(eichlerVolume(6) == Rational(2, 3));
    CHECK(eichlerVolume(22) == Rational(10, 3));
    CHECK(eichlerVolume(26) == Rational(4));
    CHECK_THROWS_AS(eichlerVolume(1), UnsupportedError);
    CHECK_THROWS_AS(eichlerVolume(30), UnsupportedError);
    CHECK_THROWS_AS(eichlerVolume(12), std::invalid_argument);
}

TEST_CASE("johansson volume examples") {
    auto r = johanssonVolume(5, 2);
    CHECK(r.dO == 40);
    REQUIRE(r.localFactors.size() == 2);
    CHECK(r.localFactors[0].q == 2);
    CHECK(r.localFactors[0].factor == Rational(3, 4));
    CHECK(r.localFactors[1].q == 5);
    CHECK(r.localFactors[1].factor == Rational(4, 5));
    CHECK(r.volOverPi == Rational(8));
    CHECK(r.dH == 10);
    CHECK(r.unitIndex == 6);

    r = johanssonVolume(13, 2);
    CHECK(r.dO == 104);
    CHECK(r.volOverPi == Rational(24));
    CHECK(r.dH == 26);
    CHECK(r.unitIndex == 6);

    r = johanssonVolume(11, 7);
    CHECK(r.dO == 308);
    CHECK(r.volOverPi == Rational(80));
    CHECK(r.dH == 22);
    CHECK(r.unitIndex == 24);
    REQUIRE(r.localFactors.size() == 3);
    CHECK(r.localFactors[1].q == 7);
    CHECK(r.localFactors[1].eichler == 1);
    CHECK(r.localFactors[1].factor == Rational(8, 7));
    CHECK(r.localFactors[2].factor == Rational(10, 11));
}

TEST_CASE("johansson volume against the form oracle") {
    for (std::int64_t p : arith::oddPrimesUpTo(37)) {
        if (p < 5) continue;
        for (std::int64_t a = 2; a < p; ++a) {
            if (arith::legendre(a, p) != -1) continue;
            const auto r = johanssonVolume(p, a);
            const auto [n, d] = oracleVolume(p, a);
            CAPTURE(p);
            CAPTURE(a);
            CHECK(r.volOverPi == Rational(n, d));
            CHECK(r.maximalVolOverPi == eichlerVolume(r.dH));
            CHECK(r.unitIndex >= 1);
            CHECK(r.volOverPi == r.maximalVolOverPi * Rational(r.unitIndex));
        }
    }
}

TEST_CASE("group parameters are validated") {
    CHECK_THROWS_AS(johanssonVolume(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(johanssonVolume(9, 2), std::invalid_argument);
    CHECK_THROWS_AS(johanssonVolume(5, 7), std::invalid_argument);
    CHECK_THROWS_AS(johanssonVolume(2, 1), std::invalid_argument);
}
