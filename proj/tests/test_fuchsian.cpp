#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/LU>

#include "quatgroup/errors.hpp"
#include "quatgroup/fuchsian.hpp"
#include "quatgroup/quat.hpp"

using namespace quatgroup;
using namespace quatgroup::fuchsian;
using enumerate::UnitElement;

namespace {

constexpr double kPi = std::numbers::pi;

const FordDomain& domain52() {
    static const FordDomain d = fordDomain(5, 2);
    return d;
}

// Hyperbolic distance in the upper half-plane.
double upperDistance(Complex z, Complex w) {
    return std::acosh(1 + std::norm(z - w) / (2 * z.imag() * w.imag()));
}

// The same element as a real 2x2 matrix acting on the upper half-plane.
Complex upperAction(const UnitElement& g, Complex z) {
    const double sa = std::sqrt(double(g.a)), sp = std::sqrt(double(g.p));
    const double A = g.x[0] + g.x[1] * sa, B = sp * (g.x[2] + g.x[3] * sa);
    const double C = sp * (g.x[2] - g.x[3] * sa), D = g.x[0] - g.x[1] * sa;
    return (A * z + B) / (C * z + D);
}

int indexOf(const FordDomain& d, const UnitElement& g) {
    for (std::size_t k = 0; k < d.generators.size(); ++k) {
        if (d.generators[k] == g) return static_cast<int>(k);
    }
    return -1;
}

void checkDomain(const FordDomain& d) {
    REQUIRE(d.certified);
    const auto vol = quat::johanssonVolume(d.p, d.a);
    CHECK(std::abs(d.area - vol.volOverPi.toDouble() * kPi) <= 1e-6 * d.area);
    CHECK(d.arcsCovered);
    const auto n = d.sides.size();
    CHECK(n % 2 == 0);
    CHECK(d.vertices.size() == n);
    CHECK(d.angles.size() == n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = d.sides[k];
        const int j = s.pairedWith;
        REQUIRE(j >= 0);
        CHECK(j != static_cast<int>(k));
        CHECK(d.sides[j].pairedWith == static_cast<int>(k));
        // the owner carries its side onto the partner side, reversing it
        const auto m = toDisc(s.owner);
        CHECK(std::abs(m.apply(s.start) - d.sides[j].end) < 1e-8);
        CHECK(std::abs(m.apply(s.end) - d.sides[j].start) < 1e-8);
        CHECK(std::abs(s.end - d.vertices[k]) < 1e-12);
        CHECK(std::abs(s.start) < 1);
        // the side lies on the owner's isometric circle
        const auto c = isometricCircle(m);
        CHECK(std::abs(std::abs(s.start - c.center) - c.radius) < 1e-9);
        CHECK(std::abs(std::abs(s.end - c.center) - c.radius) < 1e-9);
    }
    if (d.p % 4 == 1) {
        CHECK(d.torsionFree);
        const double half = d.area / (2 * kPi);
        CHECK(std::abs(half - std::round(half)) < 1e-6);
        CHECK(std::llround(half) % 2 == 0);
        REQUIRE(d.genus.has_value());
        CHECK(*d.genus == std::llround(d.area / (4 * kPi)) + 1);
    }
}

}  // namespace

TEST_CASE("disc matrices") {
    auto m = toDisc(UnitElement::identity(5, 2));
    CHECK(m.alpha == Complex(1, 0));
    CHECK(m.beta == Complex(0, 0));

    const auto g = UnitElement::create({3, 2, 0, 0}, 5, 2);
    m = toDisc(g);
    CHECK(m.alpha.real() == doctest::Approx(3));
    CHECK(m.beta.real() == doctest::Approx(2.828427).epsilon(1e-6));
    CHECK(std::abs(m.matrix().determinant() - Complex(1, 0)) < 1e-12);

    const auto all = enumerate::elementsUpTo(13, 2, 5000);
    bool sawElliptic = false;
    for (const auto& h : all) {
        const auto hm = toDisc(h);
        CHECK(std::abs(std::norm(hm.alpha) - std::norm(hm.beta) - 1) < 1e-9 * h.alphaSq);
        if (h.x[0] == 0) {
            sawElliptic = true;
            CHECK(hm.alpha.real() == 0);
        }
    }
    // p = 1 mod 4: no x0 = 0 solutions at all
    CHECK_FALSE(sawElliptic);
}

TEST_CASE("classification") {
    CHECK((classify(UnitElement::create({3, 2, 0, 0}, 5, 2)) == Kind::Hyperbolic));
    CHECK_THROWS_AS(classify(UnitElement::identity(5, 2)), std::invalid_argument);
    int elliptic = 0;
    for (const auto& g : enumerate::elementsUpTo(11, 2, 3000)) {
        if (g.isIdentity()) continue;
        const auto k = classify(g);
        CHECK((k == Kind::Elliptic) == (g.x[0] == 0));
        elliptic += k == Kind::Elliptic;
    }
    CHECK(elliptic > 0);
    CHECK(toString(Kind::Elliptic) == "elliptic");
}

TEST_CASE("isometric circle") {
    const auto g = UnitElement::create({3, 2, 0, 0}, 5, 2);
    const auto c = isometricCircle(toDisc(g));
    CHECK(c.radius == doctest::Approx(0.353553).epsilon(1e-6));
    CHECK(c.center.real() == doctest::Approx(-1.060660).epsilon(1e-6));
    CHECK(std::abs(c.center.imag()) < 1e-15);
    CHECK(c.centerModSq == Rational(9, 8));
    CHECK(c.radiusSq == Rational(1, 8));
    CHECK(c.centerModSq - c.radiusSq == Rational(1));
    CHECK(c.halfWidth == doctest::Approx(0.339837).epsilon(1e-6));
    CHECK_THROWS_AS(isometricCircle(toDisc(UnitElement::identity(5, 2))), std::invalid_argument);
}

TEST_CASE("isometric circle properties") {
    for (const auto& g : enumerate::elementsUpTo(5, 2, 10000)) {
        if (g.isIdentity()) continue;
        const auto m = toDisc(g);
        const auto c = isometricCircle(m);
        CHECK(c.centerModSq - c.radiusSq == Rational(1));
        const double nearest = std::abs(c.center) - c.radius;
        CHECK(std::abs(hutchinsonHeight(g) - (1 - nearest * nearest)) < 1e-12);
        // g is a Euclidean isometry from its circle onto the circle of g^-1
        const auto ci = isometricCircle(toDisc(enumerate::inverse(g)));
        for (double t : {0.3, 1.7, 4.0}) {
            const Complex z = c.center + c.radius * std::polar(1.0, t);
            CHECK(std::abs(std::abs(m.apply(z) - ci.center) - ci.radius) < 1e-9);
        }
    }
}

TEST_CASE("hutchinson height") {
    CHECK(hutchinsonHeight(UnitElement::identity(5, 2)) == 1);
    CHECK(hutchinsonHeight(UnitElement::create({3, 2, 0, 0}, 5, 2)) == doctest::Approx(0.5));
    double last = 1;
    for (const auto& g : enumerate::elementsUpTo(5, 2, 10000)) {
        const double h = hutchinsonHeight(g);
        CHECK(h <= last);
        last = h;
    }
}

TEST_CASE("chalk norm is 2 cosh of the displacement of i") {
    CHECK(chalkNorm(UnitElement::identity(5, 2)) == 2);
    CHECK(chalkNorm(UnitElement::create({3, 2, 0, 0}, 5, 2)) == 34);
    const auto all = enumerate::elementsUpTo(5, 2, 40000);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(1, all.size() - 1);
    const Complex i(0, 1);
    for (int it = 0; it < 100; ++it) {
        const auto& g = all[pick(rng)];
        const double rho = upperDistance(i, upperAction(g, i));
        CHECK(std::abs(double(chalkNorm(g)) - 2 * std::cosh(rho)) <= 1e-9 * chalkNorm(g));
    }
}

TEST_CASE("radius and norm") {
    for (const auto& g : enumerate::elementsUpTo(13, 2, 10000)) {
        if (g.isIdentity()) continue;
        const double r = isometricCircle(toDisc(g)).radius;
        CHECK(radiusFromNorm(double(g.chalkNorm()), RadiusRelation::Exact) == doctest::Approx(r).epsilon(1e-12));
        CHECK(radiusFromNorm(double(g.chalkNorm()), RadiusRelation::Literal) ==
              doctest::Approx(r / 2).epsilon(1e-12));
    }
}

TEST_CASE("arc covering") {
    IsometricCircle c;
    c.midAngle = 0;
    c.halfWidth = 2.2;
    std::vector<IsometricCircle> arcs{c};
    CHECK_FALSE(arcsCoverCircle(arcs, 1e-9));
    c.midAngle = kPi;
    arcs.push_back(c);
    CHECK(arcsCoverCircle(arcs, 1e-9));
    arcs[1].halfWidth = kPi - 2.2;  // touching ends only
    CHECK_FALSE(arcsCoverCircle(arcs, 1e-9));
    CHECK_FALSE(arcsCoverCircle({}, 1e-9));
}

TEST_CASE("gauss bonnet") {
    std::vector<double> ideal{0, 0, 0};
    CHECK(gaussBonnetArea(ideal) == doctest::Approx(kPi));
    std::vector<double> octagon(8, kPi / 4);
    CHECK(gaussBonnetArea(octagon) == doctest::Approx(4 * kPi));
}

TEST_CASE("ford domain (5,2)") {
    const auto& d = domain52();
    checkDomain(d);
    CHECK(d.area == doctest::Approx(8 * kPi).epsilon(1e-6));
    CHECK(domainArea(d) == doctest::Approx(8 * kPi).epsilon(1e-6));
    CHECK(d.genus == 3);
    const auto g = UnitElement::create({3, 2, 0, 0}, 5, 2);
    const int k = indexOf(d, g);
    const int ki = indexOf(d, enumerate::inverse(g));
    REQUIRE(k >= 0);
    REQUIRE(ki >= 0);
    for (const auto& s : d.sides) {
        if (s.owner == g) CHECK(d.sides[s.pairedWith].owner == enumerate::inverse(g));
    }
    // they own the two largest circles
    for (const auto& h : d.generators) CHECK(h.alphaSq >= g.alphaSq);
}

TEST_CASE("ford domain (13,2)") {
    const auto d = fordDomain(13, 2);
    checkDomain(d);
    CHECK(d.area == doctest::Approx(24 * kPi).epsilon(1e-6));
    CHECK(d.genus == 7);
}

TEST_CASE("more torsion-free domains") {
    for (auto [p, a] : {std::pair{5, 3}, {13, 5}, {13, 6}, {17, 3}, {17, 12}}) {
        CAPTURE(p);
        CAPTURE(a);
        checkDomain(fordDomain(p, a));
    }
}

TEST_CASE("area equals the covolume on the whole grid") {
    for (std::int64_t p : arith::oddPrimesUpTo(23)) {
        if (p < 5) continue;
        for (std::int64_t a = 2; a < p; ++a) {
            if (arith::legendre(a, p) != -1) continue;
            CAPTURE(p);
            CAPTURE(a);
            checkDomain(fordDomain(p, a));
        }
    }
}

TEST_CASE("domains with elliptic elements") {
    for (auto [p, a] : {std::pair{7, 3}, {11, 7}, {11, 2}, {19, 2}}) {
        CAPTURE(p);
        CAPTURE(a);
        const auto d = fordDomain(p, a);
        checkDomain(d);
        CHECK_FALSE(d.genus.has_value());
    }
}

TEST_CASE("level cap below closure") {
    DomainOptions opts;
    opts.hardLevelCap = 5;
    const auto d = fordDomain(5, 2, opts);
    CHECK_FALSE(d.certified);
    CHECK_FALSE(d.message.empty());
    CHECK_THROWS_AS(domainArea(d), std::logic_error);
    CHECK_THROWS_AS(fordDomain(5, 4), std::invalid_argument);
}

TEST_CASE("reduction") {
    const auto& d = domain52();
    auto r = reduceToDomain(UnitElement::identity(5, 2), d);
    CHECK(r.success);
    CHECK(r.word.empty());

    for (std::size_t k = 0; k < d.generators.size(); ++k) {
        const auto& g = d.generators[k];
        r = reduceToDomain(g, d);
        REQUIRE(r.success);
        REQUIRE(r.word.size() == 1);
        CHECK(d.generators[r.word[0]] == enumerate::inverse(g));
    }

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, d.generators.size() - 1);
    for (int it = 0; it < 50; ++it) {
        const auto& g1 = d.generators[pick(rng)];
        const auto& g2 = d.generators[pick(rng)];
        const auto e = enumerate::multiply(enumerate::multiply(g1, g2), g1);
        r = reduceToDomain(e, d);
        REQUIRE(r.success);
        CHECK(enumerate::multiply(evaluateWord(r.word, d), e).isIdentity());
    }
}

TEST_CASE("bounds") {
    auto c = chalkBounds(13, 10);
    CHECK(c.n == 10);
    CHECK(c.a1 == doctest::Approx(2 + 40 / kPi));
    CHECK(c.a1 == doctest::Approx(14.7324).epsilon(1e-5));
    CHECK(c.growthFactor == doctest::Approx(9.0 / 64 * 169.0 / 100 * 10));

    CHECK(johanssonEpsilon(Rational(4, 3), 3) == doctest::Approx(0.0590994).epsilon(1e-6));
    CHECK(johanssonEpsilon(Rational(8), 3) == doctest::Approx(0.0125207).epsilon(1e-4));
    CHECK(johanssonEpsilon(Rational(1, 1000000), 3) == doctest::Approx(1.0 / 3).epsilon(1e-2));
    CHECK_THROWS_AS(johanssonEpsilon(Rational(8), 2), std::invalid_argument);

    auto b = entryBounds(5, 2, 0.0125207);
    CHECK(b.x0Max == 79);
    CHECK(b.x2Max == 35);
    b = entryBounds(5, 2, 1);
    CHECK(b.x0Max == 1);
    CHECK(b.x1Max == 0);
    CHECK(b.x2Max == 0);
    CHECK(b.x3Max == 0);
    CHECK_THROWS_AS(entryBounds(5, 2, 0), std::invalid_argument);

    const auto exact = entryBounds(5, 2, 0.0125207, RadiusRelation::Exact);
    const auto literal = entryBounds(5, 2, 0.0125207, RadiusRelation::Literal);
    CHECK(literal.normBound < exact.normBound);
    CHECK(literal.x0Max <= exact.x0Max);

    const auto rep = boundReport(5, 2, 3);
    CHECK(rep.x0Max == 79);
    CHECK(rep.chalk.n == 10);
}
