#include "quatgroup/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "quatgroup/errors.hpp"

namespace quatgroup::fuchsian {

namespace {

constexpr double kPi = std::numbers::pi;

i128 mul(i128 x, i128 y) {
    i128 r;
    if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("128-bit overflow in polygon arithmetic");
    return r;
}

i128 add(i128 x, i128 y) {
    i128 r;
    if (__builtin_add_overflow(x, y, &r)) throw OverflowError("128-bit overflow in polygon arithmetic");
    return r;
}

int sign(i128 x) { return (x > 0) - (x < 0); }

long double toLong(i128 x) { return static_cast<long double>(x); }

}  // namespace

Eigen::Matrix2cd DiscMatrix::matrix() const {
    Eigen::Matrix2cd m;
    m << alpha, std::conj(beta), beta, std::conj(alpha);
    return m;
}

Complex DiscMatrix::apply(Complex z) const { return (alpha * z + std::conj(beta)) / (beta * z + std::conj(alpha)); }

DiscMatrix toDisc(const UnitElement& g) {
    const auto& x = g.x;
    const double sa = std::sqrt(static_cast<double>(g.a));
    const double sp = std::sqrt(static_cast<double>(g.p));
    DiscMatrix m;
    m.element = g;
    m.alpha = {static_cast<double>(x[0]), static_cast<double>(x[3]) * sa * sp};
    m.beta = {static_cast<double>(x[1]) * sa, static_cast<double>(x[2]) * sp};
    m.alphaSq = g.alphaSq;
    m.betaSq = g.betaSq;
    return m;
}

std::string toString(Kind k) { return k == Kind::Hyperbolic ? "hyperbolic" : "elliptic"; }

Kind classify(const UnitElement& g) {
    if (g.isIdentity()) throw std::invalid_argument("the identity has no type");
    const std::int64_t tr = 2 * g.x[0];
    if (tr == 2 || tr == -2) {
        throw InconsistencyError("non-identity element " + g.str() +
                                 " with trace +-2: unit groups of indefinite division algebras have no parabolics");
    }
    return std::abs(tr) > 2 ? Kind::Hyperbolic : Kind::Elliptic;
}

IsometricCircle isometricCircle(const DiscMatrix& m) {
    if (m.betaSq == 0) throw std::invalid_argument("element fixes 0 and has no isometric circle");
    IsometricCircle c;
    c.owner = m.element;
    c.center = -std::conj(m.alpha) / m.beta;
    c.radius = 1.0 / std::sqrt(static_cast<double>(m.betaSq));
    c.centerModSq = Rational(m.alphaSq, m.betaSq);
    c.radiusSq = Rational(1, m.betaSq);
    c.midAngle = std::arg(c.center);
    c.halfWidth = std::acos(std::sqrt(static_cast<double>(m.betaSq) / static_cast<double>(m.alphaSq)));
    return c;
}

double hutchinsonHeight(const UnitElement& g) { return 2.0 / (std::sqrt(static_cast<double>(g.alphaSq)) + 1.0); }

std::int64_t chalkNorm(const UnitElement& g) { return g.chalkNorm(); }

bool arcsCoverCircle(std::span<const IsometricCircle> circles, double tolerance) {
    const double twoPi = 2 * kPi;
    std::vector<std::pair<double, double>> arcs;
    for (const auto& c : circles) {
        const double w = c.halfWidth - tolerance;
        if (w <= 0) continue;
        double s = std::fmod(c.midAngle - w, twoPi);
        if (s < 0) s += twoPi;
        for (double shift : {-twoPi, 0.0, twoPi}) arcs.emplace_back(s + shift, s + shift + 2 * w);
    }
    std::sort(arcs.begin(), arcs.end());
    // open arcs: angle x is covered iff start < x < end for some arc
    double reach = -1;
    for (const auto& [s, e] : arcs) {
        if (s < 0) reach = std::max(reach, e);
    }
    if (reach <= 0) return false;
    for (const auto& [s, e] : arcs) {
        if (s < 0) continue;
        if (reach >= twoPi) return true;
        if (s >= reach) return false;
        reach = std::max(reach, e);
    }
    return reach > twoPi;
}

double gaussBonnetArea(std::span<const double> interiorAngles) {
    double sum = 0;
    for (double t : interiorAngles) sum += t;
    return (static_cast<double>(interiorAngles.size()) - 2.0) * kPi - sum;
}

KleinLine kleinLine(const UnitElement& g) {
    const auto& x = g.x;
    return {g.p * x[2] * x[3] - x[0] * x[1], x[0] * x[2] + g.a * x[1] * x[3], g.betaSq};
}

namespace {

KleinPoint intersect(const KleinLine& l1, const KleinLine& l2) {
    KleinPoint q;
    q.den = mul(l1.u, l2.v) - mul(l2.u, l1.v);
    if (q.den == 0) throw InconsistencyError("parallel adjacent sides");
    q.sNum = mul(l1.rhs, l2.v) - mul(l2.rhs, l1.v);
    q.tNum = mul(l1.u, l2.rhs) - mul(l2.u, l1.rhs);
    if (q.den < 0) {
        q.den = -q.den;
        q.sNum = -q.sNum;
        q.tNum = -q.tNum;
    }
    const i128 g = gcd128(gcd128(q.sNum, q.tNum), q.den);
    if (g > 1) {
        q.sNum /= g;
        q.tNum /= g;
        q.den /= g;
    }
    return q;
}

// sign of u s + v t - rhs at q
int sideOf(const KleinLine& l, const KleinPoint& q) {
    return sign(add(add(mul(l.u, q.sNum), mul(l.v, q.tNum)), -mul(l.rhs, q.den)));
}

// Sign of x/y - z/w for x, z >= 0 and y, w > 0, by continued fraction
// expansion so nothing is multiplied.
int compareFractions(i128 x, i128 y, i128 z, i128 w) {
    int flip = 1;
    while (true) {
        const i128 qx = x / y, qz = z / w;
        if (qx != qz) return qx < qz ? -flip : flip;
        x -= qx * y;
        z -= qz * w;
        if (x == 0 || z == 0) {
            if (x == z) return 0;
            return x == 0 ? -flip : flip;
        }
        // x/y < z/w  <=>  y/x > w/z
        std::swap(x, y);
        std::swap(z, w);
        flip = -flip;
    }
}

// p s^2 + a t^2 scaled by den^2
i128 ellipseValue(const KleinPoint& q, std::int64_t p, std::int64_t a) {
    return add(mul(p, mul(q.sNum, q.sNum)), mul(a, mul(q.tNum, q.tNum)));
}

}  // namespace

HalfPlanePolygon::HalfPlanePolygon(std::int64_t p, std::int64_t a) : p_(p), a_(a) {
    // box |s| <= a, |t| <= p around the ellipse p s^2 + a t^2 < ap
    sides_ = {{{1, 0, a}, -1}, {{0, 1, p}, -1}, {{-1, 0, a}, -1}, {{0, -1, p}, -1}};
    rebuildVertices();
}

void HalfPlanePolygon::rebuildVertices() {
    const std::size_t n = sides_.size();
    vertices_.resize(n);
    for (std::size_t k = 0; k < n; ++k) vertices_[k] = intersect(sides_[k].line, sides_[(k + 1) % n].line);
}

bool HalfPlanePolygon::clip(const KleinLine& line, int owner) {
    const std::size_t n = vertices_.size();
    std::vector<int> f(n);
    bool anyOutside = false;
    for (std::size_t k = 0; k < n; ++k) {
        f[k] = sideOf(line, vertices_[k]);
        anyOutside = anyOutside || f[k] > 0;
    }
    if (!anyOutside) return false;

    // The vertices with f >= 0 form one cyclic run i..j; the sides strictly
    // inside the run disappear and the new side joins sides i and j + 1.
    std::size_t i = 0;
    while (!(f[i] >= 0 && f[(i + n - 1) % n] < 0)) {
        if (++i == n) throw InconsistencyError("clipping line contains the whole polygon");
    }
    std::size_t j = i;
    while (f[(j + 1) % n] >= 0) j = (j + 1) % n;

    std::vector<Side> next;
    next.reserve(n + 1);
    for (std::size_t k = (j + 1) % n;; k = (k + 1) % n) {
        next.push_back(sides_[k]);
        if (k == i) break;
    }
    next.push_back({line, owner});
    sides_ = std::move(next);
    rebuildVertices();
    return true;
}

bool HalfPlanePolygon::compact() const {
    const i128 ap = static_cast<i128>(a_) * p_;
    for (const auto& s : sides_) {
        if (s.owner < 0) return false;
    }
    for (const auto& q : vertices_) {
        if (ellipseValue(q, p_, a_) >= mul(ap, mul(q.den, q.den))) return false;
    }
    return true;
}

bool HalfPlanePolygon::levelIsBeyondReach(std::int64_t m) const {
    // (m - 1)/m >= (p s^2 + a t^2) / ap for every vertex
    const i128 ap = static_cast<i128>(a_) * p_;
    for (const auto& q : vertices_) {
        if (compareFractions(m - 1, m, ellipseValue(q, p_, a_), mul(ap, mul(q.den, q.den))) < 0) return false;
    }
    return true;
}

double HalfPlanePolygon::maxKleinRadiusSq() const {
    long double best = 0;
    for (const auto& q : vertices_) {
        const long double s = toLong(q.sNum) / toLong(q.den);
        const long double t = toLong(q.tNum) / toLong(q.den);
        best = std::max(best, s * s / a_ + t * t / p_);
    }
    return static_cast<double>(best);
}

Complex HalfPlanePolygon::toPoincare(const KleinPoint& q) const {
    const long double kx = toLong(q.sNum) / toLong(q.den) / std::sqrt(static_cast<long double>(a_));
    const long double ky = toLong(q.tNum) / toLong(q.den) / std::sqrt(static_cast<long double>(p_));
    const long double r2 = kx * kx + ky * ky;
    const long double scale = 1.0L / (1.0L + std::sqrt(std::max(0.0L, 1.0L - r2)));
    return {static_cast<double>(kx * scale), static_cast<double>(ky * scale)};
}

namespace {

// Interior angle at the intersection of two isometric circles, from the
// exact identity cos(theta) = (B1 B2 - (a u1 u2 + p v1 v2)) / sqrt(B1 B2).
double interiorAngle(const KleinLine& l1, const KleinLine& l2, std::int64_t p, std::int64_t a) {
    const i128 bb = mul(l1.rhs, l2.rhs);
    const i128 n = bb - add(mul(a, mul(l1.u, l2.u)), mul(p, mul(l1.v, l2.v)));
    const i128 sin2 = bb - mul(n, n);  // sin^2(theta) * B1 B2
    if (sin2 < 0) throw InconsistencyError("adjacent sides do not intersect");
    return static_cast<double>(std::atan2(std::sqrt(toLong(sin2)), toLong(n)));
}

}  // namespace

FordDomain fordDomain(std::int64_t p, std::int64_t a, const DomainOptions& opts) {
    quat::validateGroupParameters(p, a);
    FordDomain d;
    d.p = p;
    d.a = a;
    d.torsionFree = p % 4 == 1;

    HalfPlanePolygon poly(p, a);
    enumerate::LevelStream stream(p, a);
    std::vector<UnitElement> owners;
    bool closed = false;
    enumerate::LevelStream::Level level;

    while (true) {
        if (closed && poly.levelIsBeyondReach(stream.levelReached() + 1)) {
            d.certified = true;
            break;
        }
        if (!stream.next(opts.hardLevelCap, level)) break;
        for (const auto& g : level.elements) {
            if (poly.clip(kleinLine(g), static_cast<int>(owners.size()))) owners.push_back(g);
        }
        d.elementsSeen += level.elements.size();
        if (!closed && poly.compact()) {
            closed = true;
            d.closureLevel = level.m;
        }
    }
    d.levelReached = stream.levelReached();

    // generators: distinct owners of the current sides, in side order
    std::map<std::array<std::int64_t, 4>, int> generatorIndex;
    auto generatorOf = [&](const UnitElement& g) {
        auto [it, inserted] = generatorIndex.try_emplace(g.x, static_cast<int>(d.generators.size()));
        if (inserted) d.generators.push_back(g);
        return it->second;
    };

    if (!closed) {
        for (const auto& s : poly.sides()) {
            if (s.owner >= 0) generatorOf(owners[s.owner]);
        }
        d.message = "region not closed below level cap " + std::to_string(opts.hardLevelCap);
        return d;
    }
    if (!d.certified) d.message = "level cap reached before the region was certified";

    std::vector<IsometricCircle> circles;
    const auto& sides = poly.sides();
    const auto& verts = poly.vertices();
    const std::size_t n = sides.size();
    for (std::size_t k = 0; k < n; ++k) {
        const UnitElement& g = owners[sides[k].owner];
        const auto& line = sides[k].line;
        circles.push_back(isometricCircle(toDisc(g)));
        const Complex start = poly.toPoincare(verts[(k + n - 1) % n]);
        const Complex end = poly.toPoincare(verts[k]);
        const double cornerAngle = interiorAngle(line, sides[(k + 1) % n].line, p, a);
        const int gen = generatorOf(g);
        if (g.x[0] == 0) {
            // order-two rotation: split the side at its fixed point, the
            // point of the circle nearest 0, i.e. (s, t) = (a u, p v) / alphaSq
            d.torsionFree = false;
            const KleinPoint fixed{static_cast<i128>(a) * line.u, static_cast<i128>(p) * line.v, g.alphaSq};
            const Complex mid = poly.toPoincare(fixed);
            d.sides.push_back({g, start, mid, -1, gen});
            d.vertices.push_back(mid);
            d.angles.push_back(kPi);
            d.sides.push_back({g, mid, end, -1, gen});
        } else {
            d.sides.push_back({g, start, end, -1, gen});
        }
        d.vertices.push_back(end);
        d.angles.push_back(cornerAngle);
    }
    d.arcsCovered = arcsCoverCircle(circles, opts.tolerance);

    // side pairing: the side on I(g) goes to the side on I(g^-1)
    std::map<std::array<std::int64_t, 4>, std::vector<int>> sidesByOwner;
    for (std::size_t k = 0; k < d.sides.size(); ++k) sidesByOwner[d.sides[k].owner.x].push_back(static_cast<int>(k));
    for (std::size_t k = 0; k < d.sides.size(); ++k) {
        const UnitElement& g = d.sides[k].owner;
        const auto& mine = sidesByOwner[g.x];
        if (g.x[0] == 0) {
            d.sides[k].pairedWith = mine[0] == static_cast<int>(k) ? mine[1] : mine[0];
            continue;
        }
        const auto it = sidesByOwner.find(enumerate::inverse(g).x);
        if (it == sidesByOwner.end() || it->second.size() != 1) {
            // expected for an uncertified region, which may still carry spurious sides
            if (d.certified) d.message = "side of " + g.str() + " has no partner";
            d.certified = false;
            continue;
        }
        d.sides[k].pairedWith = it->second.front();
    }

    d.area = gaussBonnetArea(d.angles);
    if (p % 4 == 1 && d.torsionFree) {
        const double g = d.area / (4 * kPi) + 1;
        if (std::abs(g - std::round(g)) < 1e-6) d.genus = static_cast<int>(std::round(g));
    }
    return d;
}

double domainArea(const FordDomain& domain) {
    if (domain.sides.empty() || domain.angles.size() != domain.sides.size()) {
        throw std::logic_error("domain is not a closed polygon");
    }
    return gaussBonnetArea(domain.angles);
}

Reduction reduceToDomain(const UnitElement& e, const FordDomain& domain, std::size_t maxSteps) {
    Reduction r;
    if (domain.generators.empty()) {
        r.message = "domain has no generators";
        return r;
    }
    UnitElement g = e;
    std::vector<int> applied;
    while (!g.isIdentity()) {
        if (applied.size() >= maxSteps) {
            r.message = "step budget exhausted";
            return r;
        }
        int best = -1;
        std::int64_t bestAlpha = g.alphaSq;
        for (std::size_t k = 0; k < domain.generators.size(); ++k) {
            const std::int64_t v = enumerate::productAlphaSq(domain.generators[k], g);
            if (v < bestAlpha) {
                bestAlpha = v;
                best = static_cast<int>(k);
            }
        }
        if (best < 0) {
            r.message = "no generator moves " + g.str() + " closer to the domain";
            return r;
        }
        g = enumerate::multiply(domain.generators[best], g);
        applied.push_back(best);
    }
    r.word.assign(applied.rbegin(), applied.rend());
    r.success = true;
    return r;
}

UnitElement evaluateWord(std::span<const int> word, const FordDomain& domain) {
    UnitElement g = UnitElement::identity(domain.p, domain.a);
    for (int k : word) g = enumerate::multiply(g, domain.generators.at(k));
    return g;
}

ChalkBounds chalkBounds(std::int64_t p, std::int64_t dH) {
    ChalkBounds c;
    c.n = 6 + arith::eulerPhi(dH);
    const double n = static_cast<double>(c.n);
    c.a1 = 2 + 4 * n / kPi;
    c.growthFactor = 9.0 / 64.0 * (static_cast<double>(p) * p) / (static_cast<double>(dH) * dH) * n;
    return c;
}

double johanssonEpsilon(const Rational& volOverPi, double k) {
    if (!(k > 2)) throw std::invalid_argument("k must be larger than 2");
    if (volOverPi.sign() <= 0) throw std::invalid_argument("volume must be positive");
    const double v = volOverPi.toDouble() * kPi;
    return (1 - std::sqrt(v / (2 + v))) / k;
}

namespace {

// largest n >= 0 with c n^2 < bound
std::int64_t largestBelow(long double c, long double bound) {
    if (bound <= 0) return 0;
    auto n = static_cast<std::int64_t>(std::floor(std::sqrt(bound / c)));
    while (n > 0 && c * n * n >= bound) --n;
    while (c * (n + 1) * (n + 1) < bound) ++n;
    return n;
}

}  // namespace

double radiusFromNorm(double norm, RadiusRelation relation) {
    const double r = 1.0 / std::sqrt(norm - 2);
    return relation == RadiusRelation::Exact ? 2 * r : r;
}

BoundReport entryBounds(std::int64_t p, std::int64_t a, double eps, RadiusRelation relation) {
    if (!(eps > 0 && eps <= 1)) throw std::invalid_argument("eps must lie in (0, 1]");
    BoundReport b;
    b.johanssonEps = eps;
    const long double inv = 1.0L / (static_cast<long double>(eps) * eps);
    // betaSq < betaBound, alphaSq = 1 + betaSq
    const long double betaBound = relation == RadiusRelation::Exact ? inv : inv / 4;
    b.normBound = static_cast<double>(2 + 4 * betaBound);
    b.x0Max = largestBelow(1, 1 + betaBound);
    b.x1Max = largestBelow(a, betaBound);
    b.x2Max = largestBelow(p, betaBound);
    b.x3Max = largestBelow(static_cast<long double>(a) * p, 1 + betaBound);
    return b;
}

BoundReport boundReport(std::int64_t p, std::int64_t a, double k, RadiusRelation relation) {
    const auto vol = quat::johanssonVolume(p, a);
    BoundReport b = entryBounds(p, a, johanssonEpsilon(vol.volOverPi, k), relation);
    b.chalk = chalkBounds(p, vol.dH);
    return b;
}

}  // namespace quatgroup::fuchsian
