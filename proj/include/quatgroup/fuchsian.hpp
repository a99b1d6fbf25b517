#pragma once

// Disc-model geometry of Gamma_{p,a}: SU(1,1) matrices, isometric circles,
// the Ford fundamental domain and reduction of elements to generator words.
//
// Coordinates. An element g acts on the unit disc through
//     [ alpha        conj(beta)  ]     alpha = x0 + i x3 sqrt(ap)
//     [ beta         conj(alpha) ]     beta  = x1 sqrt(a) + i x2 sqrt(p)
// Its isometric circle is orthogonal to the unit circle, so in the Klein
// model it is the chord Re(k conj(center)) = 1. Writing k = (s/sqrt(a),
// t/sqrt(p)) turns that chord into the integer line u s + v t = B with
//     u = p x2 x3 - x0 x1,   v = x0 x2 + a x1 x3,   B = betaSq,
// and the disc into the ellipse p s^2 + a t^2 < ap. The Ford domain is
// therefore an intersection of integer half-planes u s + v t <= B and all
// of its vertices are rational; it is computed exactly.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "quatgroup/enumerate.hpp"
#include "quatgroup/rational.hpp"

namespace quatgroup::fuchsian {

using enumerate::UnitElement;
using Complex = std::complex<double>;

struct DiscMatrix {
    UnitElement element;
    Complex alpha;
    Complex beta;
    std::int64_t alphaSq = 1;
    std::int64_t betaSq = 0;

    Eigen::Matrix2cd matrix() const;
    /// Moebius action z -> (alpha z + conj(beta)) / (beta z + conj(alpha)).
    Complex apply(Complex z) const;
};

DiscMatrix toDisc(const UnitElement& g);

enum class Kind { Hyperbolic, Elliptic };
std::string toString(Kind k);

/// Throws std::invalid_argument for the identity; a trace of +-2 on a
/// non-identity element contradicts the absence of parabolics and raises
/// InconsistencyError.
Kind classify(const UnitElement& g);

struct IsometricCircle {
    UnitElement owner;
    Complex center;
    double radius = 0;
    Rational centerModSq;  // alphaSq / betaSq
    Rational radiusSq;     // 1 / betaSq
    double midAngle = 0;   // arg(center)
    double halfWidth = 0;  // arccos(1 / |center|): the circle cuts the boundary in this arc
};

/// Throws std::invalid_argument when beta = 0 (no isometric circle).
IsometricCircle isometricCircle(const DiscMatrix& m);

/// F(z_g) = 2 / (|alpha| + 1), the value of 1 - |z|^2 at the point of the
/// isometric circle nearest to 0 (1 for the identity).
double hutchinsonHeight(const UnitElement& g);

/// ||g|| = sum of squared entries of the SL(2,R) matrix = 2 (alphaSq + betaSq).
std::int64_t chalkNorm(const UnitElement& g);

/// Whether the union of open arcs (midAngle +- halfWidth) covers the whole
/// circle, each arc shrunk by `tolerance`.
bool arcsCoverCircle(std::span<const IsometricCircle> circles, double tolerance);

/// (n - 2) pi - sum of interior angles of a geodesic n-gon (curvature -1).
double gaussBonnetArea(std::span<const double> interiorAngles);

// ---------------------------------------------------------------------------
// Exact half-plane polygon in scaled Klein coordinates.

struct KleinLine {
    std::int64_t u = 0;
    std::int64_t v = 0;
    std::int64_t rhs = 0;  // half-plane u s + v t <= rhs
};

KleinLine kleinLine(const UnitElement& g);

/// Rational point (s, t) = (sNum, tNum) / den, den > 0.
struct KleinPoint {
    i128 sNum = 0;
    i128 tNum = 0;
    i128 den = 1;
};

/// Exact convex polygon { u_k s + v_k t <= rhs_k }. Starts as a box around the
/// disc whose sides carry owner index -1.
class HalfPlanePolygon {
public:
    struct Side {
        KleinLine line;
        int owner = -1;
    };

    HalfPlanePolygon(std::int64_t p, std::int64_t a);

    /// Intersects with the half-plane; returns whether the polygon changed.
    bool clip(const KleinLine& line, int owner);

    const std::vector<Side>& sides() const { return sides_; }
    /// vertices()[k] joins sides()[k] and sides()[k + 1].
    const std::vector<KleinPoint>& vertices() const { return vertices_; }

    /// No box side survives and every vertex lies strictly inside the disc.
    bool compact() const;
    /// Whether (m - 1) / m >= max |k|^2 over the vertices, i.e. every circle
    /// at level >= m stays outside the polygon.
    bool levelIsBeyondReach(std::int64_t m) const;
    double maxKleinRadiusSq() const;

    Complex toPoincare(const KleinPoint& q) const;

private:
    void rebuildVertices();

    std::int64_t p_;
    std::int64_t a_;
    std::vector<Side> sides_;
    std::vector<KleinPoint> vertices_;
};

// ---------------------------------------------------------------------------

struct DomainOptions {
    double tolerance = 1e-9;
    std::int64_t hardLevelCap = 1'000'000'000;
};

struct DomainSide {
    UnitElement owner;
    Complex start;  // counterclockwise around 0
    Complex end;
    int pairedWith = -1;
    int generator = -1;  // index into FordDomain::generators
};

struct FordDomain {
    std::int64_t p = 0;
    std::int64_t a = 0;
    std::vector<DomainSide> sides;
    std::vector<Complex> vertices;  // vertices[k] is the end of sides[k]
    std::vector<double> angles;     // interior angle at vertices[k]
    double area = 0;
    std::optional<int> genus;
    std::vector<UnitElement> generators;  // distinct side owners
    std::int64_t levelReached = 1;
    std::int64_t closureLevel = 0;  // first level at which the region was compact
    std::size_t elementsSeen = 0;
    bool arcsCovered = false;
    bool torsionFree = true;
    bool certified = false;
    std::string message;
};

/// Ford domain of Gamma_{p,a}: consumes elements in Hutchinson order, clips
/// the region outside their isometric circles, and stops once no circle of a
/// later level can reach the region. Throws std::invalid_argument for bad
/// (p, a). A level cap hit before certification yields certified = false.
FordDomain fordDomain(std::int64_t p, std::int64_t a, const DomainOptions& opts = {});

/// Gauss-Bonnet area of a closed domain; throws std::logic_error otherwise.
double domainArea(const FordDomain& domain);

struct Reduction {
    bool success = false;
    /// Generator indices; generators[word[0]] * ... * generators[word.back()] * e = +-1.
    std::vector<int> word;
    std::string message;
};

/// Ford reduction: repeatedly left-multiplies by the side owner that most
/// decreases alphaSq until the identity is reached.
Reduction reduceToDomain(const UnitElement& e, const FordDomain& domain, std::size_t maxSteps = 100'000);

/// Product generators[word[0]] * ... * generators[word.back()].
UnitElement evaluateWord(std::span<const int> word, const FordDomain& domain);

// ---------------------------------------------------------------------------
// Generator bounds.

struct ChalkBounds {
    std::int64_t n = 0;        // number of generators <= 6 + phi(dH)
    double a1 = 0;             // ||A_1|| < 2 + 4 N / pi
    double growthFactor = 0;   // ||A_{i+1}|| < growthFactor ||A_i||^5 (crude)
};

ChalkBounds chalkBounds(std::int64_t p, std::int64_t dH);

/// (1/k) (1 - sqrt(V / (2 + V))), V = volOverPi * pi. Throws for k <= 2.
double johanssonEpsilon(const Rational& volOverPi, double k);

/// Which radius/norm relation turns the radius cutoff into entry bounds:
/// Exact uses r = 2 / sqrt(||g|| - 2) (what the group actually satisfies),
/// Literal uses r = 1 / sqrt(||g|| - 2).
enum class RadiusRelation { Exact, Literal };

struct BoundReport {
    ChalkBounds chalk;
    double johanssonEps = 0;
    double normBound = 0;  // ||g|| < normBound for generators
    std::int64_t x0Max = 0;
    std::int64_t x1Max = 0;
    std::int64_t x2Max = 0;
    std::int64_t x3Max = 0;
};

/// Coordinate bounds implied by radius > eps.
BoundReport entryBounds(std::int64_t p, std::int64_t a, double eps, RadiusRelation relation = RadiusRelation::Exact);

/// Everything at once, with eps = johanssonEpsilon(volume of Gamma_{p,a}, k).
BoundReport boundReport(std::int64_t p, std::int64_t a, double k, RadiusRelation relation = RadiusRelation::Exact);

/// Radius bound as a function of the Chalk norm.
double radiusFromNorm(double chalkNorm, RadiusRelation relation);

}  // namespace quatgroup::fuchsian
