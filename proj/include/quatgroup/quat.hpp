#pragma once

// Quaternion algebras (a,b / Q), orders given by a Z-basis, reduced
// discriminants, Eichler invariants and the covolume formulas for the unit
// groups of orders in indefinite algebras.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "quatgroup/arith.hpp"
#include "quatgroup/rational.hpp"

namespace quatgroup::quat {

/// (a,b / Q) with basis 1, i, j, ij where i^2 = a, j^2 = b, ij = -ji.
struct QuatAlgebra {
    std::int64_t a = 1;
    std::int64_t b = 1;
    arith::Ramification ram;

    /// Throws std::invalid_argument for a == 0 or b == 0.
    static QuatAlgebra create(std::int64_t a, std::int64_t b);

    std::int64_t discriminant() const { return ram.discriminant; }
    bool definite() const { return ram.definite; }
    bool split() const { return ram.places.empty(); }

    friend bool operator==(const QuatAlgebra& x, const QuatAlgebra& y) { return x.a == y.a && x.b == y.b; }
};

class AlgebraMismatch : public std::invalid_argument {
public:
    AlgebraMismatch() : std::invalid_argument("quaternions belong to different algebras") {}
};

/// x0 + x1 i + x2 j + x3 ij in (a,b / Q). Scalar is an exact ring type
/// (std::int64_t for integral elements, Rational otherwise).
template <typename Scalar>
struct Quaternion {
    using Coords = Eigen::Matrix<Scalar, 4, 1>;

    Coords x = Coords::Zero();
    std::int64_t a = 1;
    std::int64_t b = 1;

    Quaternion() = default;
    Quaternion(const Coords& coords, std::int64_t alg_a, std::int64_t alg_b) : x(coords), a(alg_a), b(alg_b) {}
    Quaternion(Scalar x0, Scalar x1, Scalar x2, Scalar x3, const QuatAlgebra& alg) : a(alg.a), b(alg.b) {
        x << x0, x1, x2, x3;
    }

    static Quaternion scalar(Scalar s, const QuatAlgebra& alg) { return Quaternion(s, Scalar(0), Scalar(0), Scalar(0), alg); }
    static Quaternion basis(int k, const QuatAlgebra& alg) {
        Quaternion q = scalar(Scalar(0), alg);
        q.x(k) = Scalar(1);
        return q;
    }

    bool sameAlgebra(const Quaternion& o) const { return a == o.a && b == o.b; }

    friend bool operator==(const Quaternion& p, const Quaternion& q) { return p.sameAlgebra(q) && p.x == q.x; }
};

using RationalQuaternion = Quaternion<Rational>;
using IntegralQuaternion = Quaternion<std::int64_t>;

template <typename Scalar>
Quaternion<Scalar> operator+(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
    if (!p.sameAlgebra(q)) throw AlgebraMismatch();
    return {p.x + q.x, p.a, p.b};
}

template <typename Scalar>
Quaternion<Scalar> operator-(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
    if (!p.sameAlgebra(q)) throw AlgebraMismatch();
    return {p.x - q.x, p.a, p.b};
}

template <typename Scalar>
Quaternion<Scalar> operator*(const Scalar& s, const Quaternion<Scalar>& q) {
    return {q.x * s, q.a, q.b};
}

template <typename Scalar>
Quaternion<Scalar> multiply(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
    if (!p.sameAlgebra(q)) throw AlgebraMismatch();
    const Scalar a(p.a), b(p.b);
    const auto& x = p.x;
    const auto& y = q.x;
    typename Quaternion<Scalar>::Coords z;
    z(0) = x(0) * y(0) + a * x(1) * y(1) + b * x(2) * y(2) - a * b * x(3) * y(3);
    z(1) = x(0) * y(1) + x(1) * y(0) - b * x(2) * y(3) + b * x(3) * y(2);
    z(2) = x(0) * y(2) + x(2) * y(0) + a * x(1) * y(3) - a * x(3) * y(1);
    z(3) = x(0) * y(3) + x(3) * y(0) + x(1) * y(2) - x(2) * y(1);
    return {z, p.a, p.b};
}

template <typename Scalar>
Quaternion<Scalar> operator*(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
    return multiply(p, q);
}

template <typename Scalar>
Quaternion<Scalar> conj(const Quaternion<Scalar>& q) {
    typename Quaternion<Scalar>::Coords z = -q.x;
    z(0) = q.x(0);
    return {z, q.a, q.b};
}

template <typename Scalar>
Scalar trace(const Quaternion<Scalar>& q) {
    return Scalar(2) * q.x(0);
}

template <typename Scalar>
Scalar norm(const Quaternion<Scalar>& q) {
    const Scalar a(q.a), b(q.b);
    const auto& x = q.x;
    return x(0) * x(0) - a * x(1) * x(1) - b * x(2) * x(2) + a * b * x(3) * x(3);
}

template <typename Scalar>
struct NormTraceConj {
    Scalar n;
    Scalar tr;
    Quaternion<Scalar> conj;
};

template <typename Scalar>
NormTraceConj<Scalar> normTraceConj(const Quaternion<Scalar>& q) {
    return {norm(q), trace(q), conj(q)};
}

RationalQuaternion toRational(const IntegralQuaternion& q);

using Gram4 = Eigen::Matrix<Rational, 4, 4>;

/// A Z-lattice of full rank that is a ring with 1, with its trace form.
struct OrderBasis {
    QuatAlgebra algebra;
    std::array<RationalQuaternion, 4> basis;
    Gram4 gram;  // tr(x_i x_j)

    /// Coordinates of q with respect to the basis (rational in general).
    Eigen::Matrix<Rational, 4, 1> coordinates(const RationalQuaternion& q) const;
    bool contains(const RationalQuaternion& q) const;
};

/// Validates the order axioms (1 in the lattice, closed under products,
/// integral traces and norms). Throws std::invalid_argument if any fails.
OrderBasis makeOrder(const QuatAlgebra& algebra, const std::array<RationalQuaternion, 4>& basis);

/// Z[1, i, j, ij].
OrderBasis canonicalOrder(const QuatAlgebra& algebra);

/// M(2,Z) inside (1,1 / Q) via the matrix units e11, e12, e21, e22.
OrderBasis matrixUnitOrder();

/// Positive d with d^2 = |det tr(x_i x_j)|. Throws InconsistencyError when
/// the determinant is not the square of an integer.
std::int64_t reducedDiscriminant(const OrderBasis& order);

bool isMaximal(const OrderBasis& order);

/// d(O) * n(X1 b1 + X2 b2 + X3 b3) for the trace-dual basis elements b_k
/// of the non-unit basis vectors.
struct TernaryForm {
    std::array<Rational, 3> coefficients{};  // diagonal entries
    Eigen::Matrix<Rational, 3, 3> gram;      // full symmetric matrix of the form
    bool diagonal = true;

    static TernaryForm diagonalForm(std::int64_t c1, std::int64_t c2, std::int64_t c3);
    std::string str() const;
};

/// Requires order.basis[0] == 1 (as for the canonical order).
TernaryForm ternaryForm(const OrderBasis& order);

/// Eichler invariant e(O_q) read off the diagonal ternary form.
/// q = 2 gives 0. For odd q exactly two coefficients must be q-units and the
/// third divisible by q; then e = (-c_i c_j / q). Throws UnsupportedError otherwise.
int eichlerInvariant(const TernaryForm& form, std::int64_t q);

/// The stated rule for [Z_q^* : n(O_q^*)], canonical order of (a, p), a < p:
/// 1 for odd q; for q = 2, 2 if 4 | a and 1 otherwise. It overcounts when
/// 4 | a and p = 1 mod 4 (then -p is a unit norm = 3 mod 4); see unitNormIndex.
int localNormIndex(std::int64_t q, std::int64_t a);

/// [Z_q^* : n(O_q^*)] for O = Z_q[1, i, j, ij] in (a, b), computed from the
/// norms of units modulo 8 (q = 2) or q. Used by johanssonVolume.
int unitNormIndex(std::int64_t q, std::int64_t a, std::int64_t b);

/// Covolume / pi of the unit group of a maximal order: (1/3) prod_{q | dH} (q - 1).
Rational eichlerVolume(std::int64_t dH);

struct LocalFactor {
    std::int64_t q = 0;
    int eichler = 0;
    int normIndex = 1;
    Rational factor;  // (q^2 - 1) / (normIndex q (q - e))
};

LocalFactor makeLocalFactor(std::int64_t q, int eichler, int normIndex);

/// (1/3) d(O) prod_q factor_q.
Rational johanssonProduct(std::int64_t dO, const std::vector<LocalFactor>& factors);

struct VolumeReport {
    std::int64_t p = 0;
    std::int64_t a = 0;
    std::int64_t dO = 0;
    std::vector<LocalFactor> localFactors;
    Rational volOverPi;
    std::int64_t dH = 0;
    std::vector<arith::Place> ramified;
    Rational maximalVolOverPi;
    std::int64_t unitIndex = 0;
    TernaryForm rawForm;    // as computed from the dual basis
    TernaryForm normalizedForm;  // -X1^2 + a X2^2 + p X3^2
};

/// Throws std::invalid_argument unless p is an odd prime, 1 < a < p and
/// (a/p) = -1.
void validateGroupParameters(std::int64_t p, std::int64_t a);

/// Covolume of Gamma_{p,a}, the norm-one units of Z[1,i,j,ij] in (a,p / Q).
VolumeReport johanssonVolume(std::int64_t p, std::int64_t a);

}  // namespace quatgroup::quat
