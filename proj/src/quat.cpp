#include "quatgroup/quat.hpp"

#include <numeric>
#include <sstream>

#include <Eigen/LU>

#include "quatgroup/errors.hpp"

namespace quatgroup::quat {

QuatAlgebra QuatAlgebra::create(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) throw std::invalid_argument("quaternion algebra needs nonzero a and b");
    return {a, b, arith::ramification(a, b)};
}

RationalQuaternion toRational(const IntegralQuaternion& q) {
    RationalQuaternion r;
    r.a = q.a;
    r.b = q.b;
    for (int k = 0; k < 4; ++k) r.x(k) = Rational(q.x(k));
    return r;
}

namespace {

Eigen::Matrix<Rational, 4, 4> coordinateMatrix(const std::array<RationalQuaternion, 4>& basis) {
    Eigen::Matrix<Rational, 4, 4> m;
    for (int k = 0; k < 4; ++k) m.col(k) = basis[k].x;
    return m;
}

bool allIntegral(const Eigen::Matrix<Rational, 4, 1>& v) {
    for (int k = 0; k < 4; ++k) {
        if (!v(k).isInteger()) return false;
    }
    return true;
}

}  // namespace

Eigen::Matrix<Rational, 4, 1> OrderBasis::coordinates(const RationalQuaternion& q) const {
    const auto m = coordinateMatrix(basis);
    if (m.determinant() == Rational(0)) throw std::invalid_argument("basis is not of full rank");
    return m.inverse() * q.x;
}

bool OrderBasis::contains(const RationalQuaternion& q) const { return allIntegral(coordinates(q)); }

OrderBasis makeOrder(const QuatAlgebra& algebra, const std::array<RationalQuaternion, 4>& basis) {
    OrderBasis o;
    o.algebra = algebra;
    o.basis = basis;
    for (const auto& e : basis) {
        if (e.a != algebra.a || e.b != algebra.b) throw AlgebraMismatch();
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) o.gram(i, j) = trace(multiply(basis[i], basis[j]));
    }

    if (!o.contains(RationalQuaternion::scalar(Rational(1), algebra))) {
        throw std::invalid_argument("lattice does not contain 1");
    }
    for (const auto& x : basis) {
        if (!trace(x).isInteger() || !norm(x).isInteger()) {
            throw std::invalid_argument("basis element is not integral");
        }
        for (const auto& y : basis) {
            if (!o.contains(multiply(x, y))) throw std::invalid_argument("lattice is not closed under multiplication");
        }
    }
    return o;
}

OrderBasis canonicalOrder(const QuatAlgebra& algebra) {
    std::array<RationalQuaternion, 4> basis;
    for (int k = 0; k < 4; ++k) basis[k] = RationalQuaternion::basis(k, algebra);
    return makeOrder(algebra, basis);
}

OrderBasis matrixUnitOrder() {
    // i -> diag(1,-1), j -> [[0,1],[1,0]], ij -> [[0,1],[-1,0]]
    const auto alg = QuatAlgebra::create(1, 1);
    const Rational h(1, 2);
    const Rational z(0);
    return makeOrder(alg, {RationalQuaternion(h, h, z, z, alg), RationalQuaternion(z, z, h, h, alg),
                           RationalQuaternion(z, z, h, -h, alg), RationalQuaternion(h, -h, z, z, alg)});
}

std::int64_t reducedDiscriminant(const OrderBasis& order) {
    const Rational det = abs(order.gram.determinant());
    std::int64_t root = 0;
    if (!det.isInteger() || !arith::isSquare(det.num(), &root) || root == 0) {
        throw InconsistencyError("trace determinant " + det.str() + " is not a nonzero integer square");
    }
    return root;
}

bool isMaximal(const OrderBasis& order) { return reducedDiscriminant(order) == order.algebra.discriminant(); }

TernaryForm TernaryForm::diagonalForm(std::int64_t c1, std::int64_t c2, std::int64_t c3) {
    TernaryForm f;
    f.coefficients = {Rational(c1), Rational(c2), Rational(c3)};
    f.gram = Eigen::Matrix<Rational, 3, 3>::Zero();
    for (int k = 0; k < 3; ++k) f.gram(k, k) = f.coefficients[k];
    return f;
}

std::string TernaryForm::str() const {
    std::ostringstream os;
    os << "(" << coefficients[0] << ", " << coefficients[1] << ", " << coefficients[2] << ")";
    if (!diagonal) os << " [not diagonal]";
    return os.str();
}

TernaryForm ternaryForm(const OrderBasis& order) {
    if (!(order.basis[0] == RationalQuaternion::scalar(Rational(1), order.algebra))) {
        throw std::invalid_argument("ternary form needs a basis starting with 1");
    }
    const Rational d(reducedDiscriminant(order));
    // trace-dual basis: b_k = sum_l (G^-1)_{kl} x_l
    const Gram4 inv = order.gram.inverse();
    std::array<RationalQuaternion, 3> dual;
    for (int k = 1; k < 4; ++k) {
        RationalQuaternion bk = RationalQuaternion::scalar(Rational(0), order.algebra);
        for (int l = 0; l < 4; ++l) bk = bk + inv(k, l) * order.basis[l];
        dual[k - 1] = bk;
    }

    TernaryForm f;
    f.diagonal = true;
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            // polarization of the norm: n(x, y) = tr(x conj(y)) / 2
            f.gram(k, l) = d * trace(multiply(dual[k], conj(dual[l]))) / Rational(2);
            if (k != l && f.gram(k, l) != Rational(0)) f.diagonal = false;
        }
        f.coefficients[k] = f.gram(k, k);
    }
    return f;
}

int eichlerInvariant(const TernaryForm& form, std::int64_t q) {
    if (!arith::isPrime(q)) throw std::invalid_argument("eichler invariant needs a prime");
    if (q == 2) return 0;
    if (!form.diagonal) throw UnsupportedError("eichler invariant needs a diagonal form");

    std::vector<std::int64_t> units;
    int divisible = 0;
    for (const auto& c : form.coefficients) {
        if (!c.isInteger() || c.num() == 0) throw UnsupportedError("form coefficients must be nonzero integers");
        if (c.num() % q == 0) {
            ++divisible;
        } else {
            units.push_back(c.num());
        }
    }
    if (divisible != 1) {
        throw UnsupportedError("form " + form.str() + " has " + std::to_string(divisible) +
                               " coefficients divisible by " + std::to_string(q));
    }
    const auto prod = static_cast<__int128>(units[0]) * units[1];
    return arith::legendre(static_cast<std::int64_t>(-prod % q), q);
}

int localNormIndex(std::int64_t q, std::int64_t a) {
    if (q != 2) return 1;
    return a % 4 == 0 ? 2 : 1;
}

int unitNormIndex(std::int64_t q, std::int64_t a, std::int64_t b) {
    if (!arith::isPrime(q)) throw std::invalid_argument("norm index needs a prime");
    // n(O_q^*) contains the squares, so it is determined by its image in
    // (Z/m)^* with m = 8 for q = 2 and m = q otherwise
    const std::int64_t m = q == 2 ? 8 : q;
    const std::int64_t A = arith::mod(a, m), B = arith::mod(b, m);
    std::vector<bool> hit(m, false);
    for (std::int64_t x0 = 0; x0 < m; ++x0)
        for (std::int64_t x1 = 0; x1 < m; ++x1)
            for (std::int64_t x2 = 0; x2 < m; ++x2)
                for (std::int64_t x3 = 0; x3 < m; ++x3) {
                    hit[arith::mod(x0 * x0 - A * x1 * x1 - B * x2 * x2 + A * B % m * x3 * x3, m)] = true;
                }
    std::int64_t units = 0, norms = 0;
    for (std::int64_t r = 1; r < m; ++r) {
        if (std::gcd(r, m) != 1) continue;
        ++units;
        norms += hit[r];
    }
    if (norms == 0 || units % norms != 0) throw InconsistencyError("unit norms do not form a subgroup");
    return static_cast<int>(units / norms);
}

Rational eichlerVolume(std::int64_t dH) {
    if (dH == 1) throw UnsupportedError("split algebra: unit group is not cocompact");
    const auto f = arith::factorize(dH);
    if (dH < 1 || !f.squarefree()) throw std::invalid_argument("discriminant must be a positive squarefree integer");
    if (f.factors.size() % 2 != 0) throw UnsupportedError("odd number of ramified primes: definite algebra");
    Rational v(1, 3);
    for (auto q : f.primes()) v *= Rational(q - 1);
    return v;
}

LocalFactor makeLocalFactor(std::int64_t q, int eichler, int normIndex) {
    return {q, eichler, normIndex, Rational(q * q - 1) / Rational(normIndex * q * (q - eichler))};
}

Rational johanssonProduct(std::int64_t dO, const std::vector<LocalFactor>& factors) {
    Rational v = Rational(dO) / Rational(3);
    for (const auto& f : factors) v *= f.factor;
    return v;
}

void validateGroupParameters(std::int64_t p, std::int64_t a) {
    if (p < 3 || !arith::isPrime(p)) throw std::invalid_argument("p must be an odd prime");
    if (a <= 1 || a >= p) throw std::invalid_argument("a must satisfy 1 < a < p");
    if (arith::legendre(a, p) != -1) {
        throw std::invalid_argument("a = " + std::to_string(a) + " is not a quadratic nonresidue mod " + std::to_string(p));
    }
}

VolumeReport johanssonVolume(std::int64_t p, std::int64_t a) {
    validateGroupParameters(p, a);
    const auto alg = QuatAlgebra::create(a, p);
    const auto order = canonicalOrder(alg);

    VolumeReport r;
    r.p = p;
    r.a = a;
    r.dO = reducedDiscriminant(order);
    if (r.dO != 4 * a * p) throw InconsistencyError("canonical order discriminant differs from 4ap");
    r.rawForm = ternaryForm(order);
    r.normalizedForm = TernaryForm::diagonalForm(-1, a, p);

    for (auto q : arith::factorize(r.dO).primes()) {
        r.localFactors.push_back(makeLocalFactor(q, eichlerInvariant(r.rawForm, q), unitNormIndex(q, a, p)));
    }
    r.volOverPi = johanssonProduct(r.dO, r.localFactors);

    r.dH = alg.discriminant();
    r.ramified = alg.ram.places;
    r.maximalVolOverPi = eichlerVolume(r.dH);
    const Rational index = r.volOverPi / r.maximalVolOverPi;
    if (!index.isInteger() || index.num() < 1) {
        throw InconsistencyError("unit index " + index.str() + " is not a positive integer");
    }
    r.unitIndex = index.num();
    return r;
}

}  // namespace quatgroup::quat
