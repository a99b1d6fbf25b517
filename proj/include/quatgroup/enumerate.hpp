#pragma once

// Elements of Gamma_{p,a} = { x0^2 - a x1^2 - p x2^2 + ap x3^2 = 1 } in
// Hutchinson order: ascending |alpha|^2 = x0^2 + ap x3^2.

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "quatgroup/quat.hpp"

namespace quatgroup::enumerate {

/// Norm-one integral quaternion of (a,p / Q), identified with its negative.
struct UnitElement {
    std::array<std::int64_t, 4> x{1, 0, 0, 0};
    std::int64_t p = 0;
    std::int64_t a = 0;
    std::int64_t alphaSq = 1;  // x0^2 + ap x3^2
    std::int64_t betaSq = 0;   // a x1^2 + p x2^2

    /// Sign-normalizes x and checks the norm equation; throws
    /// std::invalid_argument if the norm is not 1.
    static UnitElement create(std::array<std::int64_t, 4> x, std::int64_t p, std::int64_t a);
    static UnitElement identity(std::int64_t p, std::int64_t a);

    bool isIdentity() const { return alphaSq == 1; }
    std::int64_t chalkNorm() const { return 2 * (alphaSq + betaSq); }
    quat::IntegralQuaternion quaternion() const;
    std::string str() const;

    friend bool operator==(const UnitElement& g, const UnitElement& h) {
        return g.x == h.x && g.p == h.p && g.a == h.a;
    }
    /// Hutchinson order, ties broken lexicographically on x.
    friend bool operator<(const UnitElement& g, const UnitElement& h) {
        if (g.alphaSq != h.alphaSq) return g.alphaSq < h.alphaSq;
        return g.x < h.x;
    }
    friend std::ostream& operator<<(std::ostream& os, const UnitElement& g) { return os << g.str(); }
};

/// x0 > 0, or x0 = 0 and the first nonzero of x1, x2, x3 positive.
std::array<std::int64_t, 4> signNormalize(std::array<std::int64_t, 4> x);

std::int64_t reducedNorm(const std::array<std::int64_t, 4>& x, std::int64_t p, std::int64_t a);

UnitElement multiply(const UnitElement& g, const UnitElement& h);
UnitElement inverse(const UnitElement& g);
/// alphaSq of g*h without normalizing or validating.
std::int64_t productAlphaSq(const UnitElement& g, const UnitElement& h);

/// All (u, v) >= 0 with c1 u^2 + c2 v^2 = m, sorted lexicographically.
std::vector<std::pair<std::int64_t, std::int64_t>> binaryRepresentations(std::int64_t c1, std::int64_t c2,
                                                                         std::int64_t m);

/// Sign-normalized elements with alphaSq = m, sorted.
std::vector<UnitElement> elementsAtLevel(std::int64_t p, std::int64_t a, std::int64_t m);

/// Sign-normalized elements with alphaSq <= mMax in Hutchinson order.
std::vector<UnitElement> elementsUpTo(std::int64_t p, std::int64_t a, std::int64_t mMax);

/// Keeps the elements with x2 = 0 (mod a).
std::vector<UnitElement> gammaZeroFilter(const std::vector<UnitElement>& elements, std::int64_t a);

/// Lazily produces the nonempty levels m = 2, 3, ... in increasing order.
/// Representations are solved block-wise, so the amortized cost per level
/// is O(sqrt(m) / blockSize + representations).
class LevelStream {
public:
    struct Level {
        std::int64_t m = 0;
        std::vector<UnitElement> elements;
    };

    LevelStream(std::int64_t p, std::int64_t a);

    /// Next nonempty level with m <= cap, or false once cap is exceeded.
    bool next(std::int64_t cap, Level& out);

    /// Largest m whose elements have all been handed out.
    std::int64_t levelReached() const { return reached_; }

private:
    void fillBlock(std::int64_t cap);

    std::int64_t p_;
    std::int64_t a_;
    std::int64_t lo_ = 2;  // first level of the pending block
    std::int64_t reached_ = 1;
    std::vector<Level> pending_;
    std::size_t cursor_ = 0;
};

}  // namespace quatgroup::enumerate
