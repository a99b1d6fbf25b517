#include "quatgroup/enumerate.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace quatgroup::enumerate {

std::array<std::int64_t, 4> signNormalize(std::array<std::int64_t, 4> x) {
    for (auto c : x) {
        if (c == 0) continue;
        if (c < 0) {
            for (auto& y : x) y = -y;
        }
        break;
    }
    return x;
}

std::int64_t reducedNorm(const std::array<std::int64_t, 4>& x, std::int64_t p, std::int64_t a) {
    return x[0] * x[0] - a * x[1] * x[1] - p * x[2] * x[2] + a * p * x[3] * x[3];
}

UnitElement UnitElement::create(std::array<std::int64_t, 4> x, std::int64_t p, std::int64_t a) {
    if (reducedNorm(x, p, a) != 1) {
        throw std::invalid_argument("element does not satisfy the norm equation x0^2 - a x1^2 - p x2^2 + ap x3^2 = 1");
    }
    UnitElement g;
    g.x = signNormalize(x);
    g.p = p;
    g.a = a;
    g.alphaSq = x[0] * x[0] + a * p * x[3] * x[3];
    g.betaSq = a * x[1] * x[1] + p * x[2] * x[2];
    return g;
}

UnitElement UnitElement::identity(std::int64_t p, std::int64_t a) { return create({1, 0, 0, 0}, p, a); }

quat::IntegralQuaternion UnitElement::quaternion() const {
    quat::IntegralQuaternion q;
    q.x << x[0], x[1], x[2], x[3];
    q.a = a;
    q.b = p;
    return q;
}

std::string UnitElement::str() const {
    std::ostringstream os;
    os << "(" << x[0] << "," << x[1] << "," << x[2] << "," << x[3] << ")";
    return os.str();
}

namespace {

std::array<std::int64_t, 4> product(const UnitElement& g, const UnitElement& h) {
    // (a, p / Q): i^2 = a, j^2 = p
    const auto& x = g.x;
    const auto& y = h.x;
    const std::int64_t a = g.a, b = g.p;
    return {x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3],
            x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
            x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
            x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]};
}

}  // namespace

UnitElement multiply(const UnitElement& g, const UnitElement& h) {
    if (g.p != h.p || g.a != h.a) throw std::invalid_argument("elements of different groups");
    return UnitElement::create(product(g, h), g.p, g.a);
}

UnitElement inverse(const UnitElement& g) { return UnitElement::create({g.x[0], -g.x[1], -g.x[2], -g.x[3]}, g.p, g.a); }

std::int64_t productAlphaSq(const UnitElement& g, const UnitElement& h) {
    const auto z = product(g, h);
    return z[0] * z[0] + g.a * g.p * z[3] * z[3];
}

std::vector<std::pair<std::int64_t, std::int64_t>> binaryRepresentations(std::int64_t c1, std::int64_t c2,
                                                                         std::int64_t m) {
    if (c1 < 1 || c2 < 1) throw std::invalid_argument("binary form coefficients must be positive");
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    if (m < 0) return out;
    for (std::int64_t v = 0; c2 * v * v <= m; ++v) {
        const std::int64_t rest = m - c2 * v * v;
        if (rest % c1 != 0) continue;
        std::int64_t u = 0;
        if (arith::isSquare(rest / c1, &u)) out.emplace_back(u, v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

using Pairs = std::vector<std::pair<std::int64_t, std::int64_t>>;

// Emits every sign choice of (x0, x1, x2, x3) built from nonnegative
// alpha-part (x0, x3) and beta-part (x1, x2), normalized and deduplicated.
void combineLevel(std::int64_t p, std::int64_t a, const Pairs& alphaParts, const Pairs& betaParts,
                  std::vector<UnitElement>& out) {
    std::vector<std::array<std::int64_t, 4>> xs;
    for (const auto& [x0, x3] : alphaParts) {
        for (const auto& [x1, x2] : betaParts) {
            for (int s = 0; s < 16; ++s) {
                std::array<std::int64_t, 4> x{x0, x1, x2, x3};
                bool redundant = false;
                for (int k = 0; k < 4; ++k) {
                    if (s >> k & 1) {
                        if (x[k] == 0) redundant = true;
                        x[k] = -x[k];
                    }
                }
                if (!redundant) xs.push_back(signNormalize(x));
            }
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (const auto& x : xs) out.push_back(UnitElement::create(x, p, a));
}

}  // namespace

std::vector<UnitElement> elementsAtLevel(std::int64_t p, std::int64_t a, std::int64_t m) {
    std::vector<UnitElement> out;
    if (m < 1) return out;
    combineLevel(p, a, binaryRepresentations(1, a * p, m), binaryRepresentations(a, p, m - 1), out);
    return out;
}

std::vector<UnitElement> elementsUpTo(std::int64_t p, std::int64_t a, std::int64_t mMax) {
    quat::validateGroupParameters(p, a);
    if (mMax < 1) throw std::invalid_argument("mMax must be at least 1");
    std::vector<UnitElement> out{UnitElement::identity(p, a)};
    LevelStream stream(p, a);
    LevelStream::Level level;
    while (stream.next(mMax, level)) {
        out.insert(out.end(), level.elements.begin(), level.elements.end());
    }
    return out;
}

std::vector<UnitElement> gammaZeroFilter(const std::vector<UnitElement>& elements, std::int64_t a) {
    std::vector<UnitElement> out;
    std::copy_if(elements.begin(), elements.end(), std::back_inserter(out),
                 [a](const UnitElement& g) { return arith::mod(g.x[2], a) == 0; });
    return out;
}

LevelStream::LevelStream(std::int64_t p, std::int64_t a) : p_(p), a_(a) { quat::validateGroupParameters(p, a); }

void LevelStream::fillBlock(std::int64_t cap) {
    const std::int64_t lo = lo_;
    const std::int64_t hi = std::min(cap + 1, lo + std::max<std::int64_t>(4096, lo / 2));
    const std::int64_t ap = a_ * p_;

    // (m, first, second) for alpha parts x0^2 + ap x3^2 = m and beta parts
    // a x1^2 + p x2^2 = m - 1, m in [lo, hi)
    using Rep = std::array<std::int64_t, 3>;
    std::vector<Rep> alpha;
    for (std::int64_t x3 = 0; ap * x3 * x3 < hi; ++x3) {
        const std::int64_t base = ap * x3 * x3;
        std::int64_t x0 = lo > base ? arith::isqrt(lo - base - 1) + 1 : 0;
        for (; x0 * x0 + base < hi; ++x0) alpha.push_back({x0 * x0 + base, x0, x3});
    }
    std::vector<Rep> beta;
    for (std::int64_t x2 = 0; p_ * x2 * x2 + 1 < hi; ++x2) {
        const std::int64_t base = p_ * x2 * x2 + 1;
        std::int64_t x1 = lo > base ? arith::isqrt((lo - base - 1) / a_) : 0;
        for (; a_ * x1 * x1 + base < hi; ++x1) {
            const std::int64_t m = a_ * x1 * x1 + base;
            if (m >= lo) beta.push_back({m, x1, x2});
        }
    }
    std::sort(alpha.begin(), alpha.end());
    std::sort(beta.begin(), beta.end());

    pending_.clear();
    cursor_ = 0;
    std::size_t i = 0, j = 0;
    while (i < alpha.size() && j < beta.size()) {
        const std::int64_t m = alpha[i][0];
        if (m < beta[j][0]) {
            ++i;
            continue;
        }
        if (beta[j][0] < m) {
            ++j;
            continue;
        }
        Pairs alphaParts, betaParts;
        for (; i < alpha.size() && alpha[i][0] == m; ++i) alphaParts.emplace_back(alpha[i][1], alpha[i][2]);
        for (; j < beta.size() && beta[j][0] == m; ++j) betaParts.emplace_back(beta[j][1], beta[j][2]);
        Level level;
        level.m = m;
        combineLevel(p_, a_, alphaParts, betaParts, level.elements);
        pending_.push_back(std::move(level));
    }
    lo_ = hi;
}

bool LevelStream::next(std::int64_t cap, Level& out) {
    while (cursor_ >= pending_.size()) {
        reached_ = lo_ - 1;
        if (lo_ > cap) return false;
        fillBlock(cap);
    }
    if (pending_[cursor_].m > cap) {
        reached_ = std::max(reached_, cap);
        return false;
    }
    out = std::move(pending_[cursor_++]);
    reached_ = out.m;
    return true;
}

}  // namespace quatgroup::enumerate
