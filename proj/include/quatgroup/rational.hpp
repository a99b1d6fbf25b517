#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace quatgroup {

using i128 = __int128;

/// Raised when an exact computation would leave the 64-bit range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

inline std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("rational overflow");
    return static_cast<std::int64_t>(v);
}

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Exact rational number with a 64-bit numerator and positive denominator,
/// always stored in lowest terms. Intermediate products use 128 bits.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    static Rational fromWide(i128 n, i128 d) {
        Rational r;
        r.assign(n, d);
        return r;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool isInteger() const { return den_ == 1; }
    int sign() const { return (num_ > 0) - (num_ < 0); }
    double toDouble() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "num/den", or just "num" for integers.
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    Rational operator-() const { return fromWide(-static_cast<i128>(num_), den_); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return fromWide(static_cast<i128>(x.num_) * y.den_ + static_cast<i128>(y.num_) * x.den_,
                        static_cast<i128>(x.den_) * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
    friend Rational operator*(const Rational& x, const Rational& y) {
        // cross-reduce first to keep the 128-bit products small
        const std::int64_t g1 = std::gcd(x.num_, y.den_);
        const std::int64_t g2 = std::gcd(y.num_, x.den_);
        return fromWide(static_cast<i128>(x.num_ / (g1 ? g1 : 1)) * (y.num_ / (g2 ? g2 : 1)),
                        static_cast<i128>(x.den_ / (g2 ? g2 : 1)) * (y.den_ / (g1 ? g1 : 1)));
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw std::domain_error("rational division by zero");
        return x * fromWide(y.den_, y.num_);
    }
    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    Rational& operator/=(const Rational& y) { return *this = *this / y; }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend auto operator<=>(const Rational& x, const Rational& y) {
        return static_cast<i128>(x.num_) * y.den_ <=> static_cast<i128>(y.num_) * x.den_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void assign(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const i128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        num_ = narrow(n);
        den_ = narrow(d);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace quatgroup

namespace Eigen {
template <>
struct NumTraits<quatgroup::Rational> : GenericNumTraits<quatgroup::Rational> {
    using Real = quatgroup::Rational;
    using NonInteger = quatgroup::Rational;
    using Literal = quatgroup::Rational;
    using Nested = quatgroup::Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 8,
        MulCost = 8
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen
