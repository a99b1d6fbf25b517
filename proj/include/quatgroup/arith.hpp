#pragma once

// Elementary number theory over Q: primes, factorization, quadratic
// residues, Hilbert symbols and the ramification of (a,b / Q).

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace quatgroup::arith {

/// A place of Q: a rational prime or the real place.
class Place {
public:
    static Place infinite() { return Place(); }
    /// Throws std::invalid_argument unless `prime` is prime.
    static Place finite(std::int64_t prime);

    bool isInfinite() const { return prime_ == 0; }
    std::int64_t prime() const { return prime_; }
    std::string str() const { return isInfinite() ? "inf" : std::to_string(prime_); }

    // The real place sorts first.
    friend auto operator<=>(const Place&, const Place&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Place& v) { return os << v.str(); }

private:
    Place() = default;
    std::int64_t prime_ = 0;
};

struct PrimePower {
    std::int64_t prime;
    int exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// value = sign * prod(prime^exponent), primes strictly increasing.
struct Factorization {
    std::int64_t value = 1;
    int sign = 1;
    std::vector<PrimePower> factors;

    std::vector<std::int64_t> primes() const;
    bool squarefree() const;
};

inline constexpr std::int64_t kDefaultTrialBound = 1'000'000;

bool isPrime(std::int64_t n);

/// Trial division by d <= bound. Throws std::invalid_argument for 0 and
/// std::range_error when a cofactor above bound^2 would be left uncertified.
Factorization factorize(std::int64_t n, std::int64_t bound = kDefaultTrialBound);

/// Exponent of the prime q in n (n != 0).
int valuation(std::int64_t n, std::int64_t q);

std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t powMod(std::int64_t base, std::int64_t exp, std::int64_t m);

/// Legendre symbol (a/p) for an odd prime p.
int legendre(std::int64_t a, std::int64_t p);

/// Hilbert symbol (a,b)_v over Q.
int hilbertSymbol(std::int64_t a, std::int64_t b, const Place& v);

/// Places where the product formula can fail to be trivial: inf, 2 and primes of ab.
std::vector<Place> candidatePlaces(std::int64_t a, std::int64_t b);

struct Ramification {
    std::vector<Place> places;  // sorted, infinite place first when present
    std::int64_t discriminant = 1;  // product of finite ramified primes
    bool definite = false;

    bool isRamifiedAt(const Place& v) const;
};

Ramification ramification(std::int64_t a, std::int64_t b);

std::int64_t eulerPhi(std::int64_t n);

/// Smallest prime p <= limit with p = 5 (mod 8) and (p/q) = -1 for every odd
/// prime q | d. Throws NotFoundError if there is none.
std::int64_t findCompanionPrime(std::int64_t d, std::int64_t limit);

/// Odd primes up to n (inclusive).
std::vector<std::int64_t> oddPrimesUpTo(std::int64_t n);

/// floor(sqrt(n)) computed exactly for n >= 0.
std::int64_t isqrt(std::int64_t n);
bool isSquare(std::int64_t n, std::int64_t* root = nullptr);

}  // namespace quatgroup::arith
