#include "quatgroup/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quatgroup/errors.hpp"

namespace quatgroup::arith {

Place Place::finite(std::int64_t prime) {
    if (!isPrime(prime)) throw std::invalid_argument("place must be a prime, got " + std::to_string(prime));
    Place v;
    v.prime_ = prime;
    return v;
}

std::vector<std::int64_t> Factorization::primes() const {
    std::vector<std::int64_t> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(f.prime);
    return out;
}

bool Factorization::squarefree() const {
    return std::all_of(factors.begin(), factors.end(), [](const PrimePower& f) { return f.exponent == 1; });
}

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("isqrt of negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<__int128>(r) * r > n) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool isSquare(std::int64_t n, std::int64_t* root) {
    if (n < 0) return false;
    const std::int64_t r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

bool isPrime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::int64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

Factorization factorize(std::int64_t n, std::int64_t bound) {
    if (n == 0) throw std::invalid_argument("cannot factorize 0");
    Factorization f;
    f.value = n;
    f.sign = n < 0 ? -1 : 1;
    std::int64_t m = n < 0 ? -n : n;
    for (std::int64_t d = 2; d * d <= m; d += (d == 2 ? 1 : 2)) {
        if (d > bound) throw std::range_error("factorization needs trial divisors above the bound");
        if (m % d != 0) continue;
        int e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        f.factors.push_back({d, e});
    }
    if (m > 1) f.factors.push_back({m, 1});
    return f;
}

int valuation(std::int64_t n, std::int64_t q) {
    if (n == 0) throw std::invalid_argument("valuation of 0");
    int e = 0;
    while (n % q == 0) {
        n /= q;
        ++e;
    }
    return e;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t powMod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    __int128 result = 1 % m;
    __int128 b = mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = result * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<std::int64_t>(result);
}

int legendre(std::int64_t a, std::int64_t p) {
    if (p < 3 || p % 2 == 0 || !isPrime(p)) {
        throw std::invalid_argument("legendre symbol needs an odd prime, got " + std::to_string(p));
    }
    const std::int64_t r = powMod(a, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

namespace {

// Splits n = q^k * u with q not dividing u.
std::pair<int, std::int64_t> splitPower(std::int64_t n, std::int64_t q) {
    int k = 0;
    while (n % q == 0) {
        n /= q;
        ++k;
    }
    return {k, n};
}

int epsilon2(std::int64_t u) { return static_cast<int>(mod((u - 1) / 2, 2)); }
int omega2(std::int64_t u) {
    const std::int64_t r = mod(u, 8);
    return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbertSymbol(std::int64_t a, std::int64_t b, const Place& v) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol needs nonzero arguments");
    if (v.isInfinite()) return (a < 0 && b < 0) ? -1 : 1;

    const std::int64_t q = v.prime();
    const auto [alpha, u] = splitPower(a, q);
    const auto [beta, w] = splitPower(b, q);
    if (q == 2) {
        const int e = epsilon2(u) * epsilon2(w) + alpha * omega2(w) + beta * omega2(u);
        return e % 2 == 0 ? 1 : -1;
    }
    int s = ((alpha * beta) % 2 == 1 && (q - 1) / 2 % 2 == 1) ? -1 : 1;
    if (beta % 2 == 1) s *= legendre(u, q);
    if (alpha % 2 == 1) s *= legendre(w, q);
    return s;
}

std::vector<Place> candidatePlaces(std::int64_t a, std::int64_t b) {
    std::vector<std::int64_t> primes{2};
    for (std::int64_t x : {a, b}) {
        for (auto q : factorize(x).primes()) primes.push_back(q);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    std::vector<Place> places{Place::infinite()};
    for (auto q : primes) places.push_back(Place::finite(q));
    return places;
}

bool Ramification::isRamifiedAt(const Place& v) const {
    return std::find(places.begin(), places.end(), v) != places.end();
}

Ramification ramification(std::int64_t a, std::int64_t b) {
    Ramification r;
    for (const auto& v : candidatePlaces(a, b)) {
        if (hilbertSymbol(a, b, v) == 1) continue;
        r.places.push_back(v);
        if (v.isInfinite()) {
            r.definite = true;
        } else {
            r.discriminant *= v.prime();
        }
    }
    if (r.places.size() % 2 != 0) {
        throw InconsistencyError("odd number of ramified places for (" + std::to_string(a) + "," +
                                 std::to_string(b) + ")");
    }
    return r;
}

std::int64_t eulerPhi(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("eulerPhi needs n >= 1");
    std::int64_t phi = n;
    for (const auto& f : factorize(n).factors) phi = phi / f.prime * (f.prime - 1);
    return phi;
}

std::int64_t findCompanionPrime(std::int64_t d, std::int64_t limit) {
    if (d <= 1) throw std::invalid_argument("companion prime needs d > 1");
    const auto fd = factorize(d);
    if (!fd.squarefree()) throw std::invalid_argument("companion prime needs squarefree d");

    std::vector<std::int64_t> odd;
    for (auto q : fd.primes()) {
        if (q != 2) odd.push_back(q);
    }
    for (std::int64_t p = 5; p <= limit; p += 8) {
        if (!isPrime(p)) continue;
        if (std::all_of(odd.begin(), odd.end(), [p](std::int64_t q) { return legendre(p, q) == -1; })) return p;
    }
    throw NotFoundError("no prime p = 5 mod 8 up to " + std::to_string(limit) + " for d = " + std::to_string(d));
}

std::vector<std::int64_t> oddPrimesUpTo(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 3; p <= n; p += 2) {
        if (isPrime(p)) out.push_back(p);
    }
    return out;
}

}  // namespace quatgroup::arith
