#include "linkform/arith.hpp"

#include <algorithm>
#include <limits>
#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "linkform/errors.hpp"

namespace linkform::arith {
namespace {

// Seed for the Pollard-Brent starting points. Fixed so that factorizations
// are bit-reproducible; correctness never depends on it.
constexpr std::uint64_t kFactorSeed = 0x9E3779B97F4A7C15ull;

constexpr std::uint32_t kTrialLimit = 1'000'000;

constexpr std::array<std::uint32_t, 13> kWitnessBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// Miller-Rabin with kWitnessBases is exact below this bound (Sorenson-Webster).
const UInt kDeterministicBound = static_cast<UInt>(3'317'044'064'679ull) * 1'000'000'000'000ull + 887'385'961'981ull;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialLimit, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i < kTrialLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t{i} * i; j < kTrialLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

UInt ugcd(UInt a, UInt b) {
    while (b != 0) {
        UInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

UInt addmod(UInt a, UInt b, UInt m) { return a >= m - b ? a - (m - b) : a + b; }

UInt isqrt(UInt n) {
    if (n < 2) return n;
    UInt x = n;
    UInt y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

bool miller_rabin(UInt n, UInt base) {
    if (base % n == 0) return true;
    UInt d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    UInt x = powmod(base, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

void factor_into(UInt m, std::map<UInt, int>& out, const FactorOptions& options, std::uint64_t& budget);

// Pocklington with n - 1 fully factored.
bool lucas_certificate(UInt n, const FactorOptions& options) {
    if (n - 1 > static_cast<UInt>(kIntMax)) throw ResourceExceeded("primality certificate: value too large");
    std::map<UInt, int> qs;
    std::uint64_t budget = options.rho_budget;
    factor_into(n - 1, qs, options, budget);
    for (const auto& [q, _] : qs) {
        bool certified = false;
        for (std::uint32_t a : small_primes()) {
            if (a >= 2000) break;
            if (powmod(a, n - 1, n) != 1) return false;
            const UInt t = powmod(a, (n - 1) / q, n);
            if (ugcd(t == 0 ? n : t - 1, n) == 1) {
                certified = true;
                break;
            }
        }
        if (!certified) throw ResourceExceeded("primality certificate: no Pocklington witness found");
    }
    return true;
}

bool is_prime_impl(UInt n, const FactorOptions& options) {
    if (n < 2) return false;
    for (std::uint32_t p : kWitnessBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 43 * 43) return true;
    for (std::uint32_t b : kWitnessBases) {
        if (!miller_rabin(n, b)) return false;
    }
    if (n < kDeterministicBound) return true;
    return lucas_certificate(n, options);
}

// Pollard-Brent with batched gcds. Returns a proper divisor of the odd
// composite m.
UInt find_divisor(UInt m, std::uint64_t& budget) {
    std::uint64_t state = kFactorSeed;
    const auto f = [m](UInt y, UInt c) { return addmod(mulmod(y, y, m), c, m); };
    while (budget > 0) {
        const UInt y0 = static_cast<UInt>(splitmix64(state)) % m;
        UInt c = static_cast<UInt>(splitmix64(state)) % m;
        if (c == 0 || c == m - 2) c = 1;
        UInt y = y0, x = y0, ys = y0, q = 1, g = 1;
        std::uint64_t r = 1;
        constexpr std::uint64_t kBatch = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y, c);
            std::uint64_t k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                const std::uint64_t steps = std::min(kBatch, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = f(y, c);
                    q = mulmod(q, x > y ? x - y : y - x, m);
                }
                budget = budget > steps ? budget - steps : 0;
                g = ugcd(q, m);
                k += kBatch;
            }
            r *= 2;
        }
        if (g == m) {
            do {
                ys = f(ys, c);
                g = ugcd(x > ys ? x - ys : ys - x, m);
            } while (g == 1);
        }
        if (g != 1 && g != m) return g;
    }
    throw ResourceExceeded("factorization: Pollard-Brent budget exhausted");
}

void factor_into(UInt m, std::map<UInt, int>& out, const FactorOptions& options, std::uint64_t& budget) {
    if (m <= std::numeric_limits<std::uint64_t>::max()) {
        auto v = static_cast<std::uint64_t>(m);
        for (std::uint32_t p : small_primes()) {
            if (std::uint64_t{p} * p > v) break;
            while (v % p == 0) {
                v /= p;
                ++out[p];
            }
        }
        m = v;
    } else {
        for (std::uint32_t p : small_primes()) {
            if (static_cast<UInt>(p) * p > m) break;
            while (m % p == 0) {
                m /= p;
                ++out[p];
            }
        }
    }
    if (m == 1) return;

    std::vector<UInt> pending{m};
    while (!pending.empty()) {
        const UInt c = pending.back();
        pending.pop_back();
        if (c == 1) continue;
        if (is_prime_impl(c, options)) {
            ++out[c];
            continue;
        }
        const UInt root = isqrt(c);
        if (root * root == c) {
            pending.push_back(root);
            pending.push_back(root);
            continue;
        }
        const UInt d = find_divisor(c, budget);
        pending.push_back(d);
        pending.push_back(c / d);
    }
}

}  // namespace

GcdResult ext_gcd(Int x, Int y) {
    if (x == 0 && y == 0) throw std::invalid_argument("ext_gcd: both arguments are zero");
    if (x == kIntMin || y == kIntMin) throw std::invalid_argument("ext_gcd: argument out of range");
    if (y == 0) return {abs(x), x > 0 ? Int{1} : Int{-1}, 0};

    Int old_r = x, r = y;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        const Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    const Int g = old_r;
    const Int y_step = y / g;
    const Int x_step = x / g;
    const Int period = abs(y_step);
    Int u = mod(old_s, period);
    if (u > period - u) u -= period;
    const Int shift = (u - old_s) / y_step;
    const Int v = old_t - shift * x_step;
    return {g, u, v};
}

Int gcd(Int x, Int y) {
    return static_cast<Int>(ugcd(magnitude(x), magnitude(y)));
}

Int mod(Int x, Int m) {
    if (m == 0) throw std::invalid_argument("mod: zero modulus");
    const Int am = abs(m);
    Int r = x % am;
    return r < 0 ? r + am : r;
}

UInt mulmod(UInt a, UInt b, UInt m) {
    if (m == 0) throw std::invalid_argument("mulmod: zero modulus");
    constexpr UInt k64 = static_cast<UInt>(1) << 64;
    a %= m;
    b %= m;
    if (m <= k64) return (a * b) % m;
    UInt r = 0;
    while (b != 0) {
        if (b & 1) r = addmod(r, a, m);
        a = addmod(a, a, m);
        b >>= 1;
    }
    return r;
}

UInt powmod(UInt base, UInt exponent, UInt m) {
    if (m == 1) return 0;
    UInt result = 1;
    base %= m;
    while (exponent != 0) {
        if (exponent & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exponent >>= 1;
    }
    return result;
}

std::optional<Int> inverse_mod(Int x, Int m) {
    const Int am = abs(m);
    if (am == 1) return Int{0};
    const Int r = mod(x, am);
    if (r == 0) return std::nullopt;
    const GcdResult res = ext_gcd(r, am);
    if (res.g != 1) return std::nullopt;
    return mod(res.u, am);
}

bool is_prime(UInt n, const FactorOptions& options) { return is_prime_impl(n, options); }

SymbolValue legendre(Int x, Int p) {
    if (p <= 2 || p % 2 == 0 || !is_prime(static_cast<UInt>(p)))
        throw std::invalid_argument("legendre: modulus " + to_string(p) + " is not an odd prime");
    const Int r = mod(x, p);
    if (r == 0) return SymbolValue::zero;
    const UInt e = powmod(static_cast<UInt>(r), static_cast<UInt>((p - 1) / 2), static_cast<UInt>(p));
    return e == 1 ? SymbolValue::plus_one : SymbolValue::minus_one;
}

SymbolValue jacobi(Int x, Int m) {
    if (m <= 0 || m % 2 == 0) throw std::invalid_argument("jacobi: modulus " + to_string(m) + " must be odd and positive");
    UInt n = static_cast<UInt>(m);
    UInt a = static_cast<UInt>(mod(x, m));
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const auto r = static_cast<unsigned>(n % 8);
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    if (n != 1) return SymbolValue::zero;
    return t == 1 ? SymbolValue::plus_one : SymbolValue::minus_one;
}

Int PrimePower::value() const {
    Int v = 1;
    for (int i = 0; i < exponent; ++i) v *= prime;
    return v;
}

Int Factorization::product() const {
    Int v = sign;
    for (const auto& f : factors) v *= f.value();
    return v;
}

Factorization factorize(Int n, const FactorOptions& options) {
    if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
    const UInt m = magnitude(n);
    if (m >= options.magnitude_guard)
        throw ResourceExceeded("factorize: |" + to_string(n) + "| exceeds the factorization guard");

    std::map<UInt, int> primes;
    std::uint64_t budget = options.rho_budget;
    factor_into(m, primes, options, budget);

    Factorization result{n, n < 0 ? -1 : 1, {}};
    for (const auto& [p, e] : primes) result.factors.push_back({static_cast<Int>(p), e});
    if (result.product() != n) throw std::logic_error("factorize: re-multiplication check failed for " + to_string(n));
    return result;
}

Int sqrt_mod_prime(Int x, Int p) {
    const Int a = mod(x, p);
    if (p == 2) return a;
    if (legendre(a, p) != SymbolValue::plus_one)
        throw std::invalid_argument("sqrt_mod_prime: " + to_string(x) + " is not a non-zero square mod " + to_string(p));
    const UInt up = static_cast<UInt>(p);
    const UInt ua = static_cast<UInt>(a);
    UInt root;
    if (p % 4 == 3) {
        root = powmod(ua, (up + 1) / 4, up);
    } else {
        // Tonelli-Shanks.
        UInt q = up - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        UInt z = 2;
        while (legendre(static_cast<Int>(z), p) != SymbolValue::minus_one) ++z;
        UInt c = powmod(z, q, up);
        UInt r = powmod(ua, (q + 1) / 2, up);
        UInt t = powmod(ua, q, up);
        int mexp = s;
        while (t != 1) {
            int i = 0;
            UInt t2 = t;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, up);
                ++i;
            }
            UInt b = c;
            for (int j = 0; j < mexp - i - 1; ++j) b = mulmod(b, b, up);
            r = mulmod(r, b, up);
            c = mulmod(b, b, up);
            t = mulmod(t, c, up);
            mexp = i;
        }
        root = r;
    }
    const Int ri = static_cast<Int>(root);
    return std::min(ri, p - ri);
}

namespace {

// Root of the unit x modulo 2^e, or nullopt if x is not a square unit there.
std::optional<Int> sqrt_mod_two_power(Int x, int e) {
    const Int modulus = Int{1} << e;
    const Int a = mod(x, modulus);
    if (e == 1) return Int{1};
    if (e == 2) return a % 4 == 1 ? std::optional<Int>{1} : std::nullopt;
    if (a % 8 != 1) return std::nullopt;
    Int r = 1;
    for (int k = 3; k < e; ++k) {
        const UInt next = static_cast<UInt>(1) << (k + 1);
        if (mulmod(static_cast<UInt>(r), static_cast<UInt>(r), next) != static_cast<UInt>(a) % next) r += Int{1} << (k - 1);
    }
    const Int half = modulus / 2;
    const std::array<Int, 4> roots = {r, modulus - r, mod(r + half, modulus), mod(half - r, modulus)};
    return *std::min_element(roots.begin(), roots.end());
}

// Hensel lift of a root modulo p to p^e (p odd).
Int lift_odd_root(Int x, Int p, int e, Int root) {
    Int pk = p;
    for (int k = 1; k < e; ++k) {
        pk *= p;
        const UInt um = static_cast<UInt>(pk);
        const UInt ur = static_cast<UInt>(mod(root, pk));
        const UInt sq = mulmod(ur, ur, um);
        const UInt xa = static_cast<UInt>(mod(x, pk));
        const UInt diff = sq >= xa ? sq - xa : um - (xa - sq);
        const auto inv = inverse_mod(static_cast<Int>(mulmod(2, ur, um)), pk);
        const UInt step = mulmod(diff, static_cast<UInt>(*inv), um);
        root = static_cast<Int>(ur >= step ? ur - step : um - (step - ur));
    }
    return std::min(root, pk - root);
}

}  // namespace

SquareUnitResult is_square_unit_mod(Int x, Int n, const FactorOptions& options) {
    if (n == 0) throw std::invalid_argument("is_square_unit_mod: zero modulus");
    const Int modulus = abs(n);
    if (gcd(x, modulus) != 1)
        throw std::invalid_argument("is_square_unit_mod: " + to_string(x) + " is not a unit mod " + to_string(modulus));
    if (modulus == 1) return {true, 0, std::nullopt};

    const Int a = mod(x, modulus);
    const Factorization f = factorize(modulus, options);

    std::vector<std::pair<Int, Int>> parts;  // (root, prime power)
    for (const PrimePower& pp : f.factors) {
        std::optional<Int> root;
        if (pp.prime == 2) {
            root = sqrt_mod_two_power(a, pp.exponent);
        } else if (legendre(a, pp.prime) == SymbolValue::plus_one) {
            root = lift_odd_root(a, pp.prime, pp.exponent, sqrt_mod_prime(a, pp.prime));
        }
        if (!root) return {false, 0, pp};
        parts.emplace_back(*root, pp.value());
    }

    const UInt um = static_cast<UInt>(modulus);
    UInt lambda = 0;
    for (const auto& [root, pe] : parts) {
        const Int cofactor = modulus / pe;
        const Int inv = *inverse_mod(cofactor, pe);
        const UInt term = mulmod(mulmod(static_cast<UInt>(root), static_cast<UInt>(cofactor), um), static_cast<UInt>(inv), um);
        lambda = addmod(lambda, term, um);
    }
    if (mulmod(lambda, lambda, um) != static_cast<UInt>(a))
        throw std::logic_error("is_square_unit_mod: CRT root failed verification");
    return {true, static_cast<Int>(lambda), std::nullopt};
}

}  // namespace linkform::arith
