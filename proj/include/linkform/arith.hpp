#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "linkform/int128.hpp"

namespace linkform::arith {

/// Limits applied to factorization. The magnitude guard defaults to 2^128,
/// i.e. every representable value is admitted.
struct FactorOptions {
    UInt magnitude_guard = kUIntMax;
    std::uint64_t rho_budget = std::uint64_t{1} << 24;
};

struct GcdResult {
    Int g;
    Int u;
    Int v;
};

/// Extended Euclid: u*x + v*y == g == gcd(|x|, |y|). The pair is canonical:
/// when y != 0, u is the representative of its class mod |y|/g in
/// (-|y|/2g, |y|/2g], so ties go to the non-negative side. When y == 0,
/// (u, v) == (sign x, 0). Throws std::invalid_argument for (0, 0).
GcdResult ext_gcd(Int x, Int y);

Int gcd(Int x, Int y);

/// Canonical residue of x in [0, |m|). m must be non-zero.
Int mod(Int x, Int m);

UInt mulmod(UInt a, UInt b, UInt m);
UInt powmod(UInt base, UInt exponent, UInt m);

/// Inverse of x modulo |m| in [0, |m|), or nullopt when gcd(x, m) != 1.
std::optional<Int> inverse_mod(Int x, Int m);

enum class SymbolValue : int { minus_one = -1, zero = 0, plus_one = 1 };

constexpr int to_int(SymbolValue s) { return static_cast<int>(s); }

/// Deterministic primality. Miller-Rabin with the first thirteen prime bases
/// is exact below 3.3e24; above that a Lucas (n-1) certificate is built,
/// which may raise ResourceExceeded but never misclassifies.
bool is_prime(UInt n, const FactorOptions& options = {});

/// Legendre symbol by Euler's criterion. p must be an odd prime.
SymbolValue legendre(Int x, Int p);

/// Jacobi symbol by reciprocity. m must be odd and positive.
SymbolValue jacobi(Int x, Int m);

struct PrimePower {
    Int prime;
    int exponent;

    Int value() const;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    Int value;
    int sign;
    std::vector<PrimePower> factors;  // strictly increasing primes

    /// sign * prod(prime^exponent); recomputed, not cached.
    Int product() const;
};

/// Complete factorization: trial division below 10^6, then Pollard-Brent
/// with a fixed seed sequence. Each prime is certified by is_prime and the
/// product is re-checked. Throws std::invalid_argument for 0 and
/// ResourceExceeded if |n| is at or above the guard or the budget runs out.
Factorization factorize(Int n, const FactorOptions& options = {});

/// Square root of x modulo an odd prime p, smallest of the two roots.
/// Requires legendre(x, p) == +1.
Int sqrt_mod_prime(Int x, Int p);

struct SquareUnitResult {
    bool is_square;
    Int root;                              // meaningful when is_square
    std::optional<PrimePower> obstruction;  // set when !is_square
};

/// Decides whether the unit x is a square of a unit modulo |n|.
/// On success `root` satisfies root^2 == x (mod |n|); otherwise
/// `obstruction` names a prime power p^e || n modulo which x is a non-square.
/// Throws std::invalid_argument when gcd(x, n) != 1 or n == 0.
SquareUnitResult is_square_unit_mod(Int x, Int n, const FactorOptions& options = {});

}  // namespace linkform::arith
