#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "linkform/arith.hpp"
#include "linkform/family.hpp"
#include "linkform/linking.hpp"

namespace linkform {

enum class VerdictKind { standard, nonstandard, trivial_torsion, infinite_torsion };

std::string_view to_string(VerdictKind kind);

/// Classification of a cyclic linking form rho/n up to sign.
///
/// standard:      lambda^2 == sign * rho (mod |n|) with lambda a unit.
/// nonstandard:   neither +rho nor -rho is a square unit; each sign carries
///                a prime power p^e | n modulo which it is a non-square.
/// trivial_torsion: |n| == 1, the form lives on the zero group.
/// infinite_torsion: n == 0, no linking form.
struct Verdict {
    VerdictKind kind;
    int sign = 0;
    std::optional<Int> lambda = std::nullopt;
    std::optional<arith::PrimePower> obstruction_plus = std::nullopt;
    std::optional<arith::PrimePower> obstruction_minus = std::nullopt;
};

Verdict is_standard(Int n, Int rho, const arith::FactorOptions& options = {});
Verdict is_standard(const LinkingFormData& lf, const arith::FactorOptions& options = {});

/// Re-checks a verdict's certificate against (n, rho) in one multiplication
/// per witness; obstructions are re-checked with a Legendre evaluation (odd p)
/// or the 2-adic rule.
bool witness_holds(const Verdict& v, Int n, Int rho);

/// A prime p == 1 mod 4 dividing gcd(a1, b1) with a0 a non-square and b0 a
/// non-zero square mod p. Its existence forces a non-standard form.
struct EgsWitness {
    Int p;
};

/// Sufficient test for non-standardness. Scans prime divisors of gcd(a1, b1)
/// in increasing order. Returns nullopt when n == 0.
std::optional<EgsWitness> egs_fast_check(const FamilyParams& p, const arith::FactorOptions& options = {});

struct BundleVerdict {
    ManifoldInvariants invariants;
    std::optional<LinkingFormData> linking;  // absent when n == 0
    Verdict verdict;
    std::optional<EgsWitness> egs;
    /// Homotopy equivalent to an S^3-bundle over S^4; nullopt when n == 0.
    std::optional<bool> homotopy_bundle;
    std::string conclusion;
};

BundleVerdict bundle_verdict(const FamilyParams& p, const arith::FactorOptions& options = {});

}  // namespace linkform
