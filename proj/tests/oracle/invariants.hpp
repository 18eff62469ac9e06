#pragma once

#include <optional>
#include <string>

#include "linkform/family.hpp"

// Per-family invariant checks shared by the acceptance suite and the
// `verify` subcommand. Each returns nullopt on success or a description of
// the first violated property.
namespace linkform::invariants {

using Failure = std::optional<std::string>;

/// rho*kappa == 1, the four residue congruences, Bezout-shift invariance for
/// t in [-5, 5], and swap duality. Skipped for n == 0.
Failure linking_identities(const FamilyParams& p);

/// gcd(a1, b1) == 1 and n != 0 implies a standard (or trivial) verdict.
Failure coprime_is_standard(const FamilyParams& p);

/// A fast-check witness implies a non-standard verdict, and every verdict
/// certificate re-checks.
Failure verdict_soundness(const FamilyParams& p);

/// SNF of the restriction matrix is (1, |n|); brute_coker agrees whenever
/// its guard admits the matrix.
Failure cohomology_cross_check(const FamilyParams& p, bool* used_brute_force = nullptr);

/// is_square_unit_mod(+-rho) against brute_square_unit when |n| <= 5000, and
/// legendre against brute_legendre at each odd prime dividing n.
Failure oracle_equivalence(const FamilyParams& p);

}  // namespace linkform::invariants
