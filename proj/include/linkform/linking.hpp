#pragma once

#include "linkform/family.hpp"
#include "linkform/int128.hpp"

namespace linkform {

struct BezoutPair {
    Int c1;
    Int c0;
};

/// (c1, c0) with c1 * x1^2 + c0 * x0 == 1, taken from the canonical ext_gcd
/// pair; x1^2 == 1 short-circuits to (1, 0). Throws std::invalid_argument
/// when gcd(x1^2, x0) != 1.
BezoutPair bezout_pair(Int x1, Int x0);

/// e1 a1^2 + e0 a0 == 1 and f1 b1^2 + f0 b0 == 1.
struct BezoutCert {
    Int e1;
    Int e0;
    Int f1;
    Int f0;
};

/// lk(x*g, y*g) = +-rho*x*y/n mod 1 for the generator g; with respect to the
/// generator kappa*g the form is +-kappa*x*y/n. The global sign depends on the
/// orientation and is not determined, hence sign_ambiguous.
struct LinkingFormData {
    Int n;
    Int h4_order;
    Int rho;    // in [0, |n|)
    Int kappa;  // in [0, |n|)
    BezoutCert cert;
    bool sign_ambiguous = true;
};

/// Throws InfiniteTorsion when n == 0. All residue identities are verified
/// before returning.
LinkingFormData linking_form(const FamilyParams& p);

/// Same, with caller-supplied Bezout certificates (checked exactly).
LinkingFormData linking_form(const FamilyParams& p, const BezoutCert& cert);

}  // namespace linkform
