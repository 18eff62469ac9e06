#include "linkform/classify.hpp"

#include <stdexcept>

namespace linkform {
namespace {

bool nonsquare_mod_prime_power(Int x, const arith::PrimePower& pp) {
    if (pp.prime == 2) {
        const Int r = arith::mod(x, pp.value());
        if (pp.exponent == 1) return false;
        if (pp.exponent == 2) return r % 4 != 1;
        return r % 8 != 1;
    }
    return arith::legendre(x, pp.prime) == arith::SymbolValue::minus_one;
}

}  // namespace

std::string_view to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::standard: return "standard";
        case VerdictKind::nonstandard: return "nonstandard";
        case VerdictKind::trivial_torsion: return "trivial";
        case VerdictKind::infinite_torsion: return "infinite";
    }
    return "?";
}

Verdict is_standard(Int n, Int rho, const arith::FactorOptions& options) {
    if (n == 0) return {VerdictKind::infinite_torsion};
    const Int m = abs(n);
    if (m == 1) return {VerdictKind::trivial_torsion};
    const Int plus = arith::mod(rho, m);
    const Int minus = arith::mod(-rho, m);

    const arith::SquareUnitResult rp = arith::is_square_unit_mod(plus, m, options);
    if (rp.is_square) return {VerdictKind::standard, +1, rp.root, std::nullopt, std::nullopt};
    const arith::SquareUnitResult rm = arith::is_square_unit_mod(minus, m, options);
    if (rm.is_square) return {VerdictKind::standard, -1, rm.root, std::nullopt, std::nullopt};
    return {VerdictKind::nonstandard, 0, std::nullopt, rp.obstruction, rm.obstruction};
}

Verdict is_standard(const LinkingFormData& lf, const arith::FactorOptions& options) {
    return is_standard(lf.n, lf.rho, options);
}

bool witness_holds(const Verdict& v, Int n, Int rho) {
    const Int m = abs(n);
    switch (v.kind) {
        case VerdictKind::infinite_torsion: return n == 0;
        case VerdictKind::trivial_torsion: return m == 1;
        case VerdictKind::standard: {
            if (!v.lambda || (v.sign != 1 && v.sign != -1) || m < 2) return false;
            if (arith::gcd(*v.lambda, m) != 1) return false;
            const UInt sq = arith::mulmod(static_cast<UInt>(*v.lambda), static_cast<UInt>(*v.lambda), static_cast<UInt>(m));
            return static_cast<Int>(sq) == arith::mod(v.sign * rho, m);
        }
        case VerdictKind::nonstandard: {
            if (!v.obstruction_plus || !v.obstruction_minus) return false;
            for (const auto& [pp, x] : {std::pair{*v.obstruction_plus, rho}, std::pair{*v.obstruction_minus, -rho}}) {
                if (m % pp.value() != 0 || !nonsquare_mod_prime_power(x, pp)) return false;
            }
            return true;
        }
    }
    return false;
}

std::optional<EgsWitness> egs_fast_check(const FamilyParams& p, const arith::FactorOptions& options) {
    const ManifoldInvariants inv = derived(p);
    if (inv.n == 0) return std::nullopt;
    const Int g = arith::gcd(p.a().x1, p.b().x1);
    if (g == 1) return std::nullopt;
    for (const arith::PrimePower& pp : arith::factorize(g, options).factors) {
        if (pp.prime % 4 != 1) continue;
        if (arith::legendre(inv.a0, pp.prime) == arith::SymbolValue::minus_one &&
            arith::legendre(inv.b0, pp.prime) == arith::SymbolValue::plus_one)
            return EgsWitness{pp.prime};
    }
    return std::nullopt;
}

BundleVerdict bundle_verdict(const FamilyParams& p, const arith::FactorOptions& options) {
    BundleVerdict out{derived(p), std::nullopt, {VerdictKind::infinite_torsion}, std::nullopt, std::nullopt, {}};
    if (out.invariants.n == 0) {
        out.conclusion = "no verdict: H^4 is infinite cyclic, the homotopy criterion does not apply";
        return out;
    }
    out.linking = linking_form(p);
    out.verdict = is_standard(*out.linking, options);
    out.egs = egs_fast_check(p, options);
    if (out.egs && out.verdict.kind != VerdictKind::nonstandard)
        throw std::logic_error("bundle_verdict: fast witness contradicts full classification for " + format_params(p));
    switch (out.verdict.kind) {
        case VerdictKind::trivial_torsion:
            out.homotopy_bundle = true;
            out.conclusion = "homotopy S^3-bundle: yes (H^4 trivial, linking form on the zero group)";
            break;
        case VerdictKind::standard:
            out.homotopy_bundle = true;
            out.conclusion = "homotopy S^3-bundle: yes (standard linking form)";
            break;
        case VerdictKind::nonstandard:
            out.homotopy_bundle = false;
            out.conclusion = "not even homotopy equivalent to an S^3-bundle over S^4 (non-standard linking form)";
            break;
        case VerdictKind::infinite_torsion: break;
    }
    return out;
}

}  // namespace linkform
