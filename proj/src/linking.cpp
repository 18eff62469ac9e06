#include "linkform/linking.hpp"

#include <stdexcept>

#include "linkform/arith.hpp"
#include "linkform/errors.hpp"

namespace linkform {
namespace {

Int square(std::int64_t x) { return static_cast<Int>(x) * x; }

// x * y mod m for residues already reduced into [0, m).
Int mulres(Int x, Int y, Int m) {
    return static_cast<Int>(arith::mulmod(static_cast<UInt>(arith::mod(x, m)), static_cast<UInt>(arith::mod(y, m)),
                                          static_cast<UInt>(m)));
}

void require(bool ok, const char* what, const FamilyParams& p) {
    if (!ok) throw std::logic_error(std::string("linking_form: ") + what + " fails for " + format_params(p));
}

}  // namespace

BezoutPair bezout_pair(Int x1, Int x0) {
    const Int x1sq = x1 * x1;
    if (x1sq == 1) return {1, 0};
    const arith::GcdResult r = arith::ext_gcd(x1sq, x0);
    if (r.g != 1)
        throw std::invalid_argument("bezout_pair: gcd(" + to_string(x1) + "^2, " + to_string(x0) + ") = " + to_string(r.g));
    return {r.u, r.v};
}

LinkingFormData linking_form(const FamilyParams& p) {
    const ManifoldInvariants inv = derived(p);
    if (inv.n == 0) throw InfiniteTorsion();
    const BezoutPair e = bezout_pair(p.a().x1, inv.a0);
    const BezoutPair f = bezout_pair(p.b().x1, inv.b0);
    return linking_form(p, {e.c1, e.c0, f.c1, f.c0});
}

LinkingFormData linking_form(const FamilyParams& p, const BezoutCert& cert) {
    const ManifoldInvariants inv = derived(p);
    if (inv.n == 0) throw InfiniteTorsion();
    const Int a1sq = square(p.a().x1);
    const Int b1sq = square(p.b().x1);
    if (cert.e1 * a1sq + cert.e0 * inv.a0 != 1 || cert.f1 * b1sq + cert.f0 * inv.b0 != 1)
        throw std::invalid_argument("linking_form: Bezout certificate does not certify coprimality");

    const Int m = inv.h4_order;
    LinkingFormData out;
    out.n = inv.n;
    out.h4_order = m;
    out.cert = cert;
    out.rho = arith::mod(mulres(cert.e1, b1sq, m) + mulres(cert.e0, inv.b0, m), m);
    out.kappa = arith::mod(mulres(cert.f1, a1sq, m) + mulres(cert.f0, inv.a0, m), m);

    const Int one = arith::mod(1, m);
    require(mulres(out.rho, out.kappa, m) == one, "rho * kappa == 1", p);
    require(mulres(a1sq, out.rho, m) == arith::mod(b1sq, m), "a1^2 rho == b1^2", p);
    require(mulres(b1sq, out.kappa, m) == arith::mod(a1sq, m), "b1^2 kappa == a1^2", p);
    require(mulres(inv.a0, out.rho, m) == arith::mod(inv.b0, m), "a0 rho == b0", p);
    require(mulres(inv.b0, out.kappa, m) == arith::mod(inv.a0, m), "b0 kappa == a0", p);
    require(arith::gcd(out.rho, m) == 1 && arith::gcd(out.kappa, m) == 1, "rho, kappa units", p);
    return out;
}

}  // namespace linkform
