#pragma once

#include <array>

#include "linkform/family.hpp"
#include "linkform/int128.hpp"

namespace linkform {

/// Row-major 2x2 integer matrix.
struct IntMatrix2x2 {
    std::array<std::array<Int, 2>, 2> m{};

    Int& operator()(int r, int c) { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    Int operator()(int r, int c) const { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    Int det() const;

    static IntMatrix2x2 identity();
    friend bool operator==(const IntMatrix2x2&, const IntMatrix2x2&) = default;
};

IntMatrix2x2 operator*(const IntMatrix2x2& x, const IntMatrix2x2& y);

/// left * M * right == diag(d1, d2), d1 | d2, both non-negative, and the
/// transforms are unimodular.
struct SnfResult {
    Int d1;
    Int d2;
    IntMatrix2x2 left;
    IntMatrix2x2 right;
};

/// Smith normal form by elementary row and column operations with the
/// transforms accumulated. The certificate is re-multiplied before return.
SnfResult smith_normal_form(const IntMatrix2x2& matrix);

/// Matrix whose columns are (a0, a1^2) and (b0, b1^2): the restriction maps
/// H^3(M_-) + H^3(M_+) -> H^3(M_0) in the basis {v1, v2}.
IntMatrix2x2 restriction_matrix(const FamilyParams& p);

struct H4Structure {
    Int d1;
    Int d2;
};

/// Invariant factors of H^4 = coker(restriction_matrix). For valid
/// parameters d1 == 1, so H^4 is cyclic of order d2 (d2 == 0: infinite).
H4Structure h4_structure(const FamilyParams& p);

}  // namespace linkform
