#include "linkform/cohomology.hpp"

#include <stdexcept>
#include <utility>

namespace linkform {
namespace {

Int square(std::int64_t x) { return static_cast<Int>(x) * x; }

void swap_rows(IntMatrix2x2& x) { std::swap(x.m[0], x.m[1]); }

void swap_cols(IntMatrix2x2& x) {
    std::swap(x(0, 0), x(0, 1));
    std::swap(x(1, 0), x(1, 1));
}

// row[dst] -= q * row[src]
void sub_row(IntMatrix2x2& x, int dst, int src, Int q) {
    for (int c = 0; c < 2; ++c) x(dst, c) -= q * x(src, c);
}

void sub_col(IntMatrix2x2& x, int dst, int src, Int q) {
    for (int r = 0; r < 2; ++r) x(r, dst) -= q * x(r, src);
}

void negate_row(IntMatrix2x2& x, int r) {
    for (int c = 0; c < 2; ++c) x(r, c) = -x(r, c);
}

struct Work {
    IntMatrix2x2 a;
    IntMatrix2x2 left = IntMatrix2x2::identity();
    IntMatrix2x2 right = IntMatrix2x2::identity();

    // Row ops act on a and left; column ops act on a and right.
    void row_swap() { swap_rows(a), swap_rows(left); }
    void col_swap() { swap_cols(a), swap_cols(right); }
    void row_sub(int dst, int src, Int q) { sub_row(a, dst, src, q), sub_row(left, dst, src, q); }
    void col_sub(int dst, int src, Int q) { sub_col(a, dst, src, q), sub_col(right, dst, src, q); }
    void row_negate(int r) { negate_row(a, r), negate_row(left, r); }
};

// Moves the smallest non-zero entry to (0, 0). Returns false for the zero matrix.
bool pivot(Work& w) {
    int br = -1, bc = -1;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            if (w.a(r, c) != 0 && (br < 0 || abs(w.a(r, c)) < abs(w.a(br, bc)))) br = r, bc = c;
    if (br < 0) return false;
    if (br == 1) w.row_swap();
    if (bc == 1) w.col_swap();
    return true;
}

}  // namespace

Int IntMatrix2x2::det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

IntMatrix2x2 IntMatrix2x2::identity() {
    IntMatrix2x2 id;
    id(0, 0) = id(1, 1) = 1;
    return id;
}

IntMatrix2x2 operator*(const IntMatrix2x2& x, const IntMatrix2x2& y) {
    IntMatrix2x2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out(r, c) = x(r, 0) * y(0, c) + x(r, 1) * y(1, c);
    return out;
}

SnfResult smith_normal_form(const IntMatrix2x2& matrix) {
    Work w{matrix};
    while (pivot(w)) {
        const Int p = w.a(0, 0);
        w.row_sub(1, 0, w.a(1, 0) / p);
        w.col_sub(1, 0, w.a(0, 1) / p);
        if (w.a(1, 0) != 0 || w.a(0, 1) != 0) continue;  // remainder left: re-pivot
        if (w.a(1, 1) % p != 0) {
            // Bring the (1,1) entry into row 0 so the next pass reduces it by p.
            w.row_sub(0, 1, -1);
            continue;
        }
        break;
    }
    for (int r = 0; r < 2; ++r)
        if (w.a(r, r) < 0) w.row_negate(r);

    const SnfResult out{w.a(0, 0), w.a(1, 1), w.left, w.right};
    IntMatrix2x2 diag;
    diag(0, 0) = out.d1;
    diag(1, 1) = out.d2;
    if (out.left * matrix * out.right != diag || abs(out.left.det()) != 1 || abs(out.right.det()) != 1)
        throw std::logic_error("smith_normal_form: transform certificate failed");
    if (out.d1 == 0 ? out.d2 != 0 : out.d2 % out.d1 != 0) throw std::logic_error("smith_normal_form: d1 does not divide d2");
    return out;
}

IntMatrix2x2 restriction_matrix(const FamilyParams& p) {
    const ManifoldInvariants inv = derived(p);
    IntMatrix2x2 m;
    m(0, 0) = inv.a0;
    m(1, 0) = square(p.a().x1);
    m(0, 1) = inv.b0;
    m(1, 1) = square(p.b().x1);
    return m;
}

H4Structure h4_structure(const FamilyParams& p) {
    const SnfResult snf = smith_normal_form(restriction_matrix(p));
    if (snf.d1 != 1) throw std::logic_error("h4_structure: cokernel not cyclic for valid parameters " + format_params(p));
    return {snf.d1, snf.d2};
}

}  // namespace linkform
