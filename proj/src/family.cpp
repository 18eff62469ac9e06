#include "linkform/family.hpp"

#include <charconv>
#include <sstream>

#include "linkform/arith.hpp"

namespace linkform {
namespace {

constexpr std::array<std::string_view, 6> kNames = {"a1", "a2", "a3", "b1", "b2", "b3"};

std::string summarize(const std::vector<Violation>& violations) {
    std::ostringstream out;
    out << "invalid parameters:";
    for (const auto& v : violations) out << ' ' << describe(v) << ';';
    return out.str();
}

Int square(std::int64_t x) { return static_cast<Int>(x) * x; }

Int eighth(std::int64_t x2, std::int64_t x3) {
    const Int diff = square(x2) - square(x3);
    if (diff % 8 != 0) throw std::logic_error("x2^2 - x3^2 not divisible by 8 for validated parameters");
    return diff / 8;
}

}  // namespace

std::string_view param_name(int index) { return kNames.at(static_cast<std::size_t>(index)); }

std::string describe(const Violation& v) {
    std::ostringstream out;
    if (const auto* c = std::get_if<CongruenceViolation>(&v)) {
        out << "CongruenceViolation " << param_name(c->index) << " = " << c->value << " is " << c->residue
            << " mod 4 (need 1)";
    } else if (const auto* f = std::get_if<FreenessViolation>(&v)) {
        const char side = f->side == Side::a ? 'a' : 'b';
        out << "FreenessViolation gcd(" << side << "1, " << side << "2 " << f->sign << ' ' << side
            << "3) = " << to_string(f->gcd);
    } else {
        const auto& r = std::get<RangeViolation>(v);
        out << "RangeViolation " << param_name(r.index) << " = " << r.value << " exceeds " << kMaxParamMagnitude
            << " in magnitude";
    }
    return out.str();
}

InvalidParameters::InvalidParameters(std::vector<Violation> violations)
    : std::invalid_argument(summarize(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(std::size_t position, const std::string& what)
    : std::invalid_argument("parse error at position " + std::to_string(position) + ": " + what), position_(position) {}

std::vector<Violation> check(const RawParams& raw) {
    std::vector<Violation> out;
    bool in_range = true;
    for (int i = 0; i < 6; ++i) {
        const std::int64_t x = raw[static_cast<std::size_t>(i)];
        if (x > kMaxParamMagnitude || x < -kMaxParamMagnitude) {
            out.push_back(RangeViolation{i, x});
            in_range = false;
            continue;
        }
        const int residue = static_cast<int>(((x % 4) + 4) % 4);
        if (residue != 1) out.push_back(CongruenceViolation{i, x, residue});
    }
    if (!in_range) return out;
    for (int s = 0; s < 2; ++s) {
        const auto x1 = raw[static_cast<std::size_t>(3 * s)];
        const auto x2 = raw[static_cast<std::size_t>(3 * s + 1)];
        const auto x3 = raw[static_cast<std::size_t>(3 * s + 2)];
        const Side side = s == 0 ? Side::a : Side::b;
        const Int plus = arith::gcd(x1, Int{x2} + x3);
        const Int minus = arith::gcd(x1, Int{x2} - x3);
        if (plus != 1) out.push_back(FreenessViolation{side, '+', plus});
        if (minus != 1) out.push_back(FreenessViolation{side, '-', minus});
    }
    return out;
}

FamilyParams validate(const RawParams& raw) {
    auto violations = check(raw);
    if (!violations.empty()) throw InvalidParameters(std::move(violations));
    const FamilyParams p({raw[0], raw[1], raw[2]}, {raw[3], raw[4], raw[5]});
    // Freeness forces gcd(x1, x2, x3) = 1.
    if (arith::gcd(arith::gcd(raw[0], raw[1]), raw[2]) != 1 || arith::gcd(arith::gcd(raw[3], raw[4]), raw[5]) != 1)
        throw std::logic_error("validate: freeness holds but a triple has a common factor");
    return p;
}

ManifoldInvariants derived(const FamilyParams& p) {
    const Int a0 = eighth(p.a().x2, p.a().x3);
    const Int b0 = eighth(p.b().x2, p.b().x3);
    const Int n = square(p.a().x1) * b0 - a0 * square(p.b().x1);
    return {a0, b0, n, abs(n)};
}

CanonicalKey canonical_key(const FamilyParams& p) {
    return {p.a().x1, square(p.a().x2), square(p.a().x3), p.b().x1, square(p.b().x2), square(p.b().x3)};
}

RawParams parse_params(std::string_view text) {
    RawParams out{};
    std::size_t pos = 0;
    for (int i = 0; i < 6; ++i) {
        if (i > 0) {
            const char expected = i == 3 ? ';' : ',';
            if (pos >= text.size() || text[pos] != expected)
                throw ParseError(pos, std::string("expected '") + expected + "'");
            ++pos;
        }
        const char* first = text.data() + pos;
        const char* last = text.data() + text.size();
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec == std::errc::result_out_of_range) throw ParseError(pos, "integer out of range");
        if (ec != std::errc{} || ptr == first) throw ParseError(pos, "expected a signed decimal integer");
        out[static_cast<std::size_t>(i)] = value;
        pos = static_cast<std::size_t>(ptr - text.data());
    }
    if (pos != text.size()) throw ParseError(pos, "trailing characters");
    return out;
}

std::string format_params(const FamilyParams& p) {
    std::ostringstream out;
    out << p.a().x1 << ',' << p.a().x2 << ',' << p.a().x3 << ';' << p.b().x1 << ',' << p.b().x2 << ',' << p.b().x3;
    return out.str();
}

}  // namespace linkform
