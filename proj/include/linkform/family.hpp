#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "linkform/int128.hpp"

namespace linkform {

// Entries are bounded so that n, the Smith transforms and every residue
// product stay exact in 128-bit arithmetic.
inline constexpr std::int64_t kMaxParamMagnitude = std::int64_t{1} << 20;

/// Six raw integers in the order a1, a2, a3, b1, b2, b3.
using RawParams = std::array<std::int64_t, 6>;

std::string_view param_name(int index);

struct ParamTriple {
    std::int64_t x1;
    std::int64_t x2;
    std::int64_t x3;

    friend bool operator==(const ParamTriple&, const ParamTriple&) = default;
};

enum class Side { a, b };

/// Entry not congruent to 1 mod 4; residue is the entry mod 4 in [0, 4).
struct CongruenceViolation {
    int index;
    std::int64_t value;
    int residue;
};

/// gcd(x1, x2 + x3) or gcd(x1, x2 - x3) differs from 1.
struct FreenessViolation {
    Side side;
    char sign;  // '+' or '-'
    Int gcd;
};

struct RangeViolation {
    int index;
    std::int64_t value;
};

using Violation = std::variant<CongruenceViolation, FreenessViolation, RangeViolation>;

std::string describe(const Violation& v);

class InvalidParameters : public std::invalid_argument {
public:
    explicit InvalidParameters(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t position, const std::string& what);
    /// Zero-based character offset of the offending input.
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// A pair of triples that satisfies the congruence and freeness conditions.
/// Only obtainable through validate().
class FamilyParams {
public:
    const ParamTriple& a() const { return a_; }
    const ParamTriple& b() const { return b_; }
    RawParams raw() const { return {a_.x1, a_.x2, a_.x3, b_.x1, b_.x2, b_.x3}; }

    /// The family with the roles of a and b exchanged.
    FamilyParams swapped() const { return FamilyParams(b_, a_); }

    friend bool operator==(const FamilyParams&, const FamilyParams&) = default;

private:
    FamilyParams(ParamTriple a, ParamTriple b) : a_(a), b_(b) {}
    friend FamilyParams validate(const RawParams& raw);

    ParamTriple a_;
    ParamTriple b_;
};

/// Every violated condition, in entry order, then freeness (a+, a-, b+, b-).
std::vector<Violation> check(const RawParams& raw);

/// Throws InvalidParameters carrying the full violation list.
FamilyParams validate(const RawParams& raw);

struct ManifoldInvariants {
    Int a0;
    Int b0;
    Int n;
    Int h4_order;  // |n|; 0 encodes the infinite cyclic case
};

/// a0 = (a2^2 - a3^2)/8, b0 = (b2^2 - b3^2)/8, n = a1^2 b0 - a0 b1^2.
ManifoldInvariants derived(const FamilyParams& p);

/// (a1, a2^2, a3^2, b1, b2^2, b3^2). Equal keys give identical invariants.
using CanonicalKey = std::array<Int, 6>;
CanonicalKey canonical_key(const FamilyParams& p);

/// Parses "a1,a2,a3;b1,b2,b3" (signed decimals, no spaces).
RawParams parse_params(std::string_view text);

std::string format_params(const FamilyParams& p);

}  // namespace linkform
