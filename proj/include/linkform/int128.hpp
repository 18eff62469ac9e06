#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace linkform {

// Signed and unsigned 128-bit integers. Every quantity derived from family
// parameters (n, residues, Bezout coefficients) fits comfortably in Int.
__extension__ using Int = __int128;
__extension__ using UInt = unsigned __int128;

inline constexpr Int kIntMax = static_cast<Int>(~UInt{0} >> 1);
inline constexpr Int kIntMin = -kIntMax - 1;
inline constexpr UInt kUIntMax = ~UInt{0};

constexpr Int abs(Int x) { return x < 0 ? -x : x; }

// |x| without overflow, including x == kIntMin.
constexpr UInt magnitude(Int x) {
    return x < 0 ? static_cast<UInt>(-(x + 1)) + 1 : static_cast<UInt>(x);
}

std::string to_string(Int x);
std::string to_string(UInt x);

// Strict decimal parse (optional leading '-'); nullopt on junk or overflow.
std::optional<Int> parse_int(std::string_view text);
std::optional<UInt> parse_uint(std::string_view text);

}  // namespace linkform
