#include "linkform/int128.hpp"

#include <algorithm>

namespace linkform {

std::string to_string(UInt x) {
    if (x == 0) return "0";
    std::string out;
    while (x != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
        x /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string to_string(Int x) {
    if (x < 0) return "-" + to_string(magnitude(x));
    return to_string(static_cast<UInt>(x));
}

std::optional<UInt> parse_uint(std::string_view text) {
    if (text.empty()) return std::nullopt;
    UInt value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') return std::nullopt;
        const auto digit = static_cast<UInt>(c - '0');
        if (value > (kUIntMax - digit) / 10) return std::nullopt;
        value = value * 10 + digit;
    }
    return value;
}

std::optional<Int> parse_int(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    const auto mag = parse_uint(text);
    if (!mag) return std::nullopt;
    if (negative) {
        if (*mag > magnitude(kIntMin)) return std::nullopt;
        return *mag == magnitude(kIntMin) ? kIntMin : -static_cast<Int>(*mag);
    }
    if (*mag > static_cast<UInt>(kIntMax)) return std::nullopt;
    return static_cast<Int>(*mag);
}

}  // namespace linkform
