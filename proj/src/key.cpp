#include "chaoscrack/key.hpp"

#include <cctype>

#include "chaoscrack/errors.hpp"

namespace chaoscrack {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

SecretKey SecretKey::from_hex(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    const std::string_view body = text.substr(begin, end - begin);

    if (body.size() != 20) {
        throw BadKeyError("key must be exactly 20 hex digits");
    }
    SecretKey key;
    for (std::size_t i = 0; i < 10; ++i) {
        const int hi = hex_digit(body[2 * i]);
        const int lo = hex_digit(body[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw BadKeyError("key contains a non-hex character");
        }
        key.bytes_[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return key;
}

std::string SecretKey::to_hex() const {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out(20, '0');
    for (std::size_t i = 0; i < 10; ++i) {
        out[2 * i] = digits[bytes_[i] >> 4];
        out[2 * i + 1] = digits[bytes_[i] & 0x0F];
    }
    return out;
}

}  // namespace chaoscrack
