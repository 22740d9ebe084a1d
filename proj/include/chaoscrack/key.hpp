#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace chaoscrack {

// 80-bit key, ten subkey bytes K1..K10. K1 is the first pair of hex digits.
class SecretKey {
public:
    SecretKey() = default;
    explicit SecretKey(const std::array<std::uint8_t, 10>& bytes) : bytes_(bytes) {}

    // Accepts exactly 20 hex digits, either case. Throws BadKeyError.
    static SecretKey from_hex(std::string_view text);

    std::string to_hex() const;  // uppercase, 20 digits

    // 1-based subkey accessor: k(1) == K1 ... k(10) == K10.
    std::uint8_t k(int i) const { return bytes_[static_cast<std::size_t>(i - 1)]; }
    std::uint8_t& k(int i) { return bytes_[static_cast<std::size_t>(i - 1)]; }

    const std::array<std::uint8_t, 10>& bytes() const { return bytes_; }
    std::array<std::uint8_t, 10>& bytes() { return bytes_; }

    bool operator==(const SecretKey&) const = default;

private:
    std::array<std::uint8_t, 10> bytes_{};
};

}  // namespace chaoscrack
