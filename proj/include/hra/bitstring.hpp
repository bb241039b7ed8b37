#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace hra {

/// Finite 0/1 string; canonical textual form is the character sequence.
class BitString {
  public:
    BitString() = default;
    explicit BitString(std::string bits) : bits_(std::move(bits)) {
        for (char c : bits_)
            if (c != '0' && c != '1') throw std::invalid_argument("BitString: non-binary char");
    }

    static BitString from_index(std::uint64_t value, std::size_t n) {
        std::string s(n, '0');
        for (std::size_t i = 0; i < n; ++i)
            if (value & (1ULL << (n - 1 - i))) s[i] = '1';
        return BitString(std::move(s));
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    bool bit(std::size_t i) const { return bits_[i] == '1'; }
    const std::string& str() const { return bits_; }

    bool even_parity() const {
        bool even = true;
        for (char c : bits_)
            if (c == '1') even = !even;
        return even;
    }

    friend bool operator==(const BitString& a, const BitString& b) = default;
    friend auto operator<=>(const BitString& a, const BitString& b) = default;

  private:
    std::string bits_;
};

}  // namespace hra
