#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace triapn {

// Full lookup table of an n-bit-to-n-bit function; the interchange object
// for all analysis kernels.
struct Lut {
    int n = 0;
    std::vector<std::uint32_t> table; // 2^n entries, each < 2^n

    std::uint64_t size() const { return std::uint64_t{1} << n; }
    bool is_permutation() const;
};

// sbox text format: 2^n lines of lowercase hex, one output word per line,
// index ascending.
std::string to_sbox_text(const Lut& lut);
Lut from_sbox_text(std::string_view text);

} // namespace triapn
