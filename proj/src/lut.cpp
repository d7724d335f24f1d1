#include "triapn/lut.hpp"

#include <bit>
#include <charconv>
#include <cstdio>

#include "triapn/error.hpp"

namespace triapn {

bool Lut::is_permutation() const {
    std::vector<bool> seen(size(), false);
    for (const auto v : table) {
        if (seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

std::string to_sbox_text(const Lut& lut) {
    std::string out;
    out.reserve(lut.table.size() * 5);
    char buf[16];
    for (const auto v : lut.table) {
        std::snprintf(buf, sizeof buf, "%x\n", v);
        out += buf;
    }
    return out;
}

Lut from_sbox_text(std::string_view text) {
    Lut lut;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.remove_suffix(1);
        if (line.empty())
            continue;
        std::uint32_t v = 0;
        const auto res = std::from_chars(line.data(), line.data() + line.size(), v, 16);
        if (res.ec != std::errc{} || res.ptr != line.data() + line.size())
            fail(errc::bad_argument, "bad sbox line: " + std::string(line));
        lut.table.push_back(v);
    }
    if (lut.table.empty() || !std::has_single_bit(lut.table.size()))
        fail(errc::bad_argument, "sbox length must be a nonzero power of two");
    lut.n = std::bit_width(lut.table.size()) - 1;
    for (const auto v : lut.table)
        if (v >= lut.size())
            fail(errc::bad_argument, "sbox entry out of range");
    return lut;
}

} // namespace triapn
