#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "triapn/family.hpp"
#include "triapn/lut.hpp"

// Lookup-table analysis kernels: difference distribution, image
// multiplicity, Walsh spectra, derivative kernels/core, and linear
// equivalence transforms.
namespace triapn::vectfun {

struct DdtReport {
    std::uint32_t max_uniformity = 0;
    std::map<std::uint32_t, std::uint64_t> spectrum; // DDT value -> count over (u != 0, v)
    bool early_aborted = false;
};

// Max over u != 0, v of #{x : lut[x^u] ^ lut[x] = v}, streamed row by row
// with one 2^n counter buffer per worker (the full 2^n x 2^n table is never
// materialized). With abort_above set, returns as soon as any count exceeds
// it; the spectrum is then partial.
DdtReport differential_uniformity(const Lut& lut,
                                  std::optional<std::uint32_t> abort_above = {},
                                  int workers = 1);

enum class ImageClass { bijective, r_to_1, irregular };

struct ImageReport {
    ImageClass cls = ImageClass::irregular;
    std::uint32_t r = 0;                             // set for r_to_1
    std::map<std::uint32_t, std::uint64_t> histogram; // preimage count -> #nonzero values
    std::string describe() const;
};

// Classifies preimage counts of nonzero values; 0 -> 0 with no other
// preimage of 0 is required for the r-to-1 verdict. Irregular is a valid
// verdict, never an error.
ImageReport image_multiplicity(const Lut& lut);

struct WalshMaskReport {
    std::uint32_t v = 0;
    std::map<std::int64_t, std::uint64_t> values; // W(u, v) -> multiplicity over all u
};

struct WalshReport {
    int n = 0;
    std::vector<WalshMaskReport> masks;
};

// Exact integer Walsh spectra W(u,v) = sum_x (-1)^(v.F(x) + u.x) via the
// in-place fast transform; Parseval is asserted per mask. All nonzero masks
// when none are given (n <= 20).
WalshReport walsh_spectrum(const Lut& lut,
                           const std::vector<std::uint32_t>* masks = nullptr);

// Invertible linear map of n-bit words: either a permutation of the three
// m-bit blocks or a general n x n bit matrix.
class LinMap3 {
public:
    static LinMap3 identity(int n);
    // out block i = source block perm[i]; n = 3m.
    static LinMap3 block_perm(int m, const std::array<int, 3>& perm);
    // rows[i] is the mask producing output bit i; must have rank n.
    static LinMap3 bit_matrix(int n, std::vector<std::uint32_t> rows);

    std::uint32_t apply(std::uint32_t x) const;
    int width() const { return n_; }

private:
    LinMap3() = default;
    int n_ = 0;
    int m_ = 0;                       // block size when perm-based
    std::array<int, 3> perm_{0, 1, 2};
    std::vector<std::uint32_t> rows_; // empty for block permutations
};

// result[x] = l1(lut[l2(x)]).
Lut lut_transform(const LinMap3& l1, const Lut& lut, const LinMap3& l2);

// {x : F(x+y) + F(x) + F(y) = 0} by enumeration, as packed words.
std::vector<std::uint32_t> derivative_kernel(const family::Params& p, const Lut& lut,
                                             std::uint32_t y_packed);
std::vector<family::Vec3> derivative_kernel(const family::Params& p, family::Vec3 y);

// Largest divisor e of m such that every derivative map L_y is
// F_{2^e}-linear; exhaustive over (y, x) for m <= 4, deterministically
// sampled above.
int compute_core(const family::Params& p, const Lut& lut);
int compute_core(const family::Params& p);

} // namespace triapn::vectfun
