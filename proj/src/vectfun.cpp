#include "triapn/vectfun.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <random>
#include <thread>

#include "triapn/error.hpp"

namespace triapn::vectfun {

namespace {

struct DdtPartial {
    std::uint32_t max = 0;
    std::map<std::uint32_t, std::uint64_t> spectrum;
    bool aborted = false;
};

// Streams rows u in [u_begin, u_end); one counter buffer per call.
DdtPartial ddt_rows(const Lut& lut, std::uint64_t u_begin, std::uint64_t u_end,
                    std::optional<std::uint32_t> abort_above,
                    std::atomic<bool>* stop) {
    const std::uint64_t size = lut.size();
    std::vector<std::uint32_t> counts(size);
    DdtPartial out;
    for (std::uint64_t u = u_begin; u < u_end; ++u) {
        if (stop != nullptr && stop->load(std::memory_order_relaxed)) {
            out.aborted = true;
            return out;
        }
        std::fill(counts.begin(), counts.end(), 0u);
        for (std::uint64_t x = 0; x < size; ++x) {
            const std::uint32_t diff = lut.table[x ^ u] ^ lut.table[x];
            const std::uint32_t c = ++counts[diff];
            if (abort_above && c > *abort_above) {
                out.max = std::max(out.max, c);
                out.aborted = true;
                if (stop != nullptr)
                    stop->store(true, std::memory_order_relaxed);
                return out;
            }
        }
        std::uint64_t row_sum = 0;
        for (std::uint64_t v = 0; v < size; ++v) {
            const std::uint32_t c = counts[v];
            row_sum += c;
            out.max = std::max(out.max, c);
            ++out.spectrum[c];
        }
        if (row_sum != size)
            fail(errc::oracle_disagreement, "DDT row sum != 2^n");
    }
    return out;
}

} // namespace

DdtReport differential_uniformity(const Lut& lut,
                                  std::optional<std::uint32_t> abort_above,
                                  int workers) {
    const std::uint64_t size = lut.size();
    DdtReport report;
    if (workers <= 1 || size <= 2) {
        const auto part = ddt_rows(lut, 1, size, abort_above, nullptr);
        report.max_uniformity = part.max;
        report.spectrum = part.spectrum;
        report.early_aborted = part.aborted;
        return report;
    }

    const int nworkers = std::min<std::uint64_t>(workers, size - 1);
    std::vector<DdtPartial> parts(nworkers);
    std::vector<std::thread> threads;
    std::atomic<bool> stop{false};
    const std::uint64_t rows = size - 1;
    for (int w = 0; w < nworkers; ++w) {
        const std::uint64_t begin = 1 + rows * w / nworkers;
        const std::uint64_t end = 1 + rows * (w + 1) / nworkers;
        threads.emplace_back([&, w, begin, end] {
            parts[w] = ddt_rows(lut, begin, end, abort_above, &stop);
        });
    }
    for (auto& t : threads)
        t.join();
    for (const auto& part : parts) {
        report.max_uniformity = std::max(report.max_uniformity, part.max);
        report.early_aborted |= part.aborted;
        for (const auto& [value, count] : part.spectrum)
            report.spectrum[value] += count;
    }
    return report;
}

std::string ImageReport::describe() const {
    switch (cls) {
        case ImageClass::bijective: return "bijective";
        case ImageClass::r_to_1:    return std::to_string(r) + "-to-1";
        case ImageClass::irregular: return "irregular";
    }
    return "?";
}

ImageReport image_multiplicity(const Lut& lut) {
    const std::uint64_t size = lut.size();
    std::vector<std::uint32_t> freq(size, 0);
    for (const auto v : lut.table)
        ++freq[v];

    ImageReport report;
    for (std::uint64_t v = 1; v < size; ++v)
        ++report.histogram[freq[v]];

    bool bij = freq[0] == 1;
    for (std::uint64_t v = 1; v < size && bij; ++v)
        bij = freq[v] == 1;
    if (bij) {
        report.cls = ImageClass::bijective;
        report.r = 1;
        return report;
    }

    // r-to-1 on nonzero values requires 0 -> 0 with no other preimage of 0.
    if (lut.table[0] == 0 && freq[0] == 1) {
        std::uint32_t r = 0;
        bool uniform = true;
        for (std::uint64_t v = 1; v < size && uniform; ++v) {
            if (freq[v] == 0)
                continue;
            if (r == 0)
                r = freq[v];
            else
                uniform = freq[v] == r;
        }
        if (uniform && r > 0) {
            report.cls = ImageClass::r_to_1;
            report.r = r;
            return report;
        }
    }
    report.cls = ImageClass::irregular;
    return report;
}

WalshReport walsh_spectrum(const Lut& lut, const std::vector<std::uint32_t>* masks) {
    const std::uint64_t size = lut.size();
    std::vector<std::uint32_t> all;
    if (masks == nullptr) {
        if (lut.n > 20)
            fail(errc::too_large, "all-mask Walsh spectrum limited to n <= 20");
        all.reserve(size - 1);
        for (std::uint32_t v = 1; v < size; ++v)
            all.push_back(v);
        masks = &all;
    }

    WalshReport report;
    report.n = lut.n;
    std::vector<std::int32_t> buf(size);
    for (const auto v : *masks) {
        if (v >= size)
            fail(errc::bad_argument, "mask out of range");
        for (std::uint64_t x = 0; x < size; ++x)
            buf[x] = (std::popcount(v & lut.table[x]) & 1) ? -1 : 1;
        for (std::uint64_t h = 1; h < size; h <<= 1)
            for (std::uint64_t i = 0; i < size; i += h << 1)
                for (std::uint64_t j = i; j < i + h; ++j) {
                    const std::int32_t a = buf[j];
                    const std::int32_t b = buf[j + h];
                    buf[j] = a + b;
                    buf[j + h] = a - b;
                }
        WalshMaskReport mask_report;
        mask_report.v = v;
        std::uint64_t sum_sq = 0;
        for (const auto w : buf) {
            ++mask_report.values[w];
            sum_sq += static_cast<std::uint64_t>(static_cast<std::int64_t>(w) *
                                                 static_cast<std::int64_t>(w));
        }
        if (sum_sq != std::uint64_t{1} << (2 * lut.n))
            fail(errc::oracle_disagreement, "Parseval identity violated");
        report.masks.push_back(std::move(mask_report));
    }
    return report;
}

LinMap3 LinMap3::identity(int n) {
    LinMap3 map;
    map.n_ = n;
    map.m_ = 0;
    map.rows_.resize(n);
    for (int i = 0; i < n; ++i)
        map.rows_[i] = std::uint32_t{1} << i;
    return map;
}

LinMap3 LinMap3::block_perm(int m, const std::array<int, 3>& perm) {
    std::array<bool, 3> seen{};
    for (const int p : perm) {
        if (p < 0 || p > 2 || seen[p])
            fail(errc::bad_argument, "block permutation must permute {0,1,2}");
        seen[p] = true;
    }
    LinMap3 map;
    map.n_ = 3 * m;
    map.m_ = m;
    map.perm_ = perm;
    return map;
}

LinMap3 LinMap3::bit_matrix(int n, std::vector<std::uint32_t> rows) {
    if (n < 1 || n > 30 || static_cast<int>(rows.size()) != n)
        fail(errc::width_mismatch, "bit matrix needs exactly n rows");
    const std::uint32_t mask = (n == 32) ? ~0u : (std::uint32_t{1} << n) - 1;
    for (const auto r : rows)
        if ((r & ~mask) != 0)
            fail(errc::width_mismatch, "bit matrix row wider than n");
    // Gaussian elimination rank check.
    std::vector<std::uint32_t> work = rows;
    int rank = 0;
    for (int bit = 0; bit < n; ++bit) {
        int pivot = -1;
        for (int i = rank; i < n; ++i)
            if ((work[i] >> bit) & 1) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(work[rank], work[pivot]);
        for (int i = 0; i < n; ++i)
            if (i != rank && ((work[i] >> bit) & 1))
                work[i] ^= work[rank];
        ++rank;
    }
    if (rank != n)
        fail(errc::singular, "bit matrix is singular");
    LinMap3 map;
    map.n_ = n;
    map.rows_ = std::move(rows);
    return map;
}

std::uint32_t LinMap3::apply(std::uint32_t x) const {
    if (rows_.empty()) {
        const std::uint32_t mask = (std::uint32_t{1} << m_) - 1;
        std::uint32_t out = 0;
        for (int i = 0; i < 3; ++i)
            out |= ((x >> (m_ * perm_[i])) & mask) << (m_ * i);
        return out;
    }
    std::uint32_t out = 0;
    for (int i = 0; i < n_; ++i)
        out |= static_cast<std::uint32_t>(std::popcount(rows_[i] & x) & 1) << i;
    return out;
}

Lut lut_transform(const LinMap3& l1, const Lut& lut, const LinMap3& l2) {
    if (l1.width() != lut.n || l2.width() != lut.n)
        fail(errc::width_mismatch, "linear map width does not match the LUT");
    Lut out;
    out.n = lut.n;
    out.table.resize(lut.size());
    for (std::uint64_t x = 0; x < lut.size(); ++x)
        out.table[x] = l1.apply(lut.table[l2.apply(static_cast<std::uint32_t>(x))]);
    return out;
}

std::vector<std::uint32_t> derivative_kernel(const family::Params& p, const Lut& lut,
                                             std::uint32_t y) {
    if (y == 0)
        fail(errc::zero_direction, "derivative direction must be nonzero");
    (void)p;
    std::vector<std::uint32_t> kernel;
    const std::uint32_t fy = lut.table[y];
    for (std::uint64_t x = 0; x < lut.size(); ++x)
        if ((lut.table[x ^ y] ^ lut.table[x] ^ fy) == 0)
            kernel.push_back(static_cast<std::uint32_t>(x));
    return kernel;
}

std::vector<family::Vec3> derivative_kernel(const family::Params& p, family::Vec3 y) {
    const auto table = family::lut(p);
    const auto packed = derivative_kernel(p, table, family::pack(*p.field, y));
    std::vector<family::Vec3> out;
    out.reserve(packed.size());
    for (const auto w : packed)
        out.push_back(family::unpack(*p.field, w));
    return out;
}

namespace {

// Packed table of v -> lambda * v (componentwise).
std::vector<std::uint32_t> scalar_table(const gf::Field& f, gf::Felt lambda) {
    const int n = 3 * f.degree();
    std::vector<std::uint32_t> t(std::uint64_t{1} << n);
    for (std::uint64_t w = 0; w < t.size(); ++w) {
        const auto v = family::unpack(f, static_cast<std::uint32_t>(w));
        t[w] = family::pack(
            f, {f.mul(lambda, v.x), f.mul(lambda, v.y), f.mul(lambda, v.z)});
    }
    return t;
}

bool core_linear_for(const family::Params& p, const Lut& lut, gf::Felt lambda) {
    const gf::Field& f = *p.field;
    if (lambda == 0 || lambda == 1)
        return true;
    const auto lam = scalar_table(f, lambda);
    const auto& t = lut.table;
    const std::uint64_t size = lut.size();
    if (f.degree() <= 4) {
        for (std::uint64_t y = 1; y < size; ++y) {
            const std::uint32_t fy = t[y];
            for (std::uint64_t x = 0; x < size; ++x) {
                const std::uint32_t lx = lam[x];
                const std::uint32_t lhs = t[lx ^ y] ^ t[lx] ^ fy;
                const std::uint32_t rhs = lam[t[x ^ y] ^ t[x] ^ fy];
                if (lhs != rhs)
                    return false;
            }
        }
        return true;
    }
    std::mt19937 rng(0x5eedu);
    std::uniform_int_distribution<std::uint64_t> dist(0, size - 1);
    for (int i = 0; i < 200000; ++i) {
        std::uint64_t y = dist(rng);
        if (y == 0)
            continue;
        const std::uint64_t x = dist(rng);
        const std::uint32_t lx = lam[x];
        const std::uint32_t lhs = t[lx ^ y] ^ t[lx] ^ t[y];
        const std::uint32_t rhs = lam[t[x ^ y] ^ t[x] ^ t[y]];
        if (lhs != rhs)
            return false;
    }
    return true;
}

} // namespace

int compute_core(const family::Params& p, const Lut& lut) {
    const gf::Field& f = *p.field;
    const int m = f.degree();
    for (int e = m; e >= 1; --e) {
        if (m % e != 0)
            continue;
        bool ok = true;
        for (const auto lambda : f.subfield(e)) {
            if (!core_linear_for(p, lut, lambda)) {
                ok = false;
                break;
            }
        }
        if (ok)
            return e;
    }
    return 1;
}

int compute_core(const family::Params& p) {
    const auto table = family::lut(p);
    return compute_core(p, table);
}

} // namespace triapn::vectfun
