#include "triapn/family.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "triapn/skewpoly.hpp"

namespace triapn::family {

Params make_params(const gf::Field& field, int k, Felt a, Felt b, Felt c) {
    if (k < 1 || k >= field.degree())
        fail(errc::bad_twist,
             "twist exponent must satisfy 1 <= k < m, got k=" + std::to_string(k));
    if (a == 0)
        fail(errc::zero_a, "parameter a must be nonzero");
    if (a >= field.order() || b >= field.order() || c >= field.order())
        fail(errc::bad_argument, "parameter out of field range");
    return {&field, k, a, b, c, std::gcd(k, field.degree())};
}

Vec3 eval(const Params& p, Vec3 v) {
    const gf::Field& f = *p.field;
    const Felt xs = f.frobenius(v.x, p.k);
    const Felt ys = f.frobenius(v.y, p.k);
    const Felt zs = f.frobenius(v.z, p.k);
    const Felt f1 = f.mul(xs, v.x) ^ f.mul(p.a, f.mul(ys, v.z)) ^
                    f.mul(p.b, f.mul(xs, v.y)) ^ f.mul(p.c, f.mul(xs, v.z));
    const Felt f2 = f.mul(p.a, f.mul(ys, v.y)) ^ f.mul(zs, v.x) ^
                    f.mul(p.b, f.mul(zs, v.y)) ^ f.mul(p.c, f.mul(xs, v.y));
    const Felt f3 = f.mul(zs, v.z) ^ f.mul(xs, v.y);
    return {f1, f2, f3};
}

std::uint32_t pack(const gf::Field& f, Vec3 v) {
    const int m = f.degree();
    return v.x | (v.y << m) | (v.z << (2 * m));
}

Vec3 unpack(const gf::Field& f, std::uint32_t w) {
    const int m = f.degree();
    const std::uint32_t mask = f.order() - 1;
    return {w & mask, (w >> m) & mask, (w >> (2 * m)) & mask};
}

bool condition_has_root_direct(const Params& p) {
    const gf::Field& f = *p.field;
    for (Felt x = 0; x < f.order(); ++x) {
        const Felt s1 = f.frobenius(x, p.k);
        const Felt s2 = f.frobenius(x, 2 * p.k);
        const Felt val = f.mul(p.a, f.mul(f.mul(s2, s1), x)) ^
                         f.mul(p.b, f.mul(s1, x)) ^ f.mul(p.c, x) ^ 1u;
        if (val == 0)
            return true;
    }
    return false;
}

bool condition_has_root_skew(const Params& p) {
    const auto poly = skew::make(*p.field, p.k, {Felt{1}, p.c, p.b, p.a});
    return skew::linear_right_divisor(poly).has_value();
}

bool condition_has_root(const Params& p) {
    const bool direct = condition_has_root_direct(p);
    const bool via_skew = condition_has_root_skew(p);
    if (direct != via_skew)
        fail(errc::oracle_disagreement,
             "root search and skew divisor search disagree");
    return direct;
}

bool condition_has_root_ext(const Params& p, const gf::ExtField& ext) {
    if (!ext.base().same(*p.field))
        fail(errc::ctx_mismatch, "extension built over a different base field");
    const auto a = ext.embed(p.a);
    const auto b = ext.embed(p.b);
    const auto c = ext.embed(p.c);
    for (std::uint64_t i = 0; i < ext.card(); ++i) {
        const auto x = ext.element_at(i);
        const auto s1 = ext.frobenius(x, p.k);
        const auto s2 = ext.frobenius(x, 2 * p.k);
        auto val = ext.mul(a, ext.mul(ext.mul(s2, s1), x));
        val = ext.add(val, ext.mul(b, ext.mul(s1, x)));
        val = ext.add(val, ext.mul(c, x));
        val = ext.add(val, ext.one());
        if (ext.is_zero(val))
            return true;
    }
    return false;
}

Vec3 proj_canonical(const gf::Field& f, Vec3 v) {
    if (v.x != 0) {
        const Felt s = f.inv(v.x);
        return {1, f.mul(s, v.y), f.mul(s, v.z)};
    }
    if (v.y != 0) {
        const Felt s = f.inv(v.y);
        return {0, 1, f.mul(s, v.z)};
    }
    if (v.z != 0)
        return {0, 0, 1};
    fail(errc::bad_argument, "no projective point for the zero vector");
}

std::vector<Vec3> proj_points(const gf::Field& f) {
    const std::uint32_t q = f.order();
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(q) * q + q + 1);
    for (Felt y = 0; y < q; ++y)
        for (Felt z = 0; z < q; ++z)
            pts.push_back({1, y, z});
    for (Felt z = 0; z < q; ++z)
        pts.push_back({0, 1, z});
    pts.push_back({0, 0, 1});
    return pts;
}

ProjVerdict projective_bijective(const Params& p) {
    const gf::Field& f = *p.field;
    std::vector<std::uint32_t> images;
    images.reserve(static_cast<std::size_t>(f.order()) * f.order() + f.order() + 1);
    for (const auto& v : proj_points(f)) {
        const Vec3 w = eval(p, v);
        if (w == Vec3{})
            return ProjVerdict::zero_image;
        images.push_back(pack(f, proj_canonical(f, w)));
    }
    std::sort(images.begin(), images.end());
    const bool distinct = std::adjacent_find(images.begin(), images.end()) == images.end();
    return distinct ? ProjVerdict::bijective : ProjVerdict::not_bijective;
}

Lut lut(const Params& p) {
    const gf::Field& f = *p.field;
    const int m = f.degree();
    const int n = 3 * m;
    if (n > 30)
        fail(errc::too_large, "LUT would need 2^" + std::to_string(n) + " entries");
    const auto fk = f.frobenius_table(p.k);
    Lut out;
    out.n = n;
    out.table.resize(std::uint64_t{1} << n);
    const std::uint32_t q = f.order();
    std::uint64_t idx = 0;
    for (Felt z = 0; z < q; ++z) {
        const Felt zs = fk[z];
        const Felt zz = f.mul(zs, z);
        for (Felt y = 0; y < q; ++y) {
            const Felt ys = fk[y];
            const Felt ayz = f.mul(p.a, f.mul(ys, z));       // a y^s z
            const Felt ayy = f.mul(p.a, f.mul(ys, y));       // a y^(s+1)
            const Felt bzy = f.mul(p.b, f.mul(zs, y));       // b z^s y
            const Felt byz = f.mul(p.b, y) ^ f.mul(p.c, z);  // x^s (b y + c z)
            const Felt cy = f.mul(p.c, y);
            for (Felt x = 0; x < q; ++x) {
                const Felt xs = fk[x];
                const Felt f1 = f.mul(xs, x ^ byz) ^ ayz;
                const Felt f2 = ayy ^ f.mul(zs, x) ^ bzy ^ f.mul(cy, xs);
                const Felt f3 = zz ^ f.mul(xs, y);
                out.table[idx++] = f1 | (f2 << m) | (f3 << (2 * m));
            }
        }
    }
    return out;
}

bool scalar_automorphism_holds(const Params& p, Felt s) {
    if (s == 0)
        fail(errc::zero_scalar, "scalar must be nonzero");
    const gf::Field& f = *p.field;
    const Felt spow = f.mul(f.frobenius(s, p.k), s); // s^(sigma+1)
    const auto check = [&](Vec3 v) {
        const Vec3 sv{f.mul(s, v.x), f.mul(s, v.y), f.mul(s, v.z)};
        const Vec3 lhs = eval(p, sv);
        const Vec3 w = eval(p, v);
        const Vec3 rhs{f.mul(spow, w.x), f.mul(spow, w.y), f.mul(spow, w.z)};
        return lhs == rhs;
    };
    const int n = 3 * f.degree();
    if (f.degree() <= 4) {
        for (std::uint32_t w = 0; w < (std::uint32_t{1} << n); ++w)
            if (!check(unpack(f, w)))
                return false;
        return true;
    }
    std::mt19937 rng(0x5eedu);
    std::uniform_int_distribution<std::uint32_t> dist(0, (std::uint32_t{1} << n) - 1);
    for (int i = 0; i < 10000; ++i)
        if (!check(unpack(f, dist(rng))))
            return false;
    return true;
}

namespace {

Lut lut_of(const gf::Field& f, int k, Vec3 (*ev)(const gf::Field&, int, Felt, Vec3), Felt a) {
    const int m = f.degree();
    const int n = 3 * m;
    if (n > 30)
        fail(errc::too_large, "LUT would need 2^" + std::to_string(n) + " entries");
    Lut out;
    out.n = n;
    out.table.resize(std::uint64_t{1} << n);
    for (std::uint64_t w = 0; w < out.table.size(); ++w)
        out.table[w] = pack(f, ev(f, k, a, unpack(f, static_cast<std::uint32_t>(w))));
    return out;
}

Vec3 li1_eval(const gf::Field& f, int k, Felt, Vec3 v) {
    const Felt xs = f.frobenius(v.x, k);
    const Felt ys = f.frobenius(v.y, k);
    const Felt zs = f.frobenius(v.z, k);
    return {f.mul(xs, v.x) ^ f.mul(xs, v.z) ^ f.mul(v.y, zs),
            f.mul(xs, v.z) ^ f.mul(ys, v.y),
            f.mul(v.x, ys) ^ f.mul(ys, v.z) ^ f.mul(zs, v.z)};
}

Vec3 li2_eval(const gf::Field& f, int k, Felt, Vec3 v) {
    const Felt xs = f.frobenius(v.x, k);
    const Felt ys = f.frobenius(v.y, k);
    const Felt zs = f.frobenius(v.z, k);
    return {f.mul(xs, v.x) ^ f.mul(v.x, ys) ^ f.mul(v.y, zs),
            f.mul(v.x, ys) ^ f.mul(zs, v.z),
            f.mul(xs, v.z) ^ f.mul(ys, v.z) ^ f.mul(ys, v.y)};
}

Vec3 bs_eval(const gf::Field& f, int k, Felt a, Vec3 v) {
    const Felt xs = f.frobenius(v.x, k);
    const Felt ys = f.frobenius(v.y, k);
    const Felt zs = f.frobenius(v.z, k);
    return {f.mul(xs, v.x) ^ f.mul(a, f.mul(v.x, ys)) ^ f.mul(v.y, zs),
            f.mul(v.x, ys) ^ f.mul(zs, v.z),
            f.mul(xs, v.z) ^ f.mul(ys, v.y) ^ f.mul(a, f.mul(ys, v.z))};
}

} // namespace

PriorFamily li_kaleyski_1(const gf::Field& f, int k) {
    return {lut_of(f, k, li1_eval, 0),
            make_params(f, k, 1, 1, 0),
            // swap output blocks 2,3 and rename y <-> z
            {{0, 2, 1}, {0, 2, 1}}};
}

PriorFamily li_kaleyski_2(const gf::Field& f, int k) {
    return {lut_of(f, k, li2_eval, 0),
            make_params(f, k, 1, 0, 1),
            // rotate output blocks and rename x <-> y
            {{1, 2, 0}, {1, 0, 2}}};
}

PriorFamily bartoli_stanica(const gf::Field& f, int k, Felt a) {
    return {lut_of(f, k, bs_eval, a),
            make_params(f, k, 1, 0, a),
            {{1, 2, 0}, {1, 0, 2}}};
}

Lut bartoli_stanica_literal_q(const gf::Field& f, Felt a) {
    // x^q = x on F_q, so the q-power exponents collapse to an untwisted map.
    const int m = f.degree();
    const int n = 3 * m;
    if (n > 30)
        fail(errc::too_large, "LUT would need 2^" + std::to_string(n) + " entries");
    Lut out;
    out.n = n;
    out.table.resize(std::uint64_t{1} << n);
    for (std::uint64_t w = 0; w < out.table.size(); ++w) {
        const Vec3 v = unpack(f, static_cast<std::uint32_t>(w));
        const Felt xq = f.frobenius(v.x, m);
        const Felt yq = f.frobenius(v.y, m);
        const Felt zq = f.frobenius(v.z, m);
        const Vec3 r{f.mul(xq, v.x) ^ f.mul(a, f.mul(v.x, yq)) ^ f.mul(v.y, zq),
                     f.mul(v.x, yq) ^ f.mul(zq, v.z),
                     f.mul(xq, v.z) ^ f.mul(yq, v.y) ^ f.mul(a, f.mul(yq, v.z))};
        out.table[w] = pack(f, r);
    }
    return out;
}

Lut gold_lut(const gf::Field& f, int i) {
    const int n = f.degree();
    if (i < 1 || i >= n || std::gcd(i, n) != 1)
        fail(errc::not_coprime, "gold exponent needs gcd(i, n) = 1 and 1 <= i < n");
    Lut out;
    out.n = n;
    out.table.resize(std::uint64_t{1} << n);
    for (std::uint32_t x = 0; x < f.order(); ++x)
        out.table[x] = f.mul(f.frobenius(x, i), x);
    return out;
}

Lut gold_lut(int n, int i) {
    if (n < 2 || n > 16)
        fail(errc::too_large, "gold field degree must be in [2, 16]");
    const gf::Field f(n);
    return gold_lut(f, i);
}

bool gold_automorphism_holds(const gf::Field& f, int i, Felt s, int j) {
    if (s == 0)
        fail(errc::zero_scalar, "scalar must be nonzero");
    if (j < 0 || j >= f.degree())
        fail(errc::bad_argument, "frobenius index out of range");
    if (std::gcd(i, f.degree()) != 1)
        fail(errc::not_coprime, "gold exponent needs gcd(i, n) = 1");
    const Felt spow = f.mul(f.frobenius(s, i), s); // s^(2^i+1)
    for (std::uint32_t x = 0; x < f.order(); ++x) {
        const Felt gx = f.mul(f.frobenius(x, i), x);
        const Felt lhs = f.mul(spow, f.frobenius(gx, j));
        const Felt arg = f.mul(s, f.frobenius(x, j));
        const Felt rhs = f.mul(f.frobenius(arg, i), arg);
        if (lhs != rhs)
            return false;
    }
    return true;
}

} // namespace triapn::family
