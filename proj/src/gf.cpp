#include "triapn/gf.hpp"

#include <bit>
#include <numeric>

namespace triapn::gf {

namespace {

int pdeg(std::uint64_t p) {
    return p == 0 ? -1 : std::bit_width(p) - 1;
}

std::uint64_t pmod(std::uint64_t a, std::uint64_t b) {
    const int db = pdeg(b);
    while (a != 0 && pdeg(a) >= db)
        a ^= b << (pdeg(a) - db);
    return a;
}

} // namespace

bool poly_irreducible(std::uint64_t p) {
    const int d = pdeg(p);
    if (d < 1)
        return false;
    // Trial division by every polynomial of degree 1..d/2.
    for (std::uint64_t g = 2; g < (std::uint64_t{1} << (d / 2 + 1)); ++g)
        if (pmod(p, g) == 0)
            return false;
    return true;
}

Felt default_reduction(int m) {
    // Least irreducible per degree, found by the exhaustive sieve (the unit
    // tests recompute this table from scratch).
    static constexpr std::uint32_t table[17] = {
        0,      0,      0x7,    0xb,    0x13,   0x25,   0x43,    0x83,   0x11b,
        0x203,  0x409,  0x805,  0x1009, 0x201b, 0x4021, 0x8003,  0x1002b,
    };
    if (m < 2 || m > 16)
        fail(errc::bad_argument, "no default reduction for degree " + std::to_string(m));
    return table[m];
}

Field::Field(int m) : Field(m, default_reduction(m)) {}

Field::Field(int m, std::uint32_t reduction) : m_(m), red_(reduction), q_(0) {
    if (m < 2 || m > 16)
        fail(errc::bad_argument, "field degree must be in [2, 16], got " + std::to_string(m));
    q_ = std::uint32_t{1} << m;
    if ((reduction >> m) != 1u)
        fail(errc::degree_mismatch,
             "reduction polynomial must have degree exactly " + std::to_string(m));
    if (!poly_irreducible(reduction))
        fail(errc::not_irreducible, "reduction polynomial factors over F_2");
    if (m_ <= 8) {
        multab_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t x = 0; x < q_; ++x)
            for (std::uint32_t y = 0; y < q_; ++y)
                multab_[(static_cast<std::size_t>(x) << m_) | y] =
                    static_cast<std::uint16_t>(mul_schoolbook(x, y));
    }
}

Felt Field::mul_schoolbook(Felt x, Felt y) const {
    std::uint64_t acc = 0;
    std::uint64_t xs = x;
    for (std::uint32_t yy = y; yy != 0; yy >>= 1, xs <<= 1)
        if (yy & 1)
            acc ^= xs;
    for (int d = 2 * m_ - 2; d >= m_; --d)
        if ((acc >> d) & 1)
            acc ^= static_cast<std::uint64_t>(red_) << (d - m_);
    return static_cast<Felt>(acc);
}

Felt Field::inv(Felt x) const {
    if (x == 0)
        fail(errc::division_by_zero, "inverse of zero");
    return pow(x, q_ - 2);
}

Felt Field::pow(Felt x, std::uint64_t e) const {
    if (x == 0)
        return e == 0 ? 1u : 0u;
    e %= q_ - 1;
    Felt r = 1;
    Felt base = x;
    while (e != 0) {
        if (e & 1)
            r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Felt Field::frobenius(Felt x, int k) const {
    if (k < 0)
        fail(errc::bad_argument, "negative frobenius exponent");
    k %= m_;
    for (int i = 0; i < k; ++i)
        x = mul(x, x);
    return x;
}

std::vector<Felt> Field::frobenius_table(int k) const {
    std::vector<Felt> t(q_);
    for (std::uint32_t x = 0; x < q_; ++x)
        t[x] = frobenius(x, k);
    return t;
}

std::vector<Felt> Field::subfield(int e) const {
    if (e < 1 || m_ % e != 0)
        fail(errc::not_a_divisor, std::to_string(e) + " does not divide " + std::to_string(m_));
    std::vector<Felt> out;
    out.reserve(std::size_t{1} << e);
    for (std::uint32_t x = 0; x < q_; ++x)
        if (frobenius(x, e) == x)
            out.push_back(x);
    return out;
}

std::uint64_t gcd_power(int m, int n, Sign sign) {
    if (m < 1 || n < 1 || m > 62 || n > 62)
        fail(errc::bad_argument, "gcd_power exponents must be in [1, 62]");
    const int d = std::gcd(m, n);
    std::uint64_t closed;
    if (sign == Sign::minus)
        closed = (std::uint64_t{1} << d) - 1;
    else
        closed = ((n / d) % 2 == 1) ? 1 : (std::uint64_t{1} << d) + 1;

    const std::uint64_t lhs = sign == Sign::minus ? (std::uint64_t{1} << m) - 1
                                                  : (std::uint64_t{1} << m) + 1;
    const std::uint64_t direct = std::gcd(lhs, (std::uint64_t{1} << n) - 1);
    if (closed != direct)
        fail(errc::oracle_disagreement,
             "gcd_power closed form " + std::to_string(closed) + " != direct gcd " +
                 std::to_string(direct));
    return closed;
}

namespace {

Felt least_irreducible_nu(const Field& base) {
    for (Felt nu = 0; nu < base.order(); ++nu) {
        bool has_root = false;
        for (Felt t = 0; t < base.order() && !has_root; ++t)
            has_root = (base.mul(t, t) ^ t ^ nu) == 0;
        if (!has_root)
            return nu;
    }
    fail(errc::not_irreducible, "no irreducible u^2 + u + nu over the base field");
}

} // namespace

ExtField::ExtField(const Field& base) : base_(base), nu_(least_irreducible_nu(base)) {}

ExtField::ExtField(const Field& base, Felt nu) : base_(base), nu_(nu) {
    for (Felt t = 0; t < base_.order(); ++t)
        if ((base_.mul(t, t) ^ t ^ nu_) == 0)
            fail(errc::not_irreducible, "u^2 + u + nu has a root in the base field");
}

ExtFelt ExtField::mul(ExtFelt x, ExtFelt y) const {
    // (a1 + b1 u)(a2 + b2 u) with u^2 = u + nu.
    const Felt bb = base_.mul(x.b, y.b);
    const Felt a = base_.mul(x.a, y.a) ^ base_.mul(bb, nu_);
    const Felt b = base_.mul(x.a, y.b) ^ base_.mul(x.b, y.a) ^ bb;
    return {a, b};
}

ExtFelt ExtField::sq(ExtFelt x) const {
    const Felt b2 = base_.mul(x.b, x.b);
    return {base_.mul(x.a, x.a) ^ base_.mul(b2, nu_), b2};
}

ExtFelt ExtField::inv(ExtFelt x) const {
    if (is_zero(x))
        fail(errc::division_by_zero, "inverse of zero");
    // Conjugate is (a + b) + b u; the norm a^2 + ab + nu b^2 lies in F_q.
    const Felt norm = base_.mul(x.a, x.a) ^ base_.mul(x.a, x.b) ^
                      base_.mul(nu_, base_.mul(x.b, x.b));
    const Felt ninv = base_.inv(norm);
    return {base_.mul(x.a ^ x.b, ninv), base_.mul(x.b, ninv)};
}

ExtFelt ExtField::frobenius(ExtFelt x, int k) const {
    if (k < 0)
        fail(errc::bad_argument, "negative frobenius exponent");
    k %= 2 * base_.degree();
    for (int i = 0; i < k; ++i)
        x = sq(x);
    return x;
}

} // namespace triapn::gf
