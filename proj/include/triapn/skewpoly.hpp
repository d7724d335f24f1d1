#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "triapn/error.hpp"
#include "triapn/gf.hpp"

// The twisted polynomial ring F[t; sigma] with sigma: x -> x^(2^twist) and
// the multiplication rule t*a = a^sigma * t. Coefficient convention:
// coeffs[i] multiplies t^i from the left. "R right-divides P" means zero
// remainder in divmod_right(P, R).
namespace triapn::skew {

template <class F>
struct Poly {
    using Elt = typename F::Elt;

    const F* field = nullptr;
    int twist = 0;
    std::vector<Elt> coeffs; // coeffs[i] * t^i, no zero high coefficients

    friend bool operator==(const Poly& p, const Poly& q) {
        return p.twist == q.twist && p.coeffs == q.coeffs && p.field->same(*q.field);
    }
};

template <class F>
void normalize(Poly<F>& p) {
    while (!p.coeffs.empty() && p.field->is_zero(p.coeffs.back()))
        p.coeffs.pop_back();
}

template <class F>
Poly<F> make(const F& field, int twist, std::vector<typename F::Elt> coeffs) {
    Poly<F> p{&field, twist, std::move(coeffs)};
    normalize(p);
    return p;
}

template <class F>
Poly<F> zero_poly(const F& field, int twist) {
    return {&field, twist, {}};
}

template <class F>
Poly<F> one_poly(const F& field, int twist) {
    return {&field, twist, {field.one()}};
}

template <class F>
int degree(const Poly<F>& p) {
    return static_cast<int>(p.coeffs.size()) - 1;
}

template <class F>
bool is_zero(const Poly<F>& p) {
    return p.coeffs.empty();
}

template <class F>
void check_ctx(const Poly<F>& p, const Poly<F>& q) {
    if (p.twist != q.twist || !p.field->same(*q.field))
        fail(errc::ctx_mismatch, "operands live in different twisted rings");
}

// sigma^i as a number of squarings, normalized to the field's F_2-degree.
template <class F>
int twist_steps(const Poly<F>& p, int i) {
    const int deg = p.field->f2_degree();
    return static_cast<int>((static_cast<std::int64_t>(p.twist) * i) % deg);
}

template <class F>
Poly<F> add(const Poly<F>& p, const Poly<F>& q) {
    check_ctx(p, q);
    Poly<F> r{p.field, p.twist, {}};
    r.coeffs.resize(std::max(p.coeffs.size(), q.coeffs.size()), p.field->zero());
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        r.coeffs[i] = p.field->add(r.coeffs[i], p.coeffs[i]);
    for (std::size_t i = 0; i < q.coeffs.size(); ++i)
        r.coeffs[i] = p.field->add(r.coeffs[i], q.coeffs[i]);
    normalize(r);
    return r;
}

template <class F>
Poly<F> mul(const Poly<F>& p, const Poly<F>& q) {
    check_ctx(p, q);
    if (is_zero(p) || is_zero(q))
        return zero_poly(*p.field, p.twist);
    const F& f = *p.field;
    Poly<F> r{p.field, p.twist, {}};
    r.coeffs.assign(p.coeffs.size() + q.coeffs.size() - 1, f.zero());
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        if (f.is_zero(p.coeffs[i]))
            continue;
        const int steps = twist_steps(p, static_cast<int>(i));
        for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
            // (a t^i)(b t^j) = a * sigma^i(b) t^(i+j)
            const auto term = f.mul(p.coeffs[i], f.frobenius(q.coeffs[j], steps));
            r.coeffs[i + j] = f.add(r.coeffs[i + j], term);
        }
    }
    normalize(r);
    return r;
}

// Left-scale by a constant: c * (a_i t^i) = (c a_i) t^i.
template <class F>
Poly<F> scale_left(typename F::Elt c, const Poly<F>& p) {
    Poly<F> r{p.field, p.twist, p.coeffs};
    for (auto& a : r.coeffs)
        a = p.field->mul(c, a);
    normalize(r);
    return r;
}

template <class F>
Poly<F> monic(const Poly<F>& p) {
    if (is_zero(p))
        return p;
    return scale_left(p.field->inv(p.coeffs.back()), p);
}

template <class F>
struct DivMod {
    Poly<F> quot;
    Poly<F> rem;
};

// P = quot * R + rem with deg(rem) < deg(R).
template <class F>
DivMod<F> divmod_right(const Poly<F>& p, const Poly<F>& r) {
    check_ctx(p, r);
    if (is_zero(r))
        fail(errc::division_by_zero_poly, "right division by the zero polynomial");
    const F& f = *p.field;
    const int dr = degree(r);
    Poly<F> q = zero_poly(f, p.twist);
    Poly<F> s = p;
    if (degree(s) >= dr)
        q.coeffs.assign(degree(s) - dr + 1, f.zero());
    while (degree(s) >= dr) {
        const int ds = degree(s);
        const int shift = ds - dr;
        // (c t^shift)(lead(R) t^dr) must cancel lead(S) t^ds.
        const auto lead = f.frobenius(r.coeffs.back(), twist_steps(p, shift));
        const auto c = f.mul(s.coeffs[ds], f.inv(lead));
        q.coeffs[shift] = c;
        for (int j = 0; j <= dr; ++j) {
            const auto term = f.mul(c, f.frobenius(r.coeffs[j], twist_steps(p, shift)));
            s.coeffs[j + shift] = f.add(s.coeffs[j + shift], term);
        }
        normalize(s);
    }
    normalize(q);
    return {std::move(q), std::move(s)};
}

// P = R * quot + rem with deg(rem) < deg(R).
template <class F>
DivMod<F> divmod_left(const Poly<F>& p, const Poly<F>& r) {
    check_ctx(p, r);
    if (is_zero(r))
        fail(errc::division_by_zero_poly, "left division by the zero polynomial");
    const F& f = *p.field;
    const int fdeg = f.f2_degree();
    const int dr = degree(r);
    const int rsteps = twist_steps(p, dr);
    const int inv_rsteps = (fdeg - rsteps % fdeg) % fdeg;
    const auto lead_inv = f.inv(r.coeffs.back());
    Poly<F> q = zero_poly(f, p.twist);
    Poly<F> s = p;
    if (degree(s) >= dr)
        q.coeffs.assign(degree(s) - dr + 1, f.zero());
    while (degree(s) >= dr) {
        const int ds = degree(s);
        const int shift = ds - dr;
        // (lead(R) t^dr)(c t^shift) = lead(R) sigma^dr(c) t^ds.
        const auto c = f.frobenius(f.mul(lead_inv, s.coeffs[ds]), inv_rsteps);
        q.coeffs[shift] = c;
        for (int j = 0; j <= dr; ++j) {
            const auto term = f.mul(r.coeffs[j], f.frobenius(c, twist_steps(p, j)));
            s.coeffs[j + shift] = f.add(s.coeffs[j + shift], term);
        }
        normalize(s);
    }
    normalize(q);
    return {std::move(q), std::move(s)};
}

// Monic greatest common right divisor via the right Euclidean algorithm.
template <class F>
Poly<F> gcrd(const Poly<F>& p1, const Poly<F>& p2) {
    check_ctx(p1, p2);
    if (is_zero(p1) && is_zero(p2))
        fail(errc::both_zero, "gcrd of two zero polynomials");
    Poly<F> a = p1;
    Poly<F> b = p2;
    while (!is_zero(b)) {
        auto dm = divmod_right(a, b);
        a = std::move(b);
        b = std::move(dm.rem);
    }
    return monic(a);
}

// Monic least common left multiple via the extended right Euclidean
// algorithm; the degree identity deg(lclm) = deg(P1) + deg(P2) - deg(gcrd)
// is asserted as a post-condition.
template <class F>
Poly<F> lclm(const Poly<F>& p1, const Poly<F>& p2) {
    check_ctx(p1, p2);
    if (is_zero(p1) || is_zero(p2))
        fail(errc::zero_input, "lclm of a zero polynomial");
    Poly<F> r0 = p1;
    Poly<F> r1 = p2;
    Poly<F> u0 = one_poly(*p1.field, p1.twist);  // r_i = u_i * P1 + v_i * P2
    Poly<F> u1 = zero_poly(*p1.field, p1.twist);
    while (!is_zero(r1)) {
        auto dm = divmod_right(r0, r1);
        Poly<F> u2 = add(u0, mul(dm.quot, u1));
        r0 = std::move(r1);
        r1 = std::move(dm.rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    // Here r0 = gcrd (up to scaling) and u1 * P1 = v1 * P2 is the lclm.
    Poly<F> l = monic(mul(u1, p1));
    if (degree(l) != degree(p1) + degree(p2) - degree(r0))
        fail(errc::oracle_disagreement, "lclm degree formula violated");
    return l;
}

// Smallest b (by enumeration index) with (t - b) right-dividing P, if any.
template <class F>
std::optional<typename F::Elt> linear_right_divisor(const Poly<F>& p) {
    if (degree(p) < 1)
        fail(errc::bad_argument, "divisor search needs degree >= 1");
    const F& f = *p.field;
    for (std::uint64_t i = 0; i < f.card(); ++i) {
        const auto b = f.element_at(i);
        const auto lin = make(f, p.twist, {b, f.one()});
        if (is_zero(divmod_right(p, lin).rem))
            return b;
    }
    return std::nullopt;
}

template <class F>
std::optional<typename F::Elt> linear_left_divisor(const Poly<F>& p) {
    if (degree(p) < 1)
        fail(errc::bad_argument, "divisor search needs degree >= 1");
    const F& f = *p.field;
    for (std::uint64_t i = 0; i < f.card(); ++i) {
        const auto b = f.element_at(i);
        const auto lin = make(f, p.twist, {b, f.one()});
        if (is_zero(divmod_left(p, lin).rem))
            return b;
    }
    return std::nullopt;
}

} // namespace triapn::skew
