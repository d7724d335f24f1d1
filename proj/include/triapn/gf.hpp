#pragma once

#include <cstdint>
#include <vector>

#include "triapn/error.hpp"

namespace triapn::gf {

// Element of F_{2^m} in polynomial basis: bit i is the coefficient of X^i.
using Felt = std::uint32_t;

// Lexicographically least (as an integer) monic irreducible polynomial of
// degree m over F_2, for 2 <= m <= 16.
Felt default_reduction(int m);

// Exhaustive trial-division irreducibility test over F_2.
bool poly_irreducible(std::uint64_t p);

// F_{2^m} in polynomial basis modulo a validated irreducible polynomial.
// Immutable after construction; all operations are pure and thread-safe.
class Field {
public:
    using Elt = Felt;

    explicit Field(int m);
    Field(int m, std::uint32_t reduction);

    int degree() const { return m_; }
    std::uint32_t reduction() const { return red_; }
    std::uint32_t order() const { return q_; }

    Felt zero() const { return 0; }
    Felt one() const { return 1; }
    bool is_zero(Felt x) const { return x == 0; }

    Felt add(Felt x, Felt y) const { return x ^ y; }
    Felt mul(Felt x, Felt y) const {
        return multab_.empty() ? mul_schoolbook(x, y)
                               : multab_[(static_cast<std::size_t>(x) << m_) | y];
    }
    // Reference multiplication path (shift-and-reduce); the cached table is
    // validated against it in the tests.
    Felt mul_schoolbook(Felt x, Felt y) const;

    Felt sq(Felt x) const { return mul(x, x); }
    Felt inv(Felt x) const;
    Felt pow(Felt x, std::uint64_t e) const;

    // x^(2^k), computed by k squarings (k normalized mod m).
    Felt frobenius(Felt x, int k) const;
    // Table of x -> x^(2^k) over the whole field.
    std::vector<Felt> frobenius_table(int k) const;

    // The 2^e elements fixed by x -> x^(2^e), ascending. Requires e | m.
    std::vector<Felt> subfield(int e) const;

    bool same(const Field& o) const { return m_ == o.m_ && red_ == o.red_; }

    // Uniform enumeration surface shared with ExtField (used by the skew
    // polynomial divisor searches).
    std::uint64_t card() const { return q_; }
    Felt element_at(std::uint64_t i) const { return static_cast<Felt>(i); }
    int f2_degree() const { return m_; }

private:
    int m_;
    std::uint32_t red_;
    std::uint32_t q_;
    std::vector<std::uint16_t> multab_; // full table for m <= 8, else empty
};

enum class Sign { plus, minus };

// gcd(2^m + 1, 2^n - 1) or gcd(2^m - 1, 2^n - 1) by the closed subfield
// formula, cross-checked against the direct integer gcd on every call.
std::uint64_t gcd_power(int m, int n, Sign sign);

// Element a + b*u of F_{q^2} = F_q[u]/(u^2 + u + nu).
struct ExtFelt {
    Felt a = 0;
    Felt b = 0;
    friend bool operator==(const ExtFelt&, const ExtFelt&) = default;
};

// Quadratic extension tower over a base Field. The embedding of F_q is the
// identity on the first coordinate.
class ExtField {
public:
    using Elt = ExtFelt;

    // Picks the least nu (by bit value) with u^2 + u + nu irreducible.
    explicit ExtField(const Field& base);
    ExtField(const Field& base, Felt nu);

    const Field& base() const { return base_; }
    Felt nu() const { return nu_; }

    ExtFelt zero() const { return {0, 0}; }
    ExtFelt one() const { return {1, 0}; }
    bool is_zero(ExtFelt x) const { return x.a == 0 && x.b == 0; }

    ExtFelt embed(Felt x) const { return {x, 0}; }
    bool in_base(ExtFelt x) const { return x.b == 0; }

    ExtFelt add(ExtFelt x, ExtFelt y) const { return {x.a ^ y.a, x.b ^ y.b}; }
    ExtFelt mul(ExtFelt x, ExtFelt y) const;
    ExtFelt sq(ExtFelt x) const;
    ExtFelt inv(ExtFelt x) const;

    // x^(2^k) by k squarings (k normalized mod 2m).
    ExtFelt frobenius(ExtFelt x, int k) const;
    // x -> x^q; fixes exactly the embedded copy of F_q.
    ExtFelt frobenius_q(ExtFelt x) const { return frobenius(x, base_.degree()); }

    bool same(const ExtField& o) const { return base_.same(o.base_) && nu_ == o.nu_; }

    std::uint64_t card() const { return static_cast<std::uint64_t>(base_.order()) * base_.order(); }
    ExtFelt element_at(std::uint64_t i) const {
        return {static_cast<Felt>(i & (base_.order() - 1)),
                static_cast<Felt>(i >> base_.degree())};
    }
    std::uint64_t index_of(ExtFelt x) const {
        return x.a | (static_cast<std::uint64_t>(x.b) << base_.degree());
    }
    int f2_degree() const { return 2 * base_.degree(); }

private:
    Field base_;
    Felt nu_;
};

} // namespace triapn::gf
