#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "triapn/gf.hpp"
#include "triapn/lut.hpp"

// The trivariate semiquadratic family
//   F1 = x^(s+1) + a y^s z + b x^s y + c x^s z
//   F2 = a y^(s+1) + z^s x + b z^s y + c x^s y
//   F3 = z^(s+1) + x^s y
// over F_q^3 with s = 2^k, together with its root condition, projective
// bijectivity check, scalar automorphisms, the prior trivariate families it
// subsumes, and the Gold power-function baseline.
namespace triapn::family {

using gf::Felt;

struct Vec3 {
    Felt x = 0;
    Felt y = 0;
    Felt z = 0;
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct Params {
    const gf::Field* field = nullptr;
    int k = 0;    // twist exponent, 1 <= k < m
    Felt a = 0;   // a != 0
    Felt b = 0;
    Felt c = 0;
    int d = 0;    // gcd(k, m)
};

Params make_params(const gf::Field& field, int k, Felt a, Felt b, Felt c);

Vec3 eval(const Params& p, Vec3 v);

// Normative packing: x + y*2^m + z*2^(2m).
std::uint32_t pack(const gf::Field& f, Vec3 v);
Vec3 unpack(const gf::Field& f, std::uint32_t w);

// Does a x^(s^2+s+1) + b x^(s+1) + c x + 1 = 0 have a solution in F_q?
// Two independent routes: direct evaluation over the field, and a linear
// right divisor search for a t^3 + b t^2 + c t + 1 in F_q[t; sigma].
bool condition_has_root_direct(const Params& p);
bool condition_has_root_skew(const Params& p);
// Both routes; throws OracleDisagreement if they differ.
bool condition_has_root(const Params& p);

// Same condition evaluated over the quadratic extension F_{q^2} with the
// embedded coefficients and the same twist.
bool condition_has_root_ext(const Params& p, const gf::ExtField& ext);

// Canonical projective representative: first nonzero coordinate scaled to 1.
Vec3 proj_canonical(const gf::Field& f, Vec3 v);
// The q^2+q+1 canonical points in the fixed enumeration order
// (1,y,z), (0,1,z), (0,0,1).
std::vector<Vec3> proj_points(const gf::Field& f);

enum class ProjVerdict {
    bijective,
    not_bijective,
    zero_image, // some nonzero point maps to 0; the projective map is undefined
};

ProjVerdict projective_bijective(const Params& p);

// Full 2^(3m) lookup table; requires 3m <= 30.
Lut lut(const Params& p);

// F(s*v) = s^(sigma+1) * F(v) for all v; exhaustive for m <= 4, otherwise
// checked on 10^4 deterministically sampled points.
bool scalar_automorphism_holds(const Params& p, Felt s);

// Witness for a linear equivalence made of block permutations: output block
// i of the transformed map is family output block out_perm[i], evaluated at
// inputs permuted by in_perm (input block i reads source block in_perm[i]).
struct BlockWitness {
    std::array<int, 3> out_perm;
    std::array<int, 3> in_perm;
};

struct PriorFamily {
    Lut literal;         // the family's own displayed formula
    Params params;       // the equivalent member of the main family
    BlockWitness witness;
};

PriorFamily li_kaleyski_1(const gf::Field& f, int k);
PriorFamily li_kaleyski_2(const gf::Field& f, int k);
PriorFamily bartoli_stanica(const gf::Field& f, int k, Felt a);

// The Bartoli-Stanica display with literal q-power exponents; on F_q the
// q-power is the identity, so this degenerates to an untwisted quadratic
// map. Reported by `compare`, never asserted equal to anything.
Lut bartoli_stanica_literal_q(const gf::Field& f, Felt a);

// Gold baseline x -> x^(2^i+1) on F_{2^n}, gcd(i, n) = 1.
Lut gold_lut(const gf::Field& f, int i);
Lut gold_lut(int n, int i);
// s^(2^i+1) * G(x)^(2^j) == G(s * x^(2^j)) for all x.
bool gold_automorphism_holds(const gf::Field& f, int i, Felt s, int j);

} // namespace triapn::family
