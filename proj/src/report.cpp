#include "triapn/report.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "triapn/version.hpp"

namespace triapn::report {

using family::Params;
using family::Vec3;
using gf::Felt;

namespace {

// Expected derivative kernel y * F_{2^d} as packed words, sorted.
std::vector<std::uint32_t> expected_kernel(const Params& p, std::uint32_t y_packed) {
    const gf::Field& f = *p.field;
    const Vec3 y = family::unpack(f, y_packed);
    std::vector<std::uint32_t> expected;
    for (const auto lambda : f.subfield(p.d))
        expected.push_back(family::pack(
            f, {f.mul(lambda, y.x), f.mul(lambda, y.y), f.mul(lambda, y.z)}));
    std::sort(expected.begin(), expected.end());
    return expected;
}

bool kernel_structure_holds(const Params& p, const Lut& table) {
    const std::uint64_t size = table.size();
    std::vector<std::uint32_t> directions;
    if (p.field->degree() <= 4) {
        directions.reserve(size - 1);
        for (std::uint64_t y = 1; y < size; ++y)
            directions.push_back(static_cast<std::uint32_t>(y));
    } else {
        std::mt19937 rng(0x5eedu);
        std::uniform_int_distribution<std::uint32_t> dist(1, static_cast<std::uint32_t>(size - 1));
        for (int i = 0; i < 128; ++i)
            directions.push_back(dist(rng));
    }
    for (const auto y : directions) {
        auto kernel = vectfun::derivative_kernel(p, table, y);
        std::sort(kernel.begin(), kernel.end());
        if (kernel != expected_kernel(p, y))
            return false;
    }
    return true;
}

bool automorphisms_hold(const Params& p) {
    for (Felt s = 1; s < p.field->order(); ++s)
        if (!family::scalar_automorphism_holds(p, s))
            return false;
    return true;
}

} // namespace

VerifyOutcome verify_instance(const Params& p) {
    VerifyOutcome out;
    const bool direct = family::condition_has_root_direct(p);
    const bool via_skew = family::condition_has_root_skew(p);
    out.condition_has_root = direct;
    out.routes_agree = direct == via_skew;
    if (!out.routes_agree)
        out.failures.push_back("condition routes disagree");

    out.projective = family::projective_bijective(p);
    const bool pass = !direct;
    if (out.projective == family::ProjVerdict::zero_image)
        out.iff_ok = !pass; // a vanishing point under a passing condition is a violation
    else
        out.iff_ok = pass == (out.projective == family::ProjVerdict::bijective);
    if (!out.iff_ok)
        out.failures.push_back("projective bijectivity does not match the condition");

    const auto table = family::lut(p);
    const auto ddt = vectfun::differential_uniformity(table);
    out.du = ddt.max_uniformity;
    out.image = vectfun::image_multiplicity(table);

    const std::uint32_t expected_du = std::uint32_t{1} << p.d;
    out.du_ok = !pass || out.du == expected_du;
    if (!out.du_ok)
        out.failures.push_back("differential uniformity != 2^d on a passing triple");

    const int m = p.field->degree();
    if (pass) {
        if ((m / p.d) % 2 == 1) {
            out.image_ok = out.image.cls == vectfun::ImageClass::bijective;
        } else {
            const auto expected_r = gf::gcd_power(p.k, m, gf::Sign::plus);
            out.image_ok = out.image.cls == vectfun::ImageClass::r_to_1 &&
                           out.image.r == expected_r;
        }
    } else {
        out.image_ok = true;
    }
    if (!out.image_ok)
        out.failures.push_back("image multiplicity does not match m/d parity");

    out.kernel_ok = !pass || kernel_structure_holds(p, table);
    if (!out.kernel_ok)
        out.failures.push_back("derivative kernel is not y * F_{2^d}");

    out.core = vectfun::compute_core(p, table);
    out.core_ok = out.core == p.d;
    if (!out.core_ok)
        out.failures.push_back("core != gcd(k, m)");

    out.aut_ok = automorphisms_hold(p);
    if (!out.aut_ok)
        out.failures.push_back("scalar automorphism identity failed");

    out.consistent = out.failures.empty();
    return out;
}

std::string format_felt(Felt x) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%x", x);
    return buf;
}

std::string format_poly_bits(std::uint32_t reduction) {
    std::string bits = "0b";
    bool started = false;
    for (int i = 31; i >= 0; --i) {
        const bool bit = (reduction >> i) & 1;
        if (bit)
            started = true;
        if (started)
            bits += bit ? '1' : '0';
    }
    return started ? bits : "0b0";
}

nlohmann::ordered_json field_config(const gf::Field& f) {
    return {{"m", f.degree()}, {"reduction", format_poly_bits(f.reduction())}};
}

nlohmann::ordered_json params_config(const Params& p) {
    auto cfg = field_config(*p.field);
    cfg["k"] = p.k;
    cfg["a"] = format_felt(p.a);
    cfg["b"] = format_felt(p.b);
    cfg["c"] = format_felt(p.c);
    return cfg;
}

nlohmann::ordered_json verify_json(const Params& p, const VerifyOutcome& out) {
    const char* proj = out.projective == family::ProjVerdict::bijective ? "bijective"
                       : out.projective == family::ProjVerdict::zero_image ? "zero_image"
                                                                           : "not_bijective";
    return {{"tool_version", TRIAPN_VERSION},
            {"config", params_config(p)},
            {"d", p.d},
            {"condition_has_root", out.condition_has_root},
            {"routes_agree", out.routes_agree},
            {"projective", proj},
            {"du", out.du},
            {"image_class", out.image.describe()},
            {"core", out.core},
            {"checks",
             {{"iff", out.iff_ok},
              {"du", out.du_ok},
              {"image", out.image_ok},
              {"kernel", out.kernel_ok},
              {"core", out.core_ok},
              {"automorphism", out.aut_ok}}},
            {"failures", out.failures},
            {"consistent", out.consistent}};
}

nlohmann::ordered_json ddt_json(const vectfun::DdtReport& report, int n,
                                const nlohmann::ordered_json& config) {
    nlohmann::ordered_json spectrum = nlohmann::ordered_json::object();
    for (const auto& [value, count] : report.spectrum)
        spectrum[std::to_string(value)] = count;
    return {{"tool_version", TRIAPN_VERSION},
            {"config", config},
            {"n", n},
            {"max_uniformity", report.max_uniformity},
            {"spectrum", spectrum},
            {"early_aborted", report.early_aborted}};
}

nlohmann::ordered_json walsh_json(const vectfun::WalshReport& report,
                                  const nlohmann::ordered_json& config) {
    nlohmann::ordered_json masks = nlohmann::ordered_json::array();
    for (const auto& mask : report.masks) {
        nlohmann::ordered_json values = nlohmann::ordered_json::object();
        for (const auto& [value, count] : mask.values)
            values[std::to_string(value)] = count;
        masks.push_back({{"v", format_felt(mask.v)}, {"values", values}});
    }
    return {{"tool_version", TRIAPN_VERSION},
            {"config", config},
            {"n", report.n},
            {"masks", masks}};
}

nlohmann::ordered_json sweep_summary_json(const search::SweepSummary& summary,
                                          const nlohmann::ordered_json& config) {
    return {{"tool_version", TRIAPN_VERSION},
            {"config", config},
            {"total", summary.total},
            {"condition_pass", summary.condition_pass},
            {"verified_du", summary.verified_du},
            {"violations", summary.violations},
            {"budget_exceeded", summary.budget_exceeded}};
}

nlohmann::ordered_json export_sidecar(const Params& p, const VerifyOutcome& out,
                                      bool verified) {
    return {{"m", p.field->degree()},
            {"k", p.k},
            {"a", format_felt(p.a)},
            {"b", format_felt(p.b)},
            {"c", format_felt(p.c)},
            {"reduction", format_poly_bits(p.field->reduction())},
            {"du", out.du},
            {"image_class", out.image.describe()},
            {"verified", verified},
            {"tool_version", TRIAPN_VERSION}};
}

} // namespace triapn::report
