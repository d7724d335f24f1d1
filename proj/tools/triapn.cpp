#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "triapn/error.hpp"
#include "triapn/report.hpp"
#include "triapn/skewpoly.hpp"
#include "triapn/version.hpp"

using json = nlohmann::ordered_json;
using namespace triapn;

namespace {

int exit_code_for(errc code) {
    switch (code) {
        case errc::too_large:
            return 3;
        case errc::oracle_disagreement:
        case errc::refused_unverified:
            return 2;
        default:
            return 1; // argument/usage errors
    }
}

gf::Felt parse_felt(const std::string& text) {
    std::string s = text;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0)
        s = s.substr(2);
    if (s.empty())
        fail(errc::bad_argument, "empty field element");
    gf::Felt value = 0;
    for (const char ch : s) {
        int digit;
        if (ch >= '0' && ch <= '9')
            digit = ch - '0';
        else if (ch >= 'a' && ch <= 'f')
            digit = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F')
            digit = ch - 'A' + 10;
        else
            fail(errc::bad_argument, "bad hex digit in '" + text + "'");
        value = (value << 4) | static_cast<gf::Felt>(digit);
    }
    return value;
}

std::uint32_t parse_poly_bits(const std::string& text) {
    std::string s = text;
    if (s.rfind("0b", 0) == 0 || s.rfind("0B", 0) == 0)
        s = s.substr(2);
    if (s.empty())
        fail(errc::bad_argument, "empty reduction polynomial");
    std::uint32_t value = 0;
    for (const char ch : s) {
        if (ch != '0' && ch != '1')
            fail(errc::bad_argument, "reduction polynomial must be binary: " + text);
        value = (value << 1) | static_cast<std::uint32_t>(ch - '0');
    }
    return value;
}

gf::Field make_field(int m, const std::string& poly) {
    return poly.empty() ? gf::Field(m) : gf::Field(m, parse_poly_bits(poly));
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(errc::bad_argument, "cannot open " + path + " for writing");
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(errc::bad_argument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void maybe_write_json(const std::string& path, const json& doc) {
    if (!path.empty())
        write_file(path, doc.dump(2) + "\n");
}

std::vector<gf::Felt> parse_coeffs(const std::string& text) {
    std::vector<gf::Felt> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        coeffs.push_back(parse_felt(item));
    if (coeffs.empty())
        fail(errc::bad_argument, "empty coefficient list");
    return coeffs;
}

std::string format_coeffs(const std::vector<gf::Felt>& coeffs) {
    if (coeffs.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i)
            out += ',';
        out += report::format_felt(coeffs[i]);
    }
    return out;
}

struct InstanceFlags {
    int m = 3;
    int k = 1;
    std::string a = "1", b = "0", c = "0", poly;

    void attach(CLI::App* cmd) {
        cmd->add_option("--m", m, "field degree m")->required();
        cmd->add_option("--k", k, "twist exponent k (sigma = 2^k)")->required();
        cmd->add_option("--a", a, "parameter a (hex)")->required();
        cmd->add_option("--b", b, "parameter b (hex)")->required();
        cmd->add_option("--c", c, "parameter c (hex)")->required();
        cmd->add_option("--poly", poly, "reduction polynomial (binary, default: least irreducible)");
    }
};

int cmd_verify(const InstanceFlags& flags, const std::string& json_path) {
    const auto field = make_field(flags.m, flags.poly);
    const auto p = family::make_params(field, flags.k, parse_felt(flags.a),
                                       parse_felt(flags.b), parse_felt(flags.c));
    const auto outcome = report::verify_instance(p);
    const auto doc = report::verify_json(p, outcome);
    std::cout << doc.dump(2) << "\n";
    maybe_write_json(json_path, doc);
    if (!outcome.consistent) {
        for (const auto& failure : outcome.failures)
            std::cerr << "violation: " << failure << "\n";
        return 2;
    }
    return 0;
}

int cmd_search(int m, int k, const std::string& poly, const std::string& level_name,
               std::int64_t limit, std::uint64_t budget_ms, int workers,
               const std::string& csv_path, const std::string& json_path,
               bool first_only) {
    const auto level = search::level_from_name(level_name);
    if (!level)
        fail(errc::bad_argument, "unknown level '" + level_name + "'");
    const auto field = make_field(m, poly);
    search::SweepSpec spec;
    spec.field = &field;
    spec.k = k;
    spec.level = *level;
    if (limit >= 0)
        spec.limit = static_cast<std::uint64_t>(limit);
    if (budget_ms > 0)
        spec.budget_ms = budget_ms;
    spec.workers = workers;

    json config = report::field_config(field);
    config["k"] = k;
    config["level"] = level_name;
    config["limit"] = limit >= 0 ? json(limit) : json(nullptr);

    if (first_only) {
        const auto found = search::find_first(spec);
        if (!found.row) {
            std::cout << "NoneFound after " << found.searched << " triples\n";
            return 0;
        }
        const auto& row = *found.row;
        std::cout << "first hit: a=" << report::format_felt(row.a)
                  << " b=" << report::format_felt(row.b)
                  << " c=" << report::format_felt(row.c);
        if (row.du)
            std::cout << " du=" << *row.du << " image=" << row.image_class;
        std::cout << " (searched " << found.searched << ")\n";
        if (!csv_path.empty())
            write_file(csv_path, search::rows_to_csv({row}));
        return 0;
    }

    const auto result = search::sweep(spec);
    if (!csv_path.empty())
        write_file(csv_path, search::rows_to_csv(result.rows));
    const auto summary = report::sweep_summary_json(result.summary, config);
    std::cout << summary.dump(2) << "\n";
    maybe_write_json(json_path, summary);
    if (result.summary.violations > 0)
        return 2;
    if (result.summary.budget_exceeded)
        return 3;
    return 0;
}

int cmd_ddt(const std::string& in_path, std::int64_t abort_above, int workers,
            const std::string& json_path) {
    const auto lut = from_sbox_text(read_file(in_path));
    std::optional<std::uint32_t> abort;
    if (abort_above >= 0)
        abort = static_cast<std::uint32_t>(abort_above);
    const auto ddt = vectfun::differential_uniformity(lut, abort, workers);
    json config = {{"in", in_path},
                   {"abort_above", abort_above >= 0 ? json(abort_above) : json(nullptr)}};
    const auto doc = report::ddt_json(ddt, lut.n, config);
    std::cout << doc.dump(2) << "\n";
    maybe_write_json(json_path, doc);
    return 0;
}

int cmd_walsh(const std::string& in_path, const std::vector<std::string>& mask_args,
              const std::string& json_path) {
    const auto lut = from_sbox_text(read_file(in_path));
    std::vector<std::uint32_t> masks;
    for (const auto& text : mask_args)
        masks.push_back(parse_felt(text));
    const auto spectrum =
        vectfun::walsh_spectrum(lut, masks.empty() ? nullptr : &masks);
    json mask_cfg = json::array();
    for (const auto& text : mask_args)
        mask_cfg.push_back(text);
    json config = {{"in", in_path}, {"masks", mask_cfg}};
    const auto doc = report::walsh_json(spectrum, config);
    std::cout << doc.dump(2) << "\n";
    maybe_write_json(json_path, doc);
    return 0;
}

int cmd_skew(int m, int k, const std::string& poly, const std::string& op,
             const std::string& p_text, const std::string& q_text) {
    const auto field = make_field(m, poly);
    const auto p = skew::make(field, k, parse_coeffs(p_text));
    const auto need_second = op == "mul" || op == "divr" || op == "divl" ||
                             op == "gcrd" || op == "lclm";
    if (need_second && q_text.empty())
        fail(errc::bad_argument, "op '" + op + "' needs --poly2");

    if (op == "mul") {
        const auto q = skew::make(field, k, parse_coeffs(q_text));
        std::cout << "product: " << format_coeffs(skew::mul(p, q).coeffs) << "\n";
    } else if (op == "divr" || op == "divl") {
        const auto q = skew::make(field, k, parse_coeffs(q_text));
        const auto dm = op == "divr" ? skew::divmod_right(p, q) : skew::divmod_left(p, q);
        std::cout << "quotient: " << format_coeffs(dm.quot.coeffs) << "\n"
                  << "remainder: " << format_coeffs(dm.rem.coeffs) << "\n";
    } else if (op == "gcrd") {
        const auto q = skew::make(field, k, parse_coeffs(q_text));
        std::cout << "gcrd: " << format_coeffs(skew::gcrd(p, q).coeffs) << "\n";
    } else if (op == "lclm") {
        const auto q = skew::make(field, k, parse_coeffs(q_text));
        std::cout << "lclm: " << format_coeffs(skew::lclm(p, q).coeffs) << "\n";
    } else if (op == "lindiv") {
        const auto right = skew::linear_right_divisor(p);
        const auto left = skew::linear_left_divisor(p);
        std::cout << "right: " << (right ? report::format_felt(*right) : "none") << "\n"
                  << "left: " << (left ? report::format_felt(*left) : "none") << "\n";
    } else {
        fail(errc::bad_argument, "unknown op '" + op + "'");
    }
    return 0;
}

int cmd_compare(int m, int k, const std::string& poly, const std::string& bs_a_text) {
    const auto field = make_field(m, poly);
    const auto bs_a = parse_felt(bs_a_text);

    struct Case {
        const char* name;
        family::PriorFamily prior;
    };
    const Case cases[] = {
        {"li_kaleyski_1", family::li_kaleyski_1(field, k)},
        {"li_kaleyski_2", family::li_kaleyski_2(field, k)},
        {"bartoli_stanica", family::bartoli_stanica(field, k, bs_a)},
    };

    bool all_equal = true;
    for (const auto& [name, prior] : cases) {
        const auto fam = family::lut(prior.params);
        const auto transformed = vectfun::lut_transform(
            vectfun::LinMap3::block_perm(m, prior.witness.out_perm), fam,
            vectfun::LinMap3::block_perm(m, prior.witness.in_perm));
        const bool equal = transformed.table == prior.literal.table;
        all_equal &= equal;
        std::cout << name << ": sigma reading "
                  << (equal ? "matches" : "MISMATCH") << " family (a="
                  << report::format_felt(prior.params.a)
                  << ", b=" << report::format_felt(prior.params.b)
                  << ", c=" << report::format_felt(prior.params.c) << ")\n";
    }

    // The printed Bartoli-Stanica exponents use q-powers, which are the
    // identity on F_q; report that reading without asserting anything.
    const auto literal_q = family::bartoli_stanica_literal_q(field, bs_a);
    const auto ddt = vectfun::differential_uniformity(literal_q);
    std::cout << "bartoli_stanica literal-q reading: degenerate (x^q = x), du="
              << ddt.max_uniformity << ", no equality asserted\n";

    return all_equal ? 0 : 2;
}

int cmd_gold(int n, int i, const std::string& s_text, std::int64_t j, bool all_autos,
             const std::string& out_path) {
    const gf::Field field(n);
    const auto lut = family::gold_lut(field, i);
    const auto ddt = vectfun::differential_uniformity(lut);
    std::cout << "gold(" << n << ", " << i << "): du=" << ddt.max_uniformity << "\n";
    if (!s_text.empty()) {
        if (j < 0)
            fail(errc::bad_argument, "--s needs --j");
        const bool ok = family::gold_automorphism_holds(field, i, parse_felt(s_text),
                                                        static_cast<int>(j));
        std::cout << "automorphism(s=" << s_text << ", j=" << j << "): "
                  << (ok ? "holds" : "FAILS") << "\n";
        if (!ok)
            return 2;
    }
    if (all_autos) {
        for (gf::Felt s = 1; s < field.order(); ++s)
            for (int jj = 0; jj < n; ++jj)
                if (!family::gold_automorphism_holds(field, i, s, jj)) {
                    std::cout << "automorphism FAILS at s=" << report::format_felt(s)
                              << ", j=" << jj << "\n";
                    return 2;
                }
        std::cout << "automorphism holds for all (s, j)\n";
    }
    if (!out_path.empty())
        write_file(out_path, to_sbox_text(lut));
    return 0;
}

int cmd_export(const InstanceFlags& flags, const std::string& out_path,
               std::string sidecar_path, bool force) {
    const auto field = make_field(flags.m, flags.poly);
    const auto p = family::make_params(field, flags.k, parse_felt(flags.a),
                                       parse_felt(flags.b), parse_felt(flags.c));
    const auto outcome = report::verify_instance(p);
    if (!outcome.consistent && !force)
        fail(errc::refused_unverified,
             "instance failed verification; use --force to export anyway");
    write_file(out_path, to_sbox_text(family::lut(p)));
    if (sidecar_path.empty())
        sidecar_path = out_path + ".json";
    write_file(sidecar_path,
               report::export_sidecar(p, outcome, outcome.consistent).dump(2) + "\n");
    std::cout << "wrote " << out_path << " and " << sidecar_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trivariate semiquadratic APN function toolkit"};
    app.set_version_flag("--version", TRIAPN_VERSION);
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "verify one family instance end to end");
    InstanceFlags verify_flags;
    verify_flags.attach(verify);
    std::string verify_json_path;
    verify->add_option("--json", verify_json_path, "write the JSON report here");

    // search
    auto* search_cmd = app.add_subcommand("search", "sweep (a, b, c) parameters");
    int s_m = 3, s_k = 1, s_workers = 1;
    std::string s_poly, s_level = "full", s_csv, s_json;
    std::int64_t s_limit = -1;
    std::uint64_t s_budget = 0;
    bool s_first = false;
    search_cmd->add_option("--m", s_m)->required();
    search_cmd->add_option("--k", s_k)->required();
    search_cmd->add_option("--poly", s_poly, "reduction polynomial (binary)");
    search_cmd->add_option("--level", s_level, "cond | proj | full");
    search_cmd->add_option("--limit", s_limit, "cap on enumerated triples");
    search_cmd->add_option("--budget-ms", s_budget, "soft time budget");
    search_cmd->add_option("--workers", s_workers, "worker threads");
    search_cmd->add_option("--csv", s_csv, "write per-triple rows here");
    search_cmd->add_option("--json", s_json, "write the summary here");
    search_cmd->add_flag("--first", s_first, "stop at the first passing triple");

    // ddt
    auto* ddt = app.add_subcommand("ddt", "difference distribution analysis of an sbox file");
    std::string d_in, d_json;
    std::int64_t d_abort = -1;
    int d_workers = 1;
    ddt->add_option("--in", d_in)->required();
    ddt->add_option("--abort-above", d_abort, "early-abort threshold");
    ddt->add_option("--workers", d_workers);
    ddt->add_option("--json", d_json);

    // walsh
    auto* walsh = app.add_subcommand("walsh", "Walsh spectrum of an sbox file");
    std::string w_in, w_json;
    std::vector<std::string> w_masks;
    walsh->add_option("--in", w_in)->required();
    walsh->add_option("--mask", w_masks, "output mask(s), hex; default all");
    walsh->add_option("--json", w_json);

    // skew
    auto* skew_cmd = app.add_subcommand("skew", "twisted polynomial arithmetic");
    int sk_m = 3, sk_k = 1;
    std::string sk_poly, sk_op, sk_p, sk_q;
    skew_cmd->add_option("--m", sk_m)->required();
    skew_cmd->add_option("--k", sk_k)->required();
    skew_cmd->add_option("--poly-red", sk_poly, "reduction polynomial (binary)");
    skew_cmd->add_option("--op", sk_op, "mul | divr | divl | gcrd | lclm | lindiv")->required();
    skew_cmd->add_option("--poly", sk_p, "coefficients, hex, low to high")->required();
    skew_cmd->add_option("--poly2", sk_q, "second operand");

    // compare
    auto* compare = app.add_subcommand("compare", "reproduce the prior trivariate families");
    int c_m = 3, c_k = 1;
    std::string c_poly, c_bs_a = "2";
    compare->add_option("--m", c_m)->required();
    compare->add_option("--k", c_k)->required();
    compare->add_option("--poly", c_poly, "reduction polynomial (binary)");
    compare->add_option("--bs-a", c_bs_a, "Bartoli-Stanica parameter (hex)");

    // gold
    auto* gold = app.add_subcommand("gold", "Gold power function baseline");
    int g_n = 9, g_i = 1;
    std::string g_s, g_out;
    std::int64_t g_j = -1;
    bool g_all = false;
    gold->add_option("--n", g_n)->required();
    gold->add_option("--i", g_i)->required();
    gold->add_option("--s", g_s, "automorphism scalar (hex)");
    gold->add_option("--j", g_j, "automorphism frobenius index");
    gold->add_flag("--all-autos", g_all, "check every (s, j) pair");
    gold->add_option("--out", g_out, "write the LUT here");

    // export
    auto* export_cmd = app.add_subcommand("export", "export a verified sbox with a JSON sidecar");
    InstanceFlags export_flags;
    export_flags.attach(export_cmd);
    std::string e_out, e_sidecar;
    bool e_force = false;
    export_cmd->add_option("--out", e_out)->required();
    export_cmd->add_option("--sidecar", e_sidecar, "default: <out>.json");
    export_cmd->add_flag("--force", e_force, "export even if verification failed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*verify)
            return cmd_verify(verify_flags, verify_json_path);
        if (*search_cmd)
            return cmd_search(s_m, s_k, s_poly, s_level, s_limit, s_budget, s_workers,
                              s_csv, s_json, s_first);
        if (*ddt)
            return cmd_ddt(d_in, d_abort, d_workers, d_json);
        if (*walsh)
            return cmd_walsh(w_in, w_masks, w_json);
        if (*skew_cmd)
            return cmd_skew(sk_m, sk_k, sk_poly, sk_op, sk_p, sk_q);
        if (*compare)
            return cmd_compare(c_m, c_k, c_poly, c_bs_a);
        if (*gold)
            return cmd_gold(g_n, g_i, g_s, g_j, g_all, g_out);
        if (*export_cmd)
            return cmd_export(export_flags, e_out, e_sidecar, e_force);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
