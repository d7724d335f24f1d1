#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "triapn/family.hpp"
#include "triapn/search.hpp"
#include "triapn/vectfun.hpp"

// End-to-end single-instance verification and the JSON report formats shared
// by the CLI subcommands. Every report embeds its semantic configuration so
// a run can be reproduced byte-identically.
namespace triapn::report {

struct VerifyOutcome {
    bool condition_has_root = false;
    bool routes_agree = false;
    family::ProjVerdict projective = family::ProjVerdict::not_bijective;
    std::uint32_t du = 0;
    vectfun::ImageReport image;
    int core = 0;
    bool iff_ok = false;
    bool du_ok = false;
    bool image_ok = false;
    bool kernel_ok = false;
    bool core_ok = false;
    bool aut_ok = false;
    bool consistent = false;
    std::vector<std::string> failures;
};

// Runs the condition (both routes), the projective check, full DDT, image
// classification, derivative kernel/core structure, and scalar automorphism
// spot checks; exhaustive for m <= 4, deterministically sampled above.
VerifyOutcome verify_instance(const family::Params& p);

nlohmann::ordered_json field_config(const gf::Field& f);
nlohmann::ordered_json params_config(const family::Params& p);

nlohmann::ordered_json verify_json(const family::Params& p, const VerifyOutcome& outcome);
nlohmann::ordered_json ddt_json(const vectfun::DdtReport& report, int n,
                                const nlohmann::ordered_json& config);
nlohmann::ordered_json walsh_json(const vectfun::WalshReport& report,
                                  const nlohmann::ordered_json& config);
nlohmann::ordered_json sweep_summary_json(const search::SweepSummary& summary,
                                          const nlohmann::ordered_json& config);
nlohmann::ordered_json export_sidecar(const family::Params& p, const VerifyOutcome& outcome,
                                      bool verified);

std::string format_felt(gf::Felt x);
std::string format_poly_bits(std::uint32_t reduction);

} // namespace triapn::report
