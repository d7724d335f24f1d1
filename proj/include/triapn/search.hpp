#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triapn/family.hpp"
#include "triapn/vectfun.hpp"

// Parameter sweep engine: enumerate (a, b, c) with a != 0 in ascending
// packed order, filter by the root condition, optionally verify each triple
// against the expected uniformity and image class, and emit deterministic
// reports (identical for any worker count).
namespace triapn::search {

using gf::Felt;

enum class Level { condition_only, projective, full_ddt };

const char* level_name(Level level);
std::optional<Level> level_from_name(const std::string& name);

struct SweepSpec {
    const gf::Field* field = nullptr;
    int k = 1;
    Level level = Level::full_ddt;
    std::optional<std::uint64_t> limit;     // cap on enumerated triples
    std::optional<std::uint64_t> budget_ms; // soft time budget
    int workers = 1;
};

struct SweepRow {
    Felt a = 0, b = 0, c = 0;
    bool condition_pass = false;
    std::optional<bool> projective; // present from Level::projective up
    bool zero_image = false;
    std::optional<std::uint32_t> du; // present at Level::full_ddt
    bool du_aborted = false;
    std::string image_class; // empty below Level::full_ddt
    bool violation = false;
};

struct SweepSummary {
    std::uint64_t total = 0;
    std::uint64_t condition_pass = 0;
    std::uint64_t verified_du = 0; // passing triples with du == 2^d
    std::uint64_t violations = 0;
    bool budget_exceeded = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    SweepSummary summary;
};

// Analyzes one triple at the given level, including the per-row theorem
// consistency checks; row.violation marks any failed check.
SweepRow analyze_triple(const gf::Field& field, int k, Felt a, Felt b, Felt c,
                        Level level);

SweepResult sweep(const SweepSpec& spec);

struct FindFirstResult {
    std::optional<SweepRow> row;
    std::uint64_t searched = 0;
};

// First condition-passing triple in canonical order, verified at the
// requested level. An empty row is the NoneFound outcome.
FindFirstResult find_first(const SweepSpec& spec);

// CSV with header a,b,c,condition_pass,projective,du,image_class; field
// elements in lowercase hex, du suffixed with '+' when the early abort
// fired.
std::string rows_to_csv(const std::vector<SweepRow>& rows);

} // namespace triapn::search
