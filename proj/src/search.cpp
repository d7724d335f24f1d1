#include "triapn/search.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>

#include "triapn/error.hpp"

namespace triapn::search {

const char* level_name(Level level) {
    switch (level) {
        case Level::condition_only: return "cond";
        case Level::projective:     return "proj";
        case Level::full_ddt:       return "full";
    }
    return "?";
}

std::optional<Level> level_from_name(const std::string& name) {
    if (name == "cond") return Level::condition_only;
    if (name == "proj") return Level::projective;
    if (name == "full") return Level::full_ddt;
    return std::nullopt;
}

SweepRow analyze_triple(const gf::Field& field, int k, Felt a, Felt b, Felt c,
                        Level level) {
    const auto p = family::make_params(field, k, a, b, c);
    SweepRow row;
    row.a = a;
    row.b = b;
    row.c = c;

    const bool direct = family::condition_has_root_direct(p);
    const bool via_skew = family::condition_has_root_skew(p);
    if (direct != via_skew)
        row.violation = true; // the two routes must agree
    row.condition_pass = !direct;

    if (level == Level::condition_only)
        return row;

    const auto verdict = family::projective_bijective(p);
    row.zero_image = verdict == family::ProjVerdict::zero_image;
    row.projective = verdict == family::ProjVerdict::bijective;
    if (row.zero_image) {
        // Undefined projective map; the iff check is skipped, but a passing
        // condition with a vanishing nonzero point contradicts the theorems.
        if (row.condition_pass)
            row.violation = true;
    } else if (row.condition_pass != *row.projective) {
        row.violation = true;
    }

    if (level != Level::full_ddt)
        return row;

    const auto table = family::lut(p);
    const std::uint32_t expected_du = std::uint32_t{1} << p.d;
    const auto ddt = vectfun::differential_uniformity(table, expected_du);
    row.du = ddt.max_uniformity;
    row.du_aborted = ddt.early_aborted;
    const auto image = vectfun::image_multiplicity(table);
    row.image_class = image.describe();

    if (row.condition_pass) {
        if (ddt.early_aborted || ddt.max_uniformity != expected_du)
            row.violation = true;
        const int m = field.degree();
        if ((m / p.d) % 2 == 1) {
            if (image.cls != vectfun::ImageClass::bijective)
                row.violation = true;
        } else {
            const auto expected_r = gf::gcd_power(k, m, gf::Sign::plus);
            if (image.cls != vectfun::ImageClass::r_to_1 || image.r != expected_r)
                row.violation = true;
        }
    }
    return row;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Enumeration {
    std::uint32_t q = 0;
    std::uint64_t total = 0; // (q-1) * q * q, clipped by the limit
};

Enumeration plan(const SweepSpec& spec) {
    Enumeration e;
    e.q = spec.field->order();
    e.total = static_cast<std::uint64_t>(e.q - 1) * e.q * e.q;
    if (spec.limit && *spec.limit < e.total)
        e.total = *spec.limit;
    return e;
}

void summarize(SweepResult& result) {
    result.summary.total = result.rows.size();
    for (const auto& row : result.rows) {
        if (row.condition_pass)
            ++result.summary.condition_pass;
        if (row.condition_pass && row.du && !row.du_aborted &&
            !row.violation)
            ++result.summary.verified_du;
        if (row.violation)
            ++result.summary.violations;
    }
}

} // namespace

SweepResult sweep(const SweepSpec& spec) {
    if (spec.field == nullptr)
        fail(errc::bad_argument, "sweep needs a field");
    const auto e = plan(spec);
    const std::uint32_t q = e.q;
    SweepResult result;
    if (e.total == 0)
        return result;

    const auto deadline = spec.budget_ms
                              ? std::optional(Clock::now() + std::chrono::milliseconds(*spec.budget_ms))
                              : std::nullopt;

    // One slice per a-value keeps the merge order canonical regardless of
    // worker scheduling.
    const std::uint32_t slices = q - 1;
    std::vector<std::vector<SweepRow>> slice_rows(slices);
    std::vector<char> slice_done(slices, 0);
    std::atomic<std::uint32_t> next{0};
    std::atomic<bool> out_of_budget{false};

    const auto run_slice = [&](std::uint32_t slice) {
        const Felt a = slice + 1;
        const std::uint64_t first = static_cast<std::uint64_t>(slice) * q * q;
        if (first >= e.total)
            return;
        const std::uint64_t count = std::min<std::uint64_t>(e.total - first,
                                                            static_cast<std::uint64_t>(q) * q);
        auto& rows = slice_rows[slice];
        rows.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            const Felt b = static_cast<Felt>(i / q);
            const Felt c = static_cast<Felt>(i % q);
            rows.push_back(analyze_triple(*spec.field, spec.k, a, b, c, spec.level));
        }
        slice_done[slice] = 1;
    };

    const auto worker = [&] {
        for (;;) {
            if (deadline && Clock::now() > *deadline) {
                out_of_budget.store(true, std::memory_order_relaxed);
                return;
            }
            const std::uint32_t slice = next.fetch_add(1, std::memory_order_relaxed);
            if (slice >= slices)
                return;
            run_slice(slice);
        }
    };

    const std::uint32_t nworkers =
        std::min<std::uint32_t>(std::max(1, spec.workers), slices);
    if (nworkers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::uint32_t w = 0; w < nworkers; ++w)
            threads.emplace_back(worker);
        for (auto& t : threads)
            t.join();
    }

    // Keep the longest completed prefix so partial (budgeted) output is
    // still in canonical order.
    for (std::uint32_t slice = 0; slice < slices; ++slice) {
        const std::uint64_t first = static_cast<std::uint64_t>(slice) * q * q;
        if (first >= e.total)
            break;
        if (!slice_done[slice]) {
            result.summary.budget_exceeded = true;
            break;
        }
        for (auto& row : slice_rows[slice])
            result.rows.push_back(std::move(row));
    }
    if (out_of_budget.load())
        result.summary.budget_exceeded = true;
    summarize(result);
    return result;
}

FindFirstResult find_first(const SweepSpec& spec) {
    if (spec.field == nullptr)
        fail(errc::bad_argument, "find_first needs a field");
    const auto e = plan(spec);
    const std::uint32_t q = e.q;
    FindFirstResult out;
    for (std::uint64_t i = 0; i < e.total; ++i) {
        const Felt a = static_cast<Felt>(i / (static_cast<std::uint64_t>(q) * q)) + 1;
        const Felt b = static_cast<Felt>((i / q) % q);
        const Felt c = static_cast<Felt>(i % q);
        // Cheap condition filter first; survivors get the full analysis.
        const auto p = family::make_params(*spec.field, spec.k, a, b, c);
        ++out.searched;
        if (family::condition_has_root_direct(p))
            continue;
        auto row = analyze_triple(*spec.field, spec.k, a, b, c, spec.level);
        if (row.violation)
            fail(errc::oracle_disagreement,
                 "condition-passing triple failed verification");
        out.row = std::move(row);
        return out;
    }
    return out;
}

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
    std::string csv = "a,b,c,condition_pass,projective,du,image_class\n";
    char buf[96];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%x,%x,%x,%d,", row.a, row.b, row.c,
                      row.condition_pass ? 1 : 0);
        csv += buf;
        if (row.projective)
            csv += *row.projective ? '1' : '0';
        csv += ',';
        if (row.du) {
            std::snprintf(buf, sizeof buf, "%u", *row.du);
            csv += buf;
            if (row.du_aborted)
                csv += '+';
        }
        csv += ',';
        csv += row.image_class;
        csv += '\n';
    }
    return csv;
}

} // namespace triapn::search
