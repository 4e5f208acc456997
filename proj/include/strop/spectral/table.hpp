#pragma once

// Associated graded loop homology by total degree, read off the collapsed
// page, with the closed-form series P_M(t) + sum_p t^{alpha_p} P_UM(t)
// computed separately for comparison.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "strop/spectral/page.hpp"

namespace strop::spectral {

struct TableRow {
    int degree = 0;  // unregraded: H_degree(L; ev_0^* Z_or)
    GroupSummary group;
    std::vector<std::pair<int, GroupSummary>> columns;  // (p, contribution), non-zero only

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct GradedTable {
    std::vector<TableRow> rows;
    friend bool operator==(const GradedTable&, const GradedTable&) = default;

    /// Free-rank polynomial coefficients.
    std::vector<std::size_t> free_series() const {
        std::vector<std::size_t> out;
        for (const auto& r : rows) out.push_back(r.group.free_rank);
        return out;
    }
};

namespace detail {

inline TableRow make_row(int k, std::vector<std::pair<int, CyclicGroup>> parts) {
    TableRow row;
    row.degree = k;
    std::size_t free = 0;
    IntVector finite;
    for (auto& [p, g] : parts) {
        GroupSummary s = g.summary();
        if (s.is_zero()) continue;
        free += s.free_rank;
        finite.insert(finite.end(), s.torsion.begin(), s.torsion.end());
        row.columns.emplace_back(p, s);
    }
    row.group = canonical_group(free, finite);
    return row;
}

} // namespace detail

/// Largest p with alpha_p <= k.
inline int columns_needed(const CrossSpec& spec, int k) {
    int p = 0;
    while (bott_index(spec, p + 1) <= k) ++p;
    return p;
}

/// Sums E^infinity along total degree k - n for k = 0..max_total_degree.
inline GradedTable table_from_page(const SpectralPage& page, int n, int max_total_degree) {
    GradedTable t;
    for (int k = 0; k <= max_total_degree; ++k) {
        std::vector<std::pair<int, CyclicGroup>> parts;
        for (const auto& [b, g] : page.entries)
            if (b.total() + n == k) parts.emplace_back(b.p, g);
        t.rows.push_back(detail::make_row(k, std::move(parts)));
    }
    return t;
}

inline GradedTable loop_homology_table(const CrossSpec& spec, int max_total_degree) {
    if (max_total_degree < 0) throw DegreeError("negative maximal degree");
    const int pmax = std::max(1, columns_needed(spec, max_total_degree));
    PageWindow w = default_window(spec, pmax);
    w.qmax = std::max(w.qmax, max_total_degree - spec.n);
    SpectralPage inf = collapse_to_infinity(build_page1(spec, w));
    return table_from_page(inf, spec.n, max_total_degree);
}

/// H_k(M) + sum_{p >= 1} H_{k - alpha_p}(UM), straight from the summaries.
inline GradedTable series_table(const CrossSpec& spec, const HomologySummary& hum, int max_total_degree) {
    GradedTable t;
    for (int k = 0; k <= max_total_degree; ++k) {
        std::vector<std::pair<int, CyclicGroup>> parts;
        parts.emplace_back(0, CyclicGroup::from_summary(spec.hm.at(k)));
        for (int p = 1; bott_index(spec, p) <= k; ++p)
            parts.emplace_back(p, CyclicGroup::from_summary(hum.at(k - bott_index(spec, p))));
        t.rows.push_back(detail::make_row(k, std::move(parts)));
    }
    return t;
}

inline std::string series_string(const std::vector<std::size_t>& coeffs) {
    std::string out;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        if (!out.empty()) out += " + ";
        std::string c = coeffs[k] == 1 && k > 0 ? "" : std::to_string(coeffs[k]);
        out += c + (k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k)));
    }
    return out.empty() ? "0" : out;
}

} // namespace strop::spectral
