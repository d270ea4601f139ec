#pragma once
// Catalog of the fixed matrix identities satisfied by R, C, K, P, the
// threshold projectors and Q.  Every check evaluates an exact residual over
// the rational function field; pass means the residual is identically zero.

#include <cstdint>
#include <string>
#include <vector>

#include "qorbit/series.hpp"

namespace qorbit {

// Seed for the identities quantified over an arbitrary matrix argument.
inline constexpr std::uint64_t kCatalogSeed = 0x2c62d7a5u;

struct IdentityCheck {
    std::string id;
    std::string series;
    int rank = 0;
    int r2 = 0;  // 0 when the id involves no band threshold
    bool pass = false;
    int residual_terms = 0;               // sub-residuals evaluated
    long long residual_entry_count = 0;   // nonzero entries across all of them
    LegMatrix residual;                   // first non-empty sub-residual
    bool used_random = false;
    std::uint64_t seed = 0;
    int sample_count = 0;  // matrix arguments substituted, quantified ids only
};

// Fixed report order.
std::vector<std::string> catalog_ids();
bool id_needs_cell(const std::string& id);

// Evaluates one catalog id.  `cell` is required exactly for the ids with a
// band threshold in them; unknown ids and a missing cell are rejected.
IdentityCheck check(const std::string& id, const SeriesSpec& sp, const CellSplit* cell = nullptr,
                    std::uint64_t seed = kCatalogSeed);

// Every id valid for the given inputs, in catalog order.
std::vector<IdentityCheck> run_catalog(const SeriesSpec& sp, const CellSplit* cell = nullptr,
                                       std::uint64_t seed = kCatalogSeed);

}  // namespace qorbit
