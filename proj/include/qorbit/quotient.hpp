#pragma once
// Degree-truncated quotient of the free coordinate algebra by the entries of
// the reflection relation X1 R12 X2 R21 = R12 X2 R21 X1 with X = E^- + Z*,
// canonical normal forms by row reduction in grlex word order, and exact
// residual checks for the identities the quotient must satisfy.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qorbit/ncpoly.hpp"

namespace qorbit {

// All entries of X1 R12 X2 R21 - R12 X2 R21 X1, row-major, zeros dropped.
// Every entry has degree <= 2 and no constant part (asserted).
std::vector<NCPoly> relation_entries(const SeriesSpec& sp, const CellSplit& cell);

// Row-reduction budget in bytes, from QORBIT_MAX_MEM (plain integer with an
// optional K/M/G suffix); the accounting is approximate.
std::size_t row_reduction_budget();

class QuotientBasis {
  public:
    const GenTable& table() const { return table_; }
    const SeriesSpec& spec() const { return table_.spec(); }
    int r2() const { return table_.r2(); }
    int truncation() const { return d_; }

    // Standard words per degree 0..d; the empty word is always standard.
    const std::vector<std::vector<Word>>& standard_words() const { return standard_; }
    std::vector<int> graded_dimensions() const;
    int dimension() const;
    bool is_standard(const Word& w) const;

    // Linear idempotent projection onto the span of standard words; kernel is
    // the ideal slice.  Words above the truncation degree are a hard error.
    NCPoly normal_form(const NCPoly& x) const;

    struct Stats {
        int relations_total = 0;        // nonzero relation entries
        int relations_distinct = 0;     // after scalar-multiple dedup
        int relations_with_linear_part = 0;
    };
    const Stats& stats() const { return stats_; }

  private:
    explicit QuotientBasis(GenTable t) : table_(std::move(t)) {}
    friend QuotientBasis build_quotient(const SeriesSpec&, const CellSplit&, int);

    GenTable table_;
    int d_ = 0;
    std::map<Word, NCPoly, GrlexLess> rewrites_;  // non-standard word -> standard form
    std::vector<std::vector<Word>> standard_;
    Stats stats_;
};

QuotientBasis build_quotient(const SeriesSpec& sp, const CellSplit& cell, int d);

struct LemmaReport {
    std::string id;
    std::string series;
    int rank = 0;
    int r2 = 0;
    int truncation = 0;
    bool pass = false;
    int residual_entry_count = 0;  // nonzero residual entries after reduction
    std::string detail;            // first failing piece, empty when clean
};

// Identity checks available inside the quotient.  The composite id "5.2"
// runs the braid compatibility identity together with its intermediate
// equalities, each of which is also individually addressable.
std::vector<std::string> lemma_ids();
LemmaReport verify_lemma(const std::string& id, const QuotientBasis& basis);
LemmaReport verify_lemma(const std::string& id, const SeriesSpec& sp, const CellSplit& cell, int d);

}  // namespace qorbit
