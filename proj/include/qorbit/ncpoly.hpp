#pragma once
// Free associative algebra on a finite set of generators: words, polynomials
// with rational-function coefficients, and the generator matrices attached to
// a band split -- the lower-cell idempotent E^- + Z* and its reflected
// partner E^+ + V*.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qorbit/leg_matrix.hpp"
#include "qorbit/scalars.hpp"
#include "qorbit/series.hpp"

namespace qorbit {

using GenId = std::uint8_t;
using Word = std::vector<GenId>;

// Graded lexicographic order: by length first, ties by generator sequence.
// The empty word is the least element.
struct GrlexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Element of the free algebra.  Invariant: no zero coefficients are stored,
// so the zero polynomial has an empty term map.
class NCPoly {
  public:
    using TermMap = std::map<Word, RatFunc, GrlexLess>;

    NCPoly() = default;
    NCPoly(int n) : NCPoly(RatFunc(n)) {}
    NCPoly(RatFunc c);
    static NCPoly gen(GenId g);
    static NCPoly monomial(Word w, RatFunc c);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_constant() const;
    int degree() const;  // length of the longest word; -1 for zero
    const TermMap& terms() const { return terms_; }
    RatFunc coeff(const Word& w) const;
    RatFunc constant_part() const { return coeff(Word{}); }
    NCPoly homogeneous_part(int deg) const;

    // Greatest term in grlex order; require !is_zero().
    const Word& leading_word() const;
    const RatFunc& leading_coeff() const;

    NCPoly& operator+=(const NCPoly& o);
    NCPoly& operator-=(const NCPoly& o);
    NCPoly operator-() const;
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
    NCPoly& operator*=(const NCPoly& o) { return *this = *this * o; }
    NCPoly scaled(const RatFunc& c) const;

    NCPoly subst_inv() const;  // t -> 1/t on every coefficient
    NCPoly inv() const;        // defined for nonzero constants only

    bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const NCPoly& o) const { return !(*this == o); }

    void add_term(const Word& w, const RatFunc& c);

  private:
    TermMap terms_;
};

using NCLegMatrix = LegMatrixT<NCPoly>;

NCLegMatrix to_nc(const LegMatrix& m);

// Index pattern of a generator: an entry of the starred coordinate block,
// with the row label strictly above the lower band and the column label
// inside it (col <= -r < row, doubled values).
struct GenIndex {
    int row2 = 0;
    int col2 = 0;
};

// The generator set attached to a series and a band threshold, ordered by
// (row label, column label) ascending.  GenIds index into this order.
class GenTable {
  public:
    GenTable(const SeriesSpec& sp, const CellSplit& cell);

    int size() const { return static_cast<int>(gens_.size()); }
    const GenIndex& operator[](GenId g) const;
    bool contains(int row2, int col2) const;
    GenId id(int row2, int col2) const;  // throws InvalidArgument if absent
    const SeriesSpec& spec() const { return sp_; }
    int r2() const { return r2_; }

    // Weight of a word under the label grading: each generator adds the
    // row-label weight and subtracts the column-label weight, where the
    // weight of label m is the m-th unit vector, negated for -m, zero for 0.
    std::vector<int> weight(const Word& w) const;

  private:
    SeriesSpec sp_;
    int r2_ = 0;
    std::vector<GenIndex> gens_;
    std::map<std::pair<int, int>, GenId> by_pos_;
};

// N x N matrix with the generator z*_{(row,col)} at each admissible position.
NCLegMatrix gen_block(const GenTable& t);

// E^- plus the generator block; idempotent already in the free algebra.
NCLegMatrix cell_idempotent_low(const CellSplit& cell, const GenTable& t);

// The generator block pushed through the Z -> V map, coefficients kept and
// index pattern transposed: rows in the upper band, columns strictly below it.
NCLegMatrix mirror_block(const SeriesSpec& sp, const CellSplit& cell, const GenTable& t);

// E^+ plus the mirrored block; the other idempotent of the pair.
NCLegMatrix cell_idempotent_high(const SeriesSpec& sp, const CellSplit& cell, const GenTable& t);

// Involutive anti-automorphism: reverse every word, conjugate every
// coefficient (the identity here -- coefficients are real in q), transpose
// the index pattern.
NCPoly star_poly(const NCPoly& p);
NCLegMatrix star_conjugate(const NCLegMatrix& m);

}  // namespace qorbit
