#include "qorbit/ncpoly.hpp"

#include <algorithm>

#include "qorbit/errors.hpp"

namespace qorbit {

NCPoly::NCPoly(RatFunc c) {
    if (!c.is_zero()) terms_.emplace(Word{}, std::move(c));
}

NCPoly NCPoly::gen(GenId g) {
    NCPoly p;
    p.terms_.emplace(Word{g}, RatFunc(1));
    return p;
}

NCPoly NCPoly::monomial(Word w, RatFunc c) {
    NCPoly p;
    if (!c.is_zero()) p.terms_.emplace(std::move(w), std::move(c));
    return p;
}

bool NCPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second.is_one();
}

bool NCPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

int NCPoly::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first.size());
}

RatFunc NCPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? RatFunc() : it->second;
}

NCPoly NCPoly::homogeneous_part(int deg) const {
    NCPoly p;
    for (const auto& [w, c] : terms_)
        if (static_cast<int>(w.size()) == deg) p.terms_.emplace(w, c);
    return p;
}

const Word& NCPoly::leading_word() const {
    if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
    return terms_.rbegin()->first;
}

const RatFunc& NCPoly::leading_coeff() const {
    if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
    return terms_.rbegin()->second;
}

void NCPoly::add_term(const Word& w, const RatFunc& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

NCPoly NCPoly::operator-() const {
    NCPoly p;
    for (const auto& [w, c] : terms_) p.terms_.emplace(w, -c);
    return p;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly p;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) {
            Word w;
            w.reserve(wa.size() + wb.size());
            w.insert(w.end(), wa.begin(), wa.end());
            w.insert(w.end(), wb.begin(), wb.end());
            p.add_term(w, ca * cb);
        }
    return p;
}

NCPoly NCPoly::scaled(const RatFunc& c) const {
    NCPoly p;
    if (c.is_zero()) return p;
    for (const auto& [w, co] : terms_) p.terms_.emplace(w, c * co);
    return p;
}

NCPoly NCPoly::subst_inv() const {
    NCPoly p;
    for (const auto& [w, c] : terms_) p.terms_.emplace(w, c.subst_inv());
    return p;
}

NCPoly NCPoly::inv() const {
    if (!is_constant() || is_zero()) throw NotInvertible("nonconstant polynomial");
    return NCPoly(terms_.begin()->second.inv());
}

NCLegMatrix to_nc(const LegMatrix& m) {
    NCLegMatrix out(m.dims());
    for (int r = 0; r < m.size(); ++r)
        for (const auto& [c, v] : m.row(r)) out.set(r, c, NCPoly(v));
    return out;
}

GenTable::GenTable(const SeriesSpec& sp, const CellSplit& cell) : sp_(sp), r2_(cell.r2) {
    for (int ri = 0; ri < sp.N; ++ri) {
        if (sp.lab2[ri] <= -r2_) continue;
        for (int ci = 0; ci < sp.N; ++ci) {
            if (sp.lab2[ci] > -r2_) continue;
            if (gens_.size() >= 255) throw ResourceLimit("generator table");
            by_pos_.emplace(std::make_pair(sp.lab2[ri], sp.lab2[ci]),
                            static_cast<GenId>(gens_.size()));
            gens_.push_back(GenIndex{sp.lab2[ri], sp.lab2[ci]});
        }
    }
}

const GenIndex& GenTable::operator[](GenId g) const {
    if (g >= gens_.size()) throw InvalidArgument("generator id out of range");
    return gens_[g];
}

bool GenTable::contains(int row2, int col2) const {
    return by_pos_.count(std::make_pair(row2, col2)) != 0;
}

GenId GenTable::id(int row2, int col2) const {
    auto it = by_pos_.find(std::make_pair(row2, col2));
    if (it == by_pos_.end()) throw InvalidArgument("not a generator position");
    return it->second;
}

std::vector<int> GenTable::weight(const Word& w) const {
    std::vector<int> wt(static_cast<std::size_t>(sp_.rank), 0);
    const int least_pos = sp_.lab2[sp_.N - 1] % 2 == 0 ? 2 : 1;  // smallest positive label
    auto bump = [&](int lab2, int sign) {
        if (lab2 == 0) return;
        const int pos = (std::abs(lab2) - least_pos) / 2;
        wt[static_cast<std::size_t>(pos)] += (lab2 > 0) ? sign : -sign;
    };
    for (GenId g : w) {
        bump(gens_[g].row2, 1);
        bump(gens_[g].col2, -1);
    }
    return wt;
}

NCLegMatrix gen_block(const GenTable& t) {
    const SeriesSpec& sp = t.spec();
    NCLegMatrix out(std::vector<int>{sp.N});
    for (GenId g = 0; g < t.size(); ++g) {
        const GenIndex& gi = t[g];
        out.set(sp.index_of(gi.row2), sp.index_of(gi.col2), NCPoly::gen(g));
    }
    return out;
}

NCLegMatrix cell_idempotent_low(const CellSplit& cell, const GenTable& t) {
    return to_nc(cell.e_minus) + gen_block(t);
}

NCLegMatrix mirror_block(const SeriesSpec& sp, const CellSplit& cell, const GenTable& t) {
    // Feed the map the starred generators laid out in the unstarred index
    // pattern; transposing the result puts every entry back at its starred
    // position.  Coefficients are untouched (they are real in q).
    NCLegMatrix zb(std::vector<int>{sp.N});
    for (GenId g = 0; g < t.size(); ++g) {
        const GenIndex& gi = t[g];
        zb.set(sp.index_of(gi.col2), sp.index_of(gi.row2), NCPoly::gen(g));
    }
    return star_conjugate(vmap(sp, cell, zb));
}

NCLegMatrix cell_idempotent_high(const SeriesSpec& sp, const CellSplit& cell, const GenTable& t) {
    return to_nc(cell.e_plus) + mirror_block(sp, cell, t);
}

NCPoly star_poly(const NCPoly& p) {
    NCPoly out;
    for (const auto& [w, c] : p.terms()) out.add_term(Word(w.rbegin(), w.rend()), c);
    return out;
}

NCLegMatrix star_conjugate(const NCLegMatrix& m) {
    const NCLegMatrix tr = m.transpose();
    NCLegMatrix out(tr.dims());
    for (int r = 0; r < tr.size(); ++r)
        for (const auto& [c, v] : tr.row(r)) out.set(r, c, star_poly(v));
    return out;
}

}  // namespace qorbit
