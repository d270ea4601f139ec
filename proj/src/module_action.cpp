#include "qorbit/module_action.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace qorbit {

namespace {

NCLegMatrix normal_formed(const QuotientBasis& qb, const NCLegMatrix& m) {
    NCLegMatrix out(m.dims());
    for (int r = 0; r < m.size(); ++r)
        for (const auto& [c, v] : m.row(r)) out.set(r, c, qb.normal_form(v));
    return out;
}

}  // namespace

const NCLegMatrix& ActionTable::value(const Word& f) const {
    auto it = values_.find(f);
    if (it == values_.end()) throw InvalidArgument("word outside the action table");
    return it->second;
}

NCLegMatrix ActionTable::apply(const NCPoly& x) const {
    NCLegMatrix out(std::vector<int>{sp_.N});
    for (const auto& [w, c] : x.terms()) {
        const NCLegMatrix& mv = value(w);
        for (int r = 0; r < mv.size(); ++r)
            for (const auto& [cc, v] : mv.row(r)) out.add_to(r, cc, v.scaled(c));
    }
    return out;
}

ActionTable seed_action(const SeriesSpec& sp, const CellSplit& cell, int sigma4,
                        int truncation) {
    ActionTable t;
    t.sp_ = sp;
    t.cell_ = cell;
    t.sigma4_ = sigma4;
    t.xi_ = RatFunc::q_pow2(-sigma4);
    const int d = truncation >= 0 ? truncation : (std::max(sigma4, 0) + 1) / 2 + 2;
    t.basis_ = std::make_shared<const QuotientBasis>(build_quotient(sp, cell, d));
    const GenTable& gt = t.basis_->table();
    const int N = sp.N;

    const LegMatrix R = build_R(sp), P = build_P(sp);
    const LegMatrix R21 = P * R * P;
    t.r21inv_ = R21.inverse();

    // Closed form of the recursion matrix, certified by the quotient layer:
    // R X2 R21 - gamma X1 R P X1 + gamma p R X2 K21 P X2 R21 with X = E- + Z*.
    {
        const std::vector<int> dims2{N, N};
        const NCLegMatrix Rn = to_nc(R), R21n = to_nc(R21), Pn = to_nc(P);
        const NCLegMatrix K21n = to_nc(P * build_K(sp) * P);
        const NCLegMatrix X = cell_idempotent_low(cell, gt);
        const NCLegMatrix X1 = X.embed(dims2, {1}), X2 = X.embed(dims2, {2});
        const RatFunc gamma = q_minus_qinv();
        const RatFunc p = RatFunc(sp.eps) * RatFunc::q_pow2(-2 * cell.r2 + 2 + 2 * sp.eps);
        t.closed_form_ = Rn * X2 * R21n - (X1 * Rn * Pn * X1).scaled(NCPoly(gamma)) +
                         (Rn * X2 * K21n * Pn * X2 * R21n).scaled(NCPoly(gamma * p));
    }

    for (int i = 0; i < N; ++i)
        if (sp.lab2[i] > -cell.r2) t.up_idx_.push_back(i);
    const int n_up = static_cast<int>(t.up_idx_.size());
    const int n2 = N * N, ncols = N * n_up;

    // Row-reduce the recursion system once; the transform solves every
    // right-hand side and exposes the left null space as consistency rows.
    std::vector<std::vector<RatFunc>> a(n2, std::vector<RatFunc>(ncols));
    for (int c = 0; c < N; ++c)
        for (int i2 = 0; i2 < N; ++i2)
            for (int k1 = 0; k1 < N; ++k1)
                for (int u = 0; u < n_up; ++u)
                    a[i2 * N + k1][c * n_up + u] = t.r21inv_.at(c * N + i2, k1 * N + t.up_idx_[u]);
    t.solve_.assign(n2, std::vector<RatFunc>(n2));
    for (int i = 0; i < n2; ++i) t.solve_[i][i] = RatFunc(1);
    int row = 0;
    for (int col = 0; col < ncols; ++col) {
        int piv = -1;
        for (int r = row; r < n2; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw RecursionSingular();
        std::swap(a[row], a[piv]);
        std::swap(t.solve_[row], t.solve_[piv]);
        const RatFunc s = a[row][col].inv();
        for (int c = col; c < ncols; ++c)
            if (!a[row][c].is_zero()) a[row][c] = s * a[row][c];
        for (int c = 0; c < n2; ++c)
            if (!t.solve_[row][c].is_zero()) t.solve_[row][c] = s * t.solve_[row][c];
        for (int r = 0; r < n2; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            const RatFunc f = a[r][col];
            for (int c = col; c < ncols; ++c)
                if (!a[row][c].is_zero()) a[r][c] += -(f * a[row][c]);
            for (int c = 0; c < n2; ++c)
                if (!t.solve_[row][c].is_zero()) t.solve_[r][c] += -(f * t.solve_[row][c]);
        }
        ++row;
    }

    // M . 1: identity plus the xi-weighted pair of band idempotents.
    NCLegMatrix m1 = NCLegMatrix::identity(std::vector<int>{N});
    const NCLegMatrix low = to_nc(cell.e_minus) + gen_block(gt);
    const NCLegMatrix high = to_nc(cell.e_plus) + mirror_block(sp, cell, gt);
    m1 = m1 + low.scaled(NCPoly(t.xi_.inv() - RatFunc(1))) + high.scaled(NCPoly(t.xi_ - RatFunc(1)));
    t.values_.emplace(Word{}, normal_formed(*t.basis_, m1));
    t.degree_ = 0;
    return t;
}

void ActionTable::extend_one() {
    const int target = degree_ + 1;
    if (basis_->truncation() < target + 2)
        throw ResourceLimit("truncation below extension degree " +
                            std::to_string(target));
    const int N = sp_.N;
    const GenTable& gt = basis_->table();
    const int n_up = static_cast<int>(up_idx_.size());
    const int n2 = N * N, ncols = N * n_up;
    std::vector<int> low_idx;
    for (int i = 0; i < N; ++i)
        if (sp_.lab2[i] <= -cell_.r2) low_idx.push_back(i);

    std::map<Word, NCLegMatrix, GrlexLess> fresh;
    for (const Word& f : basis_->standard_words()[static_cast<std::size_t>(target - 1)]) {
        const NCLegMatrix& mf = values_.at(f);

        // W = (M tensor id) R21^{-1} . f on two legs.
        NCLegMatrix w(std::vector<int>{N, N});
        for (int c = 0; c < N; ++c)
            for (int j2 = 0; j2 < N; ++j2)
                for (const auto& [colflat, rv] : r21inv_.row(c * N + j2))
                    for (int j1 = 0; j1 < N; ++j1) {
                        const NCPoly& val = mf.at(j1, c);
                        if (!val.is_zero()) w.add_to(j1 * N + j2, colflat, val.scaled(rv));
                    }
        const NCLegMatrix rhs = closed_form_ * w;

        for (int klow : low_idx) {
            for (int i1 = 0; i1 < N; ++i1) {
                std::vector<NCPoly> b(static_cast<std::size_t>(n2));
                for (int i2 = 0; i2 < N; ++i2)
                    for (int k1 = 0; k1 < N; ++k1) {
                        NCPoly v = rhs.at(i1 * N + i2, k1 * N + klow);
                        for (int c = 0; c < N; ++c) {
                            const RatFunc& rc = r21inv_.at(c * N + i2, k1 * N + klow);
                            if (!rc.is_zero()) v -= mf.at(i1, c).scaled(rc);
                        }
                        b[static_cast<std::size_t>(i2 * N + k1)] = basis_->normal_form(v);
                    }
                for (int col = 0; col < ncols; ++col) {
                    NCPoly u;
                    for (int j = 0; j < n2; ++j)
                        if (!solve_[col][j].is_zero() && !b[static_cast<std::size_t>(j)].is_zero())
                            u += b[static_cast<std::size_t>(j)].scaled(solve_[col][j]);
                    const GenId g = gt.id(sp_.lab2[up_idx_[col % n_up]], sp_.lab2[klow]);
                    Word word;
                    word.reserve(f.size() + 1);
                    word.push_back(g);
                    word.insert(word.end(), f.begin(), f.end());
                    if (!basis_->is_standard(word)) continue;
                    auto [it, created] = fresh.try_emplace(word, std::vector<int>{N});
                    it->second.set(i1, col / n_up, std::move(u));
                }
                for (int r = ncols; r < n2; ++r) {
                    NCPoly u;
                    for (int j = 0; j < n2; ++j)
                        if (!solve_[r][j].is_zero() && !b[static_cast<std::size_t>(j)].is_zero())
                            u += b[static_cast<std::size_t>(j)].scaled(solve_[r][j]);
                    if (!u.is_zero())
                        throw RecursionSingular("inconsistent right-hand side");
                }
            }
        }
    }
    for (auto& [word, mat] : fresh) values_.emplace(std::move(word), std::move(mat));
    degree_ = target;
}

void extend_action(ActionTable& table, int target_degree) {
    while (table.degree() < target_degree) table.extend_one();
}

std::vector<int> ModuleRep::graded_dimensions() const {
    std::vector<int> dims(static_cast<std::size_t>(closure_degree()) + 1, 0);
    for (const NCPoly& v : basis_) ++dims[v.terms().begin()->first.size()];
    return dims;
}

int ModuleRep::closure_degree() const {
    int d = 0;
    for (const NCPoly& v : basis_) d = std::max(d, static_cast<int>(v.terms().begin()->first.size()));
    return d;
}

LegMatrix ModuleRep::op_block(int a, int b) const {
    const int m = dimension();
    if (a < 0 || a >= spec().N || b < 0 || b >= spec().N)
        throw InvalidArgument("matrix label out of range");
    LegMatrix out(std::vector<int>{m});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const RatFunc& v = op_.at(a * m + i, b * m + j);
            if (!v.is_zero()) out.set(i, j, v);
        }
    return out;
}

std::vector<RatFunc> ModuleRep::coordinates(const NCPoly& x) const {
    std::vector<RatFunc> coords(basis_.size());
    NCPoly rem = x;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Word& pivot = basis_[i].terms().begin()->first;
        coords[i] = rem.coeff(pivot);
        if (!coords[i].is_zero()) rem -= basis_[i].scaled(coords[i]);
    }
    if (!rem.is_zero()) throw InvalidArgument("element outside the module span");
    return coords;
}

namespace {

// Signals that a closure attempt needs a deeper quotient before the action
// table can reach the next degree.
struct NeedDeeperTruncation {
    int truncation;
};

}  // namespace

ModuleRep ModuleRep::closure_attempt(const SeriesSpec& sp, const CellSplit& cell, int sigma4,
                                     int truncation, const ModuleBudgets& bud) {
    ActionTable table = seed_action(sp, cell, sigma4, truncation);

    // Leading-word echelon of the cyclic span; every inserted row is hit with
    // the action exactly once.
    std::map<Word, NCPoly, GrlexLess> echelon;
    std::vector<NCPoly> rows;
    auto reduce = [&echelon](NCPoly v) {
        while (!v.is_zero()) {
            auto it = echelon.find(v.leading_word());
            if (it == echelon.end()) break;
            v -= it->second.scaled(v.leading_coeff());
        }
        return v;
    };
    auto insert_row = [&](NCPoly v) {
        v = v.scaled(v.leading_coeff().inv());
        echelon.emplace(v.leading_word(), v);
        rows.push_back(std::move(v));
    };
    insert_row(NCPoly(1));

    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        const NCPoly v = rows[idx];
        const int dv = std::max(v.degree(), 0);
        while (table.degree() < dv) {
            const int target = table.degree() + 1;
            if (table.basis().truncation() < target + 2)
                throw NeedDeeperTruncation{target + 2};
            table.extend_one();
        }
        const NCLegMatrix mv = table.apply(v);
        for (int a = 0; a < sp.N; ++a)
            for (const auto& [b, poly] : mv.row(a)) {
                NCPoly rem = reduce(poly);
                if (rem.is_zero()) continue;
                if (rem.degree() > bud.max_degree ||
                    static_cast<int>(rows.size()) >= bud.max_dimension)
                    throw ModuleNotClosed();
                insert_row(std::move(rem));
            }
    }

    // Canonical presentation: reduced echelon with least-monomial pivots, so
    // the unit is always the first basis vector.
    std::map<Word, NCPoly, GrlexLess> rref;
    for (NCPoly v : rows) {
        bool changed = true;
        while (changed && !v.is_zero()) {
            changed = false;
            for (const auto& [pw, prow] : rref) {
                const RatFunc c = v.coeff(pw);
                if (!c.is_zero()) {
                    v -= prow.scaled(c);
                    changed = true;
                    break;
                }
            }
        }
        if (v.is_zero()) continue;
        v = v.scaled(v.terms().begin()->second.inv());
        const Word pivot = v.terms().begin()->first;
        for (auto& [pw, prow] : rref) {
            const RatFunc c = prow.coeff(pivot);
            if (!c.is_zero()) prow -= v.scaled(c);
        }
        rref.emplace(pivot, std::move(v));
    }

    ModuleRep rep;
    rep.table_ = std::move(table);
    for (auto& [pivot, row] : rref) {
        rep.weights_.push_back(rep.table_.basis().table().weight(pivot));
        rep.basis_.push_back(std::move(row));
    }
    const int m = rep.dimension();
    rep.op_ = LegMatrix(std::vector<int>{sp.N, m});
    for (int j = 0; j < m; ++j) {
        const NCLegMatrix mv = rep.table_.apply(rep.basis_[static_cast<std::size_t>(j)]);
        for (int a = 0; a < sp.N; ++a)
            for (const auto& [b, poly] : mv.row(a)) {
                std::vector<RatFunc> coords;
                try {
                    coords = rep.coordinates(poly);
                } catch (const InvalidArgument&) {
                    throw ModuleNotClosed("span not invariant");
                }
                for (int i = 0; i < m; ++i)
                    if (!coords[static_cast<std::size_t>(i)].is_zero())
                        rep.op_.set(a * m + i, b * m + j, coords[static_cast<std::size_t>(i)]);
            }
    }
    return rep;
}

namespace {

bool same_result(const ModuleRep& a, const ModuleRep& b) {
    if (a.dimension() != b.dimension() || a.weights() != b.weights()) return false;
    if (a.basis() != b.basis()) return false;
    const int n = a.op().size();
    for (int r = 0; r < n; ++r) {
        if (a.op().row(r).size() != b.op().row(r).size()) return false;
        for (const auto& [c, v] : a.op().row(r))
            if (!(v - b.op().at(r, c)).is_zero()) return false;
    }
    return true;
}

}  // namespace

ModuleRep build_module(const SeriesSpec& sp, const CellSplit& cell, int sigma4,
                       const ModuleBudgets& budgets) {
    ModuleBudgets bud = budgets;
    if (bud.max_degree < 0) bud.max_degree = (std::max(sigma4, 0) + 1) / 2 + 4;

    // The quotient's degree slices saturate only as the truncation grows, so a
    // single attempt can see spurious standard words.  Accept a result only
    // when two consecutive truncations reproduce it verbatim.
    int trunc = std::max((std::max(sigma4, 0) + 1) / 2 + 2, 3);
    const int trunc_cap = bud.max_degree + 4;
    bool have_prev = false;
    ModuleRep prev;
    while (trunc <= trunc_cap) {
        ModuleRep cur;
        try {
            cur = ModuleRep::closure_attempt(sp, cell, sigma4, trunc, bud);
        } catch (const NeedDeeperTruncation& need) {
            trunc = std::max(trunc + 1, need.truncation);
            have_prev = false;
            continue;
        }
        if (have_prev && same_result(prev, cur)) return cur;
        prev = std::move(cur);
        have_prev = true;
        ++trunc;
    }
    throw ModuleNotClosed();
}

ModuleRelationReport verify_module_relations(const ModuleRep& rep) {
    const SeriesSpec& sp = rep.spec();
    const int N = sp.N, m = rep.dimension();
    const std::vector<int> dims{N, N, m};

    const LegMatrix R = build_R(sp), P = build_P(sp);
    const LegMatrix Rinv = R.inverse();
    const LegMatrix q2rho = build_q2rho(sp);
    const LegMatrix M1 = rep.op().embed(dims, {1, 3});
    const LegMatrix M2 = rep.op().embed(dims, {2, 3});
    const LegMatrix R12 = R.embed(dims, {1, 2});
    const LegMatrix R12i = Rinv.embed(dims, {1, 2});
    const LegMatrix R21i = (P * Rinv * P).embed(dims, {1, 2});
    const LegMatrix K12 = build_K(sp).embed(dims, {1, 2});
    const LegMatrix P12 = P.embed(dims, {1, 2});

    ModuleRelationReport report;
    auto record = [&report](const std::string& id, const LegMatrix& residual) {
        ModuleCheck c;
        c.id = id;
        c.residual_entry_count = static_cast<int>(residual.nnz());
        c.pass = c.residual_entry_count == 0;
        if (!c.pass)
            for (int r = 0; r < residual.size() && c.detail.empty(); ++r)
                for (const auto& [cc, v] : residual.row(r)) {
                    c.detail = "entry (" + std::to_string(r) + "," + std::to_string(cc) + ")";
                    break;
                }
        report.checks.push_back(std::move(c));
    };
    auto record_fail = [&report](const std::string& id, const std::string& why) {
        report.checks.push_back(ModuleCheck{id, false, -1, why});
    };

    record("2.32", M2 * R12i * M1 * R21i - R12i * M1 * R21i * M2);

    bool have_inverse = false;
    LegMatrix minv;
    try {
        minv = rep.op().inverse();
        have_inverse = true;
    } catch (const NotInvertible&) {
        record_fail("2.33", "operator matrix not invertible");
    }
    if (have_inverse) {
        const LegMatrix M2i = minv.embed(dims, {2, 3});
        const LegMatrix lhs = M1 * K12;
        const RatFunc scale = RatFunc(sp.eps) * RatFunc::q_pow2(2 * (sp.N - sp.eps));
        const LegMatrix resid =
            (lhs - R12 * M2i * R12i * K12) + (lhs - (R12 * M2i * P12 * K12).scaled(scale));
        record("2.33", resid);
    }

    // Weighted trace of M acts by a scalar.
    LegMatrix central(std::vector<int>{m});
    for (int a = 0; a < N; ++a)
        central = central + rep.op_block(a, a).scaled(q2rho.at(a, a));
    report.central_value = central.at(0, 0);
    record("2.34", central - LegMatrix::identity(std::vector<int>{m}).scaled(report.central_value));

    if (have_inverse) {
        LegMatrix central_inv(std::vector<int>{m});
        for (int a = 0; a < N; ++a) {
            LegMatrix block(std::vector<int>{m});
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    const RatFunc& v = minv.at(a * m + i, a * m + j);
                    if (!v.is_zero()) block.set(i, j, v);
                }
            central_inv = central_inv + block.scaled(q2rho.at(a, a));
        }
        record("2.35", central - central_inv);
    } else {
        record_fail("2.35", "operator matrix not invertible");
    }

    report.pass = true;
    for (const ModuleCheck& c : report.checks) report.pass = report.pass && c.pass;
    std::sort(report.checks.begin(), report.checks.end(),
              [](const ModuleCheck& x, const ModuleCheck& y) { return x.id < y.id; });
    return report;
}

}  // namespace qorbit
