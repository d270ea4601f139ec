#include "qorbit/quotient.hpp"

#include <cstdlib>
#include <iterator>
#include <optional>
#include <utility>

#include "qorbit/errors.hpp"

namespace qorbit {

namespace {

// a -= c * b, in place.
void sub_scaled(NCPoly& a, const NCPoly& b, const RatFunc& c) {
    for (const auto& [w, bc] : b.terms()) a.add_term(w, -(c * bc));
}

}  // namespace

std::vector<NCPoly> relation_entries(const SeriesSpec& sp, const CellSplit& cell) {
    const GenTable table(sp, cell);
    const std::vector<int> d2{sp.N, sp.N};
    const NCLegMatrix x = cell_idempotent_low(cell, table);
    const NCLegMatrix x1 = x.embed(d2, {1});
    const NCLegMatrix x2 = x.embed(d2, {2});
    const LegMatrix rs = build_R(sp);
    const LegMatrix ps = build_P(sp);
    const NCLegMatrix r = to_nc(rs);
    const NCLegMatrix r21 = to_nc(ps * rs * ps);

    const NCLegMatrix t = x1 * r * x2 * r21 - r * x2 * r21 * x1;
    std::vector<NCPoly> out;
    for (int row = 0; row < t.size(); ++row)
        for (const auto& [col, v] : t.row(row)) {
            if (!v.constant_part().is_zero())
                throw InconsistentConstantTerm("inconsistent constant term in relation entry");
            out.push_back(v);
        }
    return out;
}

std::size_t row_reduction_budget() {
    const char* env = std::getenv("QORBIT_MAX_MEM");
    if (env == nullptr || *env == '\0') return std::size_t(1) << 31;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (v == 0 || end == env) throw InvalidArgument("QORBIT_MAX_MEM");
    std::size_t mult = 1;
    if (*end != '\0') {
        if (*(end + 1) != '\0') throw InvalidArgument("QORBIT_MAX_MEM");
        switch (*end) {
            case 'k': case 'K': mult = std::size_t(1) << 10; break;
            case 'm': case 'M': mult = std::size_t(1) << 20; break;
            case 'g': case 'G': mult = std::size_t(1) << 30; break;
            default: throw InvalidArgument("QORBIT_MAX_MEM");
        }
    }
    return static_cast<std::size_t>(v) * mult;
}

namespace {

struct Elimination {
    std::map<Word, NCPoly, GrlexLess> rows;  // keyed by leading word; lead coeff 1
    std::size_t bytes = 0;
    std::size_t budget = row_reduction_budget();

    static std::size_t row_bytes(const NCPoly& p) {
        std::size_t b = 0;
        for (const auto& [w, c] : p.terms()) b += 128 + 16 * w.size();
        return b;
    }

    void absorb(NCPoly row, int degree_tag) {
        while (!row.is_zero()) {
            auto it = rows.find(row.leading_word());
            if (it == rows.end()) break;
            sub_scaled(row, it->second, row.leading_coeff());
        }
        if (row.is_zero()) return;
        row = row.scaled(row.leading_coeff().inv());
        bytes += row_bytes(row);
        if (bytes > budget)
            throw ResourceLimit("at degree " + std::to_string(degree_tag));
        rows.emplace(row.leading_word(), std::move(row));
    }
};

}  // namespace

QuotientBasis build_quotient(const SeriesSpec& sp, const CellSplit& cell, int d) {
    if (d < 0) throw InvalidArgument("truncation degree must be nonnegative");
    GenTable table(sp, cell);
    const int g = table.size();

    std::vector<NCPoly> rels = relation_entries(sp, cell);
    QuotientBasis qb(std::move(table));
    qb.d_ = d;
    qb.stats_.relations_total = static_cast<int>(rels.size());

    // Normalize and drop scalar multiples; the echelon would eat duplicates
    // anyway but padding them first is pure waste.
    std::vector<NCPoly> uniq;
    for (const NCPoly& r : rels) {
        NCPoly n = r.scaled(r.leading_coeff().inv());
        bool seen = false;
        for (const NCPoly& u : uniq)
            if (u == n) {
                seen = true;
                break;
            }
        if (!seen) uniq.push_back(std::move(n));
    }
    qb.stats_.relations_distinct = static_cast<int>(uniq.size());
    for (const NCPoly& u : uniq)
        if (!u.homogeneous_part(1).is_zero()) ++qb.stats_.relations_with_linear_part;

    // All words of length 0..d, lex within each length.
    std::vector<std::vector<Word>> words(static_cast<std::size_t>(d) + 1);
    words[0] = {Word{}};
    for (int m = 1; m <= d; ++m) {
        words[m].reserve(words[m - 1].size() * static_cast<std::size_t>(g));
        for (const Word& w : words[m - 1])
            for (int x = 0; x < g; ++x) {
                Word e = w;
                e.push_back(static_cast<GenId>(x));
                words[m].push_back(std::move(e));
            }
    }

    Elimination elim;
    for (const NCPoly& rel : uniq) {
        const int dr = rel.degree();
        for (int l1 = 0; l1 + dr <= d; ++l1)
            for (const Word& w1 : words[static_cast<std::size_t>(l1)]) {
                const NCPoly left = NCPoly::monomial(w1, RatFunc(1)) * rel;
                for (int l2 = 0; l1 + dr + l2 <= d; ++l2)
                    for (const Word& w2 : words[static_cast<std::size_t>(l2)])
                        elim.absorb(left * NCPoly::monomial(w2, RatFunc(1)), l1 + dr + l2);
            }
    }

    // Back-substitution in ascending grlex order: tails of earlier rewrites
    // are already standard, so one pass suffices.
    for (const auto& [lw, row] : elim.rows) {
        NCPoly repl;
        const auto last = std::prev(row.terms().end());
        for (auto it = row.terms().begin(); it != last; ++it) {
            auto rw = qb.rewrites_.find(it->first);
            if (rw == qb.rewrites_.end()) repl.add_term(it->first, -(it->second));
            else sub_scaled(repl, rw->second, it->second);
        }
        qb.rewrites_.emplace(lw, std::move(repl));
    }

    if (qb.rewrites_.count(Word{}) != 0)
        throw TrivialQuotient("the unit fell into the ideal");

    qb.standard_.assign(static_cast<std::size_t>(d) + 1, {});
    for (int m = 0; m <= d; ++m)
        for (Word& w : words[static_cast<std::size_t>(m)])
            if (qb.rewrites_.find(w) == qb.rewrites_.end())
                qb.standard_[static_cast<std::size_t>(m)].push_back(std::move(w));
    return qb;
}

std::vector<int> QuotientBasis::graded_dimensions() const {
    std::vector<int> out;
    out.reserve(standard_.size());
    for (const auto& s : standard_) out.push_back(static_cast<int>(s.size()));
    return out;
}

int QuotientBasis::dimension() const {
    int n = 0;
    for (const auto& s : standard_) n += static_cast<int>(s.size());
    return n;
}

bool QuotientBasis::is_standard(const Word& w) const {
    return static_cast<int>(w.size()) <= d_ && rewrites_.find(w) == rewrites_.end();
}

NCPoly QuotientBasis::normal_form(const NCPoly& x) const {
    if (x.degree() > d_)
        throw ResourceLimit("degree above the truncation");
    NCPoly out;
    for (const auto& [w, c] : x.terms()) {
        auto it = rewrites_.find(w);
        if (it == rewrites_.end()) out.add_term(w, c);
        else
            for (const auto& [rw, rc] : it->second.terms()) out.add_term(rw, c * rc);
    }
    return out;
}

namespace {

// Shared scalar data for the identity checks.
struct LemmaCtx {
    SeriesSpec sp;
    CellSplit cell;
    RatFunc gamma, p, pinv;
    NCLegMatrix X, Y, Zs, Vs;  // one leg
    LegMatrix Em, Ep;
    LegMatrix R, Rinv, R21, R21inv, P, K, K21;  // scalar, two legs

    explicit LemmaCtx(const QuotientBasis& qb)
        : sp(qb.spec()), cell(cell_split(sp, qb.r2())) {
        const GenTable& t = qb.table();
        gamma = q_minus_qinv();
        p = RatFunc(sp.eps) * RatFunc::q_pow2(-2 * cell.r2 + 2 + 2 * sp.eps);
        pinv = p.inv();
        Zs = gen_block(t);
        Vs = mirror_block(sp, cell, t);
        X = cell_idempotent_low(cell, t);
        Y = cell_idempotent_high(sp, cell, t);
        Em = cell.e_minus;
        Ep = cell.e_plus;
        R = build_R(sp);
        P = build_P(sp);
        K = build_K(sp);
        R21 = P * R * P;
        Rinv = R.inverse();
        R21inv = P * Rinv * P;
        K21 = P * K * P;
    }
};

struct TwoLeg {
    std::vector<int> d2;
    NCLegMatrix R, Rinv, R21, R21inv, P, K21, I;
    NCLegMatrix X1, X2, Y1, Y2, Z2, V2, Em2, Ep2;
    NCLegMatrix Xbr, Yrhs;  // closed resolvent forms attached to E^- and E^+

    explicit TwoLeg(const LemmaCtx& c) : d2{c.sp.N, c.sp.N} {
        R = to_nc(c.R);
        Rinv = to_nc(c.Rinv);
        R21 = to_nc(c.R21);
        R21inv = to_nc(c.R21inv);
        P = to_nc(c.P);
        K21 = to_nc(c.K21);
        I = NCLegMatrix::identity(d2);
        X1 = c.X.embed(d2, {1});
        X2 = c.X.embed(d2, {2});
        Y1 = c.Y.embed(d2, {1});
        Y2 = c.Y.embed(d2, {2});
        Z2 = c.Zs.embed(d2, {2});
        V2 = c.Vs.embed(d2, {2});
        Em2 = to_nc(c.Em.embed(d2, {2}));
        Ep2 = to_nc(c.Ep.embed(d2, {2}));
        Xbr = R * X2 * R21 - (X1 * R * P * X1).scaled(c.gamma) +
              (R * X2 * K21 * P * X2 * R21).scaled(c.gamma * c.p);
        Yrhs = R21inv * Y2 * Rinv + (Y1 * R21inv * P * Y1).scaled(c.gamma) -
               (R21inv * Y2 * K21 * P * Y2 * Rinv).scaled(c.gamma * c.pinv);
    }
};

struct ThreeLeg {
    std::vector<int> d3;
    NCLegMatrix R12, R21, R13, R31, R23, R32, P12, P13, P23, K21, K31;
    NCLegMatrix X1, X2, X3, Em2, Em3;
    NCLegMatrix X12, X13;

    explicit ThreeLeg(const LemmaCtx& c) : d3{c.sp.N, c.sp.N, c.sp.N} {
        auto sc = [&](const LegMatrix& m, int a, int b) {
            return to_nc(m.embed(d3, {a, b}));
        };
        R12 = sc(c.R, 1, 2);
        R13 = sc(c.R, 1, 3);
        R23 = sc(c.R, 2, 3);
        R21 = sc(c.R21, 1, 2);
        R31 = sc(c.R21, 1, 3);
        R32 = sc(c.R21, 2, 3);
        P12 = sc(c.P, 1, 2);
        P13 = sc(c.P, 1, 3);
        P23 = sc(c.P, 2, 3);
        K21 = sc(c.K21, 1, 2);
        K31 = sc(c.K21, 1, 3);
        X1 = c.X.embed(d3, {1});
        X2 = c.X.embed(d3, {2});
        X3 = c.X.embed(d3, {3});
        Em2 = to_nc(c.Em.embed(d3, {2}));
        Em3 = to_nc(c.Em.embed(d3, {3}));
        X12 = R12 * X2 * R21 - (X1 * R12 * P12 * X1).scaled(c.gamma) +
              (R12 * X2 * K21 * P12 * X2 * R21).scaled(c.gamma * c.p);
        X13 = R13 * X3 * R31 - (X1 * R13 * P13 * X1).scaled(c.gamma) +
              (R13 * X3 * K31 * P13 * X3 * R31).scaled(c.gamma * c.p);
    }
};

struct LemmaDef {
    int min_degree;
    bool composite;
};

const std::vector<std::pair<std::string, LemmaDef>> kLemmas = {
    {"3.2", {2, false}},   {"3.4", {2, false}},   {"3.23", {2, false}},
    {"3.24", {2, false}},  {"3.25", {2, false}},  {"3.26", {2, false}},
    {"3.27", {2, false}},  {"5.1", {3, false}},   {"5.19", {3, false}},
    {"5.2", {4, true}},    {"5.7", {4, false}},   {"5.8", {2, false}},
    {"5.9a", {4, false}},  {"5.9b", {4, false}},  {"5.10a", {4, false}},
    {"5.10b", {4, false}}, {"5.11", {3, false}},  {"5.12a", {3, false}},
    {"5.12b", {4, false}}, {"5.12c", {4, false}}, {"5.13", {3, false}},
    {"5.14", {0, false}},  {"5.15a", {3, false}}, {"5.15b", {4, false}},
    {"5.15c", {4, false}},
};

const std::vector<std::string> kBraidParts = {
    "5.8",  "5.9a",  "5.9b",  "5.10a", "5.10b", "5.11",  "5.12a", "5.12b",
    "5.12c", "5.13", "5.14",  "5.15a", "5.15b", "5.15c", "5.7",
};

const LemmaDef& lemma_def(const std::string& id) {
    for (const auto& [k, def] : kLemmas)
        if (k == id) return def;
    throw InvalidArgument("unknown identity id: " + id);
}

std::vector<NCLegMatrix> build_residuals(const std::string& id, const LemmaCtx& c,
                                         std::optional<TwoLeg>& two_slot,
                                         std::optional<ThreeLeg>& three_slot) {
    auto two = [&]() -> TwoLeg& {
        if (!two_slot) two_slot.emplace(c);
        return *two_slot;
    };
    auto three = [&]() -> ThreeLeg& {
        if (!three_slot) three_slot.emplace(c);
        return *three_slot;
    };

    if (id == "3.2") {
        TwoLeg& t = two();
        return {t.K21 * t.X1 * t.R * t.X2};
    }
    if (id == "3.4") return {c.Y * c.X, c.X * c.Y};
    if (id == "3.23") {
        TwoLeg& t = two();
        return {t.X1 * t.R * t.X2 * t.K21};
    }
    if (id == "3.24") {
        TwoLeg& t = two();
        return {t.Y1 * t.R21inv * t.Y2 * t.Rinv - t.R21inv * t.Y2 * t.Rinv * t.Y1};
    }
    if (id == "3.25") {
        TwoLeg& t = two();
        return {t.Y1 * t.R21inv * t.Y2 * t.K21};
    }
    if (id == "3.26") {
        TwoLeg& t = two();
        return {t.R21 * t.X1 * t.R * t.Y2 - t.Y2 * t.R21 * t.X1 * t.R};
    }
    if (id == "3.27") {
        TwoLeg& t = two();
        return {t.X1 * t.R21inv * t.Y2 * t.Rinv - t.R21inv * t.Y2 * t.Rinv * t.X1};
    }
    if (id == "5.1") {
        TwoLeg& t = two();
        const NCLegMatrix a = t.I - (t.I - t.Em2) * t.R * t.Z2 * t.Rinv;
        return {a * t.Xbr - t.Em2};
    }
    if (id == "5.19") {
        TwoLeg& t = two();
        const NCLegMatrix b = t.I - t.R * t.V2 * t.Rinv * (t.I - t.Ep2);
        return {t.Yrhs * b - t.Ep2};
    }
    if (id == "5.7") {
        ThreeLeg& t = three();
        return {t.X12 * t.R23 * t.X13 * t.R32 - t.R23 * t.X13 * t.R32 * t.X12};
    }
    if (id == "5.8") {
        ThreeLeg& t = three();
        return {t.R12 * t.X2 * t.R21 * t.R23 * t.R13 * t.X3 * t.R31 * t.R32 -
                t.R23 * t.R13 * t.X3 * t.R31 * t.R32 * t.R12 * t.X2 * t.R21};
    }
    if (id == "5.9a") {
        ThreeLeg& t = three();
        return {t.R12 * t.X2 * t.K21 * t.P12 * t.X2 * t.R21 * t.R23 * t.X1 * t.R13 *
                t.P13 * t.X1 * t.R32};
    }
    if (id == "5.9b") {
        ThreeLeg& t = three();
        return {t.R23 * t.X1 * t.R13 * t.P13 * t.X1 * t.R32 * t.R12 * t.X2 * t.K21 *
                t.P12 * t.X2 * t.R21};
    }
    if (id == "5.10a") {
        ThreeLeg& t = three();
        return {t.X1 * t.R12 * t.P12 * t.X1 * t.R23 * t.R13 * t.X3 * t.K31 * t.P13 *
                t.X3 * t.R31 * t.R32};
    }
    if (id == "5.10b") {
        ThreeLeg& t = three();
        return {t.R23 * t.R13 * t.X3 * t.K31 * t.P13 * t.X3 * t.R31 * t.R32 * t.X1 *
                t.R12 * t.P12 * t.X1};
    }
    if (id == "5.11") {
        ThreeLeg& t = three();
        return {t.X1 * t.R12 * t.P12 * t.X1 * t.R23 * t.R13 * t.X3 * t.R31 * t.R32 -
                t.R23 * t.R13 * t.X3 * t.R31 * t.R32 * t.X1 * t.R12 * t.P12 * t.X1};
    }
    if (id == "5.12a") {
        ThreeLeg& t = three();
        const NCLegMatrix core = t.X1 * t.R12 * t.R13 * t.X2 * t.R23 * t.X3;
        return {t.R12 * t.X2 * t.R21 * t.R23 * t.X1 * t.R13 * t.P13 * t.X1 * t.R32 -
                t.R23 * t.X1 * t.R13 * t.P13 * t.X1 * t.R32 * t.R12 * t.X2 * t.R21 -
                (core * (t.R21 * t.P12 * t.P13 - t.R32 * t.P13 * t.P12)).scaled(c.gamma)};
    }
    if (id == "5.12b") {
        ThreeLeg& t = three();
        return {t.X1 * t.R12 * t.P12 * t.X1 * t.R23 * t.X1 * t.R13 * t.P13 * t.X1 * t.R32 -
                t.X1 * t.R12 * t.R13 * t.X2 * t.R23 * t.X3 * t.R21 * t.P12 * t.P13};
    }
    if (id == "5.12c") {
        ThreeLeg& t = three();
        return {t.R23 * t.X1 * t.R13 * t.P13 * t.X1 * t.R32 * t.X1 * t.R12 * t.P12 * t.X1 -
                t.X1 * t.R12 * t.R13 * t.X2 * t.R23 * t.X3 * t.R32 * t.P13 * t.P12};
    }
    if (id == "5.13") {
        ThreeLeg& t = three();
        const NCLegMatrix mid = t.R12 * t.X2 * t.K21 * t.P12 * t.X2 * t.R21;
        const NCLegMatrix outer = t.R23 * t.R13 * t.X3 * t.R31 * t.R32;
        return {mid * outer - outer * mid};
    }
    if (id == "5.14") {
        ThreeLeg& t = three();
        return {t.Em2 * t.Em3 * t.K21 * t.K31 - t.Em2 * t.Em3 * t.P23 * t.K31,
                t.K21 * t.K31 - t.P23 * t.K31};
    }
    if (id == "5.15a") {
        ThreeLeg& t = three();
        const NCLegMatrix mid = t.R23 * t.R13 * t.X3 * t.K31 * t.P13 * t.X3 * t.R31 * t.R32;
        const NCLegMatrix core = t.R13 * t.X3 * t.K31 * t.X2 * t.X1 * t.R13;
        return {t.R12 * t.X2 * t.R21 * mid - mid * t.R12 * t.X2 * t.R21 +
                (t.P23 * core * t.R12 * t.P13).scaled(c.gamma) -
                (t.R23 * core * t.P12 * t.P13).scaled(c.gamma)};
    }
    if (id == "5.15b") {
        ThreeLeg& t = three();
        return {(t.R12 * t.X2 * t.K21 * t.P12 * t.X2 * t.R21 * t.R23 * t.R13 * t.X3 *
                 t.K31 * t.P13 * t.X3 * t.R31 * t.R32).scaled(c.p) -
                t.P23 * t.R13 * t.X3 * t.K31 * t.X2 * t.X1 * t.R13 * t.R12 * t.P13};
    }
    if (id == "5.15c") {
        ThreeLeg& t = three();
        return {(t.R23 * t.R13 * t.X3 * t.K31 * t.P13 * t.X3 * t.R31 * t.R32 * t.R12 *
                 t.X2 * t.K21 * t.P12 * t.X2 * t.R21).scaled(c.p) -
                t.R23 * t.R13 * t.X3 * t.K31 * t.X2 * t.X1 * t.R13 * t.P12 * t.P13};
    }
    throw InvalidArgument("unknown identity id: " + id);
}

}  // namespace

std::vector<std::string> lemma_ids() {
    std::vector<std::string> out;
    out.reserve(kLemmas.size());
    for (const auto& [k, def] : kLemmas) out.push_back(k);
    return out;
}

LemmaReport verify_lemma(const std::string& id, const QuotientBasis& basis) {
    const LemmaDef& def = lemma_def(id);
    LemmaReport rep;
    rep.id = id;
    rep.series = basis.spec().name();
    rep.rank = basis.spec().rank;
    rep.r2 = basis.r2();
    rep.truncation = basis.truncation();
    if (basis.truncation() < def.min_degree)
        throw ResourceLimit("truncation below identity degree " +
                            std::to_string(def.min_degree));

    const LemmaCtx ctx(basis);
    std::optional<TwoLeg> two;
    std::optional<ThreeLeg> three;
    const std::vector<std::string> parts =
        def.composite ? kBraidParts : std::vector<std::string>{id};

    rep.pass = true;
    for (const std::string& part : parts) {
        for (const NCLegMatrix& m : build_residuals(part, ctx, two, three)) {
            for (int r = 0; r < m.size(); ++r)
                for (const auto& [col, v] : m.row(r)) {
                    if (basis.normal_form(v).is_zero()) continue;
                    ++rep.residual_entry_count;
                    rep.pass = false;
                    if (rep.detail.empty())
                        rep.detail = part + " entry (" + std::to_string(r) + "," +
                                     std::to_string(col) + ")";
                }
        }
    }
    return rep;
}

LemmaReport verify_lemma(const std::string& id, const SeriesSpec& sp, const CellSplit& cell,
                         int d) {
    return verify_lemma(id, build_quotient(sp, cell, d));
}

}  // namespace qorbit
