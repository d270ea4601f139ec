#include "qorbit/chevalley.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qorbit/errors.hpp"

namespace qorbit {

namespace {

std::vector<int> block_dims(int m) { return std::vector<int>{m}; }

int label_index(const SeriesSpec& sp, int lab2) {
    for (int i = 0; i < sp.N; ++i)
        if (sp.lab2[i] == lab2) return i;
    throw InvalidArgument("label " + std::to_string(lab2) + "/2 absent from the series");
}

// Entrywise square root of a pivot block; requires a diagonal matrix with
// monomial entries of even t-degree.
LegMatrix diag_sqrt(const LegMatrix& pivot, int position) {
    LegMatrix out(pivot.dims());
    for (int r = 0; r < pivot.size(); ++r)
        for (const auto& [c, v] : pivot.row(r)) {
            if (v.is_zero()) continue;
            if (c != r)
                throw NonMonomialEigenvalue("pivot block at position " + std::to_string(position) +
                                            " is not diagonal");
            try {
                out.set(r, r, v.sqrt_monomial());
            } catch (const IrrationalRoot&) {
                throw NonMonomialEigenvalue("pivot entry " + v.str() + " at position " +
                                            std::to_string(position));
            }
        }
    return out;
}

// sqrt(a * b^-1) entrywise for diagonal monomial matrices a, b.
LegMatrix diag_sqrt_ratio(const LegMatrix& a, const LegMatrix& b, int position) {
    LegMatrix out(a.dims());
    for (int r = 0; r < a.size(); ++r) {
        const RatFunc v = a.at(r, r) * b.at(r, r).inv();
        try {
            out.set(r, r, v.sqrt_monomial());
        } catch (const IrrationalRoot&) {
            throw NonMonomialEigenvalue("pivot ratio " + v.str() + " at position " +
                                        std::to_string(position));
        }
    }
    return out;
}

LegMatrix diag_inverse_sqrt(const LegMatrix& a, const LegMatrix& b, int position) {
    // (a b)^{-1/2} entrywise for diagonal monomial matrices.
    LegMatrix out(a.dims());
    for (int r = 0; r < a.size(); ++r) {
        const RatFunc v = a.at(r, r) * b.at(r, r);
        try {
            out.set(r, r, v.sqrt_monomial().inv());
        } catch (const IrrationalRoot&) {
            throw NonMonomialEigenvalue("pivot product " + v.str() + " at position " +
                                        std::to_string(position));
        }
    }
    return out;
}

}  // namespace

GaussFactors gauss_decompose(const ModuleRep& rep) {
    const SeriesSpec& sp = rep.spec();
    const int N = sp.N;
    const int m = rep.dimension();
    const std::vector<int> dm = block_dims(m);

    std::vector<std::vector<LegMatrix>> schur(static_cast<std::size_t>(N),
                                              std::vector<LegMatrix>(static_cast<std::size_t>(N), LegMatrix(dm)));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) schur[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = rep.op_block(a, b);

    GaussFactors f;
    f.spec = sp;
    f.r2 = rep.r2();
    f.sigma4 = rep.sigma4();
    f.block_size = m;
    f.pivot.assign(static_cast<std::size_t>(N), LegMatrix(dm));
    f.lower.assign(static_cast<std::size_t>(N), std::vector<LegMatrix>(static_cast<std::size_t>(N), LegMatrix(dm)));
    f.upper.assign(static_cast<std::size_t>(N), std::vector<LegMatrix>(static_cast<std::size_t>(N), LegMatrix(dm)));
    for (int j = 0; j < N; ++j) {
        f.lower[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = LegMatrix::identity(dm);
        f.upper[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = LegMatrix::identity(dm);
    }

    for (int j = 0; j < N; ++j) {
        auto& srow = schur[static_cast<std::size_t>(j)];
        f.pivot[static_cast<std::size_t>(j)] = srow[static_cast<std::size_t>(j)];
        LegMatrix pinv(dm);
        try {
            pinv = srow[static_cast<std::size_t>(j)].inverse();
        } catch (const NotInvertible&) {
            throw DecompositionFailed("singular pivot block at position " + std::to_string(j));
        }
        for (int i = j + 1; i < N; ++i) {
            f.lower[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                schur[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * pinv;
            f.upper[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                pinv * srow[static_cast<std::size_t>(i)];
        }
        for (int i = j + 1; i < N; ++i)
            for (int k = j + 1; k < N; ++k)
                schur[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                    schur[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -
                    f.lower[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * srow[static_cast<std::size_t>(k)];
    }
    return f;
}

LegMatrix triangular_entry(const GaussFactors& f, int row2, int col2) {
    const int a = label_index(f.spec, row2);
    const int b = label_index(f.spec, col2);
    if (a > b) return LegMatrix(block_dims(f.block_size));
    const LegMatrix root = diag_sqrt(f.pivot[static_cast<std::size_t>(a)], a);
    return root * f.upper[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

ChevalleyRep extract_generators(const GaussFactors& f, const SeriesSpec& sp) {
    if (sp.family != f.spec.family || sp.rank != f.spec.rank)
        throw InvalidArgument("series mismatch between factors and spec");
    const int m = f.block_size;
    const std::vector<int> dm = block_dims(m);

    ChevalleyRep rep;
    rep.spec = f.spec;
    rep.r2 = f.r2;
    rep.sigma4 = f.sigma4;
    rep.dimension = m;

    std::vector<LegMatrix> alpha;  // diagonal square roots of the pivots
    alpha.reserve(f.pivot.size());
    for (std::size_t j = 0; j < f.pivot.size(); ++j)
        alpha.push_back(diag_sqrt(f.pivot[j], static_cast<int>(j)));

    const RatFunc pref = q_minus_qinv().inv() * RatFunc::q_pow2(-1);
    for (int node = 1; node <= sp.rank; ++node) {
        LegMatrix qh(dm), xm(dm), xp(dm);
        RatFunc s2(1);
        if (sp.family == Series::C && node == 1) {
            const int a = label_index(sp, -1), b = label_index(sp, 1);
            const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
            qh = alpha[ub] * alpha[ub];
            const RatFunc cpref = q_minus_qinv().inv() * RatFunc::q_pow2(-2);
            xm = (alpha[ua] * f.upper[ua][ub]).scaled(cpref);
            xp = (f.lower[ub][ua] * alpha[ua]).scaled(cpref);
            s2 = (RatFunc::q_pow2(2) + RatFunc::q_pow2(-2)).inv();
        } else if (sp.family == Series::D && node == 1) {
            const int am = label_index(sp, -1), a = label_index(sp, 1), b = label_index(sp, 3);
            const auto uam = static_cast<std::size_t>(am), ua = static_cast<std::size_t>(a),
                       ub = static_cast<std::size_t>(b);
            qh = alpha[ua] * alpha[ub];
            const LegMatrix droot = diag_sqrt_ratio(alpha[ua], alpha[ub], a);
            xm = (droot * alpha[uam] * f.upper[uam][ub]).scaled(pref);
            xp = (f.lower[ub][uam] * alpha[uam] * droot).scaled(pref);
        } else {
            // Chain node: adjacent diagonal labels 2(node-1), 2 node for the
            // odd family, 2 node - 3, 2 node - 1 for the even ones.  The
            // label-0 factor is the identity by convention.
            const int lo2 = sp.N % 2 ? 2 * node - 2 : 2 * node - 3;
            const int hi2 = sp.N % 2 ? 2 * node : 2 * node - 1;
            const int b = label_index(sp, hi2);
            const auto ub = static_cast<std::size_t>(b);
            LegMatrix alo = LegMatrix::identity(dm);
            int a = b;
            if (lo2 != 0) {
                a = label_index(sp, lo2);
                alo = alpha[static_cast<std::size_t>(a)];
            } else {
                a = label_index(sp, 0);
            }
            const auto ua = static_cast<std::size_t>(a);
            qh = alo.inverse() * alpha[ub];
            const LegMatrix droot = diag_inverse_sqrt(alo, alpha[ub], b);
            xm = (droot * alo * f.upper[ua][ub]).scaled(pref);
            xp = (f.lower[ub][ua] * alo * droot).scaled(pref);
        }
        rep.cartan.push_back(std::move(qh));
        rep.lowering.push_back(std::move(xm));
        rep.raising.push_back(std::move(xp));
        rep.s_squared.push_back(s2);
    }
    return rep;
}

namespace {

RatFunc gauss_binomial(int n, int k, int len2) {
    // [n k] in the symmetric q_i-number convention, q_i = q^{len2/2}.
    auto num2 = [len2](int a) {
        return RatFunc::q_pow2(a * len2) - RatFunc::q_pow2(-a * len2);
    };
    RatFunc num(1), den(1);
    for (int a = 1; a <= n; ++a) num = num * num2(a);
    for (int a = 1; a <= k; ++a) den = den * num2(a);
    for (int a = 1; a <= n - k; ++a) den = den * num2(a);
    return num * den.inv();
}

}  // namespace

UhRelationReport verify_uh_relations(const ChevalleyRep& rep) {
    const int l = rep.spec.rank;
    const int m = rep.dimension;
    const std::vector<int> dm = block_dims(m);
    const RootSystem rs = root_system(rep.spec.family, l);
    auto pair4 = [&](int i, int j) {
        return pairing4(rs.simple2[static_cast<std::size_t>(i)], rs.simple2[static_cast<std::size_t>(j)]);
    };

    std::vector<LegMatrix> qh_inv;
    qh_inv.reserve(static_cast<std::size_t>(l));
    for (const LegMatrix& h : rep.cartan) qh_inv.push_back(h.inverse());

    UhRelationReport report;
    auto record = [&report](const std::string& id, long resid, std::string detail) {
        report.checks.push_back(UhCheck{id, resid == 0, resid, std::move(detail)});
    };

    {
        long resid = 0;
        std::string first;
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) {
                const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
                const LegMatrix cart = rep.cartan[ui] * rep.cartan[uj] - rep.cartan[uj] * rep.cartan[ui];
                if (cart.nnz() != 0 && first.empty())
                    first = "cartan pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                resid += cart.nnz();
                const int e2 = static_cast<int>(pair4(i, j) / 2);
                const LegMatrix low = rep.cartan[ui] * rep.lowering[uj] * qh_inv[ui] -
                                      rep.lowering[uj].scaled(RatFunc::q_pow2(-e2));
                const LegMatrix high = rep.cartan[ui] * rep.raising[uj] * qh_inv[ui] -
                                       rep.raising[uj].scaled(RatFunc::q_pow2(e2));
                if (low.nnz() + high.nnz() != 0 && first.empty())
                    first = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                resid += low.nnz() + high.nnz();
            }
        record("conjugation", resid, first);
    }
    {
        long resid = 0;
        std::string first;
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) {
                const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
                LegMatrix z = rep.raising[ui] * rep.lowering[uj] - rep.lowering[uj] * rep.raising[ui];
                if (i == j) {
                    const RatFunc scale = (rep.s_squared[ui] * q_minus_qinv()).inv();
                    z = z - (rep.cartan[ui] - qh_inv[ui]).scaled(scale);
                }
                if (z.nnz() != 0 && first.empty())
                    first = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                resid += z.nnz();
            }
        record("commutator", resid, first);
    }
    {
        long resid = 0;
        std::string first;
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) {
                if (i == j) continue;
                const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
                const int aij = static_cast<int>(2 * pair4(i, j) / pair4(i, i));
                const int n = 1 - aij;
                const int len2 = static_cast<int>(pair4(i, i) / 4);
                for (int sign = 0; sign < 2; ++sign) {
                    const LegMatrix& xi = sign ? rep.raising[ui] : rep.lowering[ui];
                    const LegMatrix& xj = sign ? rep.raising[uj] : rep.lowering[uj];
                    LegMatrix acc(dm);
                    for (int k = 0; k <= n; ++k) {
                        LegMatrix term = LegMatrix::identity(dm);
                        for (int a = 0; a < k; ++a) term = term * xi;
                        term = term * xj;
                        for (int a = 0; a < n - k; ++a) term = term * xi;
                        RatFunc c = gauss_binomial(n, k, len2);
                        if (k % 2) c = RatFunc(-1) * c;
                        acc = acc + term.scaled(c);
                    }
                    if (acc.nnz() != 0 && first.empty())
                        first = std::string("pair (") + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + (sign ? ",raising)" : ",lowering)");
                    resid += acc.nnz();
                }
            }
        record("serre", resid, first);
    }

    std::sort(report.checks.begin(), report.checks.end(),
              [](const UhCheck& a, const UhCheck& b) { return a.id < b.id; });
    report.pass = true;
    for (const UhCheck& c : report.checks) report.pass = report.pass && c.pass;
    return report;
}

int joint_kernel_dimension(const ChevalleyRep& rep) {
    const int m = rep.dimension;
    std::vector<std::vector<RatFunc>> rows;
    for (const LegMatrix& x : rep.lowering)
        for (int r = 0; r < m; ++r) {
            std::vector<RatFunc> row(static_cast<std::size_t>(m));
            bool nonzero = false;
            for (const auto& [c, v] : x.row(r)) {
                row[static_cast<std::size_t>(c)] = v;
                nonzero = nonzero || !v.is_zero();
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    int rank = 0;
    for (int col = 0; col < m && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (!rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        const RatFunc inv = rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)].inv();
        for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
            const RatFunc factor = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] * inv;
            if (factor.is_zero()) continue;
            for (int c = col; c < m; ++c)
                rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -
                    factor * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
        }
        ++rank;
    }
    return m - rank;
}

}  // namespace qorbit
