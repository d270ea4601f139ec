#include "qorbit/series.hpp"

#include <algorithm>

namespace qorbit {

namespace {

int sgn(int v) { return (v > 0) - (v < 0); }

// q^{h/2} in doubled units, matching the lab2/rho2 convention.
RatFunc qp(int half2) { return RatFunc::q_pow2(half2); }

}  // namespace

Series series_from_string(const std::string& s) {
    if (s == "B") return Series::B;
    if (s == "C") return Series::C;
    if (s == "D") return Series::D;
    throw InvalidArgument("unknown series '" + s + "'");
}

std::string to_string(Series s) {
    switch (s) {
        case Series::B: return "B";
        case Series::C: return "C";
        case Series::D: return "D";
    }
    throw InvalidArgument("unknown series");
}

std::string SeriesSpec::name() const { return to_string(family) + std::to_string(rank); }

bool SeriesSpec::has_label(int l2) const {
    return std::binary_search(lab2.begin(), lab2.end(), l2);
}

int SeriesSpec::index_of(int l2) const {
    auto it = std::lower_bound(lab2.begin(), lab2.end(), l2);
    if (it == lab2.end() || *it != l2) throw InvalidArgument("no such index label");
    return static_cast<int>(it - lab2.begin());
}

std::vector<int> SeriesSpec::admissible_r2() const {
    std::vector<int> out;
    if (family == Series::B)
        for (int r2 = 2; r2 <= 2 * rank; r2 += 2) out.push_back(r2);
    else
        for (int r2 = 1; r2 <= 2 * rank - 1; r2 += 2) out.push_back(r2);
    return out;
}

SeriesSpec build_series(Series family, int rank) {
    if (rank < 1) throw InvalidArgument("rank must be at least 1");
    SeriesSpec sp;
    sp.family = family;
    sp.rank = rank;
    sp.eps = family == Series::C ? -1 : 1;
    sp.N = family == Series::B ? 2 * rank + 1 : 2 * rank;
    if (family == Series::B)
        for (int j = -rank; j <= rank; ++j) sp.lab2.push_back(2 * j);
    else
        for (int j2 = 1 - 2 * rank; j2 <= 2 * rank - 1; j2 += 2) sp.lab2.push_back(j2);
    for (int l2 : sp.lab2) {
        sp.eps_label.push_back(family == Series::C ? sgn(l2) : 1);
        sp.rho2.push_back(-l2 + sp.eps * sgn(l2));
    }
    return sp;
}

SeriesSpec build_series(const std::string& name) {
    if (name.size() < 2) throw InvalidArgument("series name must look like B2, C1, D3");
    int rank = 0;
    try {
        rank = std::stoi(name.substr(1));
    } catch (const std::exception&) {
        throw InvalidArgument("series name must look like B2, C1, D3");
    }
    return build_series(series_from_string(name.substr(0, 1)), rank);
}

std::vector<int> threshold_values(const SeriesSpec& sp) {
    std::vector<int> out;
    for (int s2 = -(sp.N + 1); s2 <= sp.N - 1; s2 += 2) out.push_back(s2);
    return out;
}

LegMatrix build_E(const SeriesSpec& sp, int s2) {
    if (s2 < -(sp.N + 1) || s2 > sp.N - 1 || (s2 - (sp.N - 1)) % 2 != 0)
        throw InvalidArgument("not a threshold label");
    LegMatrix e(std::vector<int>{sp.N});
    for (int i = 0; i < sp.N; ++i)
        if (sp.lab2[i] <= s2) e.set(i, i, RatFunc(1));
    return e;
}

int CellSplit::dim_minus() const {
    int d = 0;
    for (int i = 0; i < e_minus.size(); ++i)
        if (!e_minus.at(i, i).is_zero()) ++d;
    return d;
}

int CellSplit::dim_plus() const { return e_minus.size() - dim_minus(); }

CellSplit cell_split(const SeriesSpec& sp, int r2) {
    const auto adm = sp.admissible_r2();
    if (std::find(adm.begin(), adm.end(), r2) == adm.end())
        throw InvalidArgument("threshold r out of range for this series");
    CellSplit c;
    c.r2 = r2;
    c.e_minus = build_E(sp, -r2);
    c.e_zero = build_E(sp, r2 - 2) - c.e_minus;
    c.e_plus = LegMatrix::identity({sp.N}) - build_E(sp, r2 - 2);
    return c;
}

LegMatrix build_R(const SeriesSpec& sp) {
    const int n = sp.N;
    LegMatrix m(std::vector<int>{n, n});
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t) {
                    RatFunc v;
                    if (j == s && k == t) v += RatFunc(1);
                    if (j == t && k == s)
                        v += RatFunc::q_pow2(2) - qp(2 * sgn(sp.lab2[k] - sp.lab2[t]));
                    if (sp.lab2[j] + sp.lab2[k] == 0 && sp.lab2[s] + sp.lab2[t] == 0) {
                        const int zz = (sp.lab2[k] == 0 && sp.lab2[t] == 0) ? 2 : 0;
                        RatFunc w = qp(-2 * sgn(sp.lab2[k] - sp.lab2[t])) - RatFunc::q_pow2(-2);
                        v -= RatFunc(sp.eps_label[k] * sp.eps_label[t]) * w *
                             qp(-sp.rho2[k] + sp.rho2[t] + zz);
                    }
                    if (!v.is_zero()) m.set(j * n + k, s * n + t, v);
                }
    return m;
}

LegMatrix build_P(const SeriesSpec& sp) {
    const int n = sp.N;
    LegMatrix m(std::vector<int>{n, n});
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m.set(j * n + k, k * n + j, RatFunc(1));
    return m;
}

LegMatrix build_C0(const SeriesSpec& sp) {
    LegMatrix m(std::vector<int>{sp.N});
    for (int j = 0; j < sp.N; ++j)
        m.set(j, sp.index_of(-sp.lab2[j]), RatFunc(sp.eps_label[j]));
    return m;
}

LegMatrix build_C(const SeriesSpec& sp) {
    LegMatrix m(std::vector<int>{sp.N});
    for (int j = 0; j < sp.N; ++j)
        m.set(j, sp.index_of(-sp.lab2[j]), RatFunc(sp.eps_label[j]) * qp(-sp.rho2[j]));
    return m;
}

LegMatrix build_Ct(const SeriesSpec& sp) { return build_C(sp).transpose(); }

LegMatrix build_q2rho(const SeriesSpec& sp) {
    LegMatrix m(std::vector<int>{sp.N});
    for (int j = 0; j < sp.N; ++j) m.set(j, j, qp(2 * sp.rho2[j]));
    return m;
}

LegMatrix build_K(const SeriesSpec& sp) {
    const int n = sp.N;
    LegMatrix m(std::vector<int>{n, n});
    for (int j = 0; j < n; ++j)
        for (int s = 0; s < n; ++s) {
            const int k = sp.index_of(-sp.lab2[j]);
            const int t = sp.index_of(-sp.lab2[s]);
            m.set(j * n + k, s * n + t,
                  RatFunc(sp.eps * sp.eps_label[k] * sp.eps_label[s]) *
                      qp(-sp.rho2[k] - sp.rho2[s]));
        }
    return m;
}

LegMatrix build_Q(const SeriesSpec& sp, const CellSplit& cell) {
    const int n = sp.N;
    const auto band = [&](int idx) {
        if (sp.lab2[idx] <= -cell.r2) return 0;
        if (sp.lab2[idx] < cell.r2) return 1;
        return 2;
    };
    LegMatrix r = build_R(sp);
    LegMatrix m(std::vector<int>{n, n});
    for (int row = 0; row < r.size(); ++row)
        for (const auto& [col, v] : r.row(row))
            if (band(row / n) == band(col / n)) m.set(row, col, v);
    return m;
}

LegMatrix ymap(const SeriesSpec& sp, const LegMatrix& x) {
    if (x.dims() != std::vector<int>{sp.N})
        throw InvalidArgument("ymap: X must be a one-leg matrix of the series dimension");
    const int n = sp.N;
    LegMatrix y(std::vector<int>{n});
    const RatFunc gamma = q_minus_qinv();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            RatFunc v = RatFunc(sp.eps * sp.eps_label[j] * sp.eps_label[k]) *
                        qp(-sp.rho2[j] - sp.rho2[k] - (j == k ? 2 : 0)) *
                        x.at(sp.index_of(-sp.lab2[k]), sp.index_of(-sp.lab2[j]));
            v += (RatFunc::q_pow2(2) - qp(-2 * sgn(sp.lab2[j] + sp.lab2[k]))) *
                 qp(sp.lab2[j] == 0 && sp.lab2[k] == 0 ? -2 : 0) * x.at(j, k);
            if (j == k) {
                RatFunc sum;
                for (int s = 0; s < n; ++s)
                    if (sp.lab2[s] > -sp.lab2[j]) sum += qp(2 * sp.rho2[s]) * x.at(s, s);
                v -= RatFunc(sp.eps) * gamma * sum;
            }
            y.set(j, k, v);
        }
    return y;
}

std::vector<detail::VmapCoeff> detail::vmap_coeffs(const SeriesSpec& sp, int r2) {
    std::vector<VmapCoeff> out;
    for (int ji = 0; ji < sp.N; ++ji)
        for (int ki = 0; ki < sp.N; ++ki) {
            const int j2 = sp.lab2[ji], k2 = sp.lab2[ki];
            if (!(j2 < r2 && k2 >= r2)) continue;
            VmapCoeff co;
            co.j2 = j2;
            co.k2 = k2;
            // The eps_j eps_k factor belongs to the mirror summand only; the
            // direct summand's coefficient is forced by the defining relation.
            const RatFunc pref = qp(-2 * r2 + 2 + 2 * sp.eps);
            co.mirror = pref * RatFunc(sp.eps_label[ji] * sp.eps_label[ki]) *
                        qp(-sp.rho2[ji] - sp.rho2[ki]);
            if (j2 <= -r2)
                co.direct = pref * RatFunc(sp.eps) *
                            (RatFunc::q_pow2(2) - qp(-2 * sgn(j2 + k2)));
            out.push_back(co);
        }
    return out;
}

}  // namespace qorbit
