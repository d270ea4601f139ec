#include "qorbit/cartan.hpp"

#include <gmpxx.h>

#include <string>

namespace qorbit {

namespace {

std::vector<int> e_sum2(int rank, int from, int scale2) {
    // scale2 * (e_from + ... + e_rank), doubled coordinates halved by scale2.
    std::vector<int> v(static_cast<std::size_t>(rank), 0);
    for (int i = from; i <= rank; ++i) v[static_cast<std::size_t>(i - 1)] = scale2;
    return v;
}

}  // namespace

RootSystem root_system(Series family, int rank) {
    if (rank < 1 || (family == Series::D && rank < 2))
        throw InvalidArgument("rank out of range for the series");
    RootSystem rs;
    rs.family = family;
    rs.rank = rank;
    const auto unit = [rank](int i, int c) {
        std::vector<int> v(static_cast<std::size_t>(rank), 0);
        v[static_cast<std::size_t>(i - 1)] = c;
        return v;
    };
    const auto pair_root = [rank, &unit](int i, int j, int sign) {
        // e_j + sign * e_i, doubled
        std::vector<int> v = unit(j, 2);
        v[static_cast<std::size_t>(i - 1)] += 2 * sign;
        return v;
    };

    switch (family) {
        case Series::B:
            rs.simple2.push_back(unit(1, 2));
            for (int j = 2; j <= rank; ++j) {
                auto v = unit(j, 2);
                v[static_cast<std::size_t>(j - 2)] = -2;
                rs.simple2.push_back(v);
            }
            rs.fundamental2.push_back(e_sum2(rank, 1, 1));
            for (int j = 2; j <= rank; ++j) rs.fundamental2.push_back(e_sum2(rank, j, 2));
            for (int i = 1; i <= rank; ++i) rs.positive2.push_back(unit(i, 2));
            for (int i = 1; i <= rank; ++i)
                for (int j = i + 1; j <= rank; ++j) {
                    rs.positive2.push_back(pair_root(i, j, -1));
                    rs.positive2.push_back(pair_root(i, j, +1));
                }
            break;
        case Series::C:
            rs.simple2.push_back(unit(1, 4));
            for (int j = 2; j <= rank; ++j) {
                auto v = unit(j, 2);
                v[static_cast<std::size_t>(j - 2)] = -2;
                rs.simple2.push_back(v);
            }
            for (int j = 1; j <= rank; ++j) rs.fundamental2.push_back(e_sum2(rank, j, 2));
            for (int i = 1; i <= rank; ++i) rs.positive2.push_back(unit(i, 4));
            for (int i = 1; i <= rank; ++i)
                for (int j = i + 1; j <= rank; ++j) {
                    rs.positive2.push_back(pair_root(i, j, -1));
                    rs.positive2.push_back(pair_root(i, j, +1));
                }
            break;
        case Series::D:
            rs.simple2.push_back(pair_root(1, 2, +1));
            rs.simple2.push_back(pair_root(1, 2, -1));
            for (int j = 3; j <= rank; ++j) {
                auto v = unit(j, 2);
                v[static_cast<std::size_t>(j - 2)] = -2;
                rs.simple2.push_back(v);
            }
            rs.fundamental2.push_back(e_sum2(rank, 1, 1));
            {
                auto w2 = e_sum2(rank, 1, 1);
                w2[0] = -1;
                rs.fundamental2.push_back(w2);
            }
            for (int j = 3; j <= rank; ++j) rs.fundamental2.push_back(e_sum2(rank, j, 2));
            for (int i = 1; i <= rank; ++i)
                for (int j = i + 1; j <= rank; ++j) {
                    rs.positive2.push_back(pair_root(i, j, -1));
                    rs.positive2.push_back(pair_root(i, j, +1));
                }
            break;
    }
    return rs;
}

long pairing4(const std::vector<int>& a2, const std::vector<int>& b2) {
    if (a2.size() != b2.size()) throw InvalidArgument("weight rank mismatch");
    long s = 0;
    for (std::size_t i = 0; i < a2.size(); ++i) s += static_cast<long>(a2[i]) * b2[i];
    return s;
}

long weyl_dimension(const RootSystem& rs, const std::vector<int>& highest2) {
    if (static_cast<int>(highest2.size()) != rs.rank)
        throw InvalidArgument("weight rank mismatch");
    for (const auto& alpha2 : rs.simple2) {
        const long num = 2 * pairing4(highest2, alpha2);
        const long den = pairing4(alpha2, alpha2);
        if (num < 0 || num % den != 0)
            throw InvalidArgument("weight not dominant integral");
    }
    std::vector<int> delta2(static_cast<std::size_t>(rs.rank), 0);
    for (const auto& w2 : rs.fundamental2)
        for (int i = 0; i < rs.rank; ++i) delta2[static_cast<std::size_t>(i)] += w2[static_cast<std::size_t>(i)];
    std::vector<int> shifted2 = highest2;
    for (int i = 0; i < rs.rank; ++i) shifted2[static_cast<std::size_t>(i)] += delta2[static_cast<std::size_t>(i)];

    mpq_class dim(1);
    for (const auto& beta2 : rs.positive2)
        dim *= mpq_class(pairing4(shifted2, beta2), pairing4(delta2, beta2));
    dim.canonicalize();
    if (dim.get_den() != 1) throw InvalidArgument("Weyl product not integral");
    if (!dim.get_num().fits_slong_p()) throw ResourceLimit("dimension overflow");
    return dim.get_num().get_si();
}

int sigma_step4(const SeriesSpec& sp, int r2) {
    bool found = false;
    for (int a : sp.admissible_r2()) found = found || a == r2;
    if (!found) throw InvalidArgument("threshold not admissible for the series");
    switch (sp.family) {
        case Series::B:
            return r2 == 2 ? 2 : 4;
        case Series::C:
            return 4;
        case Series::D:
            return r2 == 1 ? 2 : 4;
    }
    throw InvalidArgument("unknown series");
}

bool sigma_is_admissible(const SeriesSpec& sp, int r2, int sigma4) {
    const int step = sigma_step4(sp, r2);
    return sigma4 > 0 && sigma4 % step == 0;
}

std::vector<int> lowest_weight2(const SeriesSpec& sp, int r2, int sigma4) {
    const RootSystem rs = root_system(sp.family, sp.rank);
    std::vector<int> unit2;  // lambda for sigma = 1, doubled
    int scale_num = -sigma4;
    switch (sp.family) {
        case Series::B:
            if (r2 == 2) {
                unit2 = rs.fundamental2[0];
                scale_num *= 2;
            } else {
                unit2 = rs.fundamental2[static_cast<std::size_t>(r2 / 2 - 1)];
            }
            break;
        case Series::C:
            unit2 = rs.fundamental2[static_cast<std::size_t>((r2 + 1) / 2 - 1)];
            break;
        case Series::D:
            if (r2 == 1) {
                unit2 = rs.fundamental2[0];
                scale_num *= 2;
            } else if (r2 == 3) {
                unit2 = rs.fundamental2[0];
                for (int i = 0; i < sp.rank; ++i) unit2[static_cast<std::size_t>(i)] += rs.fundamental2[1][static_cast<std::size_t>(i)];
            } else {
                unit2 = rs.fundamental2[static_cast<std::size_t>((r2 + 1) / 2 - 1)];
            }
            break;
    }
    std::vector<int> out(unit2.size());
    for (std::size_t i = 0; i < unit2.size(); ++i) {
        const long v = static_cast<long>(scale_num) * unit2[i];
        if (v % 4 != 0) throw InvalidArgument("sigma off the weight lattice");
        out[i] = static_cast<int>(v / 4);
    }
    return out;
}

long module_dimension_oracle(const SeriesSpec& sp, int r2, int sigma4) {
    std::vector<int> lam2 = lowest_weight2(sp, r2, sigma4);
    for (int& c : lam2) c = -c;
    return weyl_dimension(root_system(sp.family, sp.rank), lam2);
}

std::vector<long> fundamental_coords(const RootSystem& rs, const std::vector<int>& weight2) {
    if (weight2.size() != rs.simple2.size())
        throw InvalidArgument("weight rank mismatch");
    std::vector<long> out;
    out.reserve(rs.simple2.size());
    for (const std::vector<int>& a2 : rs.simple2) {
        const long num = 2 * pairing4(weight2, a2);
        const long den = pairing4(a2, a2);
        if (num % den != 0) throw InvalidArgument("weight not integral");
        out.push_back(num / den);
    }
    return out;
}

}  // namespace qorbit
