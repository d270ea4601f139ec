#pragma once
// Sparse square matrices with tensor-leg index bookkeeping.
//
// A k-leg matrix acts on V_1 (x) ... (x) V_k.  Flat indices are mixed-radix
// over the per-leg dimensions, leg 1 being the most significant digit.
// Rows never store explicit zeros, so map equality is matrix equality.
//
// Ring requirements: default ctor == 0, ctor from int, +=, *, unary -,
// is_zero(), operator==; inverse() additionally needs inv() on a
// commutative Ring.

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "qorbit/errors.hpp"
#include "qorbit/scalars.hpp"

namespace qorbit {

namespace detail {

// Row-parallel product kernel; each output row is owned by one thread.
template <class Ring>
std::vector<std::map<int, Ring>> mul_rows(const std::vector<std::map<int, Ring>>& a,
                                          const std::vector<std::map<int, Ring>>& b) {
    std::vector<std::map<int, Ring>> c(a.size());
    const int n = static_cast<int>(a.size());
#pragma omp parallel for
    for (int i = 0; i < n; ++i) {
        auto& out = c[i];
        for (const auto& [k, av] : a[i])
            for (const auto& [j, bv] : b[k]) {
                Ring prod = av * bv;
                if (prod.is_zero()) continue;
                auto it = out.find(j);
                if (it == out.end()) {
                    out.emplace(j, std::move(prod));
                } else {
                    it->second += prod;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
    }
    return c;
}

// Reference implementation of the kernel above; kept for tests and benchmarks.
template <class Ring>
std::vector<std::map<int, Ring>> mul_rows_serial(const std::vector<std::map<int, Ring>>& a,
                                                 const std::vector<std::map<int, Ring>>& b) {
    std::vector<std::map<int, Ring>> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto& out = c[i];
        for (const auto& [k, av] : a[i])
            for (const auto& [j, bv] : b[k]) {
                Ring prod = av * bv;
                if (prod.is_zero()) continue;
                auto it = out.find(j);
                if (it == out.end()) {
                    out.emplace(j, std::move(prod));
                } else {
                    it->second += prod;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
    }
    return c;
}

}  // namespace detail

template <class Ring>
class LegMatrixT {
  public:
    LegMatrixT() = default;
    explicit LegMatrixT(std::vector<int> dims) : dims_(std::move(dims)) {
        for (int d : dims_)
            if (d <= 0) throw InvalidArgument("leg dimension must be positive");
        rows_.resize(total());
    }

    static LegMatrixT identity(std::vector<int> dims) {
        LegMatrixT m(std::move(dims));
        for (int i = 0; i < m.size(); ++i) m.rows_[i].emplace(i, Ring(1));
        return m;
    }

    const std::vector<int>& dims() const { return dims_; }
    int legs() const { return static_cast<int>(dims_.size()); }
    int size() const { return static_cast<int>(rows_.size()); }
    long long nnz() const {
        long long n = 0;
        for (const auto& r : rows_) n += static_cast<long long>(r.size());
        return n;
    }
    bool is_zero() const {
        for (const auto& r : rows_)
            if (!r.empty()) return false;
        return true;
    }

    const std::map<int, Ring>& row(int r) const { return rows_.at(r); }
    const Ring& at(int r, int c) const {
        auto it = rows_.at(r).find(c);
        return it == rows_.at(r).end() ? kZero : it->second;
    }
    void set(int r, int c, Ring v) {
        check_index(r, c);
        if (v.is_zero())
            rows_[r].erase(c);
        else
            rows_[r].insert_or_assign(c, std::move(v));
    }
    void add_to(int r, int c, const Ring& v) {
        check_index(r, c);
        if (v.is_zero()) return;
        auto [it, fresh] = rows_[r].try_emplace(c, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) rows_[r].erase(it);
        }
    }

    friend LegMatrixT operator*(const LegMatrixT& a, const LegMatrixT& b) {
        a.check_same_shape(b);
        LegMatrixT c(a.dims_);
        c.rows_ = detail::mul_rows(a.rows_, b.rows_);
        return c;
    }
    static LegMatrixT multiply_serial(const LegMatrixT& a, const LegMatrixT& b) {
        a.check_same_shape(b);
        LegMatrixT c(a.dims_);
        c.rows_ = detail::mul_rows_serial(a.rows_, b.rows_);
        return c;
    }
    friend LegMatrixT operator+(LegMatrixT a, const LegMatrixT& b) {
        a.check_same_shape(b);
        for (int r = 0; r < a.size(); ++r)
            for (const auto& [c, v] : b.rows_[r]) a.add_to(r, c, v);
        return a;
    }
    friend LegMatrixT operator-(LegMatrixT a, const LegMatrixT& b) {
        a.check_same_shape(b);
        for (int r = 0; r < a.size(); ++r)
            for (const auto& [c, v] : b.rows_[r]) a.add_to(r, c, -v);
        return a;
    }
    LegMatrixT operator-() const {
        LegMatrixT m(dims_);
        for (int r = 0; r < size(); ++r)
            for (const auto& [c, v] : rows_[r]) m.rows_[r].emplace(c, -v);
        return m;
    }
    // s * entry for every entry; scalars commute with everything we scale by.
    LegMatrixT scaled(const Ring& s) const {
        LegMatrixT m(dims_);
        if (s.is_zero()) return m;
        for (int r = 0; r < size(); ++r)
            for (const auto& [c, v] : rows_[r]) {
                Ring prod = s * v;
                if (!prod.is_zero()) m.rows_[r].emplace(c, std::move(prod));
            }
        return m;
    }
    bool operator==(const LegMatrixT& o) const { return dims_ == o.dims_ && rows_ == o.rows_; }
    bool operator!=(const LegMatrixT& o) const { return !(*this == o); }

    LegMatrixT transpose() const {
        LegMatrixT m(dims_);
        for (int r = 0; r < size(); ++r)
            for (const auto& [c, v] : rows_[r]) m.rows_[c].emplace(r, v);
        return m;
    }

    Ring trace() const {
        Ring s{};
        for (int r = 0; r < size(); ++r) {
            auto it = rows_[r].find(r);
            if (it != rows_[r].end()) s += it->second;
        }
        return s;
    }

    // Entrywise q -> 1/q.
    LegMatrixT subst_inv() const {
        LegMatrixT m(dims_);
        for (int r = 0; r < size(); ++r)
            for (const auto& [c, v] : rows_[r]) m.rows_[r].emplace(c, v.subst_inv());
        return m;
    }

    // Place this matrix on target legs `at` (1-based, distinct) of a larger
    // space; every other leg carries the identity.
    LegMatrixT embed(const std::vector<int>& target_dims, const std::vector<int>& at) const {
        const int tl = static_cast<int>(target_dims.size());
        if (static_cast<int>(at.size()) != legs())
            throw InvalidArgument("embed: one target position per leg required");
        std::vector<bool> used(tl, false);
        for (int i = 0; i < legs(); ++i) {
            const int p = at[i];
            if (p < 1 || p > tl || used[p - 1])
                throw InvalidArgument("embed: positions must be distinct legs of the target");
            if (target_dims[p - 1] != dims_[i])
                throw InvalidArgument("embed: leg dimension mismatch");
            used[p - 1] = true;
        }
        std::vector<int> free_legs;
        for (int p = 0; p < tl; ++p)
            if (!used[p]) free_legs.push_back(p);

        LegMatrixT out(target_dims);
        long long free_count = 1;
        for (int p : free_legs) free_count *= target_dims[p];

        std::vector<int> rdig(tl, 0), cdig(tl, 0);
        for (int r = 0; r < size(); ++r) {
            if (rows_[r].empty()) continue;
            const std::vector<int> rown = split(r);
            for (const auto& [c, v] : rows_[r]) {
                const std::vector<int> cown = split(c);
                for (long long f = 0; f < free_count; ++f) {
                    long long rest = f;
                    for (auto it = free_legs.rbegin(); it != free_legs.rend(); ++it) {
                        rdig[*it] = cdig[*it] = static_cast<int>(rest % target_dims[*it]);
                        rest /= target_dims[*it];
                    }
                    for (int i = 0; i < legs(); ++i) {
                        rdig[at[i] - 1] = rown[i];
                        cdig[at[i] - 1] = cown[i];
                    }
                    out.rows_[join_digits(target_dims, rdig)].emplace(join_digits(target_dims, cdig), v);
                }
            }
        }
        return out;
    }

    LegMatrixT partial_transpose(int leg) const {
        check_leg(leg);
        LegMatrixT m(dims_);
        for (int r = 0; r < size(); ++r)
            for (const auto& [c, v] : rows_[r]) {
                std::vector<int> rd = split(r), cd = split(c);
                std::swap(rd[leg - 1], cd[leg - 1]);
                m.rows_[join(rd)].emplace(join(cd), v);
            }
        return m;
    }

    // Trace out one leg; the result lives on the remaining legs.
    LegMatrixT partial_trace(int leg) const {
        check_leg(leg);
        std::vector<int> rem_dims;
        for (int i = 0; i < legs(); ++i)
            if (i != leg - 1) rem_dims.push_back(dims_[i]);
        if (rem_dims.empty()) rem_dims.push_back(1);
        LegMatrixT m(rem_dims);
        for (int r = 0; r < size(); ++r)
            for (const auto& [c, v] : rows_[r]) {
                std::vector<int> rd = split(r), cd = split(c);
                if (rd[leg - 1] != cd[leg - 1]) continue;
                rd.erase(rd.begin() + (leg - 1));
                cd.erase(cd.begin() + (leg - 1));
                if (rd.empty()) rd.push_back(0), cd.push_back(0);
                m.add_to(join_digits(rem_dims, rd), join_digits(rem_dims, cd), v);
            }
        return m;
    }

    // Exact inverse.  The support graph splits the index set into connected
    // blocks; each block is inverted densely.  Throws NotInvertible.
    LegMatrixT inverse() const {
        const int n = size();
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int r = 0; r < n; ++r)
            for (const auto& [c, v] : rows_[r]) parent[find(r)] = find(c);
        std::map<int, std::vector<int>> comps;
        for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);

        LegMatrixT out(dims_);
        for (const auto& [root, idx] : comps) {
            const int b = static_cast<int>(idx.size());
            std::map<int, int> pos;
            for (int i = 0; i < b; ++i) pos.emplace(idx[i], i);
            std::vector<std::vector<Ring>> m(b, std::vector<Ring>(2 * b, Ring{}));
            for (int i = 0; i < b; ++i) {
                for (const auto& [c, v] : rows_[idx[i]]) m[i][pos.at(c)] = v;
                m[i][b + i] = Ring(1);
            }
            for (int col = 0; col < b; ++col) {
                int piv = -1;
                for (int r = col; r < b; ++r)
                    if (!m[r][col].is_zero()) {
                        piv = r;
                        break;
                    }
                if (piv < 0) throw NotInvertible("singular block");
                std::swap(m[col], m[piv]);
                const Ring scale = m[col][col].inv();
                for (int c = col; c < 2 * b; ++c)
                    if (!m[col][c].is_zero()) m[col][c] = scale * m[col][c];
                for (int r = 0; r < b; ++r) {
                    if (r == col || m[r][col].is_zero()) continue;
                    const Ring f = m[r][col];
                    for (int c = col; c < 2 * b; ++c)
                        if (!m[col][c].is_zero()) m[r][c] += -(f * m[col][c]);
                }
            }
            for (int i = 0; i < b; ++i)
                for (int j = 0; j < b; ++j)
                    if (!m[i][b + j].is_zero()) out.rows_[idx[i]].emplace(idx[j], m[i][b + j]);
        }
        return out;
    }

    // Mixed-radix index helpers.
    std::vector<int> split(int flat) const {
        std::vector<int> d(legs());
        for (int i = legs() - 1; i >= 0; --i) {
            d[i] = flat % dims_[i];
            flat /= dims_[i];
        }
        return d;
    }
    int join(const std::vector<int>& digits) const { return join_digits(dims_, digits); }

  private:
    static int join_digits(const std::vector<int>& dims, const std::vector<int>& digits) {
        int flat = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) flat = flat * dims[i] + digits[i];
        return flat;
    }
    int total() const {
        long long t = 1;
        for (int d : dims_) t *= d;
        if (t > (1 << 28)) throw ResourceLimit("matrix dimension too large");
        return static_cast<int>(t);
    }
    void check_index(int r, int c) const {
        if (r < 0 || r >= size() || c < 0 || c >= size()) throw InvalidArgument("index out of range");
    }
    void check_leg(int leg) const {
        if (leg < 1 || leg > legs()) throw InvalidArgument("no such leg");
    }
    void check_same_shape(const LegMatrixT& o) const {
        if (dims_ != o.dims_) throw InvalidArgument("leg dimensions differ");
    }

    inline static const Ring kZero{};

    std::vector<int> dims_;
    std::vector<std::map<int, Ring>> rows_;
};

using LegMatrix = LegMatrixT<RatFunc>;

}  // namespace qorbit
