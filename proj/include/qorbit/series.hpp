#pragma once
// Series data for the three orthogonal/symplectic families and the constant
// matrices built from it: R, C0, C, K, P, the threshold projectors E(s), the
// banded matrix Q, and the two linear maps sending X to Y and Z to V.
//
// Index labels, rho values, band thresholds r and the parameter sigma are
// half-integers in general; they are stored doubled (lab2 = 2j, rho2 = 2*rho,
// r2 = 2r) so that everything stays integral.

#include <string>
#include <vector>

#include "qorbit/leg_matrix.hpp"

namespace qorbit {

enum class Series { B, C, D };

Series series_from_string(const std::string& s);
std::string to_string(Series s);

struct SeriesSpec {
    Series family = Series::B;
    int rank = 0;  // l
    int N = 0;
    int eps = 0;                 // +1 for B/D, -1 for C
    std::vector<int> lab2;       // doubled labels, ascending
    std::vector<int> eps_label;  // per label, same order
    std::vector<int> rho2;       // doubled rho, same order

    std::string name() const;  // e.g. "B2"
    bool has_label(int l2) const;
    int index_of(int l2) const;  // throws InvalidArgument for a non-label

    // Band thresholds r (doubled): 1..l for B, 1/2..l-1/2 for C and D.
    std::vector<int> admissible_r2() const;
};

SeriesSpec build_series(Series family, int rank);
SeriesSpec build_series(const std::string& name);  // "B1".."D4"

// Diagonal projector onto the span of labels <= s.  Valid thresholds s2 run
// from -(N+1) (empty) to N-1 (identity) in steps of 2.
LegMatrix build_E(const SeriesSpec& sp, int s2);
std::vector<int> threshold_values(const SeriesSpec& sp);

// The three-band resolution of unity attached to a threshold r.
struct CellSplit {
    int r2 = 0;
    LegMatrix e_minus;  // labels <= -r
    LegMatrix e_zero;   // -r < label < r
    LegMatrix e_plus;   // labels >= r

    int dim_minus() const;  // (N-2r+1)/2
    int dim_plus() const;   // (N+2r-1)/2 = N - dim_minus
};
CellSplit cell_split(const SeriesSpec& sp, int r2);

LegMatrix build_R(const SeriesSpec& sp);   // 2 legs
LegMatrix build_P(const SeriesSpec& sp);   // flip, 2 legs
LegMatrix build_K(const SeriesSpec& sp);   // 2 legs, rank 1
LegMatrix build_C0(const SeriesSpec& sp);  // 1 leg
LegMatrix build_C(const SeriesSpec& sp);
LegMatrix build_Ct(const SeriesSpec& sp);
LegMatrix build_q2rho(const SeriesSpec& sp);  // diag q^{2 rho_j}

// Banded cut of R: entries survive only when the first row and first column
// labels fall in the same band of the cell split.
LegMatrix build_Q(const SeriesSpec& sp, const CellSplit& cell);

// The linear map X -> Y characterised by K12 X2 P R12 = K12 Y2.
LegMatrix ymap(const SeriesSpec& sp, const LegMatrix& x);

// The linear map sending the upper-right block Z (rows <= -r, cols > -r) to
// the block V (rows < r, cols >= r).  Entry (j,k) of the result combines
// Z_{-k,-j} and Z_{jk}; it is Ring-linear, so it applies equally to scalar
// matrices and to matrices of noncommutative polynomials.
template <class Ring>
LegMatrixT<Ring> vmap(const SeriesSpec& sp, const CellSplit& cell, const LegMatrixT<Ring>& zblock);

namespace detail {
struct VmapCoeff {
    int j2 = 0, k2 = 0;       // entry of V being produced
    RatFunc mirror;           // coefficient of Z_{-k,-j}
    RatFunc direct;           // coefficient of Z_{jk}; zero unless j <= -r
};
std::vector<VmapCoeff> vmap_coeffs(const SeriesSpec& sp, int r2);
}  // namespace detail

template <class Ring>
LegMatrixT<Ring> vmap(const SeriesSpec& sp, const CellSplit& cell, const LegMatrixT<Ring>& zblock) {
    if (zblock.dims() != std::vector<int>{sp.N})
        throw InvalidArgument("vmap: Z block must be a one-leg matrix of the series dimension");
    const int r2 = cell.r2;
    for (int r = 0; r < sp.N; ++r)
        for (const auto& [c, v] : zblock.row(r))
            if (!(sp.lab2[r] <= -r2 && sp.lab2[c] > -r2))
                throw InvalidArgument("vmap: entry outside the Z block");
    LegMatrixT<Ring> out(std::vector<int>{sp.N});
    for (const auto& co : detail::vmap_coeffs(sp, r2)) {
        const int row = sp.index_of(co.j2), col = sp.index_of(co.k2);
        const Ring& zm = zblock.at(sp.index_of(-co.k2), sp.index_of(-co.j2));
        if (!zm.is_zero()) out.add_to(row, col, Ring(co.mirror) * zm);
        if (!co.direct.is_zero()) {
            const Ring& zd = zblock.at(row, col);
            if (!zd.is_zero()) out.add_to(row, col, Ring(co.direct) * zd);
        }
    }
    return out;
}

}  // namespace qorbit
