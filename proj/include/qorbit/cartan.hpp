#pragma once
// Classical root-system data for the three families, in the euclidean basis
// with the node ordering used throughout: node 1 carries the short root (B)
// or the long root (C), and in the D case nodes 1 and 2 both attach to
// node 3.  Provides the Weyl dimension formula as an independent oracle for
// module dimensions, and the admissibility rule mapping a band threshold and
// a parameter sigma to a lowest weight.
//
// Euclidean coordinates are stored doubled (spinor-type weights are
// half-integral); sigma is quadrupled, as elsewhere.

#include <vector>

#include "qorbit/series.hpp"

namespace qorbit {

struct RootSystem {
    Series family = Series::B;
    int rank = 0;
    std::vector<std::vector<int>> simple2;       // doubled e-basis coordinates
    std::vector<std::vector<int>> fundamental2;  // same order as simple2
    std::vector<std::vector<int>> positive2;
};

RootSystem root_system(Series family, int rank);

// <a, b> in the standard euclidean pairing, for doubled inputs the result is
// 4 <a, b>; kept integral on purpose.
long pairing4(const std::vector<int>& a2, const std::vector<int>& b2);

// Dimension of the irreducible module with the given dominant integral
// highest weight (doubled coordinates): product over positive roots of
// <hw + delta, beta> / <delta, beta>.  Throws InvalidArgument when the
// weight is not dominant integral.
long weyl_dimension(const RootSystem& rs, const std::vector<int>& highest2);

// Admissible sigma form an arithmetic progression; the step is quadrupled
// (2 when sigma runs over half-integers, 4 when over integers).
int sigma_step4(const SeriesSpec& sp, int r2);
bool sigma_is_admissible(const SeriesSpec& sp, int r2, int sigma4);

// Lowest weight attached to (threshold, sigma), doubled coordinates:
//   B, r = 1:   -2 sigma w_1        C, any r:  -sigma w_{r+1/2}
//   B, r > 1:   -sigma w_r          D, r = 1/2: -2 sigma w_1
//   D, r = 3/2: -sigma (w_1 + w_2)  D, r > 3/2: -sigma w_{r+1/2}
// Throws InvalidArgument when the coordinates fail to be half-integral.
std::vector<int> lowest_weight2(const SeriesSpec& sp, int r2, int sigma4);

// weyl_dimension of the negated lowest weight; the expected module dimension.
long module_dimension_oracle(const SeriesSpec& sp, int r2, int sigma4);

// Coordinates of a weight (doubled e-basis) in the fundamental-weight basis:
// c_j = 2 <w, a_j> / <a_j, a_j>.  Throws InvalidArgument when a coordinate
// fails to be integral.
std::vector<long> fundamental_coords(const RootSystem& rs, const std::vector<int>& weight2);

}  // namespace qorbit
