#pragma once
// Recovers the quantum-group generators from a finite module.  The operator
// matrix factors as (unit lower) x (pivot) x (unit upper) over m x m blocks
// indexed by the series labels; the pivots are squares of diagonal weight
// operators, and fixed ratios of their square roots with the adjacent
// triangular entries assemble the Cartan and raising/lowering operators.
// The defining relations are then checked exactly over Q(t).

#include <string>
#include <vector>

#include "qorbit/cartan.hpp"
#include "qorbit/module_action.hpp"

namespace qorbit {

// Block triangular factorization of the operator matrix.  lower[a][j]
// (a >= j) and upper[j][b] (j <= b) carry identity blocks on the diagonal;
// reassembling sum_j lower[a][j] * pivot[j] * upper[j][b] returns the matrix
// of M_{ab} exactly.
struct GaussFactors {
    SeriesSpec spec;
    int r2 = 0;
    int sigma4 = 0;
    int block_size = 0;
    std::vector<LegMatrix> pivot;
    std::vector<std::vector<LegMatrix>> lower;
    std::vector<std::vector<LegMatrix>> upper;
};

// Schur-complement recursion over the labels in ascending order.  Throws
// DecompositionFailed when a pivot block is singular.
GaussFactors gauss_decompose(const ModuleRep& rep);

// Matrix of the upper-triangular generator at (row, col), labels doubled,
// row <= col: the row pivot's square root times the unit-upper entry.
// Throws NonMonomialEigenvalue when the pivot is not diagonal with monomial
// entries.
LegMatrix triangular_entry(const GaussFactors& f, int row2, int col2);

// One triple per Dynkin node: diagonal Cartan operator q^{H_j}, lowering and
// raising operators scaled to stay inside Q(t), and the squared scale
// relating them to the unscaled generators (1 except on the first C node,
// where it is (q + q^{-1})^{-1}).
struct ChevalleyRep {
    SeriesSpec spec;
    int r2 = 0;
    int sigma4 = 0;
    int dimension = 0;
    std::vector<LegMatrix> cartan;
    std::vector<LegMatrix> lowering;
    std::vector<LegMatrix> raising;
    std::vector<RatFunc> s_squared;
};

ChevalleyRep extract_generators(const GaussFactors& f, const SeriesSpec& sp);

struct UhCheck {
    std::string id;
    bool pass = false;
    long residual_entry_count = 0;
    std::string detail;
};

struct UhRelationReport {
    bool pass = false;
    std::vector<UhCheck> checks;
};

// Defining relations for the extracted triples, with X the scaled operators:
//   conjugation: qH_i X_j^{+-} qH_i^{-1} = q^{+-<a_i,a_j>} X_j^{+-},
//                and the Cartan operators commute;
//   commutator:  [X_i^+, X_j^-] = delta_ij (qH_i - qH_i^{-1}) / (s_i^2 (q - q^{-1}));
//   serre:       sum_k (-1)^k [n k]_{q_i} X_i^k X_j X_i^{n-k} = 0 with
//                n = 1 - a_ij and q_i = q^{<a_i,a_i>/2}, both signs.
// The commutator scale restates [X_i^+, X_i^-] = (qH_i - qH_i^{-1})/(q - q^{-1})
// for the unscaled generators; the plain q - q^{-1} denominator is uniform
// across root lengths.
UhRelationReport verify_uh_relations(const ChevalleyRep& rep);

// Dimension of the joint kernel of all lowering operators; one for an
// irreducible lowest-weight module.
int joint_kernel_dimension(const ChevalleyRep& rep);

}  // namespace qorbit
