#pragma once
// Left module structure on the quotient algebra.  The generator matrix M
// acts on 1 by a fixed band matrix depending on xi = q^{-2 sigma}, and on
// generator products through a linear recursion whose closed form is the
// two-leg matrix certified by the quotient-identity layer.  The cyclic span
// of 1 is tracked by exact row reduction; once it closes, every M_{ab} is a
// finite scalar matrix and the defining relations of the reflection-equation
// algebra are verified as exact matrix identities.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qorbit/quotient.hpp"

namespace qorbit {

class ModuleRep;
struct ModuleBudgets;

// M . f for every standard monomial f through a degree frontier.  sigma is
// quadrupled so that xi stays a t-monomial.
class ActionTable {
  public:
    const SeriesSpec& spec() const { return sp_; }
    const CellSplit& cell() const { return cell_; }
    int sigma4() const { return sigma4_; }
    const RatFunc& xi() const { return xi_; }
    const QuotientBasis& basis() const { return *basis_; }
    int degree() const { return degree_; }

    // M . f as an N x N matrix of normal forms; f must be a standard word of
    // degree <= degree().
    const NCLegMatrix& value(const Word& f) const;

    // M . x for any x supported on tabulated standard words, by linearity.
    NCLegMatrix apply(const NCPoly& x) const;

  private:
    ActionTable() = default;
    friend ActionTable seed_action(const SeriesSpec&, const CellSplit&, int, int);
    friend void extend_action(ActionTable&, int);
    friend class ModuleRep;
    friend ModuleRep build_module(const SeriesSpec&, const CellSplit&, int, const ModuleBudgets&);

    void extend_one();

    SeriesSpec sp_;
    CellSplit cell_;
    int sigma4_ = 0;
    RatFunc xi_;
    std::shared_ptr<const QuotientBasis> basis_;
    int degree_ = -1;
    std::map<Word, NCLegMatrix, GrlexLess> values_;

    // Recursion plumbing, fixed per instance.
    LegMatrix r21inv_;               // two legs
    NCLegMatrix closed_form_;        // two legs, entries of degree <= 2
    std::vector<int> up_idx_;        // label indices above the lower band
    std::vector<std::vector<RatFunc>> solve_;  // row transform: solve_ * A = [I; 0]
};

// Degree-0 table holding M . 1.  truncation < 0 picks ceil(2 sigma) + 2.
// Throws RecursionSingular if the recursion system is rank-deficient.
ActionTable seed_action(const SeriesSpec& sp, const CellSplit& cell, int sigma4,
                        int truncation = -1);

// Complete the table through target_degree.  Each step needs quotient
// truncation >= step degree + 2; otherwise ResourceLimit is thrown and the
// caller must reseed with a deeper quotient.
void extend_action(ActionTable& table, int target_degree);

struct ModuleBudgets {
    int max_dimension = 512;
    int max_degree = -1;  // < 0 picks ceil(2 sigma) + 4
};

// The closed cyclic span of 1: an ordered monomial-pivot basis in reduced
// echelon form (1 is always the first vector) and one m x m scalar matrix
// per matrix entry of M, stored blockwise on legs {N, m}.
class ModuleRep {
  public:
    const SeriesSpec& spec() const { return table_.spec(); }
    const CellSplit& cell() const { return table_.cell(); }
    int r2() const { return table_.cell().r2; }
    int sigma4() const { return table_.sigma4(); }
    const RatFunc& xi() const { return table_.xi(); }
    const ActionTable& table() const { return table_; }

    int dimension() const { return static_cast<int>(basis_.size()); }
    const std::vector<NCPoly>& basis() const { return basis_; }
    const std::vector<std::vector<int>>& weights() const { return weights_; }
    std::vector<int> graded_dimensions() const;
    int closure_degree() const;

    // Rows and columns are (matrix label, basis index); the entry at
    // ((a,i),(b,j)) is the v_i coefficient of M_{ab} . v_j.
    const LegMatrix& op() const { return op_; }
    LegMatrix op_block(int a, int b) const;  // one m x m block

    // Coordinates of an in-span normal form in the basis.
    std::vector<RatFunc> coordinates(const NCPoly& x) const;

  private:
    ModuleRep() = default;
    static ModuleRep closure_attempt(const SeriesSpec&, const CellSplit&, int sigma4,
                                     int truncation, const ModuleBudgets&);
    friend ModuleRep build_module(const SeriesSpec&, const CellSplit&, int,
                                  const ModuleBudgets&);

    ActionTable table_;
    std::vector<NCPoly> basis_;
    std::vector<std::vector<int>> weights_;
    LegMatrix op_;
};

// Iterate the action on the span of 1 until it stabilizes.  The quotient
// truncation is deepened automatically as the frontier grows; exceeding a
// budget raises ModuleNotClosed.
ModuleRep build_module(const SeriesSpec& sp, const CellSplit& cell, int sigma4,
                       const ModuleBudgets& budgets = {});

struct ModuleCheck {
    std::string id;
    bool pass = false;
    int residual_entry_count = 0;
    std::string detail;
};

struct ModuleRelationReport {
    bool pass = false;
    std::vector<ModuleCheck> checks;
    RatFunc central_value;  // scalar the weighted trace of M acts by
};

// Exact identity checks on the operator matrices: the reflection exchange
// relation, both forms of the orthogonality relation (needs the blockwise
// inverse of M), scalar-ness of the weighted trace, and equality of the
// weighted traces of M and its inverse.
ModuleRelationReport verify_module_relations(const ModuleRep& rep);

}  // namespace qorbit
