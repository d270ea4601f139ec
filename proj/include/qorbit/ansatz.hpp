#pragma once
// Scalar coefficient system tying the two off-diagonal quadrants of the
// operator matrix together.  Everything lives in Q(t)(xi) where xi is the
// diagonal band value treated as a fresh indeterminate; the system is linear
// in two of the three coefficients and the third is fixed by the band
// normalization, leaving one scalar identity that must hold for every xi.

#include <vector>

#include "qorbit/series.hpp"

namespace qorbit {

// Polynomial in the auxiliary indeterminate with Q(t) coefficients,
// ascending by degree.
class XiPoly {
  public:
    XiPoly() = default;
    explicit XiPoly(RatFunc c);
    static XiPoly variable();

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const RatFunc& lead() const;
    RatFunc coeff(int k) const;
    RatFunc eval(const RatFunc& x) const;

    XiPoly operator+(const XiPoly& o) const;
    XiPoly operator-(const XiPoly& o) const;
    XiPoly operator*(const XiPoly& o) const;
    XiPoly scaled(const RatFunc& c) const;
    // Euclidean remainder; pre: !o.is_zero().
    XiPoly rem(const XiPoly& o) const;
    bool operator==(const XiPoly& o) const;
    bool operator!=(const XiPoly& o) const { return !(*this == o); }

  private:
    std::vector<RatFunc> c_;
    void trim();
};

// Reduced fraction of two XiPoly with monic denominator.
class XiRat {
  public:
    XiRat() : XiRat(XiPoly(), XiPoly(RatFunc(1))) {}
    explicit XiRat(RatFunc c) : XiRat(XiPoly(std::move(c)), XiPoly(RatFunc(1))) {}
    XiRat(XiPoly num, XiPoly den);
    static XiRat variable() { return XiRat(XiPoly::variable(), XiPoly(RatFunc(1))); }

    const XiPoly& num() const { return num_; }
    const XiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    XiRat operator+(const XiRat& o) const;
    XiRat operator-(const XiRat& o) const;
    XiRat operator*(const XiRat& o) const;
    XiRat inv() const;  // throws NotInvertible on zero
    bool operator==(const XiRat& o) const;
    bool operator!=(const XiRat& o) const { return !(*this == o); }

    // Value at a concrete point; throws NonGenericParameters when the
    // denominator vanishes there.
    RatFunc eval(const RatFunc& x) const;

  private:
    XiPoly num_, den_;
};

// Coefficients expressing the upper quadrant block through the lower one:
//   mu    -- constant term, (1 - xi0)/(xi - xi0) with xi0 = q^{N-2r+1};
//   eta   -- plain lower-block term;
//   zeta  -- permuted lower-block term;
// t_minus is the partial-trace scalar the consistency identity requires,
// and `consistent` records whether that identity holds for every xi.
struct AnsatzSolution {
    RatFunc xi0;
    XiRat mu, eta, zeta, t_minus;
    bool consistent = false;
};

// Solves the linear pair for (eta, zeta) by Cramer's rule over Q(t)(xi).
// Throws NonGenericParameters when the system is singular or zeta vanishes
// identically.
AnsatzSolution solve_ansatz(const SeriesSpec& sp, const CellSplit& cell);

struct AnsatzValues {
    RatFunc mu, eta, zeta, t_minus;
};

// Specializes a solution at a concrete band value; throws
// NonGenericParameters when a denominator vanishes there (e.g. xi = xi0).
AnsatzValues evaluate_at(const AnsatzSolution& sol, const RatFunc& xi);

}  // namespace qorbit
