#pragma once

#include <vector>

#include "tightcore/poly.hpp"

namespace tightcore {

/// Echelon basis of a span of polynomials viewed as coefficient vectors.
/// Rows are monic with pairwise distinct leading monomials.
class LinearBasis {
 public:
  /// Removes from f every term that is a pivot of some row. Row i carries no
  /// pivot of an earlier row, so one pass in insertion order suffices.
  Poly reduce(Poly f) const {
    for (const auto& row : rows_) {
      const Monomial& pivot = row.leading_monomial();
      for (const auto& t : f.terms()) {
        if (t.mono == pivot) {
          f = f.sub_mul_term(Monomial::one(), t.coeff, row);
          break;
        }
      }
    }
    return f;
  }

  /// Adds f if it is independent of the current rows; returns whether it was.
  bool insert(const Poly& f) {
    Poly r = reduce(f);
    if (r.is_zero()) return false;
    rows_.push_back(r.monic());
    return true;
  }

  bool contains(const Poly& f) const { return reduce(f).is_zero(); }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<Poly>& rows() const { return rows_; }

 private:
  std::vector<Poly> rows_;
};

}  // namespace tightcore
