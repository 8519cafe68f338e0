#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace squarebraid {

using Int = mpz_class;

// Sparse matrix over the integers. All arithmetic is exact; nothing in the
// homology path ever touches floating point.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_data_(rows) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Int& at(int r, int c) const;
  void set(int r, int c, Int v);
  void add(int r, int c, const Int& v);

  const std::map<int, Int>& row(int r) const { return row_data_.at(r); }
  long long nnz() const;

  bool operator==(const IntegerMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && row_data_ == o.row_data_;
  }

  static IntegerMatrix identity(int n);
  IntegerMatrix transpose() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::map<int, Int>> row_data_;
};

struct SmithResult {
  // Nonzero invariant factors d1 | d2 | ... | dr, one per unit of rank.
  std::vector<Int> diagonal;
  int rank = 0;
};

// Fraction-free elimination over Z, pivoting on the entry of smallest nonzero
// magnitude (ties broken by sparsity, then position). Deterministic.
SmithResult smith_normal_form(const IntegerMatrix& m);

}  // namespace squarebraid
