#include "squarebraid/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace squarebraid {

namespace {
const Int kZero = 0;
}

const Int& IntegerMatrix::at(int r, int c) const {
  auto& row = row_data_.at(r);
  auto it = row.find(c);
  if (it == row.end()) return kZero;
  return it->second;
}

void IntegerMatrix::set(int r, int c, Int v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("IntegerMatrix::set");
  if (v == 0)
    row_data_[r].erase(c);
  else
    row_data_[r][c] = std::move(v);
}

void IntegerMatrix::add(int r, int c, const Int& v) {
  if (v == 0) return;
  auto& row = row_data_.at(r);
  auto it = row.find(c);
  if (it == row.end()) {
    row.emplace(c, v);
  } else {
    it->second += v;
    if (it->second == 0) row.erase(it);
  }
}

long long IntegerMatrix::nnz() const {
  long long n = 0;
  for (auto& r : row_data_) n += static_cast<long long>(r.size());
  return n;
}

IntegerMatrix IntegerMatrix::identity(int n) {
  IntegerMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (auto& [c, v] : row_data_[r]) t.set(c, r, v);
  return t;
}

namespace {

// Working state for the elimination: row-major maps plus a column index so
// column sweeps stay proportional to the number of nonzeros.
struct Work {
  std::vector<std::map<int, Int>> rows;
  std::vector<std::set<int>> col_rows;  // col -> rows with a nonzero there

  void set(int r, int c, Int v) {
    auto it = rows[r].find(c);
    if (v == 0) {
      if (it != rows[r].end()) {
        rows[r].erase(it);
        col_rows[c].erase(r);
      }
      return;
    }
    if (it == rows[r].end()) {
      rows[r].emplace(c, std::move(v));
      col_rows[c].insert(r);
    } else {
      it->second = std::move(v);
    }
  }

  void add(int r, int c, const Int& v) {
    if (v == 0) return;
    auto it = rows[r].find(c);
    if (it == rows[r].end()) {
      rows[r].emplace(c, v);
      col_rows[c].insert(r);
    } else {
      it->second += v;
      if (it->second == 0) {
        rows[r].erase(it);
        col_rows[c].erase(r);
      }
    }
  }

  // row[dst] += k * row[src]
  void row_axpy(int dst, int src, const Int& k) {
    if (k == 0) return;
    for (auto& [c, v] : rows[src]) add(dst, c, k * v);
  }

  // col[dst] += k * col[src]
  void col_axpy(int dst, int src, const Int& k) {
    if (k == 0) return;
    std::vector<int> touched(col_rows[src].begin(), col_rows[src].end());
    for (int r : touched) add(r, dst, k * rows[r][src]);
  }
};

}  // namespace

SmithResult smith_normal_form(const IntegerMatrix& m) {
  Work w;
  w.rows.resize(m.rows());
  w.col_rows.resize(m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (auto& [c, v] : m.row(r)) w.set(r, c, v);

  SmithResult res;
  std::vector<bool> row_done(m.rows(), false), col_done(m.cols(), false);

  for (;;) {
    // Pivot: smallest |value|, then least fill, then (r, c).
    int pr = -1, pc = -1;
    Int pv;
    long long pfill = 0;
    for (int r = 0; r < m.rows(); ++r) {
      if (row_done[r]) continue;
      for (auto& [c, v] : w.rows[r]) {
        Int a = abs(v);
        long long fill = static_cast<long long>(w.rows[r].size() - 1) *
                         static_cast<long long>(w.col_rows[c].size() - 1);
        if (pr < 0 || a < pv || (a == pv && fill < pfill)) {
          pr = r;
          pc = c;
          pv = a;
          pfill = fill;
        }
      }
    }
    if (pr < 0) break;

    // Reduce until the pivot divides its whole row and column, clearing both.
    for (;;) {
      Int piv = w.rows[pr][pc];
      // Clear the pivot column with row operations.
      bool shrank = false;
      std::vector<int> rows_in_col(w.col_rows[pc].begin(), w.col_rows[pc].end());
      for (int r : rows_in_col) {
        if (r == pr) continue;
        Int q = w.rows[r][pc] / piv;  // truncated division
        w.row_axpy(r, pr, -q);
        if (w.rows[r].count(pc)) {
          // Remainder is nonzero and strictly smaller; make it the pivot.
          pr = r;
          shrank = true;
          break;
        }
      }
      if (shrank) continue;

      // Clear the pivot row with column operations.
      std::vector<int> cols_in_row;
      for (auto& [c, v] : w.rows[pr])
        if (c != pc) cols_in_row.push_back(c);
      for (int c : cols_in_row) {
        Int q = w.rows[pr][c] / piv;
        w.col_axpy(c, pc, -q);
        if (w.rows[pr].count(c)) {
          pc = c;
          shrank = true;
          break;
        }
      }
      if (shrank) continue;

      // Row and column are clear. Enforce divisibility on the rest.
      if (!(abs(piv) == 1)) {
        int bad_row = -1;
        for (int r = 0; r < m.rows() && bad_row < 0; ++r) {
          if (row_done[r] || r == pr) continue;
          for (auto& [c, v] : w.rows[r]) {
            if (!mpz_divisible_p(v.get_mpz_t(), piv.get_mpz_t())) {
              bad_row = r;
              break;
            }
          }
        }
        if (bad_row >= 0) {
          w.row_axpy(pr, bad_row, 1);
          continue;
        }
      }

      res.diagonal.push_back(abs(piv));
      w.set(pr, pc, 0);
      row_done[pr] = true;
      col_done[pc] = true;
      break;
    }
  }

  res.rank = static_cast<int>(res.diagonal.size());
  return res;
}

}  // namespace squarebraid
