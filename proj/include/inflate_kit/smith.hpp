#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "inflate_kit/complex.hpp"

namespace inflate_kit {

using BigInt = boost::multiprecision::cpp_int;

/// Integer matrix stored by rows; each row is a list of (column, value) with
/// distinct columns and nonzero values.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<Index, std::int64_t>>> entries;
};

/// Rank and the invariant factors (> 1) of an integer matrix.
struct SmithSummary {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;  // ascending, each divides the next
};

namespace detail {

struct Overflow {};

// Arithmetic that is exact for BigInt and overflow-checked for int64.
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t magnitude(std::int64_t a) {
  if (a == INT64_MIN) throw Overflow{};
  return a < 0 ? -a : a;
}
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt magnitude(const BigInt& a) { return abs(a); }

/// Rows stay sorted by column. `row_a -= factor * row_b`.
template <class Int>
void axpy_row(std::vector<std::pair<Index, Int>>& a, const std::vector<std::pair<Index, Int>>& b, const Int& factor,
              std::vector<Index>& gained, std::vector<Index>& lost) {
  std::vector<std::pair<Index, Int>> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, sub(Int(0), mul(factor, b[j].second)));
      gained.push_back(b[j].first);
      ++j;
    } else {
      Int v = sub(a[i].second, mul(factor, b[j].second));
      if (v != 0)
        out.emplace_back(a[i].first, std::move(v));
      else
        lost.push_back(a[i].first);
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

/// Dense Smith normal form on what is left after unit pivots are gone.
template <class Int>
void dense_smith(std::vector<std::vector<Int>> a, SmithSummary& out) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<Int> diagonal;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      std::size_t pr = m, pc = n;
      Int best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (pr == m || magnitude(a[i][j]) < best)) {
            best = magnitude(a[i][j]);
            pr = i;
            pc = j;
          }
      if (pr == m) goto done;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        const Int q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] = sub(a[i][j], mul(q, a[t][j]));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        const Int q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] = sub(a[i][j], mul(q, a[i][t]));
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold a row with a non-multiple into the pivot row.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < n; ++k) a[t][k] = add(a[t][k], a[i][k]);
            divides = false;
            break;
          }
      if (divides) break;
    }
    diagonal.push_back(magnitude(a[t][t]));
  }
done:
  out.rank += diagonal.size();
  for (const auto& d : diagonal)
    if (d > 1) out.torsion.emplace_back(d);
}

template <class Int>
SmithSummary smith_with(const SparseMatrix& matrix) {
  using Row = std::vector<std::pair<Index, Int>>;
  std::vector<Row> rows(matrix.rows);
  std::vector<std::set<Index>> col_rows(matrix.cols);
  for (Index r = 0; r < matrix.rows; ++r) {
    for (auto [c, v] : matrix.entries[r])
      if (v != 0) rows[r].emplace_back(c, Int(v));
    std::sort(rows[r].begin(), rows[r].end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& e : rows[r]) col_rows[e.first].insert(r);
  }
  std::vector<char> row_alive(matrix.rows, 1);
  SmithSummary out;

  auto entry = [&](Index r, Index c) -> const Int& {
    auto it = std::lower_bound(rows[r].begin(), rows[r].end(), c,
                               [](const auto& e, Index key) { return e.first < key; });
    return it->second;
  };

  // Unit pivots: clear the pivot column with row operations, then the pivot
  // row can be cleared by column operations that touch nothing else.
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<Index> order(matrix.cols);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index x, Index y) { return col_rows[x].size() < col_rows[y].size(); });
    for (Index c : order) {
      if (col_rows[c].empty()) continue;
      Index pivot_row = matrix.rows;
      for (Index r : col_rows[c]) {
        const Int& v = entry(r, c);
        if ((v == 1 || v == -1) && (pivot_row == matrix.rows || rows[r].size() < rows[pivot_row].size()))
          pivot_row = r;
      }
      if (pivot_row == matrix.rows) continue;
      const Int pivot = entry(pivot_row, c);
      const Row pivot_copy = rows[pivot_row];
      const std::vector<Index> others(col_rows[c].begin(), col_rows[c].end());
      for (Index r : others) {
        if (r == pivot_row) continue;
        const Int factor = mul(entry(r, c), pivot);  // pivot is its own inverse
        std::vector<Index> gained, lost;
        axpy_row(rows[r], pivot_copy, factor, gained, lost);
        for (Index g : gained) col_rows[g].insert(r);
        for (Index l : lost) col_rows[l].erase(r);
      }
      for (const auto& e : rows[pivot_row]) col_rows[e.first].erase(pivot_row);
      rows[pivot_row].clear();
      row_alive[pivot_row] = 0;
      col_rows[c].clear();
      ++out.rank;
      progress = true;
    }
  }

  std::vector<Index> live_rows, live_cols;
  for (Index r = 0; r < matrix.rows; ++r)
    if (row_alive[r] && !rows[r].empty()) live_rows.push_back(r);
  for (Index c = 0; c < matrix.cols; ++c)
    if (!col_rows[c].empty()) live_cols.push_back(c);
  if (live_rows.empty()) return out;
  std::vector<Index> col_pos(matrix.cols, 0);
  for (Index k = 0; k < live_cols.size(); ++k) col_pos[live_cols[k]] = k;
  std::vector<std::vector<Int>> dense(live_rows.size(), std::vector<Int>(live_cols.size(), Int(0)));
  for (Index k = 0; k < live_rows.size(); ++k)
    for (const auto& [c, v] : rows[live_rows[k]]) dense[k][col_pos[c]] = v;
  dense_smith(std::move(dense), out);
  return out;
}

}  // namespace detail

/// Rank and torsion coefficients. Runs in 64-bit arithmetic and repeats the
/// computation with arbitrary precision if an intermediate value overflows.
inline SmithSummary smith_summary(const SparseMatrix& matrix) {
  try {
    return detail::smith_with<std::int64_t>(matrix);
  } catch (const detail::Overflow&) {
    return detail::smith_with<BigInt>(matrix);
  }
}

/// Same, forcing the arbitrary-precision path (used to cross-check).
inline SmithSummary smith_summary_exact(const SparseMatrix& matrix) { return detail::smith_with<BigInt>(matrix); }

}  // namespace inflate_kit
