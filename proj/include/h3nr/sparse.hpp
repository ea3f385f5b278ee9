#pragma once

// Sparse exact integer matrices and a Smith-form summary (rank + invariant
// factors, no transforms).  Used for the large differential matrices of
// cochain complexes, where unimodular unit-pivot elimination collapses most
// of the matrix and only a small residual needs the dense algorithm.

#include <h3nr/zlinalg.hpp>

#include <cstddef>
#include <queue>
#include <tuple>
#include <unordered_set>
#include <vector>

namespace h3nr {
namespace sparse {

using zlinalg::FgAbGroup;
using zlinalg::Int;
using zlinalg::IntMatrix;

// Rows of sorted (column, value) pairs, values nonzero after normalize().
class SparseMatrix {
 public:
  using Entry = std::pair<int, Int>;
  using Row = std::vector<Entry>;

  SparseMatrix() : cols_(0) {}
  SparseMatrix(int rows, int cols) : cols_(cols), rows_(rows) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

  // Accumulates v at (i, j); duplicates are combined by normalize().
  void add_term(int i, int j, const Int& v) {
    if (i < 0 || i >= rows() || j < 0 || j >= cols_)
      throw std::invalid_argument("sparse index out of range");
    if (v != 0) rows_[i].emplace_back(j, v);
  }

  // Sort every row, combine duplicate columns, drop zeros.
  void normalize() {
    for (Row& r : rows_) {
      std::sort(r.begin(), r.end(),
                [](const Entry& a, const Entry& b) { return a.first < b.first; });
      Row out;
      out.reserve(r.size());
      for (Entry& e : r) {
        if (!out.empty() && out.back().first == e.first)
          out.back().second += e.second;
        else
          out.push_back(std::move(e));
      }
      out.erase(std::remove_if(out.begin(), out.end(),
                               [](const Entry& e) { return e.second == 0; }),
                out.end());
      r = std::move(out);
    }
  }

  const Row& row(int i) const { return rows_[i]; }
  Row& mutable_row(int i) { return rows_[i]; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const Row& r : rows_) n += r.size();
    return n;
  }

  static SparseMatrix from_dense(const IntMatrix& m) {
    SparseMatrix s(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) s.rows_[i].emplace_back(j, m(i, j));
    return s;
  }

  IntMatrix to_dense() const {
    IntMatrix m(rows(), cols_);
    for (int i = 0; i < rows(); ++i)
      for (const Entry& e : rows_[i]) m(i, e.first) += e.second;
    return m;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows());
    for (int i = 0; i < rows(); ++i)
      for (const Entry& e : rows_[i]) t.rows_[e.first].emplace_back(i, e.second);
    return t;  // already sorted within each row by construction
  }

 private:
  int cols_;
  std::vector<Row> rows_;
};

struct SmithSummary {
  int rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, divisibility chain

  FgAbGroup cokernel_of(int ambient_cols) const {
    return FgAbGroup::from_parts(ambient_cols - rank, torsion);
  }
};

namespace detail {

// row -= mult * pivot_row (merge of sorted rows); returns the new row.
inline SparseMatrix::Row row_axpy(const SparseMatrix::Row& row, const Int& mult,
                                  const SparseMatrix::Row& pivot_row) {
  SparseMatrix::Row out;
  out.reserve(row.size() + pivot_row.size());
  std::size_t a = 0, b = 0;
  while (a < row.size() || b < pivot_row.size()) {
    if (b >= pivot_row.size() || (a < row.size() && row[a].first < pivot_row[b].first)) {
      out.push_back(row[a++]);
    } else if (a >= row.size() || row[a].first > pivot_row[b].first) {
      out.emplace_back(pivot_row[b].first, -mult * pivot_row[b].second);
      ++b;
    } else {
      Int v = row[a].second - mult * pivot_row[b].second;
      if (v != 0) out.emplace_back(row[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

}  // namespace detail

// Invariant factors of a sparse matrix, computed by repeatedly removing
// pivots that keep the elimination unimodular and fill-free:
//   * entries of absolute value 1 (row operations only; the pivot row and
//     column split off as a direct summand),
//   * entries alone in both their row and column (a 1 x 1 direct summand,
//     contributing their value to the factor multiset),
// then finishing the remaining core with the dense algorithm.
inline SmithSummary smith_summary(SparseMatrix a) {
  a.normalize();
  const int R = a.rows();

  std::vector<char> active(R, 1);
  std::vector<std::unordered_set<int>> col_rows(a.cols());
  for (int i = 0; i < R; ++i)
    for (const auto& e : a.row(i)) col_rows[e.first].insert(i);

  int unit_rank = 0;
  std::vector<Int> extracted;  // values of 1 x 1 direct summands

  using QEntry = std::pair<std::size_t, int>;  // (row nnz, row)
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> q;
  for (int i = 0; i < R; ++i)
    if (!a.row(i).empty())
      q.emplace(a.row(i).size(), i);
    else
      active[i] = 0;

  auto detach_row = [&](int r) {
    for (const auto& e : a.row(r)) col_rows[e.first].erase(r);
    a.mutable_row(r).clear();
    active[r] = 0;
  };

  for (;;) {
    while (!q.empty()) {
      auto [nz, r] = q.top();
      q.pop();
      if (!active[r] || a.row(r).size() != nz) continue;  // stale entry

      // Prefer a +-1 pivot in this row with the emptiest column.
      int pj = -1;
      std::size_t best_col = 0;
      bool unit = false;
      for (const auto& e : a.row(r)) {
        if (zlinalg::abs_int(e.second) == 1) {
          std::size_t cc = col_rows[e.first].size();
          if (!unit || cc < best_col) {
            pj = e.first;
            best_col = cc;
            unit = true;
          }
        }
      }
      if (!unit) {
        // 1 x 1 direct summand: sole entry of both its row and column.
        if (a.row(r).size() == 1 && col_rows[a.row(r)[0].first].size() == 1) {
          extracted.push_back(zlinalg::abs_int(a.row(r)[0].second));
          detach_row(r);
        }
        continue;  // otherwise leave the row for the dense residual
      }

      Int pv = 0;
      for (const auto& e : a.row(r))
        if (e.first == pj) pv = e.second;

      std::vector<int> victims(col_rows[pj].begin(), col_rows[pj].end());
      for (int r2 : victims) {
        if (r2 == r || !active[r2]) continue;
        Int v2 = 0;
        for (const auto& e : a.row(r2))
          if (e.first == pj) v2 = e.second;
        Int mult = v2 * pv;  // v2 / pv for pv = +-1
        SparseMatrix::Row updated = detail::row_axpy(a.row(r2), mult, a.row(r));
        for (const auto& e : a.row(r2)) col_rows[e.first].erase(r2);
        a.mutable_row(r2) = std::move(updated);
        for (const auto& e : a.row(r2)) col_rows[e.first].insert(r2);
        if (a.row(r2).empty())
          active[r2] = 0;
        else
          q.emplace(a.row(r2).size(), r2);
      }
      detach_row(r);
      ++unit_rank;
    }

    // Revisit rows that may have gained a unit entry since being skipped.
    bool any = false;
    for (int i = 0; i < R && !any; ++i)
      if (active[i])
        for (const auto& e : a.row(i))
          if (zlinalg::abs_int(e.second) == 1 ||
              (a.row(i).size() == 1 && col_rows[e.first].size() == 1)) {
            any = true;
            break;
          }
    if (!any) break;
    for (int i = 0; i < R; ++i)
      if (active[i]) q.emplace(a.row(i).size(), i);
  }

  // Dense residual on the surviving rows, with compacted columns.
  std::vector<Int> factors(extracted);
  factors.insert(factors.end(), unit_rank, Int(1));
  {
    std::vector<int> live_rows;
    for (int i = 0; i < R; ++i)
      if (active[i]) live_rows.push_back(i);
    if (!live_rows.empty()) {
      std::vector<int> live_cols;
      for (int j = 0; j < a.cols(); ++j)
        if (!col_rows[j].empty()) live_cols.push_back(j);
      std::vector<int> col_pos(a.cols(), -1);
      for (std::size_t k = 0; k < live_cols.size(); ++k) col_pos[live_cols[k]] = static_cast<int>(k);
      IntMatrix dense(static_cast<int>(live_rows.size()), static_cast<int>(live_cols.size()));
      for (std::size_t i = 0; i < live_rows.size(); ++i)
        for (const auto& e : a.row(live_rows[i])) dense(static_cast<int>(i), col_pos[e.first]) = e.second;
      zlinalg::SmithForm s = zlinalg::smith_normal_form(dense);
      for (const Int& d : s.d)
        if (d != 0) factors.push_back(d);
    }
  }

  // Merge the factor multiset into a single divisibility chain.
  SmithSummary out;
  out.rank = static_cast<int>(factors.size());
  FgAbGroup chain = FgAbGroup::from_parts(0, factors);
  out.torsion = chain.torsion();
  return out;
}

inline SmithSummary smith_summary_dense(const IntMatrix& m) {
  return smith_summary(SparseMatrix::from_dense(m));
}

namespace detail {

inline long long inv_mod(long long a, long long m) {
  long long t = 0, nt = 1, r = m, nr = a % m;
  if (nr < 0) nr += m;
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw std::logic_error("inverse of a non-unit");
  return t < 0 ? t + m : t;
}

// Invariant p-adic valuations of a matrix over Z/p^bigk, valid when every
// nonzero integer invariant factor has p-valuation < bigk.  Returns the
// number of pivots found at each valuation; their total is the rank.
//
// Stage s: eliminate every pivot that is a unit times p^s (after s global
// divisions by p every remaining entry is divisible by p^s, so any entry
// coprime to p in the divided matrix works, and elimination stays over the
// ring).  When no unit entries remain, every entry is divisible by p:
// divide through and move to stage s+1 over Z/p^(bigk-s-1).  Entries that
// survive to modulus 1 have valuation >= bigk and must, by the caller's
// guarantee, belong to zero invariant factors.
inline std::vector<int> local_smith_valuations(const SparseMatrix& a, long long p, int bigk) {
  using LRow = std::vector<std::pair<int, long long>>;
  long long m = 1;
  for (int i = 0; i < bigk; ++i) m *= p;
  const int R = a.rows();
  std::vector<LRow> rows(R);
  for (int i = 0; i < R; ++i)
    for (const auto& e : a.row(i)) {
      long long v = static_cast<long long>(e.second % m);
      if (v < 0) v += m;
      if (v != 0) rows[i].emplace_back(e.first, v);
    }
  std::vector<std::unordered_set<int>> col_rows(a.cols());
  for (int i = 0; i < R; ++i)
    for (const auto& e : rows[i]) col_rows[e.first].insert(i);

  std::vector<int> pivots_at(bigk, 0);
  std::vector<char> active(R, 1);
  for (int i = 0; i < R; ++i)
    if (rows[i].empty()) active[i] = 0;

  auto axpy_mod = [&](const LRow& row, long long mult, const LRow& prow, long long mod) {
    LRow out;
    out.reserve(row.size() + prow.size());
    std::size_t x = 0, y = 0;
    while (x < row.size() || y < prow.size()) {
      if (y >= prow.size() || (x < row.size() && row[x].first < prow[y].first)) {
        out.push_back(row[x++]);
      } else if (x >= row.size() || row[x].first > prow[y].first) {
        long long v = (-mult * prow[y].second) % mod;
        if (v < 0) v += mod;
        if (v != 0) out.emplace_back(prow[y].first, v);
        ++y;
      } else {
        long long v = (row[x].second - mult * prow[y].second) % mod;
        if (v < 0) v += mod;
        if (v != 0) out.emplace_back(row[x].first, v);
        ++x;
        ++y;
      }
    }
    return out;
  };

  for (int stage = 0; stage < bigk && m > 1; ++stage) {
    using QEntry = std::pair<std::size_t, int>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<QEntry>> q;
    for (int i = 0; i < R; ++i)
      if (active[i]) q.emplace(rows[i].size(), i);
    for (;;) {
      while (!q.empty()) {
        auto [nz, r] = q.top();
        q.pop();
        if (!active[r] || rows[r].size() != nz) continue;
        int pj = -1;
        long long pv = 0;
        std::size_t best = 0;
        for (const auto& e : rows[r])
          if (e.second % p != 0) {
            std::size_t cc = col_rows[e.first].size();
            if (pj < 0 || cc < best) {
              pj = e.first;
              pv = e.second;
              best = cc;
            }
          }
        if (pj < 0) continue;  // no unit entry at this stage; leave for later
        long long pinv = inv_mod(pv, m);
        std::vector<int> victims(col_rows[pj].begin(), col_rows[pj].end());
        for (int r2 : victims) {
          if (r2 == r || !active[r2]) continue;
          long long v2 = 0;
          for (const auto& e : rows[r2])
            if (e.first == pj) v2 = e.second;
          long long mult = (v2 * pinv) % m;
          LRow updated = axpy_mod(rows[r2], mult, rows[r], m);
          for (const auto& e : rows[r2]) col_rows[e.first].erase(r2);
          rows[r2] = std::move(updated);
          for (const auto& e : rows[r2]) col_rows[e.first].insert(r2);
          if (rows[r2].empty())
            active[r2] = 0;
          else
            q.emplace(rows[r2].size(), r2);
        }
        for (const auto& e : rows[r]) col_rows[e.first].erase(r);
        rows[r].clear();
        active[r] = 0;
        ++pivots_at[stage];
      }
      // a row may have gained a unit entry after being skipped
      bool any = false;
      for (int i = 0; i < R && !any; ++i)
        if (active[i])
          for (const auto& e : rows[i])
            if (e.second % p != 0) {
              any = true;
              break;
            }
      if (!any) break;
      for (int i = 0; i < R; ++i)
        if (active[i]) q.emplace(rows[i].size(), i);
    }
    // every remaining entry is divisible by p: factor it out
    m /= p;
    for (int i = 0; i < R; ++i) {
      if (!active[i]) continue;
      LRow next;
      next.reserve(rows[i].size());
      for (const auto& e : rows[i]) {
        long long v = (e.second / p) % m;
        if (v != 0)
          next.emplace_back(e.first, v);
        else
          col_rows[e.first].erase(i);
      }
      rows[i] = std::move(next);
      if (rows[i].empty()) active[i] = 0;
    }
  }
  return pivots_at;
}

}  // namespace detail

// Invariant factors of a sparse integer matrix whose nonzero invariant
// factors all divide `exponent_bound` (for a coboundary matrix of a finite
// group G, cohomology in positive degrees is killed by |G|, so the bound
// |G| always applies).  Computed prime-locally over Z/p^(v_p(bound)+1) with
// machine integers: unit pivots are plentiful mod p, arithmetic never
// grows, and no dense residual is left behind.
inline SmithSummary smith_summary_bounded(const SparseMatrix& a, const Int& exponent_bound) {
  if (exponent_bound < 1) throw std::invalid_argument("exponent bound must be positive");
  if (exponent_bound > 1'000'000'000) throw std::invalid_argument("exponent bound too large");
  long long bound = static_cast<long long>(exponent_bound);
  std::vector<std::pair<long long, int>> primes;  // (p, v_p(bound))
  long long rest = bound;
  for (long long p = 2; p * p <= rest; ++p)
    if (rest % p == 0) {
      int v = 0;
      while (rest % p == 0) {
        rest /= p;
        ++v;
      }
      primes.emplace_back(p, v);
    }
  if (rest > 1) primes.emplace_back(rest, 1);
  if (primes.empty()) primes.emplace_back(2, 0);  // bound 1: any prime gives the rank

  int rank = -1;
  std::vector<std::vector<int>> exps;  // per prime: ascending valuations of the d_i
  std::vector<long long> plist;
  for (auto [p, v] : primes) {
    std::vector<int> at = detail::local_smith_valuations(a, p, v + 1);
    std::vector<int> vals;
    for (int s = 0; s <= v; ++s) vals.insert(vals.end(), at[s], s);
    std::sort(vals.begin(), vals.end());
    int r = static_cast<int>(vals.size());
    if (rank >= 0 && r != rank)
      throw std::logic_error("prime-local ranks disagree; exponent bound violated");
    rank = r;
    exps.push_back(std::move(vals));
    plist.push_back(p);
  }

  SmithSummary out;
  out.rank = rank;
  std::vector<Int> factors;
  for (int i = 0; i < rank; ++i) {
    Int d = 1;
    for (std::size_t k = 0; k < plist.size(); ++k)
      for (int e = 0; e < exps[k][i]; ++e) d *= plist[k];
    if (d > 1) factors.push_back(d);
  }
  FgAbGroup chain = FgAbGroup::from_parts(0, factors);
  out.torsion = chain.torsion();
  return out;
}

}  // namespace sparse
}  // namespace h3nr
