// Decomposable classes in the symmetric square of a G-lattice.
//
// For a G-lattice A, the subgroup Dec(A) of S²(A)^G is generated by
//   * products u·v of G-invariant elements of A, and
//   * quadratic traces Qtr_H(a) = Σ_{i<j} (a·σ_i)·(a·σ_j) over all
//     subgroups H ≤ G and H-fixed a ∈ A, where {σ_i} runs over
//     representatives of the right cosets of H in G.
//
// Although a ↦ Qtr_H(a) is quadratic rather than linear, the polarization
// identity
//   Qtr_H(a+b) − Qtr_H(a) − Qtr_H(b) = Tr_H(a)·Tr_H(b) − Tr_H(a·b)
// together with Tr_H(a·a) = Tr_H(a)² − 2·Qtr_H(a) shows that Dec(A) is
// generated by finitely many vectors: pairwise products of an invariant
// basis of A, the values Qtr_H(e_k) on a basis {e_k} of each A^H, and the
// transfers Tr_H(e_k·e_l) of the pairwise basis products (k < l).  The
// first identity writes Qtr of a sum in terms of Qtr of the summands,
// invariant products, and the transfer of a product; the second shows the
// diagonal transfers Tr_H(e_k·e_k) are already in the span.  Randomized
// membership tests exercise this reduction.
//
// The quotient S²(A)^G / Dec(A) is the piece of the unramified cohomology
// of a torus that is not controlled by the Brauer group; it vanishes on
// permutation lattices and their direct sums.

#pragma once

#include <h3nr/cohomres.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace h3nr {
namespace decomp {

using zlinalg::FgAbGroup;
using zlinalg::Int;
using zlinalg::IntMatrix;

namespace detail {

// Qtr from precomputed coset images y_i of a fixed element:
// 2·Σ_{i<j} y_i·y_j = (Σ y_i)² − Σ y_i², computed in S² coordinates.
// Every coordinate of the right side is even because products in the
// symmetric square are symmetric, so the division is exact.
inline std::vector<Int> qtr_from_images(const std::vector<std::vector<Int>>& images, int rank) {
  int s2dim = glattice::s2_rank(rank);
  std::vector<Int> total(rank, 0), acc(s2dim, 0);
  for (const std::vector<Int>& y : images) {
    std::vector<Int> sq = glattice::prod_s2(y, y);
    for (int j = 0; j < s2dim; ++j) acc[j] -= sq[j];
    for (int j = 0; j < rank; ++j) total[j] += y[j];
  }
  std::vector<Int> sq = glattice::prod_s2(total, total);
  for (int j = 0; j < s2dim; ++j) {
    acc[j] += sq[j];
    acc[j] /= 2;
  }
  return acc;
}

inline void require_fixed(const glattice::GLattice& a, const groups::Subgroup& h,
                          const std::vector<Int>& x, const char* who) {
  if (static_cast<int>(x.size()) != a.rank())
    throw std::invalid_argument(std::string(who) + ": element dimension mismatch");
  for (int e : h.elements) {
    if (a.apply_element(x, e) != x)
      throw std::invalid_argument(std::string(who) + ": element is not fixed by the subgroup");
  }
}

}  // namespace detail

// Quadratic trace Qtr_H: A^H -> S²(A)^G, a ↦ Σ_{i<j} (a·σ_i)·(a·σ_j) with
// {σ_i} representatives of the right cosets of H.  Scales quadratically:
// Qtr_H(c·a) = c²·Qtr_H(a).  Result coordinates follow the basis of
// sym2_lattice(a); the full group gives the empty sum 0.
inline std::vector<Int> qtr(const glattice::GLattice& a, const groups::Subgroup& h,
                            const std::vector<Int>& x) {
  detail::require_fixed(a, h, x, "qtr");
  std::vector<int> reps = groups::right_coset_reps(a.group(), h);
  std::vector<std::vector<Int>> images;
  images.reserve(reps.size());
  for (int s : reps) images.push_back(a.apply_element(x, s));
  return detail::qtr_from_images(images, a.rank());
}

// Transfer (trace) Tr_H^G: A^H -> A^G, a ↦ Σ_i a·σ_i over right-coset
// representatives.  Works for any lattice; used on both A and S²(A).
inline std::vector<Int> transfer(const glattice::GLattice& a, const groups::Subgroup& h,
                                 const std::vector<Int>& x) {
  detail::require_fixed(a, h, x, "transfer");
  std::vector<Int> out(a.rank(), 0);
  for (int s : groups::right_coset_reps(a.group(), h)) {
    std::vector<Int> y = a.apply_element(x, s);
    for (int j = 0; j < a.rank(); ++j) out[j] += y[j];
  }
  return out;
}

// The subgroup Dec(A) ⊆ S²(A)^G, presented by a finite generating set in
// the coordinates of an echelon basis of the invariant sublattice.
struct DecSubgroup {
  glattice::GLattice s2;  // ambient lattice S²(A)
  IntMatrix inv_basis;    // rows: echelon basis of S²(A)^G inside S²(A)
  IntMatrix gens;         // rows: generators of Dec in inv_basis coordinates
};

// Finite generating set of Dec(A): pairwise products of an invariant basis
// of A, plus Qtr_H of a basis of A^H and transfers of its pairwise products
// for every subgroup H, ordered by increasing index for determinism.
// Expressing each generator against the saturated invariant basis proves
// its G-invariance; a failed solve throws.
inline DecSubgroup dec_generators(const glattice::GLattice& a) {
  const groups::AnyGroup& g = a.group();
  const int rank = a.rank();
  const int s2dim = glattice::s2_rank(rank);

  glattice::GLattice s2 = glattice::sym2_lattice(a);
  IntMatrix inv = s2.invariants_basis();
  std::vector<int> piv =
      inv.rows() > 0 ? zlinalg::pivot_cols_of_echelon(inv) : std::vector<int>{};

  std::vector<std::vector<Int>> raw;

  // products of invariants of A
  IntMatrix u = a.invariants_basis();
  for (int i = 0; i < u.rows(); ++i)
    for (int j = i; j < u.rows(); ++j) raw.push_back(glattice::prod_s2(u.row(i), u.row(j)));

  // per-subgroup quadratic traces and product transfers
  std::vector<groups::Subgroup> subs = groups::subgroups(g);
  std::stable_sort(subs.begin(), subs.end(),
                   [](const groups::Subgroup& x, const groups::Subgroup& y) {
                     return x.order() > y.order();
                   });
  for (const groups::Subgroup& h : subs) {
    IntMatrix e = a.invariants_basis(h);
    std::vector<int> reps = groups::right_coset_reps(g, h);
    // coset images of the H-fixed basis, computed once
    std::vector<std::vector<std::vector<Int>>> img(e.rows());
    for (int k = 0; k < e.rows(); ++k) {
      img[k].reserve(reps.size());
      for (int s : reps) img[k].push_back(a.apply_element(e.row(k), s));
    }
    for (int k = 0; k < e.rows(); ++k) raw.push_back(detail::qtr_from_images(img[k], rank));
    for (int k = 0; k < e.rows(); ++k)
      for (int l = k + 1; l < e.rows(); ++l) {
        // Tr_H(e_k·e_l) = Σ_s (e_k·σ_s)·(e_l·σ_s): transfer of a product
        // without ever applying the symmetric-square action matrices
        std::vector<Int> t(s2dim, 0);
        for (size_t s = 0; s < reps.size(); ++s) {
          std::vector<Int> p = glattice::prod_s2(img[k][s], img[l][s]);
          for (int j = 0; j < s2dim; ++j) t[j] += p[j];
        }
        raw.push_back(std::move(t));
      }
  }

  IntMatrix gens(static_cast<int>(raw.size()), inv.rows());
  for (size_t r = 0; r < raw.size(); ++r) {
    std::vector<Int> coeff;
    if (!zlinalg::solve_against_hnf(inv, piv, raw[r], &coeff))
      throw std::logic_error("Dec generator is not G-invariant");
    for (int j = 0; j < inv.rows(); ++j) gens(static_cast<int>(r), j) = coeff[j];
  }
  return DecSubgroup{std::move(s2), std::move(inv), std::move(gens)};
}

// S²(A)^G / Dec(A), canonical invariant factors.
inline FgAbGroup s2_mod_dec(const glattice::GLattice& a) {
  DecSubgroup d = dec_generators(a);
  if (d.inv_basis.rows() == 0) return FgAbGroup();
  return zlinalg::cokernel(d.gens);
}

// Independent route to the same quotient for abelian G: the short exact
// sequence 0 -> N -> S²(P̂) -> S²(T̂) -> 0 attached to a flasque resolution
// gives a connecting map δ: S²(T̂)^G -> H¹(G,N), and
//   S²(T̂)^G / Dec(T̂)  ≅  H¹(G,N) / δ((T̂^G)·(T̂^G)).
// The right side is computed here entirely through resolution cohomology:
// H¹(G,N) as a cocycle space, δ through an explicit lift, the quotient as
// a cokernel over the cocycle coordinates.  No Dec generator enters.
inline FgAbGroup h1n_mod_delta(const glattice::NSequenceData& nd) {
  std::shared_ptr<const groups::AnyGroup> g = nd.n.group_ptr();
  cohomres::Resolution r = cohomres::small_resolution(g, 2);
  cohomres::CohomologySpace h1(r, nd.n, 1);
  const int kdim = h1.kernel().rows();

  std::vector<std::vector<Int>> rows;
  IntMatrix u = nd.res.that.invariants_basis();
  for (int i = 0; i < u.rows(); ++i)
    for (int j = i; j < u.rows(); ++j) {
      cohomres::CohomClass c =
          cohomres::connecting_delta(r, nd.s2_seq, glattice::prod_s2(u.row(i), u.row(j)));
      rows.push_back(h1.coords_of(c.rep));
    }

  const IntMatrix& rel = h1.rel_hnf();
  IntMatrix stacked(static_cast<int>(rows.size()) + rel.rows(), kdim);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < kdim; ++j) stacked(static_cast<int>(i), j) = rows[i][j];
  for (int i = 0; i < rel.rows(); ++i)
    for (int j = 0; j < kdim; ++j) stacked(static_cast<int>(rows.size()) + i, j) = rel(i, j);
  return zlinalg::cokernel(stacked);
}

}  // namespace decomp
}  // namespace h3nr
