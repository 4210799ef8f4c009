// Regularized minimum-cost assignment between reference and hypothesis word
// instances, and the hWER / hCER rates derived from it.
//
// The cost matrix is square with side |X|+|Y|:
//
//            hyp words (|Y|)                 dummies (|X|)
//   ref    g(X_j, Y_k) + gamma |j-k| / N      |X_j|/2 + gamma / N
//   dummy  |Y_k|/2 + gamma / N                0
//
// where g is the character edit distance and N = |X|.
#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "htreval/core.hpp"
#include "htreval/editdist.hpp"

namespace htreval {

template <class Scalar>
using CostMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Regularization used when none is given.
inline constexpr double kDefaultGamma = 1.0;

template <class Scalar = double>
CostMatrix<Scalar> build_cost_matrix(std::span<const WordToken> x, std::span<const WordToken> y,
                                     Scalar gamma) {
  if (x.empty()) throw UndefinedReferenceError("cost matrix undefined for an empty reference");
  if (gamma < Scalar(0)) throw ConfigError("regularization factor must be non-negative");
  const Eigen::Index nx = static_cast<Eigen::Index>(x.size());
  const Eigen::Index ny = static_cast<Eigen::Index>(y.size());
  const Scalar n = static_cast<Scalar>(nx);
  const Scalar dummy_reg = gamma / n;

  CostMatrix<Scalar> m = CostMatrix<Scalar>::Zero(nx + ny, nx + ny);
  for (Eigen::Index j = 0; j < nx; ++j) {
    const auto& xj = x[static_cast<std::size_t>(j)].chars();
    for (Eigen::Index k = 0; k < ny; ++k) {
      const Scalar g = static_cast<Scalar>(char_distance(xj, y[static_cast<std::size_t>(k)].chars()));
      m(j, k) = g + gamma * static_cast<Scalar>(j > k ? j - k : k - j) / n;
    }
    m.row(j).tail(nx).setConstant(static_cast<Scalar>(xj.size()) / Scalar(2) + dummy_reg);
  }
  for (Eigen::Index k = 0; k < ny; ++k) {
    m.col(k).tail(ny).setConstant(
        static_cast<Scalar>(y[static_cast<std::size_t>(k)].length()) / Scalar(2) + dummy_reg);
  }
  return m;
}

template <class Scalar>
struct Assignment {
  /// col_of_row[r] is the column matched with row r.
  std::vector<Eigen::Index> col_of_row;
  Scalar cost{};
  /// Optimal duals: cost(r, c) - row_potential[r] - col_potential[c] >= 0,
  /// zero on the matched cells.
  std::vector<Scalar> row_potential, col_potential;
};

/// Optimal perfect matching on a square cost matrix, shortest augmenting
/// paths with dual potentials, O(n^3).
template <class Derived>
Assignment<typename Derived::Scalar> solve_assignment(const Eigen::MatrixBase<Derived>& cost) {
  using Scalar = typename Derived::Scalar;
  if (cost.rows() != cost.cols()) throw std::invalid_argument("cost matrix must be square");
  const Eigen::Index n = cost.rows();

  // Row access dominates; binds without copying when already row-major.
  const Eigen::Ref<const CostMatrix<Scalar>> c(cost.derived());
  const Scalar inf = std::numeric_limits<Scalar>::has_infinity
                         ? std::numeric_limits<Scalar>::infinity()
                         : std::numeric_limits<Scalar>::max() / 2;

  // 1-based; column 0 is the virtual root of each augmenting search.
  std::vector<Scalar> u(n + 1, Scalar(0)), v(n + 1, Scalar(0)), minv(n + 1);
  std::vector<Eigen::Index> row_of_col(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (Eigen::Index i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    Eigen::Index j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const Eigen::Index i0 = row_of_col[j0];
      const Scalar ui0 = u[i0];
      const Scalar* row = c.data() + (i0 - 1) * c.outerStride();
      Scalar delta = inf;
      Eigen::Index j1 = 0;
      for (Eigen::Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Scalar cur = row[j - 1] - ui0 - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        // On ties a free column ends the search at once.
        if (minv[j] < delta || (minv[j] == delta && row_of_col[j] == 0 && row_of_col[j1] != 0)) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Eigen::Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const Eigen::Index j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment<Scalar> out;
  out.col_of_row.assign(static_cast<std::size_t>(n), 0);
  for (Eigen::Index j = 1; j <= n; ++j) {
    out.col_of_row[static_cast<std::size_t>(row_of_col[j] - 1)] = j - 1;
  }
  for (Eigen::Index r = 0; r < n; ++r) out.cost += c(r, out.col_of_row[static_cast<std::size_t>(r)]);
  out.row_potential.assign(u.begin() + 1, u.end());
  out.col_potential.assign(v.begin() + 1, v.end());
  return out;
}

/// Maps a padded assignment back to word positions, dropping dummy-dummy
/// pairs.
template <class Scalar>
Alignment to_alignment(const Assignment<Scalar>& a, std::size_t n_ref, std::size_t n_hyp) {
  Alignment out;
  for (std::size_t r = 0; r < a.col_of_row.size(); ++r) {
    const auto col = static_cast<std::size_t>(a.col_of_row[r]);
    const std::size_t ref = r < n_ref ? r : kDummy;
    const std::size_t hyp = col < n_hyp ? col : kDummy;
    if (ref == kDummy && hyp == kDummy) continue;
    out.pairs.push_back({ref, hyp});
  }
  return out;
}

struct HwerResult {
  Ratio rate;
  Alignment alignment;
  std::int64_t mismatches = 0;   // sum of 0/1 mismatches, dummies count 1
  std::int64_t dummy_pairs = 0;  // D
  std::int64_t length_gap = 0;   // b
  double cost = 0.0;             // regularized d_h
};

/// hWER = (sum of mismatches)/N - (D - b)/2N over the optimal regularized
/// alignment. The numerator is always an integer since D - b is even.
/// Among equal-cost alignments the one with the smallest numerator wins, so
/// the rate does not depend on word order when gamma is 0.
HwerResult hwer(std::span<const WordToken> x, std::span<const WordToken> y,
                double gamma = kDefaultGamma);

/// Throws StructuralError unless every reference and hypothesis position is
/// covered exactly once.
void validate_alignment(const Alignment& a, std::size_t n_ref, std::size_t n_hyp);

/// Hypothesis reordered by the alignment: matched words at their reference
/// partner's position, inserted words appended in hypothesis order.
WordSequence reorder_hypothesis(std::span<const WordToken> x, std::span<const WordToken> y,
                                const Alignment& alignment);

/// CER between x and the reordered hypothesis.
CharEditResult hcer_counts(std::span<const WordToken> x, std::span<const WordToken> y,
                           const Alignment& alignment);
Ratio hcer(std::span<const WordToken> x, std::span<const WordToken> y,
           const Alignment& alignment);

}  // namespace htreval
