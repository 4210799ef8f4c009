#include "htreval/assign.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace htreval {

namespace {

// Among the optimal assignments, picks one with the fewest word errors.
// Optimal assignments are exactly the perfect matchings on cells with zero
// reduced cost, so a second solve restricted to those cells decides ties by
// value rather than by the order of the words.
Assignment<double> prefer_fewer_errors(std::span<const WordToken> x, std::span<const WordToken> y,
                                       const CostMatrix<double>& cost, Assignment<double> best) {
  const Eigen::Index nx = static_cast<Eigen::Index>(x.size());
  const Eigen::Index ny = static_cast<Eigen::Index>(y.size());
  const Eigen::Index n = nx + ny;
  if (n < 2) return best;
  const double tol = 1e-9 * std::max(1.0, cost.cwiseAbs().maxCoeff());
  // Twice the hWER numerator contribution: 2 per substitution, 1 per
  // dummy pair. Cells off the optimal face cost more than any full matching.
  const long off_face = 2 * static_cast<long>(n) + 1;
  CostMatrix<long> errors(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double ur = best.row_potential[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < n; ++c) {
      if (cost(r, c) - ur - best.col_potential[static_cast<std::size_t>(c)] > tol) {
        errors(r, c) = off_face;
      } else if (r < nx && c < ny) {
        errors(r, c) = x[static_cast<std::size_t>(r)] == y[static_cast<std::size_t>(c)] ? 0 : 2;
      } else {
        errors(r, c) = (r < nx) != (c < ny) ? 1 : 0;
      }
    }
  }
  const Assignment<long> pick = solve_assignment(errors);
  if (pick.cost >= off_face) return best;  // rounding left the face disconnected
  best.col_of_row = pick.col_of_row;
  best.cost = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) best.cost += cost(r, best.col_of_row[static_cast<std::size_t>(r)]);
  return best;
}

}  // namespace

HwerResult hwer(std::span<const WordToken> x, std::span<const WordToken> y, double gamma) {
  if (x.empty()) throw UndefinedReferenceError("hWER undefined for an empty reference");
  const CostMatrix<double> cost = build_cost_matrix<double>(x, y, gamma);
  const Assignment<double> a = prefer_fewer_errors(x, y, cost, solve_assignment(cost));

  HwerResult r;
  r.alignment = to_alignment(a, x.size(), y.size());
  r.cost = a.cost;
  for (const auto& p : r.alignment.pairs) {
    if (p.is_dummy()) {
      ++r.mismatches;
      ++r.dummy_pairs;
    } else if (!(x[p.ref] == y[p.hyp])) {
      ++r.mismatches;
    }
  }
  const auto nx = static_cast<std::int64_t>(x.size());
  r.length_gap = std::llabs(nx - static_cast<std::int64_t>(y.size()));
  r.rate = {r.mismatches - (r.dummy_pairs - r.length_gap) / 2, nx};
  return r;
}

void validate_alignment(const Alignment& a, std::size_t n_ref, std::size_t n_hyp) {
  std::vector<char> seen_ref(n_ref, 0), seen_hyp(n_hyp, 0);
  for (const auto& p : a.pairs) {
    if (p.ref == kDummy && p.hyp == kDummy) {
      throw StructuralError("alignment contains a dummy-dummy pair");
    }
    if (p.ref != kDummy) {
      if (p.ref >= n_ref || seen_ref[p.ref]) {
        throw StructuralError("alignment reference index invalid or repeated: " +
                              std::to_string(p.ref));
      }
      seen_ref[p.ref] = 1;
    }
    if (p.hyp != kDummy) {
      if (p.hyp >= n_hyp || seen_hyp[p.hyp]) {
        throw StructuralError("alignment hypothesis index invalid or repeated: " +
                              std::to_string(p.hyp));
      }
      seen_hyp[p.hyp] = 1;
    }
  }
  if (std::find(seen_ref.begin(), seen_ref.end(), 0) != seen_ref.end() ||
      std::find(seen_hyp.begin(), seen_hyp.end(), 0) != seen_hyp.end()) {
    throw StructuralError("alignment does not cover every word position");
  }
}

WordSequence reorder_hypothesis(std::span<const WordToken> x, std::span<const WordToken> y,
                                const Alignment& alignment) {
  validate_alignment(alignment, x.size(), y.size());
  std::vector<std::size_t> partner(x.size(), kDummy);
  std::vector<std::size_t> inserted;
  for (const auto& p : alignment.pairs) {
    if (p.is_real()) {
      partner[p.ref] = p.hyp;
    } else if (p.is_insertion()) {
      inserted.push_back(p.hyp);
    }
  }
  std::sort(inserted.begin(), inserted.end());

  WordSequence out;
  out.reserve(y.size());
  for (std::size_t k : partner) {
    if (k != kDummy) out.push_back(y[k]);
  }
  for (std::size_t k : inserted) out.push_back(y[k]);
  return out;
}

CharEditResult hcer_counts(std::span<const WordToken> x, std::span<const WordToken> y,
                           const Alignment& alignment) {
  const WordSequence reordered = reorder_hypothesis(x, y, alignment);
  return char_edit_distance(x, reordered);
}

Ratio hcer(std::span<const WordToken> x, std::span<const WordToken> y,
           const Alignment& alignment) {
  if (x.empty()) throw UndefinedReferenceError("hCER undefined for an empty reference");
  return {hcer_counts(x, y, alignment).distance, static_cast<std::int64_t>(joined_length(x))};
}

}  // namespace htreval
