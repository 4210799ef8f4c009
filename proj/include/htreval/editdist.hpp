// Levenshtein edit distance at word and character level, and the WER/CER
// rates built on it.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "htreval/core.hpp"

namespace htreval {

struct EditResult {
  std::int64_t distance = 0;
  EditCounts counts;
  Trace trace;
};

struct CharEditResult {
  std::int64_t distance = 0;
  EditCounts counts;
};

namespace detail {

enum class EditStep : std::uint8_t { kDiagonal, kDeletion, kInsertion };

// Predecessor choice shared by the trace and counts-only variants: match or
// substitution first, then deletion, then insertion.
inline EditStep choose_step(std::int64_t diag, std::int64_t up, std::int64_t here) noexcept {
  if (here == diag) return EditStep::kDiagonal;
  if (here == up) return EditStep::kDeletion;
  return EditStep::kInsertion;
}

}  // namespace detail

/// Unit-cost edit distance from x to y with a deterministic backtrace.
/// Memory is one byte per DP cell plus two rows of distances.
template <class T, class Eq = std::equal_to<>>
EditResult levenshtein_trace(std::span<const T> x, std::span<const T> y, Eq eq = {}) {
  using detail::EditStep;
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  std::vector<EditStep> steps((n + 1) * (m + 1));
  std::vector<std::int64_t> prev(m + 1), cur(m + 1);
  auto step_at = [&](std::size_t i, std::size_t j) -> EditStep& { return steps[i * (m + 1) + j]; };

  for (std::size_t j = 0; j <= m; ++j) {
    prev[j] = static_cast<std::int64_t>(j);
    step_at(0, j) = EditStep::kInsertion;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<std::int64_t>(i);
    step_at(i, 0) = EditStep::kDeletion;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int64_t diag = prev[j - 1] + (eq(x[i - 1], y[j - 1]) ? 0 : 1);
      const std::int64_t up = prev[j] + 1;
      const std::int64_t left = cur[j - 1] + 1;
      const std::int64_t best = std::min({diag, up, left});
      cur[j] = best;
      step_at(i, j) = detail::choose_step(diag, up, best);
    }
    std::swap(prev, cur);
  }

  EditResult result;
  result.distance = prev[m];
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    switch (step_at(i, j)) {
      case EditStep::kDiagonal:
        if (eq(x[i - 1], y[j - 1])) {
          ++result.counts.correct;
        } else {
          ++result.counts.sub;
        }
        result.trace.pairs.push_back({i - 1, j - 1});
        --i;
        --j;
        break;
      case EditStep::kDeletion:
        ++result.counts.del;
        result.trace.pairs.push_back({i - 1, kDummy});
        --i;
        break;
      case EditStep::kInsertion:
        ++result.counts.ins;
        result.trace.pairs.push_back({kDummy, j - 1});
        --j;
        break;
    }
  }
  std::reverse(result.trace.pairs.begin(), result.trace.pairs.end());
  return result;
}

/// Same distance and tie-breaking as levenshtein_trace, counts only, O(|y|)
/// memory. Each cell carries the counts of its preferred predecessor chain,
/// which is exactly the path a backtrace would follow.
template <class T, class Eq = std::equal_to<>>
CharEditResult levenshtein_counts(std::span<const T> x, std::span<const T> y, Eq eq = {}) {
  using detail::EditStep;
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  struct Cell {
    std::int64_t dist;
    EditCounts counts;
  };
  std::vector<Cell> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    prev[j].dist = static_cast<std::int64_t>(j);
    prev[j].counts = EditCounts{static_cast<std::int64_t>(j), 0, 0, 0};
  }
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0].dist = static_cast<std::int64_t>(i);
    cur[0].counts = EditCounts{0, 0, static_cast<std::int64_t>(i), 0};
    for (std::size_t j = 1; j <= m; ++j) {
      const bool same = eq(x[i - 1], y[j - 1]);
      const std::int64_t diag = prev[j - 1].dist + (same ? 0 : 1);
      const std::int64_t up = prev[j].dist + 1;
      const std::int64_t left = cur[j - 1].dist + 1;
      const std::int64_t best = std::min({diag, up, left});
      switch (detail::choose_step(diag, up, best)) {
        case EditStep::kDiagonal:
          cur[j].counts = prev[j - 1].counts;
          ++(same ? cur[j].counts.correct : cur[j].counts.sub);
          break;
        case EditStep::kDeletion:
          cur[j].counts = prev[j].counts;
          ++cur[j].counts.del;
          break;
        case EditStep::kInsertion:
          cur[j].counts = cur[j - 1].counts;
          ++cur[j].counts.ins;
          break;
      }
      cur[j].dist = best;
    }
    std::swap(prev, cur);
  }
  return {prev[m].dist, prev[m].counts};
}

/// Distance only, for short strings (per-word costs). O(|b|) memory.
std::int64_t char_distance(std::u32string_view a, std::u32string_view b);

/// Word-level edit distance with counts and trace.
EditResult edit_distance(std::span<const WordToken> x, std::span<const WordToken> y);

/// Character-level edit distance between the single-space joins of x and y.
CharEditResult char_edit_distance(std::span<const WordToken> x,
                                  std::span<const WordToken> y);

/// (i+s+d)/|x|. Throws UndefinedReferenceError for empty x. May exceed 1.
Ratio wer(std::span<const WordToken> x, std::span<const WordToken> y);
/// Character edit distance over the joined reference length.
Ratio cer(std::span<const WordToken> x, std::span<const WordToken> y);

struct PageRate {
  Ratio rate;
  EditCounts counts;
};

struct PageConcatResult {
  Ratio rate;
  EditCounts counts;
  Trace trace;
};

/// Line-by-line edit counts accumulated over the page, normalized by the
/// page word count. Requires equal line counts.
PageRate page_wer_by_lines(const PageTranscript& ref, const PageTranscript& hyp);

/// Edit distance between the flattened pages.
PageConcatResult page_wer_concat(const PageTranscript& ref, const PageTranscript& hyp);

/// Character error rate between the flattened pages.
PageRate page_cer_concat(const PageTranscript& ref, const PageTranscript& hyp);

}  // namespace htreval
