// Reading-order mismatch: normalized Spearman's footrule distance over an
// unconstrained word alignment.
#pragma once

#include <cstdint>

#include "htreval/core.hpp"

namespace htreval {

/// Recompacts word positions so that deleted reference positions and
/// inserted hypothesis positions no longer shift their successors. Matched
/// pairs get their rank among matched positions on each side; a dummy pair
/// keeps the dummy and its word side becomes kSkipped.
Alignment renumber(const Alignment& alignment, std::size_t len_ref, std::size_t len_hyp);

/// Sum of |j - k| over the pairs, each pair touching a dummy or skipped
/// position contributing exactly 1.
std::int64_t footrule_sum(const Alignment& renumbered);

/// Footrule sum over floor(N^2 / 2) with N = max(len_ref, len_hyp), taken
/// before renumbering. Not clamped to [0, 1]. For N = 1 the denominator is 1.
/// Throws UndefinedReferenceError when both texts are empty.
Ratio nsfd(const Alignment& renumbered, std::size_t len_ref, std::size_t len_hyp);

/// renumber followed by nsfd.
Ratio reading_order_distance(const Alignment& alignment, std::size_t len_ref,
                             std::size_t len_hyp);

}  // namespace htreval
