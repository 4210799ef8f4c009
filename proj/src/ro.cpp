#include "htreval/ro.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

namespace htreval {

namespace {

// ranks[i] = number of matched positions before i, or kSkipped if i is not
// matched.
std::vector<std::size_t> matched_ranks(const std::vector<char>& matched) {
  std::vector<std::size_t> ranks(matched.size(), kSkipped);
  std::size_t next = 0;
  for (std::size_t i = 0; i < matched.size(); ++i) {
    if (matched[i]) ranks[i] = next++;
  }
  return ranks;
}

}  // namespace

Alignment renumber(const Alignment& alignment, std::size_t len_ref, std::size_t len_hyp) {
  std::vector<char> ref_matched(len_ref, 0), hyp_matched(len_hyp, 0);
  for (const auto& p : alignment.pairs) {
    if (p.is_real()) {
      ref_matched[p.ref] = 1;
      hyp_matched[p.hyp] = 1;
    }
  }
  const auto ref_rank = matched_ranks(ref_matched);
  const auto hyp_rank = matched_ranks(hyp_matched);

  Alignment out;
  out.pairs.reserve(alignment.pairs.size());
  for (const auto& p : alignment.pairs) {
    if (p.is_real()) {
      out.pairs.push_back({ref_rank[p.ref], hyp_rank[p.hyp]});
    } else if (p.is_deletion()) {
      out.pairs.push_back({kSkipped, kDummy});
    } else {
      out.pairs.push_back({kDummy, kSkipped});
    }
  }
  return out;
}

std::int64_t footrule_sum(const Alignment& renumbered) {
  std::int64_t sum = 0;
  for (const auto& p : renumbered.pairs) {
    if (p.is_real()) {
      sum += std::llabs(static_cast<std::int64_t>(p.ref) - static_cast<std::int64_t>(p.hyp));
    } else {
      sum += 1;
    }
  }
  return sum;
}

Ratio nsfd(const Alignment& renumbered, std::size_t len_ref, std::size_t len_hyp) {
  const auto n = static_cast<std::int64_t>(std::max(len_ref, len_hyp));
  if (n == 0) throw UndefinedReferenceError("NSFD undefined for two empty texts");
  return {footrule_sum(renumbered), std::max<std::int64_t>(1, n * n / 2)};
}

Ratio reading_order_distance(const Alignment& alignment, std::size_t len_ref,
                             std::size_t len_hyp) {
  return nsfd(renumber(alignment, len_ref, len_hyp), len_ref, len_hyp);
}

}  // namespace htreval
