// Per-page evaluation and corpus-level micro-averaging.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "htreval/assign.hpp"
#include "htreval/core.hpp"

namespace htreval {

/// Wall time per metric in seconds, monotonic clock.
struct MetricTimings {
  double wer = 0.0;
  double cer = 0.0;
  double bwer = 0.0;
  double hwer = 0.0;
  double hcer = 0.0;
  double nsfd = 0.0;
};

struct PageReport {
  std::string page_id;
  std::int64_t ref_words = 0;
  std::int64_t hyp_words = 0;
  std::int64_t ref_chars = 0;
  double gamma = kDefaultGamma;

  Ratio wer, cer, bwer, beta_wer, hwer, hcer, nsfd;
  /// wer - bwer and wer - hwer; may be negative.
  Ratio delta_wer, delta_wer_h;

  EditCounts wer_counts;   // word edit operations of the concatenated pages
  EditCounts bwer_counts;  // derived bag-of-words operations
  EditCounts cer_counts;
  EditCounts hcer_counts;
  std::int64_t bag_distance = 0;  // B
  std::int64_t dummy_pairs = 0;   // D
  std::int64_t length_gap = 0;    // b
  std::int64_t footrule = 0;      // NSFD numerator

  MetricTimings seconds;
};

struct CorpusReport {
  std::vector<PageReport> pages;
  std::int64_t ref_words = 0;
  std::int64_t hyp_words = 0;
  std::int64_t ref_chars = 0;

  /// Micro averages: summed numerators over summed reference sizes.
  Ratio wer, cer, bwer, beta_wer, hwer, hcer, delta_wer, delta_wer_h;
  /// Page NSFD weighted by each page's share of reference words.
  double nsfd = 0.0;

  EditCounts wer_counts, bwer_counts, cer_counts, hcer_counts;
};

/// Every metric on the flattened pages. NSFD uses the renumbered hWER
/// alignment. Throws UndefinedReferenceError naming the page when the
/// reference is empty.
PageReport evaluate_page(const PageTranscript& ref, const PageTranscript& hyp,
                         double gamma = kDefaultGamma);

/// Throws std::invalid_argument for an empty list. Page order is kept.
CorpusReport aggregate(std::vector<PageReport> reports);

}  // namespace htreval
