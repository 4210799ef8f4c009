// Controlled distortion of page transcripts (character noise, line swaps,
// line splits) and closed-form predictions of their effect on the metrics.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "htreval/core.hpp"

namespace htreval {

/// Identifier written to manifests so experiment runs can be traced to a
/// generator. Draws use the raw 64-bit engine output only, never the
/// implementation-defined standard distributions.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+seed_seq(fnv1a64)";

class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Independent stream for a named unit (page id), stable across corpora.
  Rng(std::uint64_t seed, std::string_view stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n). n must be positive.
  std::size_t index(std::size_t n);
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + index(hi - lo + 1); }
  /// Uniform in [0, 1) with 53 bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t fnv1a64(std::string_view s) noexcept;

enum class DistortionMode { kCharWordLevel, kCharLineLevel, kLineSwap, kLineSplit };

std::string_view to_string(DistortionMode mode) noexcept;
/// Accepts "char-word", "char-line", "swap", "split".
DistortionMode parse_distortion_mode(std::string_view name);

/// Shares of character edit types. Defaults are placeholders, not measured
/// values.
struct OpMix {
  double sub = 0.60;
  double ins = 0.15;
  double del = 0.25;
};

/// Target character error rate for step n: 3.25 n percent.
inline constexpr double kTcerPerStep = 0.0325;

struct DistortionConfig {
  std::uint64_t seed = 0;
  DistortionMode mode = DistortionMode::kCharWordLevel;
  int tcer_step = 0;
  OpMix op_mix;
  /// Share of inserted or substituted characters that are spaces
  /// (line-level mode only). Placeholder default.
  double whitespace_share = 0.10;
  /// S: number of line swaps or line splits.
  std::size_t count = 0;
  /// Swap distance range [range_min, range_max] in lines.
  std::size_t range_min = 1;
  std::size_t range_max = 1;
  /// Probability that a split falls inside a word (odds 1:4).
  double char_split_prob = 0.2;

  double target_cer() const noexcept { return kTcerPerStep * tcer_step; }
  /// Throws ConfigError on inconsistent parameters.
  void validate() const;
};

// --- manifest -------------------------------------------------------------

struct CharEditRecord {
  std::size_t line = 0;
  /// Scalar offset in the original line text (words joined by one space).
  std::size_t offset = 0;
  char op = 'S';  // 'S', 'I' or 'D'
  std::string before;
  std::string after;
};

struct LineSwapRecord {
  std::size_t first = 0;
  std::size_t second = 0;
};

struct LineSplitRecord {
  std::size_t line = 0;
  bool in_word = false;
  /// Word index where the suffix starts; for in-word splits the split word.
  std::size_t word = 0;
  /// Scalar offset inside the split word (in-word splits only).
  std::size_t char_offset = 0;
  /// 1: suffix before prefix, 2: suffix after the next line, 3: prefix
  /// after the next line.
  int relocation = 1;
  /// The selected line had no next line; the fragment went to the page end.
  bool at_page_end = false;
};

struct PageManifest {
  std::string page_id;
  std::vector<CharEditRecord> char_edits;
  std::vector<LineSwapRecord> swaps;
  std::vector<LineSplitRecord> splits;

  std::size_t in_word_splits() const noexcept;
};

// --- generators -----------------------------------------------------------

/// Character insertions, deletions and substitutions at rate target_cer()
/// of the page character count. Word-level mode never touches whitespace
/// and never empties a word, so the word count is unchanged; line-level mode
/// may insert, delete or substitute spaces and the lines are re-tokenized.
PageTranscript distort_chars(const PageTranscript& page, const DistortionConfig& cfg, Rng& rng,
                             PageManifest* manifest = nullptr);

/// Up to `swaps` swaps of disjoint line pairs at distances drawn uniformly
/// among the feasible distances in [range_min, range_max]. Lines already
/// swapped are not swapped again; stops early when no pair is left.
PageTranscript swap_lines(const PageTranscript& page, std::size_t swaps, std::size_t range_min,
                          std::size_t range_max, Rng& rng, PageManifest* manifest = nullptr);

/// Splits `splits` distinct lines (clamped to the splittable lines) and
/// relocates the fragments, each of the three relocations with probability
/// 1/3. A split is in-word with probability char_split_prob.
PageTranscript split_lines(const PageTranscript& page, std::size_t splits,
                           double char_split_prob, Rng& rng, PageManifest* manifest = nullptr);

/// Dispatches on cfg.mode with the page's own random stream.
PageTranscript distort_page(const PageTranscript& page, const DistortionConfig& cfg,
                            PageManifest* manifest = nullptr);

/// Random pages of pseudo-words with a Zipf-like frequency profile and a
/// handful of very frequent function words.
std::vector<PageTranscript> synthetic_corpus(std::size_t pages, std::size_t lines_per_page,
                                             std::size_t words_per_line, std::uint64_t seed);

// --- predictors -----------------------------------------------------------

/// Expected NSFD after `swaps` line swaps per page at distances in
/// [range_min, range_max]: S (R' + R) / K * sum_k 1 / floor(M_k^2 / 2).
double predict_nsfd_swaps(std::size_t swaps, std::size_t range_min, std::size_t range_max,
                          std::span<const std::size_t> line_counts);
double predict_nsfd_swaps(std::size_t swaps, std::size_t range_min, std::size_t range_max,
                          std::size_t pages, double inverse_norm_sum);

/// Expected NSFD after `splits` line splits per page:
/// (7/6) (S / K) sum_k (N_k / M_k) / floor(M_k^2 / 2).
double predict_nsfd_splits(std::size_t splits, std::span<const std::size_t> line_counts,
                           std::span<const std::size_t> word_counts);
double predict_nsfd_splits(std::size_t splits, std::size_t pages, double weighted_norm_sum);

/// Expected bWER increase from line splits with one in-word split per four
/// splits: 2 S (K / 4) / sum_k N_k.
double predict_bwer_increase_splits(std::size_t splits, std::size_t pages,
                                    std::size_t total_words);
/// Two word errors per realized in-word split.
double predict_bwer_increase(std::size_t in_word_splits, std::size_t total_words);

/// Induced word error rate for character step n: avg_word_len * 3.25 n
/// percent, returned as a fraction.
double predict_twer(int step, double avg_word_len);

}  // namespace htreval
