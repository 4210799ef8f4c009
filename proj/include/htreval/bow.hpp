// Order-independent word error measures over multisets of words.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>

#include "htreval/core.hpp"

namespace htreval {

/// Occurrence counts of word strings. Keys compare exactly.
class WordBag {
 public:
  WordBag() = default;
  explicit WordBag(std::span<const WordToken> words);

  std::int64_t count(const std::string& word) const;
  std::int64_t total() const noexcept { return total_; }
  const std::unordered_map<std::string, std::int64_t>& counts() const noexcept { return counts_; }

 private:
  std::unordered_map<std::string, std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// Sum over the joint vocabulary of |f_X(v) - f_Y(v)|.
std::int64_t bag_distance(std::span<const WordToken> x, std::span<const WordToken> y);

/// Naive bag-of-words rate: bag distance over |X|.
Ratio beta_wer(std::span<const WordToken> x, std::span<const WordToken> y);

struct BowResult {
  Ratio rate;
  /// Derived counts: (B-b)/2 substitutions, b unavoidable deletions when the
  /// reference is longer, insertions otherwise.
  EditCounts counts;
  std::int64_t bag_distance = 0;  // B
  std::int64_t length_gap = 0;    // b = ||X| - |Y||
};

/// Bag-of-words WER: (b + B) / 2|X|. Throws UndefinedReferenceError for an
/// empty reference.
BowResult bwer(std::span<const WordToken> x, std::span<const WordToken> y);

/// Bag-of-words accuracy, sum of min(f_X, f_Y) over |X|. Ignores extra
/// hypothesis words; kept for comparison only.
Ratio bwac(std::span<const WordToken> x, std::span<const WordToken> y);

}  // namespace htreval
