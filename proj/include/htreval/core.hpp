// Shared domain types: word tokens, page transcripts, edit counts,
// alignments and exact rates.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace htreval {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (invalid UTF-8, bad token).
class IngestError : public EvalError {
 public:
  IngestError(std::size_t byte_offset, const std::string& what)
      : EvalError(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// A rate normalized by the reference length was requested for an empty
/// reference.
class UndefinedReferenceError : public EvalError {
 public:
  using EvalError::EvalError;
};

/// Inputs that are individually valid but do not fit together (line-count
/// mismatch, alignment not covering the texts).
class StructuralError : public EvalError {
 public:
  using EvalError::EvalError;
};

class ConfigError : public EvalError {
 public:
  using EvalError::EvalError;
};

// ---------------------------------------------------------------------------
// UTF-8
// ---------------------------------------------------------------------------

/// Decodes UTF-8 into Unicode scalar values. Throws IngestError naming the
/// byte offset of the first invalid sequence.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view scalars);
bool is_unicode_space(char32_t c) noexcept;

// ---------------------------------------------------------------------------
// Words and pages
// ---------------------------------------------------------------------------

/// A non-empty run of non-whitespace Unicode scalar values. Equality is exact
/// (case and diacritic sensitive).
class WordToken {
 public:
  explicit WordToken(std::string_view utf8);
  explicit WordToken(std::u32string scalars);

  const std::string& text() const noexcept { return text_; }
  const std::u32string& chars() const noexcept { return chars_; }
  /// Number of Unicode scalar values.
  std::size_t length() const noexcept { return chars_.size(); }

  friend bool operator==(const WordToken& a, const WordToken& b) noexcept {
    return a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const WordToken& a,
                                          const WordToken& b) noexcept {
    return a.text_ <=> b.text_;
  }

 private:
  std::string text_;
  std::u32string chars_;
};

using WordSequence = std::vector<WordToken>;
using Line = std::vector<WordToken>;

/// Ordered lines of words for one page. Reading order is line order.
struct PageTranscript {
  std::string page_id;
  std::vector<Line> lines;

  std::size_t line_count() const noexcept { return lines.size(); }
  std::size_t word_count() const noexcept;
  /// Characters of the flattened page joined with single spaces.
  std::size_t char_count() const noexcept;

  friend bool operator==(const PageTranscript&, const PageTranscript&) = default;
};

/// Splits each physical line on runs of Unicode whitespace. Empty lines are
/// kept as empty token lists; a trailing newline terminates the last line
/// rather than opening a new one. Punctuation stays attached to words.
PageTranscript tokenize_page(std::string_view raw, std::string page_id);

/// Inverse of tokenize_page up to whitespace normalization: words joined by
/// one space, every line terminated by '\n'.
std::string serialize_page(const PageTranscript& page);

WordSequence flatten(const PageTranscript& page);

/// Builds a page from whitespace-separated lines; convenience for fixtures.
PageTranscript make_page(std::string page_id,
                         std::initializer_list<std::string_view> lines);
WordSequence make_words(std::string_view text);

/// Words joined with exactly one space between consecutive words.
std::u32string join_words(std::span<const WordToken> words);
std::size_t joined_length(std::span<const WordToken> words) noexcept;

// ---------------------------------------------------------------------------
// Edit counts, alignments, rates
// ---------------------------------------------------------------------------

struct EditCounts {
  std::int64_t ins = 0;
  std::int64_t sub = 0;
  std::int64_t del = 0;
  std::int64_t correct = 0;

  std::int64_t errors() const noexcept { return ins + sub + del; }
  std::int64_t ref_length() const noexcept { return correct + sub + del; }
  std::int64_t hyp_length() const noexcept { return correct + sub + ins; }

  EditCounts& operator+=(const EditCounts& o) noexcept {
    ins += o.ins;
    sub += o.sub;
    del += o.del;
    correct += o.correct;
    return *this;
  }
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

/// Index sentinel for the empty word (epsilon).
inline constexpr std::size_t kDummy = std::numeric_limits<std::size_t>::max();
/// Index sentinel for a position removed by renumbering ("-").
inline constexpr std::size_t kSkipped = kDummy - 1;

inline constexpr bool is_word_index(std::size_t i) noexcept {
  return i != kDummy && i != kSkipped;
}

/// Pair of 0-based word positions; either side may be kDummy.
struct AlignPair {
  std::size_t ref = kDummy;
  std::size_t hyp = kDummy;

  bool is_real() const noexcept { return is_word_index(ref) && is_word_index(hyp); }
  bool is_dummy() const noexcept { return !is_real(); }
  bool is_deletion() const noexcept { return is_word_index(ref) && hyp == kDummy; }
  bool is_insertion() const noexcept { return ref == kDummy && is_word_index(hyp); }

  friend bool operator==(const AlignPair&, const AlignPair&) = default;
  friend auto operator<=>(const AlignPair&, const AlignPair&) = default;
};

/// Sequential alignment produced by the edit distance.
struct Trace {
  std::vector<AlignPair> pairs;
};

/// Unconstrained alignment; pair order carries no meaning.
struct Alignment {
  std::vector<AlignPair> pairs;

  std::size_t dummy_count() const noexcept;
  std::size_t deletion_count() const noexcept;
  std::size_t insertion_count() const noexcept;
};

/// Exact rate num/den. Comparison is by value (cross multiplication), so
/// 1/2 == 2/4.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  double percent() const noexcept { return 100.0 * value(); }

  friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
    return a.num * b.den == b.num * a.den;
  }
};

}  // namespace htreval
