#include "htreval/editdist.hpp"

#include <string>

namespace htreval {

std::int64_t char_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Called O(N^2) times when building cost matrices; reuse the row buffer.
  thread_local std::vector<std::int64_t> row;
  row.resize(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::int64_t diag = row[0];
    row[0] = static_cast<std::int64_t>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::int64_t up = row[j];
      row[j] = std::min({diag + (a[i - 1] == b[j - 1] ? 0 : 1), up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[b.size()];
}

EditResult edit_distance(std::span<const WordToken> x, std::span<const WordToken> y) {
  return levenshtein_trace<WordToken>(x, y);
}

CharEditResult char_edit_distance(std::span<const WordToken> x,
                                  std::span<const WordToken> y) {
  const std::u32string a = join_words(x);
  const std::u32string b = join_words(y);
  return levenshtein_counts<char32_t>(a, b);
}

Ratio wer(std::span<const WordToken> x, std::span<const WordToken> y) {
  if (x.empty()) throw UndefinedReferenceError("WER undefined for an empty reference");
  return {edit_distance(x, y).distance, static_cast<std::int64_t>(x.size())};
}

Ratio cer(std::span<const WordToken> x, std::span<const WordToken> y) {
  if (x.empty()) throw UndefinedReferenceError("CER undefined for an empty reference");
  return {char_edit_distance(x, y).distance, static_cast<std::int64_t>(joined_length(x))};
}

PageRate page_wer_by_lines(const PageTranscript& ref, const PageTranscript& hyp) {
  if (ref.line_count() != hyp.line_count()) {
    throw StructuralError("page '" + ref.page_id + "': reference has " +
                          std::to_string(ref.line_count()) + " lines, hypothesis has " +
                          std::to_string(hyp.line_count()) +
                          "; use the concatenated page WER instead");
  }
  const std::size_t n = ref.word_count();
  if (n == 0) throw UndefinedReferenceError("page '" + ref.page_id + "': empty reference");
  PageRate out;
  for (std::size_t l = 0; l < ref.line_count(); ++l) {
    out.counts += levenshtein_counts<WordToken>(ref.lines[l], hyp.lines[l]).counts;
  }
  out.rate = {out.counts.errors(), static_cast<std::int64_t>(n)};
  return out;
}

PageConcatResult page_wer_concat(const PageTranscript& ref, const PageTranscript& hyp) {
  const WordSequence x = flatten(ref);
  const WordSequence y = flatten(hyp);
  if (x.empty()) throw UndefinedReferenceError("page '" + ref.page_id + "': empty reference");
  EditResult r = edit_distance(x, y);
  return {{r.distance, static_cast<std::int64_t>(x.size())}, r.counts, std::move(r.trace)};
}

PageRate page_cer_concat(const PageTranscript& ref, const PageTranscript& hyp) {
  const WordSequence x = flatten(ref);
  const WordSequence y = flatten(hyp);
  if (x.empty()) throw UndefinedReferenceError("page '" + ref.page_id + "': empty reference");
  const CharEditResult r = char_edit_distance(x, y);
  return {{r.distance, static_cast<std::int64_t>(joined_length(x))}, r.counts};
}

}  // namespace htreval
