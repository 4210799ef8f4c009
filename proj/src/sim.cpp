#include "htreval/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace htreval {

// --- Rng --------------------------------------------------------------------

namespace {

std::mt19937_64 seeded_engine(std::initializer_list<std::uint32_t> words) {
  std::seed_seq seq(words);
  return std::mt19937_64(seq);
}

std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xFFFFFFFFu); }
std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng::Rng(std::uint64_t seed) : engine_(seeded_engine({lo32(seed), hi32(seed)})) {}

Rng::Rng(std::uint64_t seed, std::string_view stream)
    : engine_(seeded_engine({lo32(seed), hi32(seed), lo32(fnv1a64(stream)), hi32(fnv1a64(stream))})) {}

std::size_t Rng::index(std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = next();
  while (x < threshold) x = next();
  return static_cast<std::size_t>(x % bound);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

// --- config -----------------------------------------------------------------

std::string_view to_string(DistortionMode mode) noexcept {
  switch (mode) {
    case DistortionMode::kCharWordLevel: return "char-word";
    case DistortionMode::kCharLineLevel: return "char-line";
    case DistortionMode::kLineSwap: return "swap";
    case DistortionMode::kLineSplit: return "split";
  }
  return "unknown";
}

DistortionMode parse_distortion_mode(std::string_view name) {
  for (auto m : {DistortionMode::kCharWordLevel, DistortionMode::kCharLineLevel,
                 DistortionMode::kLineSwap, DistortionMode::kLineSplit}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown distortion mode '" + std::string(name) +
                    "' (expected char-word, char-line, swap or split)");
}

void DistortionConfig::validate() const {
  const double sum = op_mix.sub + op_mix.ins + op_mix.del;
  if (op_mix.sub < 0 || op_mix.ins < 0 || op_mix.del < 0 || std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("edit proportions must be non-negative and sum to 1");
  }
  if (tcer_step < 0) throw ConfigError("tCER step must be non-negative");
  if (whitespace_share < 0 || whitespace_share > 1) {
    throw ConfigError("whitespace share must lie in [0, 1]");
  }
  if (char_split_prob < 0 || char_split_prob > 1) {
    throw ConfigError("in-word split probability must lie in [0, 1]");
  }
  if (mode == DistortionMode::kLineSwap) {
    if (range_min < 1) throw ConfigError("swap distance must be at least 1");
    if (range_min > range_max) throw ConfigError("swap range must satisfy R' <= R");
  }
}

std::size_t PageManifest::in_word_splits() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      splits.begin(), splits.end(), [](const LineSplitRecord& s) { return s.in_word; }));
}

// --- character distortion -----------------------------------------------------

namespace {

std::vector<char32_t> page_alphabet(const PageTranscript& page) {
  std::set<char32_t> chars;
  for (const auto& line : page.lines) {
    for (const auto& w : line) chars.insert(w.chars().begin(), w.chars().end());
  }
  if (chars.empty()) {
    for (char32_t c = U'a'; c <= U'z'; ++c) chars.insert(c);
  }
  return {chars.begin(), chars.end()};
}

char pick_op(const OpMix& mix, Rng& rng) {
  const double u = rng.uniform();
  if (u < mix.sub) return 'S';
  if (u < mix.sub + mix.ins) return 'I';
  return 'D';
}

char32_t pick_letter_other_than(char32_t c, const std::vector<char32_t>& alphabet, Rng& rng) {
  const auto it = std::find(alphabet.begin(), alphabet.end(), c);
  if (it == alphabet.end()) return alphabet[rng.index(alphabet.size())];
  if (alphabet.size() == 1) return c == U'a' ? U'b' : U'a';
  std::size_t k = rng.index(alphabet.size() - 1);
  if (k >= static_cast<std::size_t>(it - alphabet.begin())) ++k;
  return alphabet[k];
}

Line words_of(const std::u32string& text) {
  Line out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_unicode_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_unicode_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

PageTranscript distort_chars(const PageTranscript& page, const DistortionConfig& cfg, Rng& rng,
                             PageManifest* manifest) {
  if (cfg.mode != DistortionMode::kCharWordLevel && cfg.mode != DistortionMode::kCharLineLevel) {
    throw ConfigError("distort_chars requires a character distortion mode");
  }
  cfg.validate();
  if (cfg.tcer_step == 0) return page;

  const bool word_mode = cfg.mode == DistortionMode::kCharWordLevel;
  const std::vector<char32_t> alphabet = page_alphabet(page);

  // Scale the per-character probability so the expected number of edits is
  // target_cer() times the page character count, spaces included.
  std::size_t editable = 0;
  for (const auto& line : page.lines) {
    editable += word_mode ? joined_length(line) - (line.empty() ? 0 : line.size() - 1)
                          : joined_length(line);
  }
  if (editable == 0) return page;
  const double p = std::min(
      1.0, cfg.target_cer() * static_cast<double>(page.char_count()) / static_cast<double>(editable));

  PageTranscript out;
  out.page_id = page.page_id;
  out.lines.reserve(page.lines.size());
  for (std::size_t l = 0; l < page.lines.size(); ++l) {
    const std::u32string src = join_words(page.lines[l]);
    std::u32string dst;
    dst.reserve(src.size() + 8);
    std::size_t emitted_in_word = 0;
    auto record = [&](std::size_t offset, char op, std::u32string before, std::u32string after) {
      if (manifest) {
        manifest->char_edits.push_back(
            {l, offset, op, encode_utf8(before), encode_utf8(after)});
      }
    };
    for (std::size_t i = 0; i < src.size(); ++i) {
      const char32_t c = src[i];
      const bool space = c == U' ';
      if (space) emitted_in_word = 0;
      if ((word_mode && space) || !rng.bernoulli(p)) {
        dst.push_back(c);
        if (!space) ++emitted_in_word;
        continue;
      }
      char op = pick_op(cfg.op_mix, rng);
      if (op == 'D' && word_mode) {
        std::size_t rest = 0;
        while (i + 1 + rest < src.size() && src[i + 1 + rest] != U' ') ++rest;
        if (emitted_in_word + rest == 0) op = 'S';
      }
      switch (op) {
        case 'S': {
          char32_t r;
          if (!word_mode && !space && rng.bernoulli(cfg.whitespace_share)) {
            r = U' ';
          } else {
            r = pick_letter_other_than(c, alphabet, rng);
          }
          dst.push_back(r);
          if (r != U' ') ++emitted_in_word;
          record(i, 'S', {c}, {r});
          break;
        }
        case 'I': {
          char32_t r;
          if (!word_mode && rng.bernoulli(cfg.whitespace_share)) {
            r = U' ';
          } else {
            r = alphabet[rng.index(alphabet.size())];
          }
          dst.push_back(r);
          dst.push_back(c);
          if (r != U' ') ++emitted_in_word;
          if (!space) ++emitted_in_word;
          record(i, 'I', {}, {r});
          break;
        }
        default:
          record(i, 'D', {c}, {});
          break;
      }
    }
    out.lines.push_back(words_of(dst));
  }
  return out;
}

// --- line swaps ----------------------------------------------------------------

PageTranscript swap_lines(const PageTranscript& page, std::size_t swaps, std::size_t range_min,
                          std::size_t range_max, Rng& rng, PageManifest* manifest) {
  if (range_min < 1 || range_min > range_max) {
    throw ConfigError("swap range must satisfy 1 <= R' <= R");
  }
  PageTranscript out = page;
  const std::size_t m = out.lines.size();
  std::vector<char> swapped(m, 0);

  auto candidates_at = [&](std::size_t r) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i + r < m; ++i) {
      if (!swapped[i] && !swapped[i + r]) starts.push_back(i);
    }
    return starts;
  };

  for (std::size_t s = 0; s < swaps; ++s) {
    std::vector<std::size_t> feasible;
    for (std::size_t r = range_min; r <= range_max && r < m; ++r) {
      if (!candidates_at(r).empty()) feasible.push_back(r);
    }
    if (feasible.empty()) break;
    const std::size_t r = feasible[rng.index(feasible.size())];
    const auto starts = candidates_at(r);
    const std::size_t i = starts[rng.index(starts.size())];
    std::swap(out.lines[i], out.lines[i + r]);
    swapped[i] = swapped[i + r] = 1;
    if (manifest) manifest->swaps.push_back({i, i + r});
  }
  return out;
}

// --- line splits ---------------------------------------------------------------

namespace {

std::size_t in_word_positions(const Line& line) {
  std::size_t n = 0;
  for (const auto& w : line) n += w.length() - 1;
  return n;
}

}  // namespace

PageTranscript split_lines(const PageTranscript& page, std::size_t splits,
                           double char_split_prob, Rng& rng, PageManifest* manifest) {
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < page.lines.size(); ++i) {
    if (page.lines[i].size() >= 2 || in_word_positions(page.lines[i]) > 0) candidates.push_back(i);
  }
  const std::size_t k = std::min(splits, candidates.size());
  // Partial Fisher-Yates draw of k distinct lines.
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(candidates[i], candidates[i + rng.index(candidates.size() - i)]);
  }
  std::vector<std::size_t> chosen(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k));
  // Descending order keeps the positions of unprocessed lines valid.
  std::sort(chosen.rbegin(), chosen.rend());

  PageTranscript out = page;
  std::vector<LineSplitRecord> records;
  for (std::size_t li : chosen) {
    const Line line = out.lines[li];
    LineSplitRecord rec;
    rec.line = li;

    const bool can_word = line.size() >= 2;
    const std::size_t inner = in_word_positions(line);
    rec.in_word = inner > 0 && (!can_word || rng.bernoulli(char_split_prob));

    Line prefix, suffix;
    if (rec.in_word) {
      std::size_t pos = rng.index(inner);
      std::size_t w = 0;
      while (pos >= line[w].length() - 1) {
        pos -= line[w].length() - 1;
        ++w;
      }
      const std::u32string& chars = line[w].chars();
      rec.word = w;
      rec.char_offset = pos + 1;
      prefix.assign(line.begin(), line.begin() + static_cast<std::ptrdiff_t>(w));
      prefix.emplace_back(chars.substr(0, pos + 1));
      suffix.emplace_back(chars.substr(pos + 1));
      suffix.insert(suffix.end(), line.begin() + static_cast<std::ptrdiff_t>(w) + 1, line.end());
    } else {
      const std::size_t gap = rng.between(1, line.size() - 1);
      rec.word = gap;
      prefix.assign(line.begin(), line.begin() + static_cast<std::ptrdiff_t>(gap));
      suffix.assign(line.begin() + static_cast<std::ptrdiff_t>(gap), line.end());
    }

    rec.relocation = static_cast<int>(rng.between(1, 3));
    const bool has_next = li + 1 < out.lines.size();
    rec.at_page_end = rec.relocation != 1 && !has_next;
    const auto after_next = out.lines.begin() + static_cast<std::ptrdiff_t>(has_next ? li + 2 : li + 1);
    switch (rec.relocation) {
      case 1:
        out.lines[li] = std::move(suffix);
        out.lines.insert(out.lines.begin() + static_cast<std::ptrdiff_t>(li) + 1, std::move(prefix));
        break;
      case 2:
        out.lines[li] = std::move(prefix);
        out.lines.insert(after_next, std::move(suffix));
        break;
      default:
        out.lines[li] = std::move(suffix);
        out.lines.insert(after_next, std::move(prefix));
        break;
    }
    records.push_back(rec);
  }
  if (manifest) {
    std::reverse(records.begin(), records.end());
    manifest->splits.insert(manifest->splits.end(), records.begin(), records.end());
  }
  return out;
}

PageTranscript distort_page(const PageTranscript& page, const DistortionConfig& cfg,
                            PageManifest* manifest) {
  cfg.validate();
  Rng rng(cfg.seed, page.page_id);
  if (manifest) manifest->page_id = page.page_id;
  switch (cfg.mode) {
    case DistortionMode::kCharWordLevel:
    case DistortionMode::kCharLineLevel:
      return distort_chars(page, cfg, rng, manifest);
    case DistortionMode::kLineSwap:
      return swap_lines(page, cfg.count, cfg.range_min, cfg.range_max, rng, manifest);
    case DistortionMode::kLineSplit:
      return split_lines(page, cfg.count, cfg.char_split_prob, rng, manifest);
  }
  return page;
}

// --- synthetic corpus ----------------------------------------------------------

std::vector<PageTranscript> synthetic_corpus(std::size_t pages, std::size_t lines_per_page,
                                             std::size_t words_per_line, std::uint64_t seed) {
  static constexpr std::string_view kFunctionWords[] = {
      "the", "of", "and", "to", "a", "in", "that", "is", "be", "it",
      "for", "as", "was", "with", "by", "not", "which", "this", "or", "on"};
  static constexpr std::string_view kOnsets[] = {"b", "c", "d", "f", "g", "h", "l", "m", "n",
                                                 "p", "r", "s", "t", "v", "w", "st", "pr", "th"};
  static constexpr std::string_view kVowels[] = {"a", "e", "i", "o", "u", "ea", "ou"};
  static constexpr std::string_view kCodas[] = {"", "", "n", "r", "s", "t", "l", "nd"};

  Rng rng(seed, "synthetic-vocabulary");
  std::vector<std::string> vocab(std::begin(kFunctionWords), std::end(kFunctionWords));
  std::set<std::string> seen(vocab.begin(), vocab.end());
  while (vocab.size() < 800) {
    std::string w;
    const std::size_t syllables = rng.between(1, 3);
    for (std::size_t s = 0; s < syllables; ++s) {
      w += kOnsets[rng.index(std::size(kOnsets))];
      w += kVowels[rng.index(std::size(kVowels))];
      w += kCodas[rng.index(std::size(kCodas))];
    }
    if (seen.insert(w).second) vocab.push_back(w);
  }
  // Zipf-like cumulative weights 1/(rank+1).
  std::vector<double> cdf(vocab.size());
  double acc = 0.0;
  for (std::size_t r = 0; r < vocab.size(); ++r) cdf[r] = (acc += 1.0 / static_cast<double>(r + 1));

  std::vector<PageTranscript> corpus;
  corpus.reserve(pages);
  for (std::size_t p = 0; p < pages; ++p) {
    PageTranscript page;
    char id[32];
    std::snprintf(id, sizeof id, "page_%03zu", p + 1);
    page.page_id = id;
    const std::size_t lines =
        rng.between(lines_per_page > 2 ? lines_per_page - 2 : 1, lines_per_page + 2);
    for (std::size_t l = 0; l < lines; ++l) {
      Line line;
      const std::size_t words =
          rng.between(words_per_line > 2 ? words_per_line - 2 : 1, words_per_line + 2);
      for (std::size_t w = 0; w < words; ++w) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t r = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()),
                                                    vocab.size() - 1);
        line.emplace_back(std::string_view(vocab[r]));
      }
      page.lines.push_back(std::move(line));
    }
    corpus.push_back(std::move(page));
  }
  return corpus;
}

// --- predictors ------------------------------------------------------------------

namespace {

double half_square_floor(std::size_t m) {
  if (m < 2) throw ConfigError("predictors require at least two lines per page");
  return static_cast<double>((m * m) / 2);
}

}  // namespace

double predict_nsfd_swaps(std::size_t swaps, std::size_t range_min, std::size_t range_max,
                          std::span<const std::size_t> line_counts) {
  if (line_counts.empty()) throw ConfigError("predictor needs at least one page");
  double sum = 0.0;
  for (std::size_t m : line_counts) sum += 1.0 / half_square_floor(m);
  return predict_nsfd_swaps(swaps, range_min, range_max, line_counts.size(), sum);
}

double predict_nsfd_swaps(std::size_t swaps, std::size_t range_min, std::size_t range_max,
                          std::size_t pages, double inverse_norm_sum) {
  if (pages == 0) throw ConfigError("predictor needs at least one page");
  return static_cast<double>(swaps) * static_cast<double>(range_min + range_max) /
         static_cast<double>(pages) * inverse_norm_sum;
}

double predict_nsfd_splits(std::size_t splits, std::span<const std::size_t> line_counts,
                           std::span<const std::size_t> word_counts) {
  if (line_counts.empty() || line_counts.size() != word_counts.size()) {
    throw ConfigError("predictor needs matching, non-empty line and word counts");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < line_counts.size(); ++k) {
    sum += (static_cast<double>(word_counts[k]) / static_cast<double>(line_counts[k])) /
           half_square_floor(line_counts[k]);
  }
  return predict_nsfd_splits(splits, line_counts.size(), sum);
}

double predict_nsfd_splits(std::size_t splits, std::size_t pages, double weighted_norm_sum) {
  if (pages == 0) throw ConfigError("predictor needs at least one page");
  return 7.0 / 6.0 * static_cast<double>(splits) / static_cast<double>(pages) * weighted_norm_sum;
}

double predict_bwer_increase_splits(std::size_t splits, std::size_t pages,
                                    std::size_t total_words) {
  return 2.0 * static_cast<double>(splits) * (static_cast<double>(pages) / 4.0) /
         static_cast<double>(total_words);
}

double predict_bwer_increase(std::size_t in_word_splits, std::size_t total_words) {
  return 2.0 * static_cast<double>(in_word_splits) / static_cast<double>(total_words);
}

double predict_twer(int step, double avg_word_len) {
  if (step < 0) throw ConfigError("tCER step must be non-negative");
  return avg_word_len * kTcerPerStep * step;
}

}  // namespace htreval
