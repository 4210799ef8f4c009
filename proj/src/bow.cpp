#include "htreval/bow.hpp"

#include <algorithm>
#include <cstdlib>

namespace htreval {

WordBag::WordBag(std::span<const WordToken> words) {
  counts_.reserve(words.size());
  for (const auto& w : words) ++counts_[w.text()];
  total_ = static_cast<std::int64_t>(words.size());
}

std::int64_t WordBag::count(const std::string& word) const {
  auto it = counts_.find(word);
  return it == counts_.end() ? 0 : it->second;
}

std::int64_t bag_distance(std::span<const WordToken> x, std::span<const WordToken> y) {
  const WordBag bx(x);
  const WordBag by(y);
  std::int64_t b = 0;
  for (const auto& [word, fx] : bx.counts()) b += std::llabs(fx - by.count(word));
  for (const auto& [word, fy] : by.counts()) {
    if (bx.count(word) == 0) b += fy;
  }
  return b;
}

Ratio beta_wer(std::span<const WordToken> x, std::span<const WordToken> y) {
  if (x.empty()) throw UndefinedReferenceError("bag-of-words rate undefined for an empty reference");
  return {bag_distance(x, y), static_cast<std::int64_t>(x.size())};
}

BowResult bwer(std::span<const WordToken> x, std::span<const WordToken> y) {
  if (x.empty()) throw UndefinedReferenceError("bWER undefined for an empty reference");
  const auto nx = static_cast<std::int64_t>(x.size());
  const auto ny = static_cast<std::int64_t>(y.size());

  BowResult r;
  r.bag_distance = bag_distance(x, y);
  r.length_gap = std::llabs(nx - ny);
  // B - b is even, so the revamped distance b + (B - b)/2 is an integer.
  const std::int64_t subs = (r.bag_distance - r.length_gap) / 2;
  r.counts.sub = subs;
  if (nx > ny) {
    r.counts.del = r.length_gap;
  } else {
    r.counts.ins = r.length_gap;
  }
  r.counts.correct = nx - r.counts.del - r.counts.sub;
  r.rate = {r.length_gap + subs, nx};
  return r;
}

Ratio bwac(std::span<const WordToken> x, std::span<const WordToken> y) {
  if (x.empty()) throw UndefinedReferenceError("bWAC undefined for an empty reference");
  const WordBag bx(x);
  const WordBag by(y);
  std::int64_t common = 0;
  for (const auto& [word, fx] : bx.counts()) common += std::min(fx, by.count(word));
  return {common, static_cast<std::int64_t>(x.size())};
}

}  // namespace htreval
