#include "htreval/agg.hpp"

#include <chrono>
#include <stdexcept>

#include "htreval/bow.hpp"
#include "htreval/editdist.hpp"
#include "htreval/ro.hpp"

namespace htreval {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

PageReport evaluate_page(const PageTranscript& ref, const PageTranscript& hyp, double gamma) {
  const WordSequence x = flatten(ref);
  const WordSequence y = flatten(hyp);
  if (x.empty()) throw UndefinedReferenceError("page '" + ref.page_id + "': empty reference");

  PageReport r;
  r.page_id = ref.page_id;
  r.ref_words = static_cast<std::int64_t>(x.size());
  r.hyp_words = static_cast<std::int64_t>(y.size());
  r.ref_chars = static_cast<std::int64_t>(joined_length(x));
  r.gamma = gamma;

  auto t = Clock::now();
  const EditResult ed = edit_distance(x, y);
  r.wer = {ed.distance, r.ref_words};
  r.wer_counts = ed.counts;
  r.seconds.wer = seconds_since(t);

  t = Clock::now();
  const CharEditResult ced = char_edit_distance(x, y);
  r.cer = {ced.distance, r.ref_chars};
  r.cer_counts = ced.counts;
  r.seconds.cer = seconds_since(t);

  t = Clock::now();
  const BowResult bow = bwer(x, y);
  r.bwer = bow.rate;
  r.bwer_counts = bow.counts;
  r.bag_distance = bow.bag_distance;
  r.beta_wer = {bow.bag_distance, r.ref_words};
  r.seconds.bwer = seconds_since(t);

  t = Clock::now();
  const HwerResult hw = hwer(x, y, gamma);
  r.hwer = hw.rate;
  r.dummy_pairs = hw.dummy_pairs;
  r.length_gap = hw.length_gap;
  r.seconds.hwer = seconds_since(t);

  t = Clock::now();
  const CharEditResult hc = hcer_counts(x, y, hw.alignment);
  r.hcer = {hc.distance, r.ref_chars};
  r.hcer_counts = hc.counts;
  r.seconds.hcer = seconds_since(t);

  t = Clock::now();
  const Alignment renumbered = renumber(hw.alignment, x.size(), y.size());
  r.nsfd = nsfd(renumbered, x.size(), y.size());
  r.footrule = r.nsfd.num;
  r.seconds.nsfd = seconds_since(t);

  r.delta_wer = {r.wer.num - r.bwer.num, r.ref_words};
  r.delta_wer_h = {r.wer.num - r.hwer.num, r.ref_words};
  return r;
}

CorpusReport aggregate(std::vector<PageReport> reports) {
  if (reports.empty()) throw std::invalid_argument("cannot aggregate an empty list of pages");
  CorpusReport c;
  std::int64_t wer = 0, cer = 0, bwer = 0, beta = 0, hwer = 0, hcer = 0;
  for (const auto& p : reports) {
    c.ref_words += p.ref_words;
    c.hyp_words += p.hyp_words;
    c.ref_chars += p.ref_chars;
    wer += p.wer.num;
    cer += p.cer.num;
    bwer += p.bwer.num;
    beta += p.beta_wer.num;
    hwer += p.hwer.num;
    hcer += p.hcer.num;
    c.wer_counts += p.wer_counts;
    c.bwer_counts += p.bwer_counts;
    c.cer_counts += p.cer_counts;
    c.hcer_counts += p.hcer_counts;
  }
  c.wer = {wer, c.ref_words};
  c.cer = {cer, c.ref_chars};
  c.bwer = {bwer, c.ref_words};
  c.beta_wer = {beta, c.ref_words};
  c.hwer = {hwer, c.ref_words};
  c.hcer = {hcer, c.ref_chars};
  c.delta_wer = {wer - bwer, c.ref_words};
  c.delta_wer_h = {wer - hwer, c.ref_words};
  for (const auto& p : reports) {
    c.nsfd += static_cast<double>(p.ref_words) / static_cast<double>(c.ref_words) * p.nsfd.value();
  }
  c.pages = std::move(reports);
  return c;
}

}  // namespace htreval
