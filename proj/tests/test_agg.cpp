#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "htreval/agg.hpp"

using namespace htreval;

namespace {

PageTranscript one_line(std::string id, std::string_view text) {
  return PageTranscript{std::move(id), {make_words(text)}};
}

}  // namespace

TEST_CASE("page report on the fourth worked example") {
  const PageReport r = evaluate_page(one_line("xy", fixtures::kX), one_line("xy", fixtures::kY));
  CHECK(r.ref_words == 14);
  CHECK(r.hyp_words == 13);
  CHECK(r.ref_chars == 62);
  CHECK(r.wer == Ratio{12, 14});
  CHECK(r.bwer == Ratio{1, 14});
  CHECK(r.beta_wer == Ratio{1, 14});
  CHECK(r.hwer == Ratio{1, 14});
  CHECK(r.hcer == Ratio{5, 62});
  CHECK(r.nsfd == Ratio{71, 98});
  CHECK(r.footrule == 71);
  CHECK(r.delta_wer == Ratio{11, 14});
  CHECK(r.delta_wer_h == Ratio{11, 14});
  CHECK(r.bag_distance == 1);
  CHECK(r.dummy_pairs == 1);
  CHECK(r.length_gap == 1);
  CHECK(r.seconds.hwer >= 0.0);
}

TEST_CASE("two-column page merged line by line") {
  const PageReport r = evaluate_page(fixtures::two_column_reference(), fixtures::two_column_hypothesis());
  CHECK(r.ref_words == 30);
  CHECK(r.wer == Ratio{21, 30});
  CHECK(r.wer_counts == EditCounts{4, 13, 4, 13});
  CHECK(r.bwer == Ratio{0, 30});
  CHECK(r.hwer == Ratio{0, 30});
  CHECK(r.delta_wer == Ratio{21, 30});
  CHECK(r.nsfd.num > 0);
}

TEST_CASE("identical pages score zero everywhere") {
  const PageTranscript p = make_page("p", {"one two", "three four five"});
  const PageReport r = evaluate_page(p, p);
  CHECK(r.wer.num == 0);
  CHECK(r.cer.num == 0);
  CHECK(r.bwer.num == 0);
  CHECK(r.hwer.num == 0);
  CHECK(r.hcer.num == 0);
  CHECK(r.nsfd.num == 0);
}

TEST_CASE("empty reference page is an error naming the page") {
  try {
    evaluate_page(make_page("blank", {""}), make_page("blank", {"x"}));
    FAIL("expected an exception");
  } catch (const UndefinedReferenceError& e) {
    CHECK(std::string(e.what()).find("blank") != std::string::npos);
  }
}

TEST_CASE("micro averages sum numerators over summed reference sizes") {
  std::vector<PageReport> pages;
  pages.push_back(evaluate_page(one_line("a", "a b c d"), one_line("a", "a b c x")));
  pages.push_back(evaluate_page(one_line("b", "p q"), one_line("b", "q p")));
  const CorpusReport c = aggregate(pages);
  CHECK(c.ref_words == 6);
  CHECK(c.wer == Ratio{1 + 2, 6});
  CHECK(c.bwer == Ratio{1, 6});
  CHECK(c.hwer == Ratio{1, 6});
  CHECK(c.delta_wer == Ratio{2, 6});
  CHECK(c.wer_counts.errors() == 3);
  CHECK(c.cer.den == 7 + 3);
  // 4/6 * 0 + 2/6 * (2 / floor(4/2)).
  CHECK(c.nsfd == doctest::Approx(2.0 / 6.0));
  REQUIRE(c.pages.size() == 2);
  CHECK(c.pages[0].page_id == "a");
}

TEST_CASE("aggregate rejects an empty list") {
  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}
