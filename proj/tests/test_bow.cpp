#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "htreval/bow.hpp"
#include "htreval/editdist.hpp"
#include "oracles.hpp"

using namespace htreval;

TEST_CASE("bag distance and rates on the third worked example") {
  const auto x = make_words(fixtures::kX);
  const auto y = make_words(fixtures::kY);
  const auto z = make_words(fixtures::kZ);

  CHECK(bag_distance(x, y) == 1);
  CHECK(bag_distance(x, z) == 5);
  CHECK(beta_wer(x, y) == Ratio{1, 14});
  CHECK(beta_wer(x, z) == Ratio{5, 14});

  const BowResult by = bwer(x, y);
  CHECK(by.rate == Ratio{2, 28});
  CHECK(by.length_gap == 1);
  CHECK(by.counts == EditCounts{0, 0, 1, 13});
  const BowResult bz = bwer(x, z);
  CHECK(bz.rate == Ratio{6, 28});
  CHECK(bz.counts == EditCounts{0, 2, 1, 11});
  CHECK(bz.rate.percent() == doctest::Approx(21.428571));

  CHECK(wer(x, y) == Ratio{12, 14});
  CHECK(wer(x, z) == Ratio{3, 14});
}

TEST_CASE("permuted words give zero bWER") {
  const auto x = make_words(fixtures::kEx3aRef);
  const auto y = make_words(fixtures::kEx3aHyp);
  CHECK(bwer(x, y).rate == Ratio{0, 20});
  CHECK(beta_wer(x, y) == Ratio{0, 10});
  CHECK(bwac(x, y) == Ratio{1, 1});
  CHECK(wer(x, y).num > 0);
}

TEST_CASE("tiny two-alignment case") {
  const auto x = make_words(fixtures::kTinyRef);
  const auto y = make_words(fixtures::kTinyHyp);
  CHECK(bwer(x, y).rate == Ratio{1, 4});
}

TEST_CASE("insertions when the hypothesis is longer") {
  const auto x = make_words("a b");
  const auto y = make_words("a c d e");
  const BowResult r = bwer(x, y);
  CHECK(r.bag_distance == 4);
  CHECK(r.length_gap == 2);
  CHECK(r.counts == EditCounts{2, 1, 0, 1});
  CHECK(r.rate == Ratio{3, 2});
}

TEST_CASE("bWAC ignores extra hypothesis words") {
  const auto x = make_words("a b");
  CHECK(bwac(x, make_words("a b c d e f")) == Ratio{1, 1});
  CHECK(bwac(x, make_words("b")) == Ratio{1, 2});
}

TEST_CASE("word bag counts") {
  const auto w = make_words("be or be be,");
  const WordBag bag(w);
  CHECK(bag.count("be") == 2);
  CHECK(bag.count("be,") == 1);
  CHECK(bag.count("nope") == 0);
  CHECK(bag.total() == 4);
  CHECK(bag.counts().size() == 3);
}

TEST_CASE("empty inputs") {
  const WordSequence none;
  const auto x = make_words("a b");
  CHECK_THROWS_AS(bwer(none, x), UndefinedReferenceError);
  CHECK_THROWS_AS(beta_wer(none, x), UndefinedReferenceError);
  CHECK_THROWS_AS(bwac(none, x), UndefinedReferenceError);
  CHECK(bag_distance(none, none) == 0);
  CHECK(bwer(x, none).rate == Ratio{1, 1});
  CHECK(bwer(x, none).counts == EditCounts{0, 0, 2, 0});
}

TEST_CASE("bWER numerator is the least possible multiset numerator") {
  oracle::WordGen gen(3);
  for (int t = 0; t < 1000; ++t) {
    const auto xs = gen.words_exact(1 + gen.engine()() % 20, 8);
    const auto ys = gen.words(20, 8);
    const auto x = oracle::tokens(xs);
    const auto y = oracle::tokens(ys);
    const BowResult r = bwer(x, y);
    CHECK(r.rate == Ratio{oracle::bag_numerator(xs, ys), static_cast<std::int64_t>(xs.size())});
    CHECK(r.counts.ref_length() == static_cast<std::int64_t>(xs.size()));
    CHECK(r.counts.hyp_length() == static_cast<std::int64_t>(ys.size()));
    CHECK(r.rate.value() <= wer(x, y).value() + 1e-12);
  }
}
