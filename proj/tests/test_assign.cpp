#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "htreval/assign.hpp"
#include "htreval/bow.hpp"
#include "htreval/ro.hpp"
#include "oracles.hpp"

using namespace htreval;

TEST_CASE("cost matrix layout") {
  const auto x = make_words("ab c");
  const auto y = make_words("abc");
  const CostMatrix<double> m = build_cost_matrix<double>(x, y, 1.0);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 3);
  CHECK(m(0, 0) == doctest::Approx(1.0));        // g(ab, abc), same position
  CHECK(m(1, 0) == doctest::Approx(2.0 + 0.5));  // g(c, abc) + |1-0|/2
  CHECK(m(0, 1) == doctest::Approx(1.0 + 0.5));  // deletion of "ab"
  CHECK(m(0, 2) == doctest::Approx(1.0 + 0.5));
  CHECK(m(1, 2) == doctest::Approx(0.5 + 0.5));
  CHECK(m(2, 0) == doctest::Approx(1.5 + 0.5));  // insertion of "abc"
  CHECK(m(2, 1) == doctest::Approx(0.0));
  CHECK(m(2, 2) == doctest::Approx(0.0));
}

TEST_CASE("cost matrix rejects bad inputs") {
  const auto x = make_words("a");
  CHECK_THROWS_AS(build_cost_matrix<double>(WordSequence{}, x, 1.0), UndefinedReferenceError);
  CHECK_THROWS_AS(build_cost_matrix<double>(x, x, -1.0), ConfigError);
  CHECK_THROWS_AS(hwer(WordSequence{}, x), UndefinedReferenceError);
}

TEST_CASE("solver on a known matrix") {
  Eigen::Matrix3d m;
  m << 4, 1, 3,
       2, 0, 5,
       3, 2, 2;
  const auto a = solve_assignment(m);
  CHECK(a.cost == doctest::Approx(5.0));
  CHECK(a.col_of_row == std::vector<Eigen::Index>{1, 0, 2});
}

TEST_CASE("solver works with float and integer scalars") {
  CostMatrix<float> f(2, 2);
  f << 1.5f, 0.5f, 0.25f, 3.0f;
  CHECK(solve_assignment(f).cost == doctest::Approx(0.75f));
  CostMatrix<long> l(2, 2);
  l << 7, 1, 1, 7;
  CHECK(solve_assignment(l).cost == 2);
  CHECK(solve_assignment(CostMatrix<double>(0, 0)).cost == 0.0);
  CHECK_THROWS_AS(solve_assignment(CostMatrix<double>(2, 3)), std::invalid_argument);
}

TEST_CASE("solver matches permutation brute force") {
  std::mt19937_64 eng(17);
  std::uniform_int_distribution<int> val(0, 9);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 7;
    CostMatrix<double> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = val(eng) / 2.0;
    CHECK(solve_assignment(m).cost == doctest::Approx(oracle::brute_force_assignment(m)));
  }
}

TEST_CASE("assignment cost matches partial-matching enumeration") {
  oracle::WordGen gen(23);
  for (int t = 0; t < 300; ++t) {
    const auto xs = gen.words_exact(1 + t % 5, 12);
    const auto ys = gen.words(5, 12);
    const double gamma = (t % 3) * 0.5;
    const auto r = hwer(oracle::tokens(xs), oracle::tokens(ys), gamma);
    CHECK(r.cost == doctest::Approx(oracle::best_partial_matching(xs, ys, gamma).cost));
  }
}

TEST_CASE("hWER on the fourth worked example") {
  const auto x = make_words(fixtures::kX);
  const auto y = make_words(fixtures::kY);
  const auto z = make_words(fixtures::kZ);
  for (double gamma : {0.0, 1.0}) {
    CAPTURE(gamma);
    const HwerResult ry = hwer(x, y, gamma);
    CHECK(ry.rate == Ratio{1, 14});
    CHECK(ry.dummy_pairs == 1);
    CHECK(ry.length_gap == 1);
    const HwerResult rz = hwer(x, z, gamma);
    CHECK(rz.rate == Ratio{3, 14});
    validate_alignment(rz.alignment, x.size(), z.size());
  }
  CHECK(hwer(x, y, 0.0).cost == doctest::Approx(2.0));
  CHECK(hwer(x, z, 0.0).cost == doctest::Approx(6.5));
}

TEST_CASE("regularization picks the order-preserving tie") {
  const auto x = make_words(fixtures::kX);
  const auto z = make_words(fixtures::kZ);
  const HwerResult r = hwer(x, z, 1.0);
  CHECK(r.rate == Ratio{3, 14});
  CHECK(reading_order_distance(r.alignment, x.size(), z.size()) == Ratio{1, 98});
}

TEST_CASE("hCER with the append rule") {
  const auto x = make_words(fixtures::kX);
  const auto y = make_words(fixtures::kY);
  const auto z = make_words(fixtures::kZ);
  CHECK(hcer(x, y, hwer(x, y, 1.0).alignment) == Ratio{5, 62});
  CHECK(hcer(x, z, hwer(x, z, 1.0).alignment) == Ratio{10, 62});
}

TEST_CASE("tiny case: gamma 1 keeps the identity alignment") {
  const auto x = make_words(fixtures::kTinyRef);
  const auto y = make_words(fixtures::kTinyHyp);
  const HwerResult r = hwer(x, y, 1.0);
  CHECK(r.rate == Ratio{2, 4});
  CHECK(r.cost == doctest::Approx(2.0));
  // Unregularized, both alignments cost 2 and the rate is one of the two.
  const HwerResult r0 = hwer(x, y, 0.0);
  CHECK(r0.cost == doctest::Approx(2.0));
  CHECK((r0.rate == Ratio{1, 4} || r0.rate == Ratio{2, 4}));
  CHECK(bwer(x, y).rate.value() <= r0.rate.value());
}

TEST_CASE("equal-cost alignments resolve to the fewest word errors") {
  const auto x = make_words(fixtures::kTinyRef);
  CHECK(hwer(x, make_words(fixtures::kTinyHyp), 0.0).rate == Ratio{1, 4});
  CHECK(hwer(x, make_words("a ac xx yy"), 0.0).rate == Ratio{1, 4});
  CHECK(hwer(x, make_words("yy a xx ac"), 0.0).rate == Ratio{1, 4});
}

TEST_CASE("gamma 0 rate ignores hypothesis order") {
  oracle::WordGen gen(41);
  for (int t = 0; t < 300; ++t) {
    const auto xs = gen.words_exact(1 + t % 30, 3 + t % 4);
    const auto ys = gen.words(30, 3 + t % 4);
    const auto a = hwer(oracle::tokens(xs), oracle::tokens(ys), 0.0);
    const auto b = hwer(oracle::tokens(xs), oracle::tokens(gen.shuffled(ys)), 0.0);
    CHECK(a.rate == b.rate);
    CHECK(a.cost == doctest::Approx(b.cost));
  }
}

TEST_CASE("reordered hypothesis") {
  const auto x = make_words("a b c");
  const auto y = make_words("c x a");
  Alignment al{{{0, 2}, {2, 0}, {1, kDummy}, {kDummy, 1}}};
  const auto re = reorder_hypothesis(x, y, al);
  CHECK(oracle::strings(re) == oracle::Words{"a", "c", "x"});
  CHECK_THROWS_AS(reorder_hypothesis(x, y, Alignment{{{0, 2}}}), StructuralError);
  CHECK_THROWS_AS(validate_alignment(Alignment{{{0, 0}, {0, 1}, {1, kDummy}, {2, kDummy}}}, 3, 2),
                  StructuralError);
  CHECK_THROWS_AS(validate_alignment(Alignment{{{kDummy, kDummy}}}, 0, 0), StructuralError);
}

TEST_CASE("empty hypothesis deletes everything") {
  const auto x = make_words("a bb c");
  const HwerResult r = hwer(x, WordSequence{}, 1.0);
  CHECK(r.rate == Ratio{3, 3});
  CHECK(r.alignment.deletion_count() == 3);
  CHECK(hcer(x, WordSequence{}, r.alignment) == Ratio{6, 6});
}
