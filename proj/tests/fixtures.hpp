// Worked-example texts shared by the unit and acceptance tests.
#pragma once

#include <string_view>
#include <vector>

#include "htreval/core.hpp"

namespace fixtures {

inline constexpr std::string_view kEx1Ref = "To be or not to be, that is the question";
inline constexpr std::string_view kEx1Hyp = "to be oh! or not to be: the question";

inline constexpr std::string_view kEx2Hyp = "The big question: to be or not to be";

inline constexpr std::string_view kX =
    "to be or not to be that is the question that needs be answered";
inline constexpr std::string_view kY =
    "the question that needs be answered is to be or not to be";
inline constexpr std::string_view kZ = "to be or not to be, that is the question to be answered";

inline constexpr std::string_view kEx3aRef = "to be or not to be, that is the question";
inline constexpr std::string_view kEx3aHyp = "to be, to not or be the is that question";

inline constexpr std::string_view kTinyRef = "xx a ba yy";
inline constexpr std::string_view kTinyHyp = "xx ac a yy";

// Two-column page with a "1." item in the right column. Lines are listed in
// reading order: left column first, then right column.
inline const std::vector<std::string_view> kTwoColumnRef = {
    "Two ways of coming",        "at the (archetypes of)", "Geometrical abstract",
    "Quantities: 1. by",         "decomposing Bodies:",    "1. The application of",
    "metaphisics to",            "mathematics.",           "2. Method of facilitating",
    "the Study of mathematics"};

// Layout analysis merged the columns line by line, so the recognized lines
// interleave fragments of the two columns.
inline const std::vector<std::vector<std::size_t>> kTwoColumnFragments = {
    {0, 5}, {1, 6}, {2, 7}, {8}, {3}, {4, 9}};

inline htreval::PageTranscript two_column_reference() {
  htreval::PageTranscript p{"two_column", {}};
  for (auto l : kTwoColumnRef) p.lines.push_back(htreval::make_words(l));
  return p;
}

inline htreval::PageTranscript two_column_hypothesis() {
  htreval::PageTranscript p{"two_column", {}};
  for (const auto& frags : kTwoColumnFragments) {
    htreval::Line line;
    for (auto f : frags) {
      for (auto& w : htreval::make_words(kTwoColumnRef[f])) line.push_back(w);
    }
    p.lines.push_back(std::move(line));
  }
  return p;
}

}  // namespace fixtures
