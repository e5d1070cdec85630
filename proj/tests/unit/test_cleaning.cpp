#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "erdiff/cleaning.hpp"
#include "synthetic.hpp"

namespace erdiff {
namespace {

TEST(Porter, MatchesReferenceStems) {
  std::ifstream in(testing::fixture_dir() / "porter_golden.json");
  auto golden = nlohmann::json::parse(in);
  ASSERT_GT(golden.size(), 50u);
  for (auto& [word, stem] : golden.items()) EXPECT_EQ(porter_stem(word), stem.get<std::string>()) << word;
}

TEST(Porter, ClassicExamples) {
  EXPECT_EQ(porter_stem("caresses"), "caress");
  EXPECT_EQ(porter_stem("ponies"), "poni");
  EXPECT_EQ(porter_stem("relational"), "relat");
  EXPECT_EQ(porter_stem("hopping"), "hop");
  EXPECT_EQ(porter_stem("Running"), "run");
  EXPECT_EQ(porter_stem(""), "");
}

TEST(StopWords, SortedAndQueried) {
  auto words = stop_words();
  EXPECT_EQ(words.size(), 318u);
  EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
  EXPECT_TRUE(is_stop_word("the"));
  EXPECT_TRUE(is_stop_word("whereas"));
  EXPECT_FALSE(is_stop_word("matrix"));
  EXPECT_FALSE(is_stop_word("The"));
}

TEST(CleanText, DropsStopWordsAndStems) {
  EXPECT_EQ(clean_text("The Running Dogs of the City"), "run dog citi");
  EXPECT_EQ(clean_text("  USB   Cables  "), "usb cabl");
  EXPECT_EQ(clean_text(""), "");
  EXPECT_EQ(clean_text("the and of"), "");
}

}  // namespace
}  // namespace erdiff
