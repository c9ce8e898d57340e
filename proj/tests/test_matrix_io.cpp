#include <random>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pcdisc/matrix_io.hpp"

using namespace pcdisc;

namespace {

std::pair<std::size_t, std::size_t> error_at(std::string_view text, MatrixFormat fmt) {
  try {
    (void)parse_matrix(text, fmt);
  } catch (const ValidationError& e) {
    return {e.row(), e.col()};
  }
  ADD_FAILURE() << "no error for: " << text;
  return {0, 0};
}

}  // namespace

TEST(ParseCsv, ExampleMatrixWithRoundedReciprocals) {
  const auto m = parse_matrix(pcdisc::testing::kExampleCsv, MatrixFormat::csv);
  EXPECT_EQ(m, pcdisc::testing::example_matrix());
}

TEST(ParseCsv, FractionsAreExact) {
  const auto m = parse_matrix(pcdisc::testing::kRevisedCsv, MatrixFormat::csv);
  EXPECT_EQ(m, pcdisc::testing::revised_matrix());
}

TEST(ParseCsv, IdentityJudgments) {
  const auto m = parse_matrix("1,1\n1,1", MatrixFormat::csv);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m(0, 1), 1.0);
}

TEST(ParseCsv, LabelRowAndWhitespace) {
  const auto m = parse_matrix("apple, \"pear, green\"\r\n 1 , 2 \r\n0.5,1\r\n\r\n", MatrixFormat::csv);
  EXPECT_EQ(m.labels(), (std::vector<std::string>{"apple", "pear, green"}));
  EXPECT_EQ(m(0, 1), 2.0);
}

TEST(ParseCsv, ErrorsCarryCoordinates) {
  EXPECT_EQ(error_at("1,2\n0.4,1", MatrixFormat::csv), (std::pair<std::size_t, std::size_t>{2, 1}));
  EXPECT_EQ(error_at("1,2\n0.5,x", MatrixFormat::csv), (std::pair<std::size_t, std::size_t>{2, 2}));
  EXPECT_EQ(error_at("1,2,3\n0.5,1\n", MatrixFormat::csv).first, 1u);
  EXPECT_EQ(error_at("1,2\n0.5,1\n1,1\n", MatrixFormat::csv).first, 1u);
  EXPECT_EQ(error_at("1,-2\n-0.5,1", MatrixFormat::csv), (std::pair<std::size_t, std::size_t>{1, 2}));
  EXPECT_EQ(error_at("2,2\n0.5,1", MatrixFormat::csv), (std::pair<std::size_t, std::size_t>{1, 1}));
  EXPECT_EQ(error_at("1,1/0\n1,1", MatrixFormat::csv), (std::pair<std::size_t, std::size_t>{1, 2}));
  EXPECT_THROW(parse_matrix("", MatrixFormat::csv), ValidationError);
  EXPECT_THROW(parse_matrix("a,b,c\n1,1\n1,1", MatrixFormat::csv), ValidationError);
}

TEST(ParseJson, CanonicalDocument) {
  const auto m = parse_matrix(
      R"({"labels": ["a", "b", "c"], "matrix": [[1, 2, "1/3"], [0.5, 1, 1], [3, 1, 1]]})", MatrixFormat::json);
  EXPECT_EQ(m.labels(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(m(0, 2), 1.0 / 3.0);
}

TEST(ParseJson, LabelsOptional) {
  const auto m = parse_matrix(R"({"matrix": [[1, 4], [0.25, 1]]})", MatrixFormat::json);
  EXPECT_EQ(m.labels(), (std::vector<std::string>{"c1", "c2"}));
}

TEST(ParseJson, Errors) {
  EXPECT_THROW(parse_matrix("{", MatrixFormat::json), ValidationError);
  EXPECT_THROW(parse_matrix("[]", MatrixFormat::json), ValidationError);
  EXPECT_THROW(parse_matrix(R"({"matrix": 3})", MatrixFormat::json), ValidationError);
  EXPECT_THROW(parse_matrix(R"({"matrix": [[1,2],[0.5,1]], "labels": [1, 2]})", MatrixFormat::json),
               ValidationError);
  EXPECT_EQ(error_at(R"({"matrix": [[1, true], [1, 1]]})", MatrixFormat::json),
            (std::pair<std::size_t, std::size_t>{1, 2}));
  EXPECT_EQ(error_at(R"({"matrix": [[1, 2], [0.4, 1]]})", MatrixFormat::json),
            (std::pair<std::size_t, std::size_t>{2, 1}));
}

TEST(SniffFormat, ExtensionThenContent) {
  EXPECT_EQ(sniff_format("m.JSON", "1,2"), MatrixFormat::json);
  EXPECT_EQ(sniff_format("m.csv", "{"), MatrixFormat::csv);
  EXPECT_EQ(sniff_format("-", "  {\"matrix\": []}"), MatrixFormat::json);
  EXPECT_EQ(sniff_format("", "1,2\n0.5,1"), MatrixFormat::csv);
  EXPECT_EQ(parse_matrix(R"({"matrix": [[1, 4], [0.25, 1]]})", MatrixFormat::automatic)(0, 1), 4.0);
}

// serialize -> parse reproduces every stored entry bit-for-bit, in both formats.
TEST(RoundTrip, RandomMatricesSurviveCsvAndJson) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = pcdisc::testing::random_reciprocal(2 + trial % 12, rng);
    if (trial % 3 == 0) {
      std::vector<std::string> labels;
      for (std::size_t k = 0; k < m.size(); ++k) labels.push_back("item \"" + std::to_string(k) + "\", x");
      m = PCMatrix::from_rows(m.rows(), labels);
    }
    EXPECT_EQ(parse_matrix(to_csv(m), MatrixFormat::csv), m);
    EXPECT_EQ(parse_matrix(to_json(m).dump(), MatrixFormat::json), m);
  }
}
