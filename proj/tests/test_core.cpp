#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "banddist/csv.hpp"
#include "oracles.hpp"

using namespace banddist;

TEST(ValidateSet, WellFormedMatrix) {
    const auto set = validate_set({{1, 2, 3}, {4, 5, 6}});
    EXPECT_EQ(set.size(), 2u);
    EXPECT_EQ(set.length(), 3u);
    EXPECT_EQ(set(1, 2), 6.0);
    EXPECT_FALSE(set.has_labels());
}

TEST(ValidateSet, NonFiniteNamesLocation) {
    try {
        validate_set({{1, std::nan(""), 3}, {4, 5, 6}});
        FAIL() << "expected NonFiniteError";
    } catch (const NonFiniteError& e) {
        EXPECT_EQ(e.code(), Errc::non_finite);
        EXPECT_EQ(e.row(), 1u);
        EXPECT_EQ(e.col(), 2u);
    }
    EXPECT_THROW(validate_set({{1, 2}, {std::numeric_limits<double>::infinity(), 0}}), NonFiniteError);
}

TEST(ValidateSet, TooFewObservations) {
    try {
        validate_set({{1, 2, 3, 4, 5}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::too_few_observations);
    }
}

TEST(ValidateSet, RaggedRows) {
    try {
        validate_set({{1, 2, 3}, {4, 5}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ragged_rows);
    }
}

TEST(ValidateSet, EmptyRowsRejected) { EXPECT_THROW(validate_set({{}, {}}), Error); }

TEST(ValidateSet, LabelCountMustMatch) { EXPECT_THROW(validate_set({{1}, {2}}, {"a"}), Error); }

TEST(ValidateSet, Idempotent) {
    std::mt19937_64 rng(3);
    const auto set = validate_set(oracle::normal_rows(rng, 5, 7), {"a", "b", "c", "d", "e"});
    EXPECT_EQ(validate_set(set), set);
    EXPECT_EQ(validate_set(validate_set(set)), set);
}

TEST(ValidateSet, TwoObservationsWarns) {
    EXPECT_EQ(validation_warnings(validate_set({{1}, {2}})).size(), 1u);
    EXPECT_TRUE(validation_warnings(validate_set({{1}, {2}, {3}})).empty());
}

TEST(SelectRows, CarriesLabels) {
    const auto set = validate_set({{1}, {2}, {3}}, {"x", "y", "z"});
    const std::vector<std::size_t> keep{2, 0};
    const auto sub = select_rows(set, keep);
    EXPECT_EQ(sub.labels(), (std::vector<std::string>{"z", "x"}));
    EXPECT_EQ(sub(0, 0), 3.0);
}

TEST(Csv, RoundTripIsBitExact) {
    std::mt19937_64 rng(11);
    auto rows = oracle::normal_rows(rng, 6, 9);
    rows[0][0] = 0.1;
    rows[1][1] = 1e-300;
    rows[2][2] = -123456789.123456789;
    rows[3][3] = 5e-324;
    const auto set = validate_set(rows, {"2010-06-01", "2010-06-02", "b", "c", "d", "e"});
    std::ostringstream out;
    csv::write_set(out, set);
    auto table = csv::parse(out.str());
    const auto back = validate_set(table.rows, table.labels);
    EXPECT_EQ(back, set);
    std::ostringstream bare;
    csv::write_set(bare, validate_set(rows), false);
    auto t2 = csv::parse(bare.str());
    EXPECT_TRUE(t2.header.empty());
    EXPECT_EQ(validate_set(t2.rows), validate_set(rows));
}

TEST(Csv, HeaderAndLabelDetection) {
    auto t = csv::parse("\xEF\xBB\xBFlabel,t1,t2\nday1,1,2\nday2,3,4\n");
    EXPECT_EQ(t.header.size(), 3u);
    EXPECT_EQ(t.labels, (std::vector<std::string>{"day1", "day2"}));
    EXPECT_EQ(t.rows[1][1], 4.0);
    auto plain = csv::parse("1,2\r\n3,4\r\n");
    EXPECT_TRUE(plain.header.empty());
    EXPECT_TRUE(plain.labels.empty());
    EXPECT_EQ(plain.rows.size(), 2u);
}

TEST(Csv, ParseErrorReportsLine) {
    try {
        csv::parse("a,b\nx,1\ny,oops\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::parse_error);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(DistanceMatrix, Invariants) {
    EXPECT_NO_THROW(DistanceMatrix(2, {0, 0.5, 0.5, 0}, DistanceMethod::band));
    EXPECT_THROW(DistanceMatrix(2, {0, 0.5, 0.4, 0}, DistanceMethod::lp), Error);
    EXPECT_THROW(DistanceMatrix(2, {0.1, 0.5, 0.5, 0}, DistanceMethod::lp), Error);
    EXPECT_THROW(DistanceMatrix(2, {0, -1, -1, 0}, DistanceMethod::lp), Error);
    EXPECT_THROW(DistanceMatrix(2, {0, 2, 2, 0}, DistanceMethod::band), Error);
    EXPECT_NO_THROW(DistanceMatrix(2, {0, 2, 2, 0}, DistanceMethod::lp));
    EXPECT_THROW(DistanceMatrix(2, {0, 1, 1}, DistanceMethod::lp), Error);
}

TEST(DistanceMatrix, CsvRoundTrip) {
    const DistanceMatrix d(3, {0, 1.0 / 3, 2.0 / 3, 1.0 / 3, 0, 1.0 / 3, 2.0 / 3, 1.0 / 3, 0}, DistanceMethod::band);
    std::ostringstream out;
    csv::write_matrix(out, d);
    const auto path = std::filesystem::temp_directory_path() / "banddist_core_matrix.csv";
    csv::write_file(path, out.str());
    EXPECT_EQ(csv::read_matrix(path, DistanceMethod::band), d);
    std::filesystem::remove(path);
}

TEST(Partition, Invariants) {
    EXPECT_NO_THROW(Partition({1, 1, 2}, 2, {0, 2}));
    EXPECT_THROW(Partition({1, 1, 1}, 2), Error);     // cluster 2 empty
    EXPECT_THROW(Partition({1, 3, 2}, 2), Error);     // id out of range
    EXPECT_THROW(Partition({1, 1, 2}, 2, {2, 0}), Error);  // medoid label mismatch
    EXPECT_EQ(Partition({2, 1, 2, 2}, 2).cluster_sizes(), (std::vector<std::size_t>{1, 3}));
}

TEST(LabeledDataset, TruthLength) {
    EXPECT_THROW(LabeledDataset(validate_set({{1}, {2}}), {1}), Error);
    EXPECT_NO_THROW(LabeledDataset(validate_set({{1}, {2}}), {1, 2}));
}
