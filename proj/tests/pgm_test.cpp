#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>

#include "gmhbt/pgm.hpp"
#include "test_support.hpp"

namespace gmhbt {
namespace {

using testing::TempDir;

std::string bytes(std::initializer_list<int> values) {
  std::string s;
  for (int v : values) s.push_back(static_cast<char>(v));
  return s;
}

TEST(LoadPgm, ReadsPayloadExactly) {
  TempDir dir("pgm");
  testing::write_file(dir / "a.pgm", "P5\n2 2\n255\n" + bytes({0, 255, 128, 7}));
  const GrayImage img = load_pgm(dir / "a.pgm");
  EXPECT_EQ(img, GrayImage(2, 2, std::vector<std::uint8_t>{0, 255, 128, 7}));
}

TEST(LoadPgm, SkipsComments) {
  std::istringstream in("P5\n# made by hand\n3 1 # width height\n# max\n255\n" +
                        bytes({1, 2, 3}));
  EXPECT_EQ(read_pgm(in), GrayImage(3, 1, std::vector<std::uint8_t>{1, 2, 3}));
}

TEST(LoadPgm, RejectsAsciiAndBadHeaders) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_pgm(in);
  };
  EXPECT_THROW(parse("P2\n1 1\n255\n0\n"), MalformedHeader);
  EXPECT_THROW(parse("P5\n0 1\n255\n"), MalformedHeader);
  EXPECT_THROW(parse("P5\n-1 1\n255\n"), MalformedHeader);
  EXPECT_THROW(parse("P5\n1 1\n65535\n\x01\x02"), MalformedHeader);
  EXPECT_THROW(parse("P5\n1 1\n15\n\x01"), MalformedHeader);
  EXPECT_THROW(parse(""), MalformedHeader);
}

TEST(LoadPgm, DetectsTruncation) {
  std::istringstream in("P5\n2 2\n255\n" + bytes({1, 2, 3}));
  EXPECT_THROW(read_pgm(in), TruncatedData);
}

TEST(LoadPgm, MissingFileIsIoFailure) {
  EXPECT_THROW(load_pgm("/nonexistent/dir/x.pgm"), IoFailure);
}

TEST(SavePgm, WritesCanonicalHeader) {
  TempDir dir("pgm");
  save_pgm(GrayImage(1, 1, std::vector<std::uint8_t>{42}), dir / "one.pgm");
  EXPECT_EQ(testing::read_file(dir / "one.pgm"), std::string("P5\n1 1\n255\n") + '\x2A');
}

TEST(SavePgm, FileSizeIsHeaderPlusPayload) {
  TempDir dir("pgm");
  std::mt19937_64 rng(3);
  save_pgm(testing::random_image(rng, 512, 512), dir / "big.pgm");
  const std::string header = "P5\n512 512\n255\n";
  EXPECT_EQ(std::filesystem::file_size(dir / "big.pgm"), header.size() + 262144u);
}

TEST(SavePgm, UnwritablePathIsIoFailure) {
  EXPECT_THROW(save_pgm(GrayImage(1, 1), "/nonexistent/dir/x.pgm"), IoFailure);
}

TEST(PgmRoundTrip, RandomImagesSurviveExactly) {
  TempDir dir("pgm");
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 40);
  for (int trial = 0; trial < 25; ++trial) {
    const GrayImage img = testing::random_image(rng, dim(rng), dim(rng));
    const auto path = dir / "rt.pgm";
    save_pgm(img, path);
    EXPECT_EQ(load_pgm(path), img);
    // File-level: re-saving what was loaded reproduces the bytes.
    const std::string first = testing::read_file(path);
    save_pgm(load_pgm(path), path);
    EXPECT_EQ(testing::read_file(path), first);
  }
}

TEST(PgmRoundTrip, CommentsAreDroppedOnRewrite) {
  std::istringstream in("P5\n# note\n2 1\n255\n" + bytes({9, 10}));
  EXPECT_EQ(encode_pgm(read_pgm(in)), "P5\n2 1\n255\n" + bytes({9, 10}));
}

}  // namespace
}  // namespace gmhbt
