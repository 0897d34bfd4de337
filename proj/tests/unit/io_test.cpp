#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <cstdlib>

#include "cosim/error.hpp"
#include "cosim/io.hpp"
#include "support.hpp"

using namespace cosim;

TEST(IoDense, ParsesLinesAndSkipsBlanks) {
  std::istringstream in("1,2,3\n\n 4 , 5 ,6 \n");
  const auto v = io::read_dense(in);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[1], (DenseVector{4, 5, 6}));
}

TEST(IoDense, ReportsLineOfBadToken) {
  std::istringstream in("1,2\n3,x\n");
  try {
    io::read_dense(in, "vecs.csv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.file(), "vecs.csv");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("vecs.csv:2:"), std::string::npos);
  }
}

TEST(IoDense, RejectsNonFiniteAndRaggedRows) {
  std::istringstream nan_in("1,nan\n");
  EXPECT_THROW(io::read_dense(nan_in), ParseError);
  std::istringstream inf_in("inf,1\n");
  EXPECT_THROW(io::read_dense(inf_in), ParseError);
  std::istringstream ragged("1,2\n1,2,3\n");
  EXPECT_THROW(io::read_dense(ragged), ParseError);
}

TEST(IoSparse, ParsesTokens) {
  std::istringstream in("0:1 3:2\n3:1   5:4\n");
  const auto v = io::read_sparse(in);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], (SparseVector{{0, 1.0}, {3, 2.0}}));
  EXPECT_EQ(v[1], (SparseVector{{3, 1.0}, {5, 4.0}}));
}

TEST(IoSparse, RejectsUnsortedAndMalformed) {
  std::istringstream unsorted("1:1\n5:1 2:1\n");
  try {
    io::read_sparse(unsorted, "s.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream dup("2:1 2:3\n");
  EXPECT_THROW(io::read_sparse(dup), ParseError);
  std::istringstream bad("2=1\n");
  EXPECT_THROW(io::read_sparse(bad), ParseError);
  std::istringstream neg("-1:1\n");
  EXPECT_THROW(io::read_sparse(neg), ParseError);
  std::istringstream inf_in("1:inf\n");
  EXPECT_THROW(io::read_sparse(inf_in), ParseError);
}

TEST(IoUnit, NormalizesAndReportsZeroVectorLine) {
  std::istringstream in("3,4\n0,0\n");
  try {
    io::read_unit_vectors(in, io::Format::Dense, "z.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream ok("3,4\n");
  const auto v = io::read_unit_vectors(ok, io::Format::Dense);
  EXPECT_NEAR(v[0].dense()[0], 0.6, 1e-15);
}

TEST(IoUnit, MissingFileIsParseError) {
  EXPECT_THROW(io::read_unit_vectors_file("/nonexistent/file.csv", io::Format::Dense), ParseError);
}

TEST(IoRoundTrip, DenseAndSparseBitExact) {
  cosim::testing::Gen gen(31);
  std::vector<DenseVector> dense;
  std::vector<SparseVector> sparse;
  for (int i = 0; i < 200; ++i) {
    dense.emplace_back(gen.gaussian(7));
    sparse.push_back(gen.sparse(1000, 1 + gen.index(20)));
  }
  std::stringstream ds;
  io::write_dense(ds, dense);
  EXPECT_EQ(io::read_dense(ds), dense);
  std::stringstream ss;
  io::write_sparse(ss, sparse);
  EXPECT_EQ(io::read_sparse(ss), sparse);
}

TEST(IoRoundTrip, FormatDoubleIsShortestExact) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(-7.0), "-7");
  for (double v : {1.0 / 3.0, 0.9815339366124404, 5e-324, -1e300}) {
    EXPECT_EQ(std::strtod(io::format_double(v).c_str(), nullptr), v);
  }
}
