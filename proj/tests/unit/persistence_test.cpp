#include <gtest/gtest.h>

#include <filesystem>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "cosim/datagen.hpp"
#include "cosim/error.hpp"
#include "cosim/index/persistence.hpp"

using namespace cosim;
using namespace cosim::index;

namespace {

std::string dump(const VpTree& tree) {
  std::ostringstream out;
  save_index(out, tree);
  return out.str();
}

std::string dump(const LaesaIndex& laesa) {
  std::ostringstream out;
  save_index(out, laesa);
  return out.str();
}

StoredIndex load(const std::string& text) {
  std::istringstream in(text);
  return load_index(in);
}

}  // namespace

TEST(Persistence, VpTreeRoundTrip) {
  const auto tree = VpTree::build(datagen::random_dense_unit(300, 5, 1), {6, 77});
  const auto loaded = load(dump(tree));
  ASSERT_TRUE(std::holds_alternative<VpTree>(loaded));
  const auto& back = std::get<VpTree>(loaded);
  EXPECT_EQ(back.data(), tree.data());
  EXPECT_EQ(back.config(), tree.config());
  EXPECT_TRUE(std::equal(back.nodes().begin(), back.nodes().end(), tree.nodes().begin(), tree.nodes().end()));
  const auto q = tree.data()[17];
  EXPECT_EQ(back.knn_query(q, 9).neighbors, tree.knn_query(q, 9).neighbors);
}

TEST(Persistence, SparseLaesaRoundTrip) {
  const auto laesa = LaesaIndex::build(datagen::random_sparse_unit(200, 80, 4, 2), 9, 5);
  const auto loaded = load(dump(laesa));
  ASSERT_TRUE(std::holds_alternative<LaesaIndex>(loaded));
  const auto& back = std::get<LaesaIndex>(loaded);
  EXPECT_EQ(back.data, laesa.data);
  EXPECT_EQ(back.table, laesa.table);
  EXPECT_EQ(back.seed, laesa.seed);
  EXPECT_EQ(back.range_query(laesa.data[3], Similarity(0.2)).neighbors,
            laesa.range_query(laesa.data[3], Similarity(0.2)).neighbors);
}

TEST(Persistence, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "cosim_persistence_test.json";
  const auto tree = VpTree::build(datagen::random_dense_unit(50, 3, 3), {4, 1});
  save_index_file(path, tree);
  const auto loaded = load_index_file(path);
  EXPECT_EQ(std::get<VpTree>(loaded).data(), tree.data());
  std::filesystem::remove(path);
  EXPECT_THROW(load_index_file(path), FormatError);
}

TEST(Persistence, ChecksumDependsOnEveryBit) {
  const auto data = datagen::random_dense_unit(10, 3, 4);
  auto other = data;
  std::vector<double> v(data[5].dense().values().begin(), data[5].dense().values().end());
  v[1] = std::nextafter(v[1], 2.0);
  other[5] = UnitVector::certify(DenseVector(v));
  EXPECT_NE(data_checksum(data), data_checksum(other));
  EXPECT_EQ(data_checksum(data), data_checksum(datagen::random_dense_unit(10, 3, 4)));
}

TEST(Persistence, RejectsTamperedData) {
  const auto tree = VpTree::build(datagen::planar_dataset(std::vector<double>{0, 20, 40, 60, 80, 100}), {1, 2});
  std::string text = dump(tree);
  auto json = nlohmann::json::parse(text);
  json["data"][2][0] = json["data"][2][0].get<double>() * 0.5;
  EXPECT_THROW(load(json.dump()), FormatError);
}

TEST(Persistence, RejectsBadHeaderAndStructure) {
  const auto tree = VpTree::build(datagen::random_dense_unit(40, 3, 6), {2, 2});
  auto json = nlohmann::json::parse(dump(tree));

  auto wrong_version = json;
  wrong_version["version"] = kIndexFormatVersion + 1;
  EXPECT_THROW(load(wrong_version.dump()), FormatError);

  auto wrong_format = json;
  wrong_format["format"] = "something-else";
  EXPECT_THROW(load(wrong_format.dump()), FormatError);

  auto bad_tree = json;
  bad_tree["tree"][0]["children"][0]["node"] = 0;
  EXPECT_THROW(load(bad_tree.dump()), FormatError);

  EXPECT_THROW(load("not json"), FormatError);
  EXPECT_THROW(load("{}"), FormatError);
  EXPECT_THROW(load(dump(tree).substr(0, 200)), FormatError);
}
