#include "cosim/index/persistence.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "cosim/error.hpp"

namespace cosim::index {

using nlohmann::json;

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void mix(std::uint64_t& h, std::uint64_t word) {
  for (int b = 0; b < 8; ++b) {
    h ^= (word >> (8 * b)) & 0xffU;
    h *= kFnvPrime;
  }
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json dump_data(std::span<const UnitVector> data) {
  json out = json::array();
  for (const auto& v : data) {
    if (v.is_dense()) {
      const auto values = v.dense().values();
      out.push_back(std::vector<double>(values.begin(), values.end()));
    } else {
      const auto& s = v.sparse();
      out.push_back({{"i", std::vector<std::uint32_t>(s.indices().begin(), s.indices().end())},
                     {"v", std::vector<double>(s.values().begin(), s.values().end())}});
    }
  }
  return out;
}

json envelope(const char* kind, std::span<const UnitVector> data, std::uint64_t seed) {
  return {{"format", "cosim-index"},
          {"version", kIndexFormatVersion},
          {"index", kind},
          {"representation", data.front().is_dense() ? "dense" : "sparse"},
          {"seed", seed},
          {"checksum", hex(data_checksum(data))},
          {"data", dump_data(data)}};
}

Dataset load_data(const json& doc) {
  const auto& rep = doc.at("representation").get_ref<const std::string&>();
  if (rep != "dense" && rep != "sparse") throw FormatError("unknown representation '" + rep + "'");
  Dataset data;
  for (const auto& item : doc.at("data")) {
    if (rep == "dense") {
      data.push_back(UnitVector::certify(DenseVector(item.get<std::vector<double>>())));
    } else {
      data.push_back(UnitVector::certify(
          SparseVector(item.at("i").get<std::vector<std::uint32_t>>(), item.at("v").get<std::vector<double>>())));
    }
  }
  if (data.empty()) throw EmptyDatasetError();
  const std::string expected = doc.at("checksum").get<std::string>();
  if (hex(data_checksum(data)) != expected) throw FormatError("data checksum mismatch");
  return data;
}

}  // namespace

std::uint64_t data_checksum(std::span<const UnitVector> data) {
  std::uint64_t h = kFnvOffset;
  mix(h, data.size());
  for (const auto& v : data) {
    if (v.is_dense()) {
      mix(h, 0);
      mix(h, v.dense().size());
      for (double x : v.dense().values()) mix(h, std::bit_cast<std::uint64_t>(x));
    } else {
      const auto& s = v.sparse();
      mix(h, 1);
      mix(h, s.nnz());
      for (std::size_t i = 0; i < s.nnz(); ++i) {
        mix(h, s.indices()[i]);
        mix(h, std::bit_cast<std::uint64_t>(s.values()[i]));
      }
    }
  }
  return h;
}

void save_index(std::ostream& out, const VpTree& tree) {
  json doc = envelope("vp", tree.data(), tree.config().seed);
  doc["config"] = {{"leaf_capacity", tree.config().leaf_capacity}, {"prune_slack", tree.config().prune_slack}};
  json nodes = json::array();
  for (const auto& node : tree.nodes()) {
    json children = json::array();
    for (const auto& c : node.children) {
      children.push_back({{"lo", c.interval.lo().value()}, {"hi", c.interval.hi().value()}, {"node", c.node}});
    }
    json entry = {{"size", node.subtree_size}, {"children", children}, {"leaf", node.leaf_ids}};
    entry["routing"] = node.is_leaf() ? json(nullptr) : json(node.routing_id);
    nodes.push_back(std::move(entry));
  }
  doc["tree"] = std::move(nodes);
  out << doc.dump() << '\n';
}

void save_index(std::ostream& out, const LaesaIndex& index) {
  json doc = envelope("laesa", index.data, index.seed);
  doc["config"] = {{"pivots", index.table.pivots()}, {"prune_slack", index.prune_slack}};
  const auto ids = index.table.pivot_ids();
  const auto raw = index.table.raw();
  doc["table"] = {{"pivot_ids", std::vector<Id>(ids.begin(), ids.end())},
                  {"values", std::vector<double>(raw.begin(), raw.end())}};
  out << doc.dump() << '\n';
}

void save_index_file(const std::filesystem::path& path, const StoredIndex& index) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  std::visit([&](const auto& idx) { save_index(out, idx); }, index);
  if (!out) throw FormatError("write to " + path.string() + " failed");
}

StoredIndex load_index(std::istream& in) {
  try {
    const json doc = json::parse(in);
    if (doc.at("format") != "cosim-index") throw FormatError("not a cosim index");
    const int version = doc.at("version").get<int>();
    if (version != kIndexFormatVersion) throw FormatError("unsupported index version " + std::to_string(version));

    Dataset data = load_data(doc);
    const auto seed = doc.at("seed").get<std::uint64_t>();
    const auto& config = doc.at("config");
    const auto& kind = doc.at("index").get_ref<const std::string&>();

    if (kind == "vp") {
      VpConfig cfg{config.at("leaf_capacity").get<std::size_t>(), seed, config.at("prune_slack").get<double>()};
      std::vector<VpNode> nodes;
      for (const auto& entry : doc.at("tree")) {
        VpNode node;
        node.subtree_size = entry.at("size").get<std::size_t>();
        node.leaf_ids = entry.at("leaf").get<std::vector<Id>>();
        if (!entry.at("routing").is_null()) node.routing_id = entry.at("routing").get<Id>();
        for (const auto& c : entry.at("children")) {
          node.children.push_back({SimInterval(c.at("lo").get<double>(), c.at("hi").get<double>()),
                                   c.at("node").get<std::uint32_t>()});
        }
        nodes.push_back(std::move(node));
      }
      return VpTree::from_parts(std::move(data), cfg, std::move(nodes));
    }
    if (kind == "laesa") {
      const auto& table = doc.at("table");
      PivotTable pt(table.at("pivot_ids").get<std::vector<Id>>(), data.size(),
                    table.at("values").get<std::vector<double>>());
      if (pt.pivots() != config.at("pivots").get<std::size_t>()) throw FormatError("pivot count mismatch");
      if (auto problem = audit(pt, data)) throw FormatError("invalid pivot table: " + *problem);
      return LaesaIndex{std::move(data), std::move(pt), seed, config.at("prune_slack").get<double>()};
    }
    throw FormatError("unknown index kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed index: ") + e.what());
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("malformed index: ") + e.what());
  }
}

StoredIndex load_index_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return load_index(in);
}

}  // namespace cosim::index
