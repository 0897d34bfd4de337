#pragma once

// JSON dump of a built index: format tag, version, config, seed, the data
// itself, the tree or pivot table, and an FNV-1a checksum of the data.
// Loading re-verifies the checksum and the index structure.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <variant>

#include "cosim/index/laesa.hpp"
#include "cosim/index/vptree.hpp"

namespace cosim::index {

inline constexpr int kIndexFormatVersion = 1;

using StoredIndex = std::variant<VpTree, LaesaIndex>;

/// FNV-1a over the representation tag, shapes, indices and value bit patterns.
std::uint64_t data_checksum(std::span<const UnitVector> data);

void save_index(std::ostream& out, const VpTree& tree);
void save_index(std::ostream& out, const LaesaIndex& index);
void save_index_file(const std::filesystem::path& path, const StoredIndex& index);

/// Throws FormatError on malformed input, version or checksum mismatch.
StoredIndex load_index(std::istream& in);
StoredIndex load_index_file(const std::filesystem::path& path);

}  // namespace cosim::index
