#pragma once

#include <string>
#include <vector>

#include "ncsim/dissemination.hpp"
#include "ncsim/linalg.hpp"
#include "vendor_json.hpp"

namespace ncsim {

// RowSpace <-> JSON: ambient dim, field order, basis rows as integer arrays.
nlohmann::json rowspace_to_json(const RowSpace& s);
RowSpace rowspace_from_json(const nlohmann::json& j);

// Compact binary snapshot: per-node dimensions plus basis rows bit-packed at
// ceil(log2 q) bits per element.
std::vector<std::uint8_t> snapshot_to_binary(const SnapshotSet& s, const Field& f);
SnapshotSet snapshot_from_binary(const std::vector<std::uint8_t>& bytes);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace ncsim
