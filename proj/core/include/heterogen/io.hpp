#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heterogen/features.hpp"
#include "heterogen/graphon.hpp"

namespace heterogen {

// Writes content to a temporary file in the target directory, then
// renames it into place.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// edges.csv: header "u,v"; one row per unordered edge with u < v,
// ascending. Node ids are 0-based.
std::string edges_to_csv(const GraphSample& s);
std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_from_csv(
    const std::string& content);

// features.csv: header "node,f0,..,f{d-1}". Values are printed with 17
// significant digits so doubles round-trip exactly.
std::string features_to_csv(const FeatureMatrix& x);
FeatureMatrix features_from_csv(const std::string& content);

// features.bin: two little-endian 64-bit counts (n, d), then n*d
// little-endian IEEE754 doubles, row-major.
std::string features_to_bin(const FeatureMatrix& x);
FeatureMatrix features_from_bin(const std::string& content);

// latents.csv: header "node,u".
std::string latents_to_csv(const GraphSample& s);

}  // namespace heterogen
