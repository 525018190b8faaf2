#pragma once

#include <map>
#include <string>
#include <vector>

#include "augkit/core/rng.hpp"

namespace augkit::eval {

// One labeled input file. The path doubles as the item id throughout the
// harness.
struct DatasetItem {
  std::string path;
  std::string label;

  bool operator==(const DatasetItem&) const = default;
};

// Tab-separated manifest, one "path<TAB>label" line per item. Relative paths
// resolve against the manifest's directory. Labels must not contain tabs or
// commas (they travel through the adapter's comma-separated output), and a
// path may appear only once.
std::vector<DatasetItem> load_manifest(const std::string& path);

// Uniform sample of n items without replacement; n == size yields the whole
// set in shuffled order. n must be in [1, size].
std::vector<DatasetItem> sample_dataset(const std::vector<DatasetItem>& items,
                                        std::size_t n, Rng& rng);

std::map<std::string, std::string> truth_map(
    const std::vector<DatasetItem>& items);

}  // namespace augkit::eval
