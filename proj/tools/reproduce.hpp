#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace sfrac::cli {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<std::string> experiment_ids();
bool is_experiment(const std::string& id);

// Runs the pinned configuration(s) of `id` under `dir` and compares against the
// stored expectations.
std::vector<Check> reproduce(const std::string& id, const std::filesystem::path& dir, std::size_t workers,
                             std::ostream& log);

}  // namespace sfrac::cli
