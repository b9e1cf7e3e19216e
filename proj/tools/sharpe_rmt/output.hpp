#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace sharpe_rmt::cli {

// Files are buffered in memory and only written by commit(). A failed commit removes
// everything it created.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void add(std::string name, std::string content);
  bool empty() const { return files_.empty(); }
  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }
  void commit() const;

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace sharpe_rmt::cli
