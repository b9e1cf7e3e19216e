#include "output.hpp"

#include <fstream>
#include <stdexcept>

namespace sharpe_rmt::cli {

namespace fs = std::filesystem;

void OutputSet::add(std::string name, std::string content) {
  for (const auto& f : files_) {
    if (f.first == name) throw std::logic_error("duplicate output file " + name);
  }
  files_.emplace_back(std::move(name), std::move(content));
}

void OutputSet::commit() const {
  std::vector<fs::path> created;
  const bool dir_existed = fs::exists(dir_);
  try {
    fs::create_directories(dir_);
    for (const auto& [name, content] : files_) {
      const fs::path target = dir_ / name;
      const fs::path tmp = dir_ / ("." + name + ".tmp");
      created.push_back(tmp);
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.close();
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
      }
      fs::rename(tmp, target);
      created.back() = target;
    }
  } catch (...) {
    std::error_code ec;
    for (const auto& p : created) fs::remove(p, ec);
    if (!dir_existed) fs::remove(dir_, ec);
    throw;
  }
}

}  // namespace sharpe_rmt::cli
