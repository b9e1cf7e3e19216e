#include "config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "sharpe_rmt/backtest.hpp"
#include "sharpe_rmt/calendar.hpp"
#include "sharpe_rmt/table_io.hpp"

namespace sharpe_rmt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

Section::Section(json obj, std::string where, fs::path base_dir)
    : obj_(std::move(obj)), where_(std::move(where)), base_(std::move(base_dir)) {
  if (!obj_.is_object()) throw ConfigError(where_ + ": expected an object");
}

std::string Section::key_path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

bool Section::has(const std::string& key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }

const json& Section::raw(const std::string& key) {
  if (!obj_.contains(key)) throw ConfigError("missing config key '" + key_path(key) + "'");
  used_.insert(key);
  return obj_.at(key);
}

Section Section::child(const std::string& key) { return Section(raw(key), key_path(key), base_); }

std::string Section::str(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_string()) throw ConfigError("'" + key_path(key) + "' must be a string");
  return v.get<std::string>();
}

std::string Section::str(const std::string& key, const std::string& fallback) {
  return has(key) ? str(key) : (used_.insert(key), fallback);
}

double Section::num(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_number()) throw ConfigError("'" + key_path(key) + "' must be a number");
  return v.get<double>();
}

std::optional<double> Section::opt_num(const std::string& key) {
  if (!has(key)) {
    used_.insert(key);
    return std::nullopt;
  }
  return num(key);
}

long long Section::integer(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_number_integer()) throw ConfigError("'" + key_path(key) + "' must be an integer");
  return v.get<long long>();
}

long long Section::integer(const std::string& key, long long fallback) {
  return has(key) ? integer(key) : (used_.insert(key), fallback);
}

bool Section::flag(const std::string& key, bool fallback) {
  if (!has(key)) {
    used_.insert(key);
    return fallback;
  }
  const json& v = raw(key);
  if (!v.is_boolean()) throw ConfigError("'" + key_path(key) + "' must be true or false");
  return v.get<bool>();
}

std::vector<double> Section::numbers(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_array()) throw ConfigError("'" + key_path(key) + "' must be an array of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) throw ConfigError("'" + key_path(key) + "' must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

fs::path Section::path(const std::string& key) {
  const fs::path p(str(key));
  return p.is_absolute() ? p : base_ / p;
}

std::optional<fs::path> Section::opt_path(const std::string& key) {
  if (!has(key)) {
    used_.insert(key);
    return std::nullopt;
  }
  return path(key);
}

void Section::finish() const {
  for (const auto& [k, v] : obj_.items()) {
    if (!used_.count(k)) throw ConfigError("unknown config key '" + key_path(k) + "'");
  }
}

Section load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + file.string() + ": " + e.what());
  }
  return Section(std::move(j), "", fs::absolute(file).parent_path());
}

Section empty_config() { return Section(json::object(), "", fs::current_path()); }

namespace {

std::vector<std::vector<std::string>> read_rows(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

double parse_number(const std::string& s, const fs::path& file) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument(file.string() + ": bad number '" + s + "'");
  }
  return v;
}

std::map<std::string, Eigen::Index> index_of(const std::vector<std::string>& assets) {
  std::map<std::string, Eigen::Index> idx;
  for (std::size_t i = 0; i < assets.size(); ++i) idx[assets[i]] = static_cast<Eigen::Index>(i);
  return idx;
}

}  // namespace

Vector load_vector(const fs::path& file, const std::vector<std::string>& assets) {
  const auto rows = read_rows(file);
  if (rows.empty() || rows[0].size() != 2 || rows[0][0] != "asset" || rows[0][1] != "value") {
    throw std::invalid_argument(file.string() + ": expected header 'asset,value'");
  }
  const auto idx = index_of(assets);
  Vector v = Vector::Constant(static_cast<Eigen::Index>(assets.size()), std::nan(""));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) throw std::invalid_argument(file.string() + ": expected two fields per row");
    const auto it = idx.find(rows[r][0]);
    if (it == idx.end()) continue;
    v(it->second) = parse_number(rows[r][1], file);
  }
  for (std::size_t i = 0; i < assets.size(); ++i) {
    if (std::isnan(v(static_cast<Eigen::Index>(i)))) {
      throw std::invalid_argument(file.string() + ": no value for asset " + assets[i]);
    }
  }
  return v;
}

Matrix load_matrix(const fs::path& file, const std::vector<std::string>& assets) {
  auto rows = read_rows(file);
  if (rows.empty()) throw std::invalid_argument(file.string() + ": empty matrix file");
  std::vector<std::string> header = rows[0];
  const bool labelled_rows = !header.empty() && header[0].empty();
  if (labelled_rows) header.erase(header.begin());
  const auto idx = index_of(assets);
  std::vector<Eigen::Index> pos;
  for (const auto& h : header) {
    const auto it = idx.find(h);
    pos.push_back(it == idx.end() ? -1 : it->second);
  }
  if (rows.size() - 1 != header.size()) throw std::invalid_argument(file.string() + ": matrix must be square");
  const auto p = static_cast<Eigen::Index>(assets.size());
  Matrix m = Matrix::Constant(p, p, std::nan(""));
  for (std::size_t r = 0; r < header.size(); ++r) {
    auto cells = rows[r + 1];
    if (labelled_rows) {
      if (cells.empty() || cells[0] != header[r]) {
        throw std::invalid_argument(file.string() + ": row labels must match the header order");
      }
      cells.erase(cells.begin());
    }
    if (cells.size() != header.size()) throw std::invalid_argument(file.string() + ": ragged matrix row");
    if (pos[r] < 0) continue;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (pos[c] < 0) continue;
      m(pos[r], pos[c]) = parse_number(cells[c], file);
    }
  }
  if (m.hasNaN()) throw std::invalid_argument(file.string() + ": matrix does not cover every panel asset");
  return m;
}

namespace {

struct Base {
  Matrix matrix;
  std::string name;
};

Base parse_base(Section& s, const ReturnsPanel& panel, const std::string& type) {
  const Eigen::Index p = panel.p();
  if (type == "identity") return {Matrix::Identity(p, p), s.str("name", "I")};
  if (type == "matrix") {
    Matrix m = load_matrix(s.path("path"), panel.assets);
    return {std::move(m), s.str("name", "M")};
  }
  if (type == "sample_covariance") {
    const YearMonth from = parse_year_month(s.str("from"));
    const YearMonth to = parse_year_month(s.str("to"));
    const double ridge = s.opt_num("ridge").value_or(0.0);
    if (ridge < 0.0) throw ConfigError(s.where() + ".ridge must be >= 0");
    Matrix m = sample_covariance_between(panel, from, to);
    m.diagonal().array() += ridge;
    return {std::move(m), s.str("name", "S_pre")};
  }
  throw ConfigError(s.where() + ": unknown regularizer type '" + type + "'");
}

}  // namespace

Regularizer parse_regularizer(Section& s, const ReturnsPanel& panel) {
  const std::string type = s.str("type");
  Regularizer out;
  if (type == "zero") {
    out = Regularizer::zero(panel.p());
  } else {
    const double q = s.opt_num("q").value_or(1.0);
    if (q < 0.0) throw ConfigError(s.where() + ".q must be >= 0");
    Base b = parse_base(s, panel, type);
    out = Regularizer::scaled(q, b.matrix, b.name);
  }
  s.finish();
  return out;
}

CandidateSet parse_candidates(Section& s, const ReturnsPanel& panel) {
  CandidateSet out;
  if (s.has("list")) {
    const json& list = s.raw("list");
    if (!list.is_array()) throw ConfigError(s.where() + ".list must be an array");
    std::vector<Regularizer> regs;
    for (std::size_t i = 0; i < list.size(); ++i) {
      Section item(list[i], s.where() + ".list[" + std::to_string(i) + "]", s.base_dir());
      regs.push_back(parse_regularizer(item, panel));
    }
    out = CandidateSet::explicit_list(std::move(regs));
  } else {
    Section base = s.child("base");
    const std::string type = base.str("type");
    Base b = parse_base(base, panel, type);
    base.finish();
    out = CandidateSet::scaled_base(parse_grid(s, "scales"), b.matrix, b.name);
  }
  s.finish();
  try {
    out.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(s.where() + ": " + e.what());
  }
  return out;
}

std::vector<double> parse_grid(Section& s, const std::string& key) {
  const json& v = s.raw(key);
  std::vector<double> out;
  if (v.is_array()) {
    out = s.numbers(key);
  } else {
    Section g = s.child(key);
    const double from = g.num("from");
    const double to = g.num("to");
    const double step = g.num("step");
    g.finish();
    if (!(step > 0.0) || to < from) throw ConfigError(g.where() + ": need step > 0 and to >= from");
    const auto count = static_cast<long long>(std::floor((to - from) / step + 1e-9));
    for (long long i = 0; i <= count; ++i) {
      out.push_back(std::round((from + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
  }
  if (out.empty()) throw ConfigError("'" + (s.where().empty() ? key : s.where() + "." + key) + "' is empty");
  return out;
}

}  // namespace sharpe_rmt::cli
