#include "panels.hpp"

#include "sharpe_rmt/rng.hpp"
#include "sharpe_rmt/simgen.hpp"

namespace sharpe_rmt::testing {

namespace {

// 0 = Monday
int weekday(const Date& d) {
  int y = d.year, m = d.month;
  if (m < 3) {
    m += 12;
    --y;
  }
  const int k = y % 100, j = y / 100;
  const int h = (d.day + 13 * (m + 1) / 5 + k + k / 4 + j / 4 + 5 * j) % 7;  // 0 = Saturday
  return (h + 5) % 7;
}

Date next_day(Date d) {
  static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (d.year % 4 == 0 && d.year % 100 != 0) || d.year % 400 == 0;
  const int dim = d.month == 2 && leap ? 29 : days[d.month - 1];
  if (++d.day > dim) {
    d.day = 1;
    if (++d.month > 12) {
      d.month = 1;
      ++d.year;
    }
  }
  return d;
}

}  // namespace

std::vector<Date> weekdays(Date start, int count) {
  std::vector<Date> out;
  for (Date d = start; static_cast<int>(out.size()) < count; d = next_day(d)) {
    if (weekday(d) < 5) out.push_back(d);
  }
  return out;
}

ReturnsPanel synthetic_panel(int days, int assets, std::uint64_t seed, Date start) {
  Rng rng(seed, "fixture/loadings");
  Vector beta(assets);
  Vector idio(assets);
  Vector mu(assets);
  for (int j = 0; j < assets; ++j) {
    beta(j) = rng.uniform(0.5, 1.5);
    idio(j) = rng.uniform(0.005, 0.02);
    mu(j) = rng.uniform(-2e-4, 8e-4);
  }
  Matrix sigma = 1e-4 * beta * beta.transpose();
  sigma.diagonal() += idio.cwiseProduct(idio);
  ReturnsPanel panel = sample_returns(mu, sigma, days, derive_seed(seed, "fixture/returns"));
  panel.dates = weekdays(start, days);
  for (int j = 0; j < assets; ++j) panel.assets.push_back("A" + std::to_string(j + 1));
  return panel;
}

}  // namespace sharpe_rmt::testing
