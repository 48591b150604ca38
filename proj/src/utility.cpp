#include "ssanum/utility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ssanum {

Alpha::Alpha(double value) : value_(value) {
  if (std::isnan(value) || value < 0.0) {
    throw std::invalid_argument("alpha must be >= 0");
  }
}

bool Alpha::is_infinite() const { return std::isinf(value_); }

std::string Alpha::str() const {
  if (is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value_);
  return buf;
}

double utility(Alpha alpha, double rate) {
  if (std::isnan(rate) || rate < 0.0) {
    throw std::invalid_argument("rate must be >= 0");
  }
  if (alpha.is_infinite()) {
    throw std::domain_error("scalar utility undefined at alpha = inf");
  }
  const double a = alpha.effective();
  if (a == 1.0) {
    return rate == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(rate);
  }
  if (rate == 0.0) {
    return a > 1.0 ? -std::numeric_limits<double>::infinity() : 0.0;
  }
  return std::pow(rate, 1.0 - a) / (1.0 - a);
}

double sum_utility(Alpha alpha, std::span<const double> rates) {
  if (alpha.is_infinite()) {
    double m = std::numeric_limits<double>::infinity();
    for (double r : rates) m = std::min(m, r);
    return m;
  }
  double s = 0.0;
  for (double r : rates) s += utility(alpha, r);  // -inf absorbs
  return s;
}

double chiu_jain(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("chiu_jain: empty vector");
  double sum = 0.0, sumsq = 0.0;
  for (double v : values) {
    if (std::isnan(v) || v < 0.0) throw std::invalid_argument("chiu_jain: negative entry");
    sum += v;
    sumsq += v * v;
  }
  if (sumsq == 0.0) throw std::invalid_argument("chiu_jain: all-zero vector");
  return sum * sum / (static_cast<double>(values.size()) * sumsq);
}

double percentile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile: empty sample");
  if (std::isnan(q) || q < 0.0 || q > 100.0) {
    throw std::invalid_argument("percentile: q out of [0, 100]");
  }
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double pos = q / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

}  // namespace ssanum
