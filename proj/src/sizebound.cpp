#include "mlabe/sizebound.hpp"

#include <algorithm>
#include <string>

namespace mlabe {

namespace {

std::string describe(LogBound b) {
  return std::to_string(boost::rational_cast<double>(b));
}

int ceil_log2(int v) {
  int bits = 0;
  while ((1LL << bits) < v) ++bits;
  return bits;
}

}  // namespace

GrowthProfile GrowthProfile::standard(int size_bits) {
  return GrowthProfile{size_bits, [](int m) { return LogBound(m * ceil_log2(m + 1)); }};
}

LogBound GrowthProfile::log_f_at(int m) const {
  if (m <= 0) return 0;
  return log_f(m);
}

void GrowthProfile::validate(int degree) const {
  if (size_bits < 0) throw InvalidArgument("size exponent must be non-negative");
  if (!log_f) throw InvalidArgument("growth profile has no f");
  for (int m = 2; m <= 2 * degree; ++m)
    if (!(log_f(m) > log_f(m - 1))) throw InvalidArgument("f must be strictly increasing");
}

LogBound level_budget(const GrowthProfile& profile, int level) {
  return profile.log_f_at(level + 1) + LogBound((level + 1) * profile.size_bits);
}

bool check_hiding(LogBound a_bound, LogBound b_bound, const GrowthProfile& profile) {
  return a_bound > b_bound + LogBound(profile.size_bits);
}

LogBound log_sum_bound(LogBound a, LogBound b) {
  const LogBound hi = std::max(a, b);
  const LogBound gap = hi - std::min(a, b);
  if (gap < 1) return hi + 1;
  // log2(1 + 2^-d) <= 2^-d / ln 2 < 1.5 * 2^-floor(d), rounded up to 1/1024.
  const std::int64_t whole = boost::rational_cast<std::int64_t>(gap);
  if (whole >= 11) return hi + LogBound(1, 1024);
  const std::int64_t scaled = (1536 + (std::int64_t{1} << whole) - 1) >> whole;
  return hi + LogBound(scaled, 1024);
}

void BudgetMeter::record(int level, LogBound bound, LogBound budget) {
  auto [it, inserted] = entries_.try_emplace(level, Entry{bound, budget});
  if (!inserted && bound > it->second.max_bound) it->second.max_bound = bound;
}

BoundedBackend::BoundedBackend(GroupDescriptor gd, GrowthProfile profile, BudgetMeter* meter)
    : inner_(std::move(gd)), profile_(std::move(profile)), meter_(meter) {
  profile_.validate(inner_.degree());
}

LogBound BoundedBackend::product_bound(LogBound bx, int mx, LogBound by, int my) const {
  const LogBound slack = profile_.log_f_at(mx + my) - profile_.log_f_at(mx) - profile_.log_f_at(my);
  return bx + by + std::max(LogBound(0), slack);
}

BoundedElement BoundedBackend::checked(LevelledElement e, LogBound bound, int factors) const {
  const int level = e.level();
  const LogBound limit = budget(level);
  if (meter_ != nullptr) meter_->record(level, bound, limit);
  if (bound > limit)
    throw BudgetExceeded("level " + std::to_string(level) + " bound 2^" + describe(bound) +
                         " exceeds budget 2^" + describe(limit));
  return BoundedElement{std::move(e), bound, factors};
}

BoundedElement BoundedBackend::wrap(const LevelledElement& e, LogBound bound, int factors) const {
  return checked(e, bound, factors);
}

BoundedElement BoundedBackend::encode(const Exponent& a, int level) const {
  return checked(inner_.encode(a.value, level), a.log_bound, a.factors);
}

BoundedElement BoundedBackend::generator(int level) const {
  return checked(inner_.generator(level), 0, 0);
}

BoundedElement BoundedBackend::pair(const Element& x, const Element& y) const {
  LevelledElement e = inner_.pair(x.inner, y.inner);
  return checked(std::move(e), product_bound(x.log_bound, x.factors, y.log_bound, y.factors),
                 x.factors + y.factors);
}

BoundedElement BoundedBackend::mul(const Element& x, const Element& y) const {
  LevelledElement e = inner_.mul(x.inner, y.inner);
  return checked(std::move(e), log_sum_bound(x.log_bound, y.log_bound),
                 std::max(x.factors, y.factors));
}

BoundedElement BoundedBackend::inv(const Element& x) const {
  return checked(inner_.inv(x.inner), x.log_bound, x.factors);
}

BoundedElement BoundedBackend::pow(const Element& x, const Exponent& a) const {
  LevelledElement e = inner_.pow(x.inner, a.value);
  return checked(std::move(e), product_bound(x.log_bound, x.factors, a.log_bound, a.factors),
                 x.factors + a.factors);
}

BoundedScalar BoundedBackend::plus(const Exponent& a, const Exponent& b) const {
  return {inner_.plus(a.value, b.value), log_sum_bound(a.log_bound, b.log_bound),
          std::max(a.factors, b.factors)};
}

BoundedScalar BoundedBackend::minus(const Exponent& a, const Exponent& b) const {
  return {inner_.minus(a.value, b.value), log_sum_bound(a.log_bound, b.log_bound),
          std::max(a.factors, b.factors)};
}

BoundedScalar BoundedBackend::times(const Exponent& a, const Exponent& b) const {
  return {inner_.times(a.value, b.value),
          product_bound(a.log_bound, a.factors, b.log_bound, b.factors), a.factors + b.factors};
}

BoundedScalar BoundedBackend::negate(const Exponent& a) const {
  return {inner_.negate(a.value), a.log_bound, a.factors};
}

BoundedScalar BoundedBackend::sample(int level, Rng& rng) const {
  if (level < 1 || level > degree())
    throw InvalidArgument("sample level " + std::to_string(level) + " out of range");
  return {inner_.sample(level, rng), budget(level), level + 1};
}

BoundedScalar BoundedBackend::sample_small(Rng& rng) const {
  return {inner_.sample_small(rng), LogBound(profile_.size_bits), 1};
}

}  // namespace mlabe
