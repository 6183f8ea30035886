#include "apcl/real_base.hpp"

#include <cctype>
#include <cstdlib>

namespace apcl {
namespace {

bool valid_decimal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = true;
    } else if (c == '.') {
      if (dot) return false;
      dot = true;
    } else {
      return false;
    }
  }
  return digits;
}

}  // namespace

RealBase::RealBase(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw ConfigError("real base: empty");
  values_.reserve(labels_.size());
  values_ld_.reserve(labels_.size());
  for (const auto& s : labels_) {
    if (!valid_decimal(s))
      throw ConfigError("real base: not a plain decimal literal: '" + s + "'");
    char* end = nullptr;
    long double v = std::strtold(s.c_str(), &end);
    if (end == nullptr || *end != '\0' || !(v > 0.0L))
      throw ConfigError("real base: entries must be positive: '" + s + "'");
    values_ld_.push_back(v);
    values_.push_back(static_cast<double>(v));
  }
  for (std::size_t k = 1; k < values_ld_.size(); ++k) {
    if (!(values_ld_[k - 1] < values_ld_[k]))
      throw ConfigError("real base: entries must be strictly increasing");
  }
  // If 1 belongs to the base it has to be the first entry, so that rational
  // frequencies always live in coordinate 0.
  for (std::size_t k = 1; k < values_ld_.size(); ++k) {
    if (values_ld_[k] == 1.0L)
      throw ConfigError("real base: the entry 1 must come first");
  }
}

RealBase::Ptr RealBase::create(std::vector<std::string> decimals) {
  return Ptr(new RealBase(std::move(decimals)));
}

RealBase::Ptr RealBase::unit() {
  static Ptr one = create({"1"});
  return one;
}

bool RealBase::same_as(const RealBase& other) const {
  if (this == &other) return true;
  return labels_ == other.labels_;
}

}  // namespace apcl
