#pragma once

#include <memory>
#include <string>
#include <vector>

#include "apcl/errors.hpp"

namespace apcl {

// A finite list of positive reals beta_1 < beta_2 < ... declared Q-linearly
// independent (together with 1 when present, which must then be beta_1).
// Every frequency in a computation carries rational coordinates over one of
// these.  The independence itself is an assumption we record, not something
// we can decide from decimal strings; what we do enforce is that the strings
// parse, are distinct, positive, sorted, and carry enough digits that the
// double and long double images are faithful.
class RealBase {
 public:
  using Ptr = std::shared_ptr<const RealBase>;

  // `decimals` are plain decimal literals, e.g. "1" or
  // "1.41421356237309504880168872420969807857".  30+ significant digits are
  // expected for irrationals; short strings are accepted only if exact
  // (integers / terminating decimals).
  static Ptr create(std::vector<std::string> decimals);

  // The base {1}: purely periodic setting.
  static Ptr unit();

  std::size_t dim() const { return values_.size(); }
  double value(std::size_t k) const { return values_.at(k); }
  long double value_ld(std::size_t k) const { return values_ld_.at(k); }
  const std::string& label(std::size_t k) const { return labels_.at(k); }
  const std::vector<std::string>& labels() const { return labels_; }

  // Content equality (identical decimal strings).  Pointer equality is the
  // fast path; distinct objects with identical labels are still "same".
  bool same_as(const RealBase& other) const;

 private:
  explicit RealBase(std::vector<std::string> labels);

  std::vector<std::string> labels_;
  std::vector<double> values_;
  std::vector<long double> values_ld_;
};

inline void require_same_base(const RealBase& a, const RealBase& b,
                              const char* where) {
  if (!a.same_as(b))
    throw BaseMismatchError(std::string(where) +
                            ": operands built over different real bases");
}

}  // namespace apcl
