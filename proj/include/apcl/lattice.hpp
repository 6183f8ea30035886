#pragma once

#include <optional>
#include <span>
#include <vector>

#include "apcl/trig_poly.hpp"

namespace apcl {

using IntMat = std::vector<std::vector<BigInt>>;

// Row Hermite normal form: positive pivots, entries above each pivot reduced
// into [0, pivot), zero rows dropped, rows ordered by pivot column.
IntMat hnf(IntMat rows);

// Same reduction keeping zero rows, together with a unimodular U such that
// U * A = h_full.  Rows of U facing zero rows of h_full span the left integer
// kernel of A.
struct HnfTransform {
  IntMat h_full;
  IntMat u;
};
HnfTransform hnf_with_transform(IntMat rows);

// Integer vectors k with k^T A = 0, as rows.
IntMat left_kernel(const IntMat& rows, std::size_t cols);

// Finitely generated additive subgroup of frequencies: the Z-span of
// rows/denom.  Stored in canonical form (HNF rows, gcd(denom, content) = 1),
// so equal groups are bit-identical.
struct FreqGroup {
  RealBase::Ptr base;
  int dims = 0;
  BigInt denom = 1;
  IntMat rows;  // HNF, no zero rows; each row has dims * base->dim() entries

  int rank() const { return static_cast<int>(rows.size()); }
  Frequency generator(int i) const;
  std::vector<Frequency> generators() const;
};

// Smallest additive group containing the given frequencies.
FreqGroup group_generated(std::span<const Frequency> gens);
// Group of the spectrum of p.
FreqGroup spectrum_group(const TrigPoly& p);

// Membership with an integer certificate over the group's stored generators:
// lambda = sum coeffs[i] * generator(i).
struct MemberCert {
  bool in_group = false;
  std::vector<BigInt> coeffs;
};
MemberCert member(const FreqGroup& g, const Frequency& lambda);

// Maximal Q-linearly independent subset of a frequency list (greedy, input
// order), with exact rational coordinates for anything in its span.
class QBasis {
 public:
  QBasis(RealBase::Ptr base, int dims) : base_(std::move(base)), dims_(dims) {}

  int dims() const { return dims_; }
  const RealBase::Ptr& base() const { return base_; }
  std::size_t size() const { return vecs_.size(); }
  const Frequency& at(std::size_t i) const { return vecs_.at(i); }
  const std::vector<Frequency>& vectors() const { return vecs_; }

  // Appends lambda if it enlarges the span; returns whether it did.
  bool extend(const Frequency& lambda);

  std::optional<std::vector<Rational>> try_coords(const Frequency& lambda) const;
  // Throws SpanError when lambda is outside the span.
  std::vector<Rational> coords(const Frequency& lambda) const;

 private:
  RealBase::Ptr base_;
  int dims_;
  std::vector<Frequency> vecs_;
};

QBasis qlinear_basis(std::span<const Frequency> freqs);

}  // namespace apcl
