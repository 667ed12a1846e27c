#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rdpairs/balls.hpp"
#include "rdpairs/group_model.hpp"
#include "rdpairs/scalar.hpp"

namespace rdp {

/// True when both models describe the same group (same object or same canonical name).
bool sameModel(const GroupModel& a, const GroupModel& b);

/// Finitely supported function G -> S, stored sorted by key with no zero entries.
template <class S>
class GroupFunction {
 public:
  using Entry = std::pair<ElementKey, S>;
  using Map = std::unordered_map<ElementKey, S, KeyHash>;

  explicit GroupFunction(ModelPtr group) : group_(std::move(group)) {}
  /// Drops zero values and sorts.
  GroupFunction(ModelPtr group, Map values);
  GroupFunction(ModelPtr group, std::vector<Entry> entries);

  static GroupFunction delta(ModelPtr group, const ElementKey& g,
                             const S& value = ScalarTraits<S>::one());

  const GroupModel& group() const noexcept { return *group_; }
  const ModelPtr& groupPtr() const noexcept { return group_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t supportSize() const noexcept { return entries_.size(); }
  bool isZero() const noexcept { return entries_.empty(); }

  S at(const ElementKey& g) const;
  /// All stored values are > 0.
  bool isPositive() const;

  GroupFunction absolute() const;
  GroupFunction scaled(const S& c) const;
  /// Pointwise product with a function of the element.
  template <class Fn>
  GroupFunction pointwise(Fn&& weight) const {
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (const auto& [g, v] : entries_) out.emplace_back(g, v * weight(g));
    return GroupFunction(group_, std::move(out));
  }

  friend GroupFunction operator+(const GroupFunction& a, const GroupFunction& b) {
    return combine(a, b, ScalarTraits<S>::one());
  }
  friend GroupFunction operator-(const GroupFunction& a, const GroupFunction& b) {
    return combine(a, b, -ScalarTraits<S>::one());
  }
  friend bool operator==(const GroupFunction& a, const GroupFunction& b) {
    return sameModel(*a.group_, *b.group_) && a.entries_ == b.entries_;
  }

 private:
  static GroupFunction combine(const GroupFunction& a, const GroupFunction& b, const S& sign);
  void canonicalize();

  ModelPtr group_;
  std::vector<Entry> entries_;
};

/// Exact-to-float conversion.
GroupFunction<double> toFloat(const GroupFunction<Rational>& f);

/// (f*phi)(x) = sum_z f(z) phi(z^-1 x). Throws ModelMismatch.
template <class S>
GroupFunction<S> convolve(const GroupFunction<S>& f, const GroupFunction<S>& phi);

/// f*(x) = f(x^-1).
template <class S>
GroupFunction<S> involute(const GroupFunction<S>& f);

/// Convolution power f^(n); f^(0) = delta_e.
template <class S>
GroupFunction<S> convolutionPower(const GroupFunction<S>& f, int n);

enum class NormKind { L1, L2, L21, SobolevL21, SobolevL2 };

std::string_view toString(NormKind k);

/// A norm stored through its exact square; value() is the nonnegative root.
template <class S>
struct NormValue {
  NormKind kind = NormKind::L1;
  double s = 0.0;  // Sobolev exponent, 0 otherwise
  S squared = ScalarTraits<S>::zero();

  double value() const { return std::sqrt(ScalarTraits<S>::toDouble(squared)); }
};

template <class S>
NormValue<S> norm1(const GroupFunction<S>& f);
template <class S>
NormValue<S> norm2(const GroupFunction<S>& f);

/// sum over cosets gH of ||f|_gH||_1^2, the square of the hybrid norm.
template <class S>
NormValue<S> norm21(const GroupFunction<S>& f, const CosetStructure& cosets);

/// f (1 + l)^s; s must be a nonnegative integer in exact mode. Throws SupportNotEnumerated.
template <class S>
GroupFunction<S> sobolevWeighted(const GroupFunction<S>& f, const BallIndex& ball, double s);

/// ||f (1+l)^s||_(2,1); cosets == nullptr selects the l2 base.
template <class S>
NormValue<S> sobolevNorm(const GroupFunction<S>& f, const CosetStructure* cosets,
                         const BallIndex& ball, double s);

/// Sparse function on G/H, sorted by coset key with no zero entries.
template <class S>
using CosetFunction = std::vector<std::pair<CosetKey, S>>;

/// pi#(f)(gH) = sum of f over gH.
template <class S>
CosetFunction<S> pushforward(const GroupFunction<S>& f, const CosetStructure& cosets);

/// Squared l2 norm of a coset function.
template <class S>
S squaredNorm(const CosetFunction<S>& v);

/// sum_{h in H} ((f*phi)* * psi*)(h) for positive f, phi, psi, computed by group convolution.
/// Throws NegativeEntry.
template <class S>
S cosetPairing(const GroupFunction<S>& f, const GroupFunction<S>& phi,
                    const GroupFunction<S>& psi, const CosetStructure& cosets);

/// Real and imaginary parts of a complex-valued function.
template <class S>
struct ComplexFunction {
  GroupFunction<S> re;
  GroupFunction<S> im;
};

/// f = f1 - f2 + i (f3 - f4) with f_k >= 0 and disjoint supports within each pair.
template <class S>
struct PositiveParts {
  GroupFunction<S> f1, f2, f3, f4;
};

template <class S>
PositiveParts<S> positiveDecompose(const GroupFunction<S>& f);
template <class S>
PositiveParts<S> positiveDecompose(const ComplexFunction<S>& f);

}  // namespace rdp
