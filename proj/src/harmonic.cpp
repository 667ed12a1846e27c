#include "rdpairs/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "rdpairs/error.hpp"

namespace rdp {

bool sameModel(const GroupModel& a, const GroupModel& b) {
  return &a == &b || a.name() == b.name();
}

namespace {

void requireSameModel(const GroupModel& a, const GroupModel& b) {
  if (!sameModel(a, b)) {
    throw Error(ErrorCode::ModelMismatch, "functions live on " + a.name() + " and " + b.name());
  }
}

template <class S>
S weightPower(int length, double s) {
  if constexpr (ScalarTraits<S>::mode == Mode::Exact) {
    return powRational(Rational(1 + length), static_cast<unsigned>(s));
  } else {
    return std::pow(1.0 + length, s);
  }
}

template <class S>
void requireExponent(double s) {
  if (!(s >= 0.0)) throw Error(ErrorCode::InvalidArgument, "Sobolev exponent must be >= 0");
  if constexpr (ScalarTraits<S>::mode == Mode::Exact) {
    if (s != std::floor(s) || s > 64) {
      throw Error(ErrorCode::InvalidArgument,
                  "exact mode needs an integer Sobolev exponent in [0, 64]");
    }
  }
}

}  // namespace

template <class S>
GroupFunction<S>::GroupFunction(ModelPtr group, Map values) : group_(std::move(group)) {
  entries_.reserve(values.size());
  for (auto& [g, v] : values) entries_.emplace_back(g, std::move(v));
  canonicalize();
}

template <class S>
GroupFunction<S>::GroupFunction(ModelPtr group, std::vector<Entry> entries)
    : group_(std::move(group)), entries_(std::move(entries)) {
  canonicalize();
}

template <class S>
void GroupFunction<S>::canonicalize() {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  // Merge duplicate keys in order, then drop zeros.
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (auto& e : entries_) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const Entry& e) { return ScalarTraits<S>::isZero(e.second); });
  entries_ = std::move(out);
}

template <class S>
GroupFunction<S> GroupFunction<S>::delta(ModelPtr group, const ElementKey& g, const S& value) {
  return GroupFunction(std::move(group), std::vector<Entry>{{g, value}});
}

template <class S>
S GroupFunction<S>::at(const ElementKey& g) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), g,
                                   [](const Entry& e, const ElementKey& k) { return e.first < k; });
  if (it != entries_.end() && it->first == g) return it->second;
  return ScalarTraits<S>::zero();
}

template <class S>
bool GroupFunction<S>::isPositive() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return !ScalarTraits<S>::isNegative(e.second); });
}

template <class S>
GroupFunction<S> GroupFunction<S>::absolute() const {
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const auto& [g, v] : entries_) out.emplace_back(g, ScalarTraits<S>::absolute(v));
  return GroupFunction(group_, std::move(out));
}

template <class S>
GroupFunction<S> GroupFunction<S>::scaled(const S& c) const {
  return pointwise([&](const ElementKey&) { return c; });
}

template <class S>
GroupFunction<S> GroupFunction<S>::combine(const GroupFunction& a, const GroupFunction& b,
                                           const S& sign) {
  requireSameModel(*a.group_, *b.group_);
  std::vector<Entry> out;
  out.reserve(a.entries_.size() + b.entries_.size());
  for (const auto& e : a.entries_) out.push_back(e);
  for (const auto& [g, v] : b.entries_) out.emplace_back(g, sign * v);
  return GroupFunction(a.group_, std::move(out));
}

GroupFunction<double> toFloat(const GroupFunction<Rational>& f) {
  std::vector<GroupFunction<double>::Entry> out;
  out.reserve(f.supportSize());
  for (const auto& [g, v] : f.entries()) out.emplace_back(g, v.get_d());
  return GroupFunction<double>(f.groupPtr(), std::move(out));
}

template <class S>
GroupFunction<S> convolve(const GroupFunction<S>& f, const GroupFunction<S>& phi) {
  requireSameModel(f.group(), phi.group());
  const GroupModel& G = f.group();
  std::unordered_map<ElementKey, Accumulator<S>, KeyHash> acc;
  acc.reserve(f.supportSize() * phi.supportSize());
  if (f.supportSize() <= phi.supportSize()) {
    for (const auto& [a, x] : f.entries()) {
      for (const auto& [b, y] : phi.entries()) acc[G.multiply(a, b)].add(x * y);
    }
  } else {
    for (const auto& [b, y] : phi.entries()) {
      for (const auto& [a, x] : f.entries()) acc[G.multiply(a, b)].add(x * y);
    }
  }
  std::vector<typename GroupFunction<S>::Entry> out;
  out.reserve(acc.size());
  for (auto& [g, a] : acc) out.emplace_back(g, a.value());
  return GroupFunction<S>(f.groupPtr(), std::move(out));
}

template <class S>
GroupFunction<S> involute(const GroupFunction<S>& f) {
  std::vector<typename GroupFunction<S>::Entry> out;
  out.reserve(f.supportSize());
  for (const auto& [g, v] : f.entries()) out.emplace_back(f.group().invert(g), v);
  return GroupFunction<S>(f.groupPtr(), std::move(out));
}

template <class S>
GroupFunction<S> convolutionPower(const GroupFunction<S>& f, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "convolution power must be >= 0");
  GroupFunction<S> out = GroupFunction<S>::delta(f.groupPtr(), f.group().identity());
  for (int i = 0; i < n; ++i) out = convolve(out, f);
  return out;
}

std::string_view toString(NormKind k) {
  switch (k) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::L21: return "l21";
    case NormKind::SobolevL21: return "sobolev-l21";
    case NormKind::SobolevL2: return "sobolev-l2";
  }
  return "?";
}

template <class S>
NormValue<S> norm1(const GroupFunction<S>& f) {
  Accumulator<S> acc;
  for (const auto& [g, v] : f.entries()) acc.add(ScalarTraits<S>::absolute(v));
  const S total = acc.value();
  return {NormKind::L1, 0.0, total * total};
}

template <class S>
NormValue<S> norm2(const GroupFunction<S>& f) {
  Accumulator<S> acc;
  for (const auto& [g, v] : f.entries()) acc.add(v * v);
  return {NormKind::L2, 0.0, acc.value()};
}

template <class S>
CosetFunction<S> pushforward(const GroupFunction<S>& f, const CosetStructure& cosets) {
  requireSameModel(f.group(), cosets.group());
  std::unordered_map<CosetKey, Accumulator<S>, KeyHash> acc;
  for (const auto& [g, v] : f.entries()) acc[cosets.cosetKey(g)].add(v);
  CosetFunction<S> out;
  out.reserve(acc.size());
  for (auto& [c, a] : acc) {
    S v = a.value();
    if (!ScalarTraits<S>::isZero(v)) out.emplace_back(c, std::move(v));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

template <class S>
S squaredNorm(const CosetFunction<S>& v) {
  Accumulator<S> acc;
  for (const auto& [c, x] : v) acc.add(x * x);
  return acc.value();
}

template <class S>
NormValue<S> norm21(const GroupFunction<S>& f, const CosetStructure& cosets) {
  requireSameModel(f.group(), cosets.group());
  // Coset l1 sums accumulated in one pass; f|_gH is never materialized.
  std::unordered_map<CosetKey, Accumulator<S>, KeyHash> acc;
  for (const auto& [g, v] : f.entries()) acc[cosets.cosetKey(g)].add(ScalarTraits<S>::absolute(v));
  std::vector<std::pair<CosetKey, S>> sums;
  sums.reserve(acc.size());
  for (auto& [c, a] : acc) sums.emplace_back(c, a.value());
  std::sort(sums.begin(), sums.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Accumulator<S> total;
  for (const auto& [c, x] : sums) total.add(x * x);
  return {NormKind::L21, 0.0, total.value()};
}

template <class S>
GroupFunction<S> sobolevWeighted(const GroupFunction<S>& f, const BallIndex& ball, double s) {
  requireExponent<S>(s);
  requireSameModel(f.group(), ball.group());
  for (const auto& [g, v] : f.entries()) {
    if (!ball.contains(g)) {
      throw Error(ErrorCode::SupportNotEnumerated,
                  f.group().format(g) + " lies outside B(" + std::to_string(ball.radius()) + ")");
    }
  }
  return f.pointwise([&](const ElementKey& g) { return weightPower<S>(ball.wordLength(g), s); });
}

template <class S>
NormValue<S> sobolevNorm(const GroupFunction<S>& f, const CosetStructure* cosets,
                         const BallIndex& ball, double s) {
  const GroupFunction<S> w = sobolevWeighted(f, ball, s);
  NormValue<S> out = cosets ? norm21(w, *cosets) : norm2(w);
  out.kind = cosets ? NormKind::SobolevL21 : NormKind::SobolevL2;
  out.s = s;
  return out;
}

template <class S>
S cosetPairing(const GroupFunction<S>& f, const GroupFunction<S>& phi,
                    const GroupFunction<S>& psi, const CosetStructure& cosets) {
  for (const auto* u : {&f, &phi, &psi}) {
    if (!u->isPositive()) throw Error(ErrorCode::NegativeEntry, "pairing needs positive inputs");
    requireSameModel(u->group(), cosets.group());
  }
  const GroupFunction<S> F = convolve(f, phi);
  const GroupFunction<S> pair = convolve(involute(F), involute(psi));
  Accumulator<S> acc;
  for (const auto& [g, v] : pair.entries()) {
    if (cosets.inSubgroup(g)) acc.add(v);
  }
  return acc.value();
}

template <class S>
PositiveParts<S> positiveDecompose(const ComplexFunction<S>& f) {
  auto split = [](const GroupFunction<S>& u) {
    std::vector<typename GroupFunction<S>::Entry> pos;
    std::vector<typename GroupFunction<S>::Entry> neg;
    for (const auto& [g, v] : u.entries()) {
      if (ScalarTraits<S>::isNegative(v)) {
        neg.emplace_back(g, -v);
      } else {
        pos.emplace_back(g, v);
      }
    }
    return std::pair{GroupFunction<S>(u.groupPtr(), std::move(pos)),
                     GroupFunction<S>(u.groupPtr(), std::move(neg))};
  };
  auto [f1, f2] = split(f.re);
  auto [f3, f4] = split(f.im);
  return {std::move(f1), std::move(f2), std::move(f3), std::move(f4)};
}

template <class S>
PositiveParts<S> positiveDecompose(const GroupFunction<S>& f) {
  return positiveDecompose(ComplexFunction<S>{f, GroupFunction<S>(f.groupPtr())});
}

#define RDP_INSTANTIATE(S)                                                                   \
  template class GroupFunction<S>;                                                           \
  template GroupFunction<S> convolve(const GroupFunction<S>&, const GroupFunction<S>&);     \
  template GroupFunction<S> involute(const GroupFunction<S>&);                              \
  template GroupFunction<S> convolutionPower(const GroupFunction<S>&, int);                 \
  template NormValue<S> norm1(const GroupFunction<S>&);                                     \
  template NormValue<S> norm2(const GroupFunction<S>&);                                     \
  template NormValue<S> norm21(const GroupFunction<S>&, const CosetStructure&);             \
  template GroupFunction<S> sobolevWeighted(const GroupFunction<S>&, const BallIndex&,      \
                                            double);                                         \
  template NormValue<S> sobolevNorm(const GroupFunction<S>&, const CosetStructure*,         \
                                    const BallIndex&, double);                               \
  template CosetFunction<S> pushforward(const GroupFunction<S>&, const CosetStructure&);    \
  template S squaredNorm(const CosetFunction<S>&);                                          \
  template S cosetPairing(const GroupFunction<S>&, const GroupFunction<S>&,            \
                               const GroupFunction<S>&, const CosetStructure&);             \
  template PositiveParts<S> positiveDecompose(const GroupFunction<S>&);                     \
  template PositiveParts<S> positiveDecompose(const ComplexFunction<S>&);

RDP_INSTANTIATE(Rational)
RDP_INSTANTIATE(double)

#undef RDP_INSTANTIATE

}  // namespace rdp
