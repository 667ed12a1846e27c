#pragma once

#include <string>
#include <vector>

#include "rdpairs/balls.hpp"
#include "rdpairs/fixtures.hpp"
#include "rdpairs/random.hpp"

namespace rdp::test {

/// Catalog ids with their default parameters, e.g. "bs-a:n=2".
inline std::vector<std::string> catalogSpecs() {
  std::vector<std::string> out;
  for (const auto& e : fixtureCatalog()) out.push_back(FixtureSpec{e.id, e.defaults, {}}.toString());
  return out;
}

inline const ElementKey& pick(Rng& rng, const std::vector<ElementKey>& pool) {
  return pool[rng.below(pool.size())];
}

/// Random product of witnesses of H and their inverses: an element of H.
inline ElementKey randomSubgroupElement(const CosetStructure& cosets, Rng& rng, int length = 6) {
  const auto& G = cosets.group();
  ElementKey h = G.identity();
  const auto& w = cosets.witnesses();
  if (w.empty()) return h;
  for (int i = 0; i < length; ++i) {
    ElementKey s = pick(rng, w);
    if (rng.below(2)) s = G.invert(s);
    h = G.multiply(h, s);
  }
  return h;
}

inline GroupFunction<Rational> q(const ModelPtr& G, std::vector<std::pair<std::string, Rational>> vals) {
  std::vector<GroupFunction<Rational>::Entry> entries;
  for (auto& [text, v] : vals) entries.emplace_back(G->parse(text), v);
  return GroupFunction<Rational>(G, std::move(entries));
}

inline Rational r(long p, long d = 1) { return ScalarTraits<Rational>::fromRatio(p, d); }

}  // namespace rdp::test
