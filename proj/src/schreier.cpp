#include "rdpairs/schreier.hpp"

#include <deque>
#include <unordered_set>

#include "rdpairs/error.hpp"

namespace rdp {

int SchreierGraph::find(const CosetKey& c) const {
  const auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

std::size_t SchreierGraph::ballSize(int r) const {
  if (r < 0) return 0;
  if (r > radius_) r = radius_;
  return static_cast<std::size_t>(counts_[r]);
}

std::vector<std::uint64_t> SchreierGraph::countsFrom(int v, int maxR) const {
  if (dist_.at(v) + maxR > radius_) {
    throw Error(ErrorCode::InvalidArgument, "ball around vertex leaves the built graph");
  }
  std::vector<int> d(size(), -1);
  d[v] = 0;
  std::deque<int> queue{v};
  std::vector<std::uint64_t> out(maxR + 1, 0);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    ++out[d[u]];
    if (d[u] == maxR) continue;
    for (std::size_t s = 0; s < degree_; ++s) {
      const int w = target(u, s);
      if (w >= 0 && d[w] < 0) {
        d[w] = d[u] + 1;
        queue.push_back(w);
      }
    }
  }
  for (int r = 1; r <= maxR; ++r) out[r] += out[r - 1];
  return out;
}

SchreierGraph buildSchreier(const CosetsPtr& cosets, int radius, std::size_t cap) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be >= 0");
  const GroupModel& G = cosets->group();
  const auto& gens = G.generators();
  SchreierGraph out;
  out.cosets_ = cosets;
  out.radius_ = radius;
  out.degree_ = gens.size();
  out.keys_.push_back(cosets->base());
  out.dist_.push_back(0);
  out.reps_.push_back(G.identity());
  out.index_.emplace(cosets->base(), 0);

  std::size_t layerBegin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t layerEnd = out.keys_.size();
    // Collect every candidate s.rep(u) for the new layer; keep the smallest encoding.
    std::unordered_map<CosetKey, ElementKey, KeyHash> fresh;
    std::vector<CosetKey> order;
    for (std::size_t u = layerBegin; u < layerEnd; ++u) {
      for (const auto& s : gens) {
        ElementKey x = G.multiply(s.key, out.reps_[u]);
        CosetKey c = cosets->cosetKey(x);
        if (out.index_.contains(c)) continue;
        auto [it, inserted] = fresh.try_emplace(c, x);
        if (inserted) {
          order.push_back(std::move(c));
        } else if (x < it->second) {
          it->second = std::move(x);
        }
      }
    }
    if (out.keys_.size() + order.size() > cap) {
      throw CapError(ErrorCode::GraphTooLarge,
                     "Schreier graph exceeds " + std::to_string(cap) + " vertices at radius " +
                         std::to_string(r),
                     r - 1);
    }
    for (auto& c : order) {
      out.index_.emplace(c, static_cast<int>(out.keys_.size()));
      out.reps_.push_back(std::move(fresh.at(c)));
      out.keys_.push_back(std::move(c));
      out.dist_.push_back(r);
    }
    layerBegin = layerEnd;
    if (order.empty()) break;
  }

  out.adj_.assign(out.keys_.size() * out.degree_, -1);
  out.complete_ = true;
  for (std::size_t v = 0; v < out.keys_.size(); ++v) {
    for (std::size_t s = 0; s < out.degree_; ++s) {
      const int w = out.find(cosets->cosetKey(G.multiply(gens[s].key, out.reps_[v])));
      out.adj_[v * out.degree_ + s] = w;
      if (w < 0) out.complete_ = false;
    }
  }
  out.counts_.assign(radius + 1, 0);
  for (int d : out.dist_) ++out.counts_[d];
  for (int r = 1; r <= radius; ++r) out.counts_[r] += out.counts_[r - 1];
  return out;
}

GrowthSeries schreierGrowth(const SchreierGraph& graph, const ClassifierOptions& options) {
  return growthSeries(graph.counts(), options);
}

std::size_t folnerBoundary(const SchreierGraph& graph, const std::vector<ElementKey>& F, int r) {
  const GroupModel& G = graph.group();
  const std::size_t n = graph.ballSize(r);
  std::unordered_set<CosetKey, KeyHash> inV;
  for (std::size_t v = 0; v < n; ++v) inV.insert(graph.key(static_cast<int>(v)));
  std::unordered_set<CosetKey, KeyHash> image;
  for (const auto& f : F) {
    for (std::size_t v = 0; v < n; ++v) {
      image.insert(graph.cosets().cosetKey(G.multiply(f, graph.representative(static_cast<int>(v)))));
    }
  }
  std::size_t shared = 0;
  for (const auto& c : image) shared += inV.contains(c) ? 1 : 0;
  return (image.size() - shared) + (inV.size() - shared);
}

std::optional<FolnerWitness> folnerSearch(const SchreierGraph& graph,
                                          const std::vector<ElementKey>& F, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
  for (int r = 0; r <= graph.radius(); ++r) {
    const std::size_t volume = graph.ballSize(r);
    const std::size_t boundary = folnerBoundary(graph, F, r);
    if (static_cast<double>(boundary) <= eps * static_cast<double>(volume)) {
      return FolnerWitness{r, volume, boundary,
                           static_cast<double>(boundary) / static_cast<double>(volume)};
    }
    if (r > 0 && graph.ballSize(r) == graph.ballSize(r - 1)) break;  // graph exhausted
  }
  return std::nullopt;
}

template <class S>
GroupFunction<S> cosetRepresentativeIndicator(const SchreierGraph& graph, int R,
                                              const BallIndex& ball) {
  if (R < 0 || R > graph.radius()) {
    throw Error(ErrorCode::InvalidArgument, "R must lie in [0, graph radius]");
  }
  if (ball.radius() < R) {
    throw Error(ErrorCode::BallInsufficient, "ball radius " + std::to_string(ball.radius()) +
                                                 " < R = " + std::to_string(R));
  }
  const std::size_t n = graph.ballSize(R);
  std::vector<std::optional<ElementKey>> best(n);
  std::size_t found = 0;
  for (int len = 0; len <= ball.radius() && found < n; ++len) {
    std::vector<std::size_t> hitNow;
    for (const auto& g : ball.sphere(len)) {
      const int v = graph.find(g);
      if (v < 0 || static_cast<std::size_t>(v) >= n) continue;
      auto& slot = best[v];
      if (slot && graph.distance(v) < len) continue;  // already settled at a shorter length
      if (!slot) {
        slot = g;
        hitNow.push_back(v);
      } else if (g < *slot) {
        slot = g;
      }
    }
    found += hitNow.size();
  }
  std::vector<typename GroupFunction<S>::Entry> entries;
  for (std::size_t v = 0; v < n; ++v) {
    if (!best[v]) {
      throw Error(ErrorCode::BallInsufficient,
                  "coset " + graph.cosets().format(graph.key(static_cast<int>(v))) +
                      " has no representative in B(" + std::to_string(ball.radius()) + ")");
    }
    entries.emplace_back(*best[v], ScalarTraits<S>::one());
  }
  return GroupFunction<S>(graph.cosets().groupPtr(), std::move(entries));
}

template <class S>
GroupFunction<S> cosetRepresentativeIndicator(const SchreierGraph& graph, int R) {
  if (R < 0 || R > graph.radius()) {
    throw Error(ErrorCode::InvalidArgument, "R must lie in [0, graph radius]");
  }
  std::vector<typename GroupFunction<S>::Entry> entries;
  const std::size_t n = graph.ballSize(R);
  for (std::size_t v = 0; v < n; ++v) {
    entries.emplace_back(graph.representative(static_cast<int>(v)), ScalarTraits<S>::one());
  }
  return GroupFunction<S>(graph.cosets().groupPtr(), std::move(entries));
}

template GroupFunction<Rational> cosetRepresentativeIndicator(const SchreierGraph&, int,
                                                              const BallIndex&);
template GroupFunction<double> cosetRepresentativeIndicator(const SchreierGraph&, int,
                                                            const BallIndex&);
template GroupFunction<Rational> cosetRepresentativeIndicator(const SchreierGraph&, int);
template GroupFunction<double> cosetRepresentativeIndicator(const SchreierGraph&, int);

}  // namespace rdp
