#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "rdpairs/balls.hpp"
#include "rdpairs/harmonic.hpp"

namespace rdp {

inline constexpr std::size_t kDefaultGraphCap = 5'000'000;

/// Ball of radius R around the base vertex H in the left Schreier graph of (G, H, S).
///
/// Vertices are numbered in BFS order, so distances are nondecreasing in the index.
/// target(v, s) is the vertex s.vH, or -1 when that coset lies outside the built ball
/// (only possible at distance R). Loops are stored like any other edge.
class SchreierGraph {
 public:
  const CosetStructure& cosets() const noexcept { return *cosets_; }
  const CosetsPtr& cosetsPtr() const noexcept { return cosets_; }
  const GroupModel& group() const noexcept { return cosets_->group(); }
  int radius() const noexcept { return radius_; }
  /// Every edge stays inside the graph: the quotient is finite and fully enumerated.
  bool complete() const noexcept { return complete_; }

  std::size_t size() const noexcept { return keys_.size(); }
  const CosetKey& key(int v) const { return keys_.at(v); }
  int distance(int v) const { return dist_.at(v); }
  /// Minimal-length element of the coset, found as s.rep(u) by the BFS.
  const ElementKey& representative(int v) const { return reps_.at(v); }
  int target(int v, std::size_t generator) const { return adj_[v * degree_ + generator]; }
  std::size_t degree() const noexcept { return degree_; }

  /// Vertex index of a coset, -1 if not enumerated.
  int find(const CosetKey& c) const;
  int find(const ElementKey& g) const { return find(cosets_->cosetKey(g)); }

  /// gamma(H, r) = number of vertices within distance r, r = 0..R.
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  /// Number of vertices at distance <= r.
  std::size_t ballSize(int r) const;

  /// gamma(v, r) for r = 0..maxR, by BFS inside the built graph; requires
  /// distance(v) + maxR <= radius() so the count is not truncated.
  std::vector<std::uint64_t> countsFrom(int v, int maxR) const;

 private:
  friend SchreierGraph buildSchreier(const CosetsPtr&, int, std::size_t);

  CosetsPtr cosets_;
  int radius_ = 0;
  bool complete_ = true;
  std::size_t degree_ = 0;
  std::vector<CosetKey> keys_;
  std::vector<int> dist_;
  std::vector<ElementKey> reps_;
  std::vector<int> adj_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<CosetKey, int, KeyHash> index_;
};

/// Throws CapError(GraphTooLarge) with the last completed radius.
SchreierGraph buildSchreier(const CosetsPtr& cosets, int radius,
                            std::size_t cap = kDefaultGraphCap);

GrowthSeries schreierGrowth(const SchreierGraph& graph, const ClassifierOptions& options = {});

struct FolnerWitness {
  int radius = 0;            // V is the Schreier ball of this radius
  std::size_t volume = 0;    // |V|
  std::size_t boundary = 0;  // |F.V symmetric-difference V|
  double ratio = 0.0;
};

/// First Schreier ball V (by radius 0..R) with |F.V sym-diff V| <= eps |V|, where F.V is the
/// set {f.v}. Absence within the built radius is a legitimate result.
std::optional<FolnerWitness> folnerSearch(const SchreierGraph& graph,
                                          const std::vector<ElementKey>& F, double eps);

/// |F.V sym-diff V| for the Schreier ball of radius r.
std::size_t folnerBoundary(const SchreierGraph& graph, const std::vector<ElementKey>& F, int r);

/// 0/1 indicator of one minimal-length representative per coset in the Schreier R-ball,
/// ties broken by smallest encoding over the whole ball. Throws BallInsufficient if
/// ball.radius() < R or a coset has no representative in the ball.
template <class S>
GroupFunction<S> cosetRepresentativeIndicator(const SchreierGraph& graph, int R,
                                              const BallIndex& ball);

/// Same, using the representatives recorded by the BFS.
template <class S>
GroupFunction<S> cosetRepresentativeIndicator(const SchreierGraph& graph, int R);

}  // namespace rdp
