#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdpairs/group_model.hpp"
#include "rdpairs/models.hpp"

namespace rdp {

/// Growth class of the Schreier graph G/H.
enum class CoGrowth { Finite, Polynomial, Exponential };

std::string_view toString(CoGrowth c);

/// Documented expectations for a fixture pair, taken from known results, not measured.
struct FixtureInfo {
  std::string id;
  std::string description;
  bool rdExpected = true;
  CoGrowth coGrowth = CoGrowth::Polynomial;
  /// Polynomial degree of the co-growth when known.
  std::optional<int> coGrowthDegree;
};

/// A fixture id with its integer parameters. Products are written "A*B".
struct FixtureSpec {
  std::string id;
  std::map<std::string, long> params;
  std::vector<FixtureSpec> factors;  // non-empty iff this is a product

  /// Text form "id" or "id:d=3,k=2", factors joined by '*'.
  std::string toString() const;
  static FixtureSpec parse(std::string_view text);
};

struct Pair {
  ModelPtr group;
  CosetsPtr cosets;
  FixtureInfo info;
};

/// One catalog entry: id, accepted parameters with defaults, and a description.
struct CatalogEntry {
  std::string id;
  std::map<std::string, long> defaults;
  std::string description;
};

const std::vector<CatalogEntry>& fixtureCatalog();

/// Throws UnknownFixture or ParameterOutOfRange.
Pair buildFixture(const FixtureSpec& spec);
Pair buildFixture(std::string_view text);

/// (G x Gamma, H x Lambda).
Pair productPair(const Pair& first, const Pair& second);

/// An injective homomorphism K -> G given on elements, with a partial inverse.
struct Embedding {
  ModelPtr sub;
  std::function<ElementKey(const ElementKey&)> embed;
  /// Preimage in K, or nullopt when the element is not in the image.
  std::function<std::optional<ElementKey>(const ElementKey&)> preimage;
};

Embedding identityEmbedding(const ModelPtr& group);
/// Z -> Z^d onto coordinate `axis`.
Embedding latticeAxisEmbedding(const std::shared_ptr<const LatticeModel>& group, int axis);
/// Z -> F_r onto the cyclic factor of one basis letter.
Embedding freeLetterEmbedding(const std::shared_ptr<const FreeGroupModel>& group, int letter);

/// The pair (K, H) for H <= K <= G. Every recorded witness of H must have a preimage in K,
/// otherwise EmbeddingInvalid.
Pair restrictToSubgroupModel(const Pair& pair, const Embedding& k);

}  // namespace rdp
