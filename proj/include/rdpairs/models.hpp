#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rdpairs/group_model.hpp"
#include "rdpairs/scalar.hpp"

namespace rdp {

/// Z^d with generators +-e_i. Keys: d little-endian int64 coordinates.
class LatticeModel final : public GroupModel {
 public:
  explicit LatticeModel(int dimension);

  int dimension() const noexcept { return dim_; }
  ElementKey encode(const std::vector<std::int64_t>& coords) const;
  std::vector<std::int64_t> decode(const ElementKey& g) const;

  ElementKey multiply(const ElementKey& g, const ElementKey& h) const override;
  ElementKey invert(const ElementKey& g) const override;
  std::string format(const ElementKey& g) const override;
  ElementKey parse(std::string_view text) const override;
  bool amenable() const override { return true; }

 private:
  int dim_;
};

/// Discrete Heisenberg group, (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
/// Generators x = (1,0,0), y = (0,1,0) and inverses. Keys: three little-endian int64.
class HeisenbergModel final : public GroupModel {
 public:
  HeisenbergModel();

  ElementKey encode(std::int64_t a, std::int64_t b, std::int64_t c) const;
  std::array<std::int64_t, 3> decode(const ElementKey& g) const;

  ElementKey multiply(const ElementKey& g, const ElementKey& h) const override;
  ElementKey invert(const ElementKey& g) const override;
  std::string format(const ElementKey& g) const override;
  ElementKey parse(std::string_view text) const override;
  bool amenable() const override { return true; }
};

/// Free group of rank r <= 26. Keys: freely reduced words over 'a'..; upper case is the inverse.
class FreeGroupModel final : public GroupModel {
 public:
  explicit FreeGroupModel(int rank);

  int rank() const noexcept { return rank_; }
  /// Validates letters and reduction; returns the word.
  const std::string& word(const ElementKey& g) const;
  static std::string reduce(std::string_view word);

  ElementKey multiply(const ElementKey& g, const ElementKey& h) const override;
  ElementKey invert(const ElementKey& g) const override;
  std::string format(const ElementKey& g) const override;
  ElementKey parse(std::string_view text) const override;
  bool amenable() const override { return rank_ <= 1; }

 private:
  int rank_;
};

/// BS(1,n) = Z x| Z[1/n] as affine pairs (k, x) with (k,x)(k',x') = (k+k', x + n^k x').
/// t = (1,0), a = (0,1). Keys: text "k|x" with x a rational in lowest terms.
class BaumslagSolitarModel final : public GroupModel {
 public:
  struct Element {
    std::int64_t k = 0;
    Rational x;
  };

  explicit BaumslagSolitarModel(int n);

  int parameter() const noexcept { return n_; }
  ElementKey encode(const Element& e) const;
  Element decode(const ElementKey& g) const;
  /// n^k as an exact rational, for any integer k.
  Rational scale(std::int64_t k) const;

  ElementKey multiply(const ElementKey& g, const ElementKey& h) const override;
  ElementKey invert(const ElementKey& g) const override;
  std::string format(const ElementKey& g) const override;
  ElementKey parse(std::string_view text) const override;
  bool amenable() const override { return true; }

 private:
  bool inRing(const Rational& x) const;
  int n_;
};

/// Subgroup of Sym(degree) generated by the given permutations (0-based images).
/// Keys: one byte per point, the image of that point. Product is composition g(h(i)).
class PermutationModel final : public GroupModel {
 public:
  struct NamedPermutation {
    std::string label;
    std::vector<std::uint8_t> images;
  };

  PermutationModel(std::string name, int degree, std::vector<NamedPermutation> generators);

  int degree() const noexcept { return degree_; }
  ElementKey encode(const std::vector<std::uint8_t>& images) const;
  std::vector<std::uint8_t> decode(const ElementKey& g) const;

  ElementKey multiply(const ElementKey& g, const ElementKey& h) const override;
  ElementKey invert(const ElementKey& g) const override;
  std::string format(const ElementKey& g) const override;
  ElementKey parse(std::string_view text) const override;
  std::optional<std::size_t> order() const override { return order_; }
  bool amenable() const override { return true; }

 private:
  int degree_;
  std::size_t order_ = 0;
};

/// G1 x G2 with generating set (S1 x {e}) u ({e} x S2). Keys: length-prefixed concatenation.
class ProductModel final : public GroupModel {
 public:
  ProductModel(ModelPtr first, ModelPtr second);

  const GroupModel& first() const noexcept { return *first_; }
  const GroupModel& second() const noexcept { return *second_; }
  const ModelPtr& firstPtr() const noexcept { return first_; }
  const ModelPtr& secondPtr() const noexcept { return second_; }

  ElementKey pair(const ElementKey& g1, const ElementKey& g2) const;
  std::pair<ElementKey, ElementKey> split(const ElementKey& g) const;

  ElementKey multiply(const ElementKey& g, const ElementKey& h) const override;
  ElementKey invert(const ElementKey& g) const override;
  std::string format(const ElementKey& g) const override;
  ElementKey parse(std::string_view text) const override;
  std::optional<std::size_t> order() const override;
  bool amenable() const override { return first_->amenable() && second_->amenable(); }

 private:
  ModelPtr first_;
  ModelPtr second_;
};

std::shared_ptr<const LatticeModel> makeLattice(int dimension);
std::shared_ptr<const HeisenbergModel> makeHeisenberg();
std::shared_ptr<const FreeGroupModel> makeFreeGroup(int rank);
std::shared_ptr<const BaumslagSolitarModel> makeBaumslagSolitar(int n);
/// S4 generated by the Coxeter transpositions (0 1), (1 2), (2 3).
std::shared_ptr<const PermutationModel> makeSymmetric4();
/// Symmetries of a square on vertices 0..3: rotation r, r^-1 and reflection s.
std::shared_ptr<const PermutationModel> makeDihedral8();
std::shared_ptr<const ProductModel> makeProduct(ModelPtr first, ModelPtr second);

}  // namespace rdp
