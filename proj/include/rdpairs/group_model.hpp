#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdpairs/keys.hpp"

namespace rdp {

struct Generator {
  std::string label;
  ElementKey key;
};

/// An exactly represented finitely generated group with a symmetric generating set.
///
/// Element keys are canonical: two keys compare equal iff the elements are equal.
/// All operations are pure and safe to call concurrently.
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  const std::string& name() const noexcept { return name_; }
  const ElementKey& identity() const noexcept { return identity_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }

  /// Throws MalformedKey if either key does not decode in this model.
  virtual ElementKey multiply(const ElementKey& g, const ElementKey& h) const = 0;
  virtual ElementKey invert(const ElementKey& g) const = 0;

  /// Human-readable form; parse(format(g)) == g.
  virtual std::string format(const ElementKey& g) const = 0;
  virtual ElementKey parse(std::string_view text) const = 0;

  /// Group order when finite.
  virtual std::optional<std::size_t> order() const { return std::nullopt; }

  /// Whether G is known to be amenable (abelian, nilpotent, solvable or finite fixtures).
  virtual bool amenable() const = 0;

 protected:
  GroupModel(std::string name, ElementKey identity)
      : name_(std::move(name)), identity_(std::move(identity)) {}

  /// Installs the generating set; throws InvalidArgument unless it is closed under inversion.
  void setGenerators(std::vector<Generator> generators);

 private:
  std::string name_;
  ElementKey identity_;
  std::vector<Generator> generators_;
};

using ModelPtr = std::shared_ptr<const GroupModel>;

/// Facts about H <= G that are known mathematically for a fixture, not measured.
struct SubgroupTraits {
  bool normal = false;
  bool coAmenable = false;  // left action of G on G/H is amenable
  bool trivial = false;     // H = {e}
  bool whole = false;       // H = G
};

/// Left cosets gH of a subgroup H, realized by a total coset-key function.
class CosetStructure {
 public:
  using KeyFn = std::function<CosetKey(const ElementKey&)>;
  using FormatFn = std::function<std::string(const CosetKey&)>;

  /// `witnesses` are elements known to lie in H (its generators when H is finitely generated).
  CosetStructure(ModelPtr group, std::string subgroupName, KeyFn key, FormatFn format,
                 std::vector<ElementKey> witnesses, SubgroupTraits traits);

  const GroupModel& group() const noexcept { return *group_; }
  const ModelPtr& groupPtr() const noexcept { return group_; }
  const std::string& subgroupName() const noexcept { return subgroupName_; }
  const SubgroupTraits& traits() const noexcept { return traits_; }
  const std::vector<ElementKey>& witnesses() const noexcept { return witnesses_; }

  CosetKey cosetKey(const ElementKey& g) const { return key_(g); }
  const CosetKey& base() const noexcept { return base_; }
  bool inSubgroup(const ElementKey& g) const { return key_(g) == base_; }
  std::string format(const CosetKey& c) const { return format_(c); }

 private:
  ModelPtr group_;
  std::string subgroupName_;
  KeyFn key_;
  FormatFn format_;
  std::vector<ElementKey> witnesses_;
  SubgroupTraits traits_;
  CosetKey base_;
};

using CosetsPtr = std::shared_ptr<const CosetStructure>;

/// H = {e}: the coset key is the element key itself.
CosetsPtr trivialSubgroup(const ModelPtr& group);

/// H = G: every element has the empty coset key.
CosetsPtr wholeGroup(const ModelPtr& group);

}  // namespace rdp
