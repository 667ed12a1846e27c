#include "rdpairs/group_model.hpp"

#include <algorithm>

#include "rdpairs/error.hpp"

namespace rdp {

void GroupModel::setGenerators(std::vector<Generator> generators) {
  for (const auto& s : generators) {
    const ElementKey inv = invert(s.key);
    const bool found = std::any_of(generators.begin(), generators.end(),
                                   [&](const Generator& t) { return t.key == inv; });
    if (!found) {
      throw Error(ErrorCode::InvalidArgument,
                  "generating set of " + name_ + " is not symmetric: missing inverse of " + s.label);
    }
  }
  generators_ = std::move(generators);
}

CosetStructure::CosetStructure(ModelPtr group, std::string subgroupName, KeyFn key,
                               FormatFn format, std::vector<ElementKey> witnesses,
                               SubgroupTraits traits)
    : group_(std::move(group)),
      subgroupName_(std::move(subgroupName)),
      key_(std::move(key)),
      format_(std::move(format)),
      witnesses_(std::move(witnesses)),
      traits_(traits) {
  // Every subgroup of an amenable group is co-amenable.
  if (group_->amenable()) traits_.coAmenable = true;
  base_ = key_(group_->identity());
}

CosetsPtr trivialSubgroup(const ModelPtr& group) {
  SubgroupTraits traits;
  traits.normal = true;
  traits.trivial = true;
  const GroupModel* g = group.get();
  traits.coAmenable = group->amenable();
  return std::make_shared<CosetStructure>(
      group, "{e}", [](const ElementKey& x) { return CosetKey(x.bytes()); },
      [g](const CosetKey& c) { return g->format(ElementKey(c.bytes())); },
      std::vector<ElementKey>{}, traits);
}

CosetsPtr wholeGroup(const ModelPtr& group) {
  SubgroupTraits traits;
  traits.normal = true;
  traits.coAmenable = true;
  traits.whole = true;
  std::vector<ElementKey> witnesses;
  for (const auto& s : group->generators()) witnesses.push_back(s.key);
  return std::make_shared<CosetStructure>(
      group, "G", [](const ElementKey&) { return CosetKey(); },
      [](const CosetKey&) { return std::string("G"); }, std::move(witnesses), traits);
}

}  // namespace rdp
