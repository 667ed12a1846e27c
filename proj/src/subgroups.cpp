#include "rdpairs/subgroups.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "rdpairs/error.hpp"

namespace rdp {

namespace {

std::string formatInts(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + ")";
}

// Floor-mod with a positive modulus.
std::int64_t floorMod(std::int64_t x, std::int64_t m) {
  const std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

CosetsPtr latticeSublattice(const std::shared_ptr<const LatticeModel>& group,
                            const std::vector<std::int64_t>& k, std::string name) {
  const int d = group->dimension();
  if (static_cast<int>(k.size()) != d) {
    throw Error(ErrorCode::ParameterOutOfRange, "sublattice needs one modulus per coordinate");
  }
  SubgroupTraits traits;
  traits.normal = true;
  traits.coAmenable = true;
  traits.trivial = std::all_of(k.begin(), k.end(), [](auto v) { return v == 0; });
  traits.whole = std::all_of(k.begin(), k.end(), [](auto v) { return v == 1; });
  std::vector<ElementKey> witnesses;
  for (int i = 0; i < d; ++i) {
    if (k[i] < 0) throw Error(ErrorCode::ParameterOutOfRange, "sublattice modulus must be >= 0");
    if (k[i] == 0) continue;
    std::vector<std::int64_t> v(d, 0);
    v[i] = k[i];
    witnesses.push_back(group->encode(v));
  }
  auto key = [group, k](const ElementKey& g) {
    const auto x = group->decode(g);
    std::vector<std::int64_t> r;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == 1) continue;
      r.push_back(k[i] == 0 ? x[i] : floorMod(x[i], k[i]));
    }
    return CosetKey(encoding::packInts(r));
  };
  const std::size_t kept = static_cast<std::size_t>(std::count_if(
      k.begin(), k.end(), [](auto v) { return v != 1; }));
  auto format = [kept](const CosetKey& c) {
    return formatInts(encoding::unpackInts(c.bytes(), kept)) + "+H";
  };
  return std::make_shared<CosetStructure>(group, std::move(name), key, format,
                                          std::move(witnesses), traits);
}

CosetsPtr freeExponentSumKernel(const std::shared_ptr<const FreeGroupModel>& group) {
  SubgroupTraits traits;
  traits.normal = true;
  traits.coAmenable = true;
  traits.trivial = false;
  traits.whole = false;
  std::vector<ElementKey> witnesses;
  if (group->rank() >= 2) {
    witnesses = {ElementKey("aB"), ElementKey("bA"), ElementKey("abAB")};
  }
  auto key = [group](const ElementKey& g) {
    std::int64_t sum = 0;
    for (char c : group->word(g)) sum += (c >= 'a' && c <= 'z') ? 1 : -1;
    return CosetKey(encoding::packInts(std::vector<std::int64_t>{sum}));
  };
  auto format = [](const CosetKey& c) {
    return "sum=" + std::to_string(encoding::unpackInts(c.bytes(), 1)[0]);
  };
  return std::make_shared<CosetStructure>(group, "ker(exp-sum)", key, format,
                                          std::move(witnesses), traits);
}

CosetsPtr freeCyclicFactor(const std::shared_ptr<const FreeGroupModel>& group, int letter) {
  if (letter < 0 || letter >= group->rank()) {
    throw Error(ErrorCode::ParameterOutOfRange, "letter index outside the free basis");
  }
  const char lo = static_cast<char>('a' + letter);
  const char up = static_cast<char>('A' + letter);
  SubgroupTraits traits;
  traits.normal = group->rank() == 1;
  traits.coAmenable = group->rank() == 1;
  traits.whole = group->rank() == 1;
  auto key = [group, lo, up](const ElementKey& g) {
    std::string w = group->word(g);
    while (!w.empty() && (w.back() == lo || w.back() == up)) w.pop_back();
    return CosetKey(std::move(w));
  };
  auto format = [lo](const CosetKey& c) {
    return (c.bytes().empty() ? std::string("e") : c.bytes()) + "<" + std::string(1, lo) + ">";
  };
  return std::make_shared<CosetStructure>(group, "<" + std::string(1, lo) + ">", key, format,
                                          std::vector<ElementKey>{ElementKey(std::string(1, lo))},
                                          traits);
}

CosetsPtr bsCyclicA(const std::shared_ptr<const BaumslagSolitarModel>& group) {
  SubgroupTraits traits;
  auto key = [group](const ElementKey& g) {
    const auto e = group->decode(g);
    const Rational m = group->scale(e.k);
    const Rational q = e.x / m;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = e.x - m * Rational(fl);
    r.canonicalize();
    return CosetKey(std::to_string(e.k) + "|" + r.get_str());
  };
  auto format = [](const CosetKey& c) { return "[" + c.bytes() + "]<a>"; };
  return std::make_shared<CosetStructure>(group, "<a>", key, format,
                                          std::vector<ElementKey>{group->generators()[2].key},
                                          traits);
}

CosetsPtr bsCyclicT(const std::shared_ptr<const BaumslagSolitarModel>& group) {
  SubgroupTraits traits;
  auto key = [group](const ElementKey& g) { return CosetKey(group->decode(g).x.get_str()); };
  auto format = [](const CosetKey& c) { return "x=" + c.bytes(); };
  return std::make_shared<CosetStructure>(group, "<t>", key, format,
                                          std::vector<ElementKey>{group->generators()[0].key},
                                          traits);
}

CosetsPtr bsRing(const std::shared_ptr<const BaumslagSolitarModel>& group) {
  SubgroupTraits traits;
  traits.normal = true;
  traits.coAmenable = true;
  auto key = [group](const ElementKey& g) {
    return CosetKey(encoding::packInts(std::vector<std::int64_t>{group->decode(g).k}));
  };
  auto format = [](const CosetKey& c) {
    return "k=" + std::to_string(encoding::unpackInts(c.bytes(), 1)[0]);
  };
  const auto& gens = group->generators();
  const ElementKey conj = group->multiply(gens[0].key, group->multiply(gens[2].key, gens[1].key));
  return std::make_shared<CosetStructure>(
      group, "Z[1/" + std::to_string(group->parameter()) + "]", key, format,
      std::vector<ElementKey>{gens[2].key, conj}, traits);
}

CosetsPtr heisenbergCenter(const std::shared_ptr<const HeisenbergModel>& group) {
  SubgroupTraits traits;
  traits.normal = true;
  traits.coAmenable = true;
  auto key = [group](const ElementKey& g) {
    const auto v = group->decode(g);
    return CosetKey(encoding::packInts(std::vector<std::int64_t>{v[0], v[1]}));
  };
  auto format = [](const CosetKey& c) {
    return formatInts(encoding::unpackInts(c.bytes(), 2)) + "Z";
  };
  return std::make_shared<CosetStructure>(group, "Z(H3)", key, format,
                                          std::vector<ElementKey>{group->encode(0, 0, 1)}, traits);
}

CosetsPtr finiteSubgroup(const ModelPtr& group, std::string name,
                         const std::vector<ElementKey>& generators) {
  if (!group->order()) {
    throw Error(ErrorCode::InvalidArgument, "finiteSubgroup needs a finite group model");
  }
  std::set<ElementKey> elems{group->identity()};
  std::deque<ElementKey> queue{group->identity()};
  while (!queue.empty()) {
    const ElementKey g = queue.front();
    queue.pop_front();
    for (const auto& s : generators) {
      ElementKey h = group->multiply(g, s);
      if (elems.insert(h).second) queue.push_back(std::move(h));
    }
  }
  auto members = std::make_shared<const std::vector<ElementKey>>(elems.begin(), elems.end());

  SubgroupTraits traits;
  traits.coAmenable = true;
  traits.trivial = members->size() == 1;
  traits.whole = members->size() == *group->order();
  traits.normal = true;
  for (const auto& s : group->generators()) {
    for (const auto& h : generators) {
      const ElementKey c = group->multiply(s.key, group->multiply(h, group->invert(s.key)));
      if (!elems.contains(c)) traits.normal = false;
    }
  }

  const GroupModel* g = group.get();
  auto key = [g, members](const ElementKey& x) {
    ElementKey best = g->multiply(x, members->front());
    for (const auto& h : *members) best = std::min(best, g->multiply(x, h));
    return CosetKey(best.bytes());
  };
  auto format = [g](const CosetKey& c) { return g->format(ElementKey(c.bytes())) + "H"; };
  return std::make_shared<CosetStructure>(group, std::move(name), key, format, generators,
                                          traits);
}

CosetsPtr productCosets(const std::shared_ptr<const ProductModel>& group, const CosetsPtr& first,
                        const CosetsPtr& second) {
  if (first->groupPtr().get() != group->firstPtr().get() ||
      second->groupPtr().get() != group->secondPtr().get()) {
    throw Error(ErrorCode::ModelMismatch, "coset structures do not match the product factors");
  }
  const auto& t1 = first->traits();
  const auto& t2 = second->traits();
  SubgroupTraits traits;
  traits.normal = t1.normal && t2.normal;
  traits.coAmenable = t1.coAmenable && t2.coAmenable;
  traits.trivial = t1.trivial && t2.trivial;
  traits.whole = t1.whole && t2.whole;
  std::vector<ElementKey> witnesses;
  for (const auto& w : first->witnesses()) {
    witnesses.push_back(group->pair(w, group->second().identity()));
  }
  for (const auto& w : second->witnesses()) {
    witnesses.push_back(group->pair(group->first().identity(), w));
  }
  auto key = [group, first, second](const ElementKey& g) {
    const auto [g1, g2] = group->split(g);
    return CosetKey(encoding::joinPair(first->cosetKey(g1).bytes(), second->cosetKey(g2).bytes()));
  };
  auto format = [first, second](const CosetKey& c) {
    const auto [a, b] = encoding::splitPair(c.bytes());
    return "<" + first->format(CosetKey(a)) + ";" + second->format(CosetKey(b)) + ">";
  };
  return std::make_shared<CosetStructure>(
      group, first->subgroupName() + " x " + second->subgroupName(), key, format,
      std::move(witnesses), traits);
}

}  // namespace rdp
