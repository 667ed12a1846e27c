#include "rdpairs/fixtures.hpp"

#include <algorithm>
#include <charconv>

#include "rdpairs/error.hpp"
#include "rdpairs/subgroups.hpp"

namespace rdp {

std::string_view toString(CoGrowth c) {
  switch (c) {
    case CoGrowth::Finite: return "finite";
    case CoGrowth::Polynomial: return "polynomial";
    case CoGrowth::Exponential: return "exponential";
  }
  return "?";
}

const std::vector<CatalogEntry>& fixtureCatalog() {
  static const std::vector<CatalogEntry> catalog = {
      {"z-trivial", {}, "Z with H = {0}"},
      {"zd-trivial", {{"d", 2}}, "Z^d with H = {0}"},
      {"zd-whole", {{"d", 2}}, "Z^d with H = Z^d"},
      {"z2-zline", {}, "Z^2 with H = Z x {0}"},
      {"zd-sublattice", {{"d", 2}, {"k", 2}}, "Z^d with H = kZ x Z^(d-1), index k"},
      {"f2-free", {}, "F2 with H = {e}"},
      {"f2-whole", {}, "F2 with H = F2"},
      {"f2-ker", {}, "F2 with H = kernel of the exponent sum, quotient Z"},
      {"f2-a", {}, "F2 with H = <a>"},
      {"bs-a", {{"n", 2}}, "BS(1,n) with H = <a>"},
      {"bs-t", {{"n", 2}}, "BS(1,n) with H = <t>"},
      {"bs-dyadic", {{"n", 2}}, "BS(1,n) with H = Z[1/n], quotient Z"},
      {"bs-trivial", {{"n", 2}}, "BS(1,n) with H = {e}"},
      {"heis-center", {}, "discrete Heisenberg group with H = center, quotient Z^2"},
      {"heis-trivial", {}, "discrete Heisenberg group with H = {e}"},
      {"s4-d8", {}, "S4 with H = D8 = <(0 1), (0 2)(1 3)>, index 3"},
      {"s4-s3", {}, "S4 with H = S3 fixing point 3, index 4"},
      {"s4-trivial", {}, "S4 with H = {e}"},
      {"d8-refl", {}, "D8 with H = <s>, index 4, not normal"},
      {"d8-rot", {}, "D8 with H = <r>, index 2, normal"},
      {"d8-trivial", {}, "D8 with H = {e}"},
  };
  return catalog;
}

std::string FixtureSpec::toString() const {
  if (!factors.empty()) {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out += '*';
      out += factors[i].toString();
    }
    return out;
  }
  std::string out = id;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out += sep;
    out += k + "=" + std::to_string(v);
    sep = ',';
  }
  return out;
}

FixtureSpec FixtureSpec::parse(std::string_view text) {
  FixtureSpec spec;
  if (text.find('*') != std::string_view::npos) {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == '*') {
        spec.factors.push_back(parse(text.substr(start, i - start)));
        start = i + 1;
      }
    }
    return spec;
  }
  const auto colon = text.find(':');
  spec.id = std::string(text.substr(0, colon));
  if (spec.id.empty()) throw Error(ErrorCode::UnknownFixture, "empty fixture id");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument, "fixture parameter lacks '=': " + std::string(item));
    }
    long v = 0;
    const std::string_view num = item.substr(eq + 1);
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (num.empty() || ec != std::errc() || ptr != num.data() + num.size()) {
      throw Error(ErrorCode::InvalidArgument, "fixture parameter is not an integer: " +
                                                  std::string(item));
    }
    spec.params[std::string(item.substr(0, eq))] = v;
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return spec;
}

namespace {

long param(const std::map<std::string, long>& p, const char* name, long lo, long hi) {
  const long v = p.at(name);
  if (v < lo || v > hi) {
    throw Error(ErrorCode::ParameterOutOfRange, std::string(name) + " = " + std::to_string(v) +
                                                    " outside [" + std::to_string(lo) + ", " +
                                                    std::to_string(hi) + "]");
  }
  return v;
}

FixtureInfo info(std::string id, bool rd, CoGrowth growth, std::optional<int> degree = {}) {
  FixtureInfo out;
  out.id = std::move(id);
  out.rdExpected = rd;
  out.coGrowth = growth;
  out.coGrowthDegree = degree;
  return out;
}

Pair buildAtomic(const FixtureSpec& spec) {
  const auto& catalog = fixtureCatalog();
  const auto it = std::find_if(catalog.begin(), catalog.end(),
                               [&](const CatalogEntry& e) { return e.id == spec.id; });
  if (it == catalog.end()) throw Error(ErrorCode::UnknownFixture, "'" + spec.id + "'");
  std::map<std::string, long> p = it->defaults;
  for (const auto& [k, v] : spec.params) {
    if (!p.contains(k)) {
      throw Error(ErrorCode::InvalidArgument, spec.id + " takes no parameter '" + k + "'");
    }
    p[k] = v;
  }
  const std::string& id = spec.id;
  Pair out;
  FixtureInfo fi;

  if (id == "z-trivial" || id == "zd-trivial" || id == "zd-whole") {
    const int d = id == "z-trivial" ? 1 : static_cast<int>(param(p, "d", 1, 8));
    auto g = makeLattice(d);
    out.group = g;
    if (id == "zd-whole") {
      out.cosets = wholeGroup(g);
      fi = info(id, true, CoGrowth::Finite, 0);
    } else {
      out.cosets = trivialSubgroup(g);
      fi = info(id, true, CoGrowth::Polynomial, d);
    }
  } else if (id == "z2-zline") {
    auto g = makeLattice(2);
    out.group = g;
    out.cosets = latticeSublattice(g, {1, 0}, "Zx{0}");
    fi = info(id, true, CoGrowth::Polynomial, 1);
  } else if (id == "zd-sublattice") {
    const int d = static_cast<int>(param(p, "d", 1, 8));
    const long k = param(p, "k", 1, 1000000);
    auto g = makeLattice(d);
    std::vector<std::int64_t> mod(d, 1);
    mod[0] = k;
    out.group = g;
    out.cosets = latticeSublattice(g, mod, std::to_string(k) + "Z x Z^" + std::to_string(d - 1));
    fi = info(id, true, CoGrowth::Finite, 0);
  } else if (id.rfind("f2-", 0) == 0) {
    auto g = makeFreeGroup(2);
    out.group = g;
    if (id == "f2-free") {
      out.cosets = trivialSubgroup(g);
      fi = info(id, true, CoGrowth::Exponential);
    } else if (id == "f2-whole") {
      out.cosets = wholeGroup(g);
      fi = info(id, true, CoGrowth::Finite, 0);
    } else if (id == "f2-ker") {
      out.cosets = freeExponentSumKernel(g);
      fi = info(id, true, CoGrowth::Polynomial, 1);
    } else {
      out.cosets = freeCyclicFactor(g, 0);
      fi = info(id, true, CoGrowth::Exponential);
    }
  } else if (id.rfind("bs-", 0) == 0) {
    auto g = makeBaumslagSolitar(static_cast<int>(param(p, "n", 2, 64)));
    out.group = g;
    if (id == "bs-a") {
      out.cosets = bsCyclicA(g);
      fi = info(id, false, CoGrowth::Exponential);
    } else if (id == "bs-t") {
      out.cosets = bsCyclicT(g);
      fi = info(id, false, CoGrowth::Exponential);
    } else if (id == "bs-dyadic") {
      out.cosets = bsRing(g);
      fi = info(id, true, CoGrowth::Polynomial, 1);
    } else {
      out.cosets = trivialSubgroup(g);
      fi = info(id, false, CoGrowth::Exponential);
    }
  } else if (id.rfind("heis-", 0) == 0) {
    auto g = makeHeisenberg();
    out.group = g;
    if (id == "heis-center") {
      out.cosets = heisenbergCenter(g);
      fi = info(id, true, CoGrowth::Polynomial, 2);
    } else {
      out.cosets = trivialSubgroup(g);
      fi = info(id, true, CoGrowth::Polynomial, 4);
    }
  } else if (id.rfind("s4-", 0) == 0) {
    auto g = makeSymmetric4();
    out.group = g;
    if (id == "s4-d8") {
      out.cosets = finiteSubgroup(
          g, "D8", {g->encode({1, 0, 2, 3}), g->encode({2, 3, 0, 1})});
    } else if (id == "s4-s3") {
      out.cosets = finiteSubgroup(g, "S3", {g->generators()[0].key, g->generators()[1].key});
    } else {
      out.cosets = trivialSubgroup(g);
    }
    fi = info(id, true, CoGrowth::Finite, 0);
  } else {
    auto g = makeDihedral8();
    out.group = g;
    if (id == "d8-refl") {
      out.cosets = finiteSubgroup(g, "<s>", {g->generators()[2].key});
    } else if (id == "d8-rot") {
      out.cosets = finiteSubgroup(g, "<r>", {g->generators()[0].key});
    } else {
      out.cosets = trivialSubgroup(g);
    }
    fi = info(id, true, CoGrowth::Finite, 0);
  }
  fi.description = it->description;
  FixtureSpec canonical{spec.id, p, {}};
  fi.id = canonical.toString();
  out.info = std::move(fi);
  return out;
}

}  // namespace

Pair buildFixture(const FixtureSpec& spec) {
  if (spec.factors.empty()) return buildAtomic(spec);
  Pair acc = buildFixture(spec.factors.front());
  for (std::size_t i = 1; i < spec.factors.size(); ++i) {
    acc = productPair(acc, buildFixture(spec.factors[i]));
  }
  return acc;
}

Pair buildFixture(std::string_view text) { return buildFixture(FixtureSpec::parse(text)); }

Pair productPair(const Pair& first, const Pair& second) {
  auto g = makeProduct(first.group, second.group);
  Pair out;
  out.group = g;
  out.cosets = productCosets(g, first.cosets, second.cosets);
  const auto& a = first.info;
  const auto& b = second.info;
  out.info.id = a.id + "*" + b.id;
  out.info.description = "(" + a.description + ") x (" + b.description + ")";
  // Both factors RD, or one factor with polynomial co-growth and the other RD.
  out.info.rdExpected = a.rdExpected && b.rdExpected;
  out.info.coGrowth = std::max(a.coGrowth, b.coGrowth);
  if (a.coGrowthDegree && b.coGrowthDegree) {
    out.info.coGrowthDegree = *a.coGrowthDegree + *b.coGrowthDegree;
  }
  return out;
}

Embedding identityEmbedding(const ModelPtr& group) {
  return {group, [](const ElementKey& k) { return k; },
          [](const ElementKey& g) { return std::optional<ElementKey>(g); }};
}

Embedding latticeAxisEmbedding(const std::shared_ptr<const LatticeModel>& group, int axis) {
  if (axis < 0 || axis >= group->dimension()) {
    throw Error(ErrorCode::ParameterOutOfRange, "axis outside the lattice dimension");
  }
  auto z = makeLattice(1);
  Embedding e;
  e.sub = z;
  e.embed = [group, z, axis](const ElementKey& k) {
    std::vector<std::int64_t> v(group->dimension(), 0);
    v[axis] = z->decode(k)[0];
    return group->encode(v);
  };
  e.preimage = [group, z, axis](const ElementKey& g) -> std::optional<ElementKey> {
    const auto v = group->decode(g);
    for (int i = 0; i < group->dimension(); ++i) {
      if (i != axis && v[i] != 0) return std::nullopt;
    }
    return z->encode({v[axis]});
  };
  return e;
}

Embedding freeLetterEmbedding(const std::shared_ptr<const FreeGroupModel>& group, int letter) {
  if (letter < 0 || letter >= group->rank()) {
    throw Error(ErrorCode::ParameterOutOfRange, "letter outside the free basis");
  }
  auto z = makeLattice(1);
  const char lo = static_cast<char>('a' + letter);
  const char up = static_cast<char>('A' + letter);
  Embedding e;
  e.sub = z;
  e.embed = [z, lo, up](const ElementKey& k) {
    const std::int64_t n = z->decode(k)[0];
    return ElementKey(std::string(static_cast<std::size_t>(n < 0 ? -n : n), n < 0 ? up : lo));
  };
  e.preimage = [group, z, lo, up](const ElementKey& g) -> std::optional<ElementKey> {
    const std::string& w = group->word(g);
    if (w.empty()) return z->identity();
    const char c = w.front();
    if ((c != lo && c != up) || w.find_first_not_of(c) != std::string::npos) return std::nullopt;
    const auto n = static_cast<std::int64_t>(w.size());
    return z->encode({c == lo ? n : -n});
  };
  return e;
}

Pair restrictToSubgroupModel(const Pair& pair, const Embedding& k) {
  const CosetsPtr parent = pair.cosets;
  std::vector<ElementKey> witnesses;
  for (const auto& w : parent->witnesses()) {
    auto pre = k.preimage(w);
    if (!pre) {
      throw Error(ErrorCode::EmbeddingInvalid, "subgroup element " + pair.group->format(w) +
                                                   " has no preimage in " + k.sub->name());
    }
    if (k.embed(*pre) != w) {
      throw Error(ErrorCode::EmbeddingInvalid, "embedding does not invert its preimage map");
    }
    witnesses.push_back(std::move(*pre));
  }
  for (const auto& s : k.sub->generators()) {
    if (!k.preimage(k.embed(s.key))) {
      throw Error(ErrorCode::EmbeddingInvalid, "embedding image is not recognized by preimage");
    }
  }
  SubgroupTraits traits = parent->traits();
  traits.whole = std::all_of(k.sub->generators().begin(), k.sub->generators().end(),
                             [&](const Generator& s) { return parent->inSubgroup(k.embed(s.key)); });
  traits.normal = traits.normal || traits.whole;
  traits.coAmenable = traits.whole || (traits.coAmenable && k.sub == pair.group);
  auto embed = k.embed;
  auto key = [parent, embed](const ElementKey& g) { return parent->cosetKey(embed(g)); };
  auto format = [parent](const CosetKey& c) { return parent->format(c); };
  Pair out;
  out.group = k.sub;
  out.cosets = std::make_shared<CosetStructure>(k.sub, parent->subgroupName(), key, format,
                                                std::move(witnesses), traits);
  out.info = pair.info;
  out.info.id = pair.info.id + "|" + k.sub->name();
  out.info.description = "restriction of " + pair.info.id + " to " + k.sub->name();
  if (traits.whole) {
    out.info.rdExpected = true;
    out.info.coGrowth = CoGrowth::Finite;
    out.info.coGrowthDegree = 0;
  }
  return out;
}

}  // namespace rdp
