#include "rdpairs/models.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <deque>
#include <set>

#include "rdpairs/error.hpp"

namespace rdp {

namespace {

std::int64_t parseInt(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::MalformedKey, "not an integer: '" + std::string(text) + "'");
  }
  return v;
}

// Splits "(a,b,...)" or "[a,b,...]" into its comma-separated fields.
std::vector<std::string_view> tupleFields(std::string_view text, char open, char close) {
  if (text.size() < 2 || text.front() != open || text.back() != close) {
    throw Error(ErrorCode::MalformedKey, "expected a bracketed tuple: '" + std::string(text) + "'");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string joinTuple(const std::vector<std::string>& parts, char open, char close) {
  std::string out(1, open);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  out += close;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lattice

LatticeModel::LatticeModel(int dimension)
    : GroupModel("Z^" + std::to_string(dimension),
                 ElementKey(encoding::packInts(std::vector<std::int64_t>(dimension, 0)))),
      dim_(dimension) {
  std::vector<Generator> gens;
  for (int i = 0; i < dim_; ++i) {
    std::vector<std::int64_t> v(dim_, 0);
    v[i] = 1;
    gens.push_back({"e" + std::to_string(i + 1), encode(v)});
    v[i] = -1;
    gens.push_back({"e" + std::to_string(i + 1) + "^-1", encode(v)});
  }
  setGenerators(std::move(gens));
}

ElementKey LatticeModel::encode(const std::vector<std::int64_t>& coords) const {
  if (static_cast<int>(coords.size()) != dim_) {
    throw Error(ErrorCode::MalformedKey, "lattice coordinate count mismatch");
  }
  return ElementKey(encoding::packInts(coords));
}

std::vector<std::int64_t> LatticeModel::decode(const ElementKey& g) const {
  return encoding::unpackInts(g.bytes(), static_cast<std::size_t>(dim_));
}

ElementKey LatticeModel::multiply(const ElementKey& g, const ElementKey& h) const {
  auto a = decode(g);
  const auto b = decode(h);
  for (int i = 0; i < dim_; ++i) a[i] += b[i];
  return encode(a);
}

ElementKey LatticeModel::invert(const ElementKey& g) const {
  auto a = decode(g);
  for (auto& x : a) x = -x;
  return encode(a);
}

std::string LatticeModel::format(const ElementKey& g) const {
  std::vector<std::string> parts;
  for (auto x : decode(g)) parts.push_back(std::to_string(x));
  return joinTuple(parts, '(', ')');
}

ElementKey LatticeModel::parse(std::string_view text) const {
  const auto fields = tupleFields(text, '(', ')');
  if (static_cast<int>(fields.size()) != dim_) {
    throw Error(ErrorCode::MalformedKey, "expected " + std::to_string(dim_) + " coordinates");
  }
  std::vector<std::int64_t> v;
  for (auto f : fields) v.push_back(parseInt(f));
  return encode(v);
}

// ---------------------------------------------------------------------------
// Heisenberg

HeisenbergModel::HeisenbergModel()
    : GroupModel("H3(Z)", ElementKey(encoding::packInts(std::array<std::int64_t, 3>{0, 0, 0}))) {
  setGenerators({{"x", encode(1, 0, 0)},
                 {"x^-1", encode(-1, 0, 0)},
                 {"y", encode(0, 1, 0)},
                 {"y^-1", encode(0, -1, 0)}});
}

ElementKey HeisenbergModel::encode(std::int64_t a, std::int64_t b, std::int64_t c) const {
  return ElementKey(encoding::packInts(std::array<std::int64_t, 3>{a, b, c}));
}

std::array<std::int64_t, 3> HeisenbergModel::decode(const ElementKey& g) const {
  const auto v = encoding::unpackInts(g.bytes(), 3);
  return {v[0], v[1], v[2]};
}

ElementKey HeisenbergModel::multiply(const ElementKey& g, const ElementKey& h) const {
  const auto [a, b, c] = decode(g);
  const auto [a2, b2, c2] = decode(h);
  return encode(a + a2, b + b2, c + c2 + a * b2);
}

ElementKey HeisenbergModel::invert(const ElementKey& g) const {
  const auto [a, b, c] = decode(g);
  return encode(-a, -b, a * b - c);
}

std::string HeisenbergModel::format(const ElementKey& g) const {
  const auto [a, b, c] = decode(g);
  return joinTuple({std::to_string(a), std::to_string(b), std::to_string(c)}, '(', ')');
}

ElementKey HeisenbergModel::parse(std::string_view text) const {
  const auto f = tupleFields(text, '(', ')');
  if (f.size() != 3) throw Error(ErrorCode::MalformedKey, "expected (a,b,c)");
  return encode(parseInt(f[0]), parseInt(f[1]), parseInt(f[2]));
}

// ---------------------------------------------------------------------------
// Free group

FreeGroupModel::FreeGroupModel(int rank)
    : GroupModel("F" + std::to_string(rank), ElementKey()), rank_(rank) {
  if (rank < 1 || rank > 26) {
    throw Error(ErrorCode::ParameterOutOfRange, "free group rank must be in [1, 26]");
  }
  std::vector<Generator> gens;
  for (int i = 0; i < rank_; ++i) {
    const char lo = static_cast<char>('a' + i);
    const char up = static_cast<char>('A' + i);
    gens.push_back({std::string(1, lo), ElementKey(std::string(1, lo))});
    gens.push_back({std::string(1, lo) + "^-1", ElementKey(std::string(1, up))});
  }
  setGenerators(std::move(gens));
}

namespace {

char inverseLetter(char c) {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A')
                                : static_cast<char>(c - 'A' + 'a');
}

}  // namespace

std::string FreeGroupModel::reduce(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (char c : word) {
    if (!out.empty() && out.back() == inverseLetter(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

const std::string& FreeGroupModel::word(const ElementKey& g) const {
  const std::string& w = g.bytes();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const char c = w[i];
    const bool lower = c >= 'a' && c < 'a' + rank_;
    const bool upper = c >= 'A' && c < 'A' + rank_;
    if (!lower && !upper) {
      throw Error(ErrorCode::MalformedKey, "letter outside F" + std::to_string(rank_));
    }
    if (i > 0 && w[i - 1] == inverseLetter(c)) {
      throw Error(ErrorCode::MalformedKey, "word is not freely reduced: " + w);
    }
  }
  return w;
}

ElementKey FreeGroupModel::multiply(const ElementKey& g, const ElementKey& h) const {
  const std::string& u = word(g);
  const std::string& v = word(h);
  std::size_t cancel = 0;
  while (cancel < u.size() && cancel < v.size() &&
         u[u.size() - 1 - cancel] == inverseLetter(v[cancel])) {
    ++cancel;
  }
  std::string out = u.substr(0, u.size() - cancel);
  out.append(v, cancel, std::string::npos);
  return ElementKey(std::move(out));
}

ElementKey FreeGroupModel::invert(const ElementKey& g) const {
  const std::string& w = word(g);
  std::string out(w.rbegin(), w.rend());
  for (auto& c : out) c = inverseLetter(c);
  return ElementKey(std::move(out));
}

std::string FreeGroupModel::format(const ElementKey& g) const {
  const std::string& w = word(g);
  return w.empty() ? std::string("e") : w;
}

ElementKey FreeGroupModel::parse(std::string_view text) const {
  if (text == "e") return identity();
  ElementKey k(reduce(text));
  word(k);
  return k;
}

// ---------------------------------------------------------------------------
// Baumslag-Solitar BS(1,n)

BaumslagSolitarModel::BaumslagSolitarModel(int n)
    : GroupModel("BS(1," + std::to_string(n) + ")", ElementKey("0|0")), n_(n) {
  if (n < 2) throw Error(ErrorCode::ParameterOutOfRange, "BS parameter n must be >= 2");
  setGenerators({{"t", encode({1, Rational(0)})},
                 {"t^-1", encode({-1, Rational(0)})},
                 {"a", encode({0, Rational(1)})},
                 {"a^-1", encode({0, Rational(-1)})}});
}

Rational BaumslagSolitarModel::scale(std::int64_t k) const {
  const Rational p = powRational(Rational(n_), static_cast<unsigned>(k < 0 ? -k : k));
  return k < 0 ? Rational(1 / p) : p;
}

bool BaumslagSolitarModel::inRing(const Rational& x) const {
  mpz_class d = x.get_den();
  const mpz_class n = n_;
  mpz_class g;
  while (d != 1) {
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (g == 1) return false;
    d /= g;
  }
  return true;
}

ElementKey BaumslagSolitarModel::encode(const Element& e) const {
  return ElementKey(std::to_string(e.k) + "|" + e.x.get_str());
}

BaumslagSolitarModel::Element BaumslagSolitarModel::decode(const ElementKey& g) const {
  const std::string& s = g.bytes();
  const auto bar = s.find('|');
  if (bar == std::string::npos) throw Error(ErrorCode::MalformedKey, "BS key lacks '|': " + s);
  Element e;
  e.k = parseInt(std::string_view(s).substr(0, bar));
  try {
    e.x = ScalarTraits<Rational>::parse(std::string_view(s).substr(bar + 1));
  } catch (const Error&) {
    throw Error(ErrorCode::MalformedKey, "BS key has a bad rational: " + s);
  }
  if (e.x.get_str() != s.substr(bar + 1) || !inRing(e.x)) {
    throw Error(ErrorCode::MalformedKey, "BS key is not canonical in Z[1/n]: " + s);
  }
  return e;
}

ElementKey BaumslagSolitarModel::multiply(const ElementKey& g, const ElementKey& h) const {
  const Element a = decode(g);
  const Element b = decode(h);
  Rational x = a.x + scale(a.k) * b.x;
  x.canonicalize();
  return encode({a.k + b.k, x});
}

ElementKey BaumslagSolitarModel::invert(const ElementKey& g) const {
  const Element a = decode(g);
  Rational x = -a.x * scale(-a.k);
  x.canonicalize();
  return encode({-a.k, x});
}

std::string BaumslagSolitarModel::format(const ElementKey& g) const {
  const Element a = decode(g);
  return "(" + std::to_string(a.k) + "," + a.x.get_str() + ")";
}

ElementKey BaumslagSolitarModel::parse(std::string_view text) const {
  const auto f = tupleFields(text, '(', ')');
  if (f.size() != 2) throw Error(ErrorCode::MalformedKey, "expected (k,x)");
  Element e;
  e.k = parseInt(f[0]);
  try {
    e.x = ScalarTraits<Rational>::parse(f[1]);
  } catch (const Error&) {
    throw Error(ErrorCode::MalformedKey, "bad rational in '" + std::string(text) + "'");
  }
  if (!inRing(e.x)) throw Error(ErrorCode::MalformedKey, "x is not in Z[1/n]");
  return encode(e);
}

// ---------------------------------------------------------------------------
// Permutation groups

namespace {

ElementKey identityPermutation(int degree) {
  if (degree < 1 || degree > 255) {
    throw Error(ErrorCode::ParameterOutOfRange, "permutation degree must be in [1, 255]");
  }
  std::string bytes(static_cast<std::size_t>(degree), '\0');
  for (int i = 0; i < degree; ++i) bytes[i] = static_cast<char>(i);
  return ElementKey(std::move(bytes));
}

}  // namespace

PermutationModel::PermutationModel(std::string name, int degree,
                                   std::vector<NamedPermutation> generators)
    : GroupModel(std::move(name), identityPermutation(degree)), degree_(degree) {
  std::vector<Generator> gens;
  for (auto& p : generators) gens.push_back({p.label, encode(p.images)});
  setGenerators(std::move(gens));
  const ElementKey& e = identity();

  std::set<ElementKey> seen{e};
  std::deque<ElementKey> queue{e};
  while (!queue.empty()) {
    const ElementKey g = queue.front();
    queue.pop_front();
    for (const auto& s : this->generators()) {
      ElementKey h = multiply(s.key, g);
      if (seen.insert(h).second) queue.push_back(std::move(h));
    }
  }
  order_ = seen.size();
}

ElementKey PermutationModel::encode(const std::vector<std::uint8_t>& images) const {
  if (static_cast<int>(images.size()) != degree_) {
    throw Error(ErrorCode::MalformedKey, "permutation has wrong degree");
  }
  std::vector<bool> hit(degree_, false);
  for (auto i : images) {
    if (i >= degree_ || hit[i]) throw Error(ErrorCode::MalformedKey, "not a permutation");
    hit[i] = true;
  }
  return ElementKey(std::string(images.begin(), images.end()));
}

std::vector<std::uint8_t> PermutationModel::decode(const ElementKey& g) const {
  std::vector<std::uint8_t> images(g.bytes().begin(), g.bytes().end());
  encode(images);
  return images;
}

ElementKey PermutationModel::multiply(const ElementKey& g, const ElementKey& h) const {
  const auto a = decode(g);
  const auto b = decode(h);
  std::vector<std::uint8_t> out(degree_);
  for (int i = 0; i < degree_; ++i) out[i] = a[b[i]];
  return ElementKey(std::string(out.begin(), out.end()));
}

ElementKey PermutationModel::invert(const ElementKey& g) const {
  const auto a = decode(g);
  std::vector<std::uint8_t> out(degree_);
  for (int i = 0; i < degree_; ++i) out[a[i]] = static_cast<std::uint8_t>(i);
  return ElementKey(std::string(out.begin(), out.end()));
}

std::string PermutationModel::format(const ElementKey& g) const {
  std::vector<std::string> parts;
  for (auto i : decode(g)) parts.push_back(std::to_string(i));
  return joinTuple(parts, '[', ']');
}

ElementKey PermutationModel::parse(std::string_view text) const {
  std::vector<std::uint8_t> images;
  for (auto f : tupleFields(text, '[', ']')) {
    const auto v = parseInt(f);
    if (v < 0 || v >= degree_) throw Error(ErrorCode::MalformedKey, "point out of range");
    images.push_back(static_cast<std::uint8_t>(v));
  }
  return encode(images);
}

// ---------------------------------------------------------------------------
// Direct products

ProductModel::ProductModel(ModelPtr first, ModelPtr second)
    : GroupModel(first->name() + " x " + second->name(),
                 ElementKey(encoding::joinPair(first->identity().bytes(),
                                               second->identity().bytes()))),
      first_(std::move(first)),
      second_(std::move(second)) {
  std::vector<Generator> gens;
  for (const auto& s : first_->generators()) {
    gens.push_back({"1:" + s.label, pair(s.key, second_->identity())});
  }
  for (const auto& s : second_->generators()) {
    gens.push_back({"2:" + s.label, pair(first_->identity(), s.key)});
  }
  setGenerators(std::move(gens));
}

ElementKey ProductModel::pair(const ElementKey& g1, const ElementKey& g2) const {
  return ElementKey(encoding::joinPair(g1.bytes(), g2.bytes()));
}

std::pair<ElementKey, ElementKey> ProductModel::split(const ElementKey& g) const {
  auto [a, b] = encoding::splitPair(g.bytes());
  return {ElementKey(std::move(a)), ElementKey(std::move(b))};
}

ElementKey ProductModel::multiply(const ElementKey& g, const ElementKey& h) const {
  const auto [g1, g2] = split(g);
  const auto [h1, h2] = split(h);
  return pair(first_->multiply(g1, h1), second_->multiply(g2, h2));
}

ElementKey ProductModel::invert(const ElementKey& g) const {
  const auto [g1, g2] = split(g);
  return pair(first_->invert(g1), second_->invert(g2));
}

std::string ProductModel::format(const ElementKey& g) const {
  const auto [g1, g2] = split(g);
  return "<" + first_->format(g1) + ";" + second_->format(g2) + ">";
}

ElementKey ProductModel::parse(std::string_view text) const {
  if (text.size() < 3 || text.front() != '<' || text.back() != '>') {
    throw Error(ErrorCode::MalformedKey, "expected <g1;g2>: '" + std::string(text) + "'");
  }
  text = text.substr(1, text.size() - 2);
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '<') ++depth;
    if (text[i] == '>') --depth;
    if (text[i] == ';' && depth == 0) {
      return pair(first_->parse(text.substr(0, i)), second_->parse(text.substr(i + 1)));
    }
  }
  throw Error(ErrorCode::MalformedKey, "product literal lacks a top-level ';'");
}

std::optional<std::size_t> ProductModel::order() const {
  const auto a = first_->order();
  const auto b = second_->order();
  if (a && b) return *a * *b;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const LatticeModel> makeLattice(int dimension) {
  if (dimension < 1 || dimension > 8) {
    throw Error(ErrorCode::ParameterOutOfRange, "lattice dimension must be in [1, 8]");
  }
  return std::make_shared<const LatticeModel>(dimension);
}

std::shared_ptr<const HeisenbergModel> makeHeisenberg() {
  return std::make_shared<const HeisenbergModel>();
}

std::shared_ptr<const FreeGroupModel> makeFreeGroup(int rank) {
  return std::make_shared<const FreeGroupModel>(rank);
}

std::shared_ptr<const BaumslagSolitarModel> makeBaumslagSolitar(int n) {
  return std::make_shared<const BaumslagSolitarModel>(n);
}

std::shared_ptr<const PermutationModel> makeSymmetric4() {
  return std::make_shared<const PermutationModel>(
      "S4", 4,
      std::vector<PermutationModel::NamedPermutation>{
          {"s1", {1, 0, 2, 3}}, {"s2", {0, 2, 1, 3}}, {"s3", {0, 1, 3, 2}}});
}

std::shared_ptr<const PermutationModel> makeDihedral8() {
  return std::make_shared<const PermutationModel>(
      "D8", 4,
      std::vector<PermutationModel::NamedPermutation>{
          {"r", {1, 2, 3, 0}}, {"r^-1", {3, 0, 1, 2}}, {"s", {0, 3, 2, 1}}});
}

std::shared_ptr<const ProductModel> makeProduct(ModelPtr first, ModelPtr second) {
  return std::make_shared<const ProductModel>(std::move(first), std::move(second));
}

}  // namespace rdp
