#include "stabaut/perm_lab.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include "stabaut/errors.hpp"

namespace stabaut {

using Point = Permutation::Point;

Permutation star(const Permutation& tau, const Permutation& phi) {
  if (tau.degree() != phi.degree()) throw InvalidArgument("star needs equal degrees");
  return phi.inverse() * tau.inverse() * phi * tau;
}

// ---------------------------------------------------------------------------
// Grid

std::size_t grid_index(std::size_t n, GridPoint p) {
  if (p.row < 1 || p.row > n || p.col < 1 || p.col > n) {
    throw InvalidArgument("grid point (" + std::to_string(p.row) + "," + std::to_string(p.col) +
                          ") outside the " + std::to_string(n) + "x" + std::to_string(n) +
                          " grid");
  }
  return (p.row - 1) * n + (p.col - 1);
}

GridPoint grid_point(std::size_t n, std::size_t index) {
  if (index >= n * n) throw InvalidArgument("grid index out of range");
  return GridPoint{index / n + 1, index % n + 1};
}

std::size_t grid_side(const Permutation& g) {
  std::size_t n = 0;
  while ((n + 1) * (n + 1) <= g.degree()) ++n;
  if (n * n != g.degree()) {
    throw InvalidArgument("degree " + std::to_string(g.degree()) + " is not a square");
  }
  return n;
}

Permutation grid_product(const Permutation& first, const Permutation& second) {
  if (first.degree() != second.degree()) throw InvalidArgument("grid factors of different degree");
  const std::size_t n = first.degree();
  std::vector<Point> images(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      images[x * n + y] = static_cast<Point>(first(static_cast<Point>(x)) * n +
                                             second(static_cast<Point>(y)));
  return Permutation(std::move(images));
}

Permutation swap_map(std::size_t n) {
  std::vector<Point> images(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) images[x * n + y] = static_cast<Point>(y * n + x);
  return Permutation(std::move(images));
}

std::vector<Permutation> p_generators(std::size_t n) {
  if (n < 2) return {Permutation(n * n)};
  const Permutation id(n);
  const Permutation t = Permutation::from_cycles(n, {{0, 1}});
  std::vector<Point> cycle(n);
  std::iota(cycle.begin(), cycle.end(), Point{0});
  const Permutation c = Permutation::from_cycles(n, {cycle});
  return {grid_product(t, id), grid_product(c, id), grid_product(id, t), grid_product(id, c)};
}

namespace {

Permutation coordinate_transposition(std::size_t i, std::size_t j, std::size_t n) {
  if (i == j) throw InvalidArgument("conjugator needs i != j");
  if (i < 1 || j < 1 || i > n || j > n) throw InvalidArgument("conjugator index out of range");
  return Permutation::from_cycles(n, {{static_cast<Point>(i - 1), static_cast<Point>(j - 1)}});
}

}  // namespace

Permutation conjugator_row(std::size_t i, std::size_t j, std::size_t n) {
  return grid_product(coordinate_transposition(i, j, n), Permutation(n));
}

Permutation conjugator_col(std::size_t i, std::size_t j, std::size_t n) {
  return grid_product(Permutation(n), coordinate_transposition(i, j, n));
}

std::string to_string(GridClass c) {
  switch (c) {
    case GridClass::Both: return "both";
    case GridClass::RowPreserving: return "row-preserving";
    case GridClass::ColumnPreserving: return "column-preserving";
    case GridClass::Free: return "free";
  }
  return "?";
}

GridClass row_col_class(const Permutation& g, std::size_t n) {
  if (g.degree() != n * n) throw InvalidArgument("grid permutation has the wrong degree");
  bool rows = true;
  bool cols = true;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const Point img = g(static_cast<Point>(x * n + y));
      if (img / n != g(static_cast<Point>(x * n)) / n) rows = false;
      if (img % n != g(static_cast<Point>(y)) % n) cols = false;
    }
  }
  if (rows && cols) return GridClass::Both;
  if (rows) return GridClass::RowPreserving;
  if (cols) return GridClass::ColumnPreserving;
  return GridClass::Free;
}

// ---------------------------------------------------------------------------
// Stabiliser chain with base 0, 1, ..., d-1 (Knuth's incremental variant of
// Schreier-Sims). Level i describes the pointwise stabiliser of 0..i-1;
// transversal[i][j] maps i to j.

struct GroupHandle::Chain {
  std::once_flag once;
  std::size_t degree = 0;
  std::vector<std::vector<std::optional<Permutation>>> transversal;
  std::vector<std::vector<std::optional<Permutation>>> transversal_inv;
  std::vector<std::vector<Permutation>> strong;

  void init(std::size_t d) {
    degree = d;
    transversal.assign(d, std::vector<std::optional<Permutation>>(d));
    transversal_inv.assign(d, std::vector<std::optional<Permutation>>(d));
    strong.assign(d, {});
    for (std::size_t i = 0; i < d; ++i) {
      transversal[i][i] = Permutation(d);
      transversal_inv[i][i] = Permutation(d);
    }
  }

  /// True when g sifts to the identity through levels i, i+1, ...
  bool member_from(Permutation g, std::size_t level) const {
    for (std::size_t l = level; l < degree; ++l) {
      const Point j = g(static_cast<Point>(l));
      if (!transversal[l][j]) return false;
      if (j != l) g = *transversal_inv[l][j] * g;
    }
    return g.is_identity();
  }

  void add(std::size_t level, const Permutation& g) {
    if (level >= degree || member_from(g, level)) return;
    strong[level].push_back(g);
    std::vector<Point> orbit;
    for (std::size_t j = 0; j < degree; ++j) {
      if (transversal[level][j]) orbit.push_back(static_cast<Point>(j));
    }
    for (Point j : orbit) extend(level, g * *transversal[level][j]);
  }

  void extend(std::size_t level, const Permutation& g) {
    const Point j = g(static_cast<Point>(level));
    if (transversal[level][j]) {
      add(level + 1, *transversal_inv[level][j] * g);
      return;
    }
    transversal[level][j] = g;
    transversal_inv[level][j] = g.inverse();
    const std::size_t count = strong[level].size();
    for (std::size_t t = 0; t < count; ++t) extend(level, strong[level][t] * g);
  }

  BigInt order() const {
    BigInt result = 1;
    for (std::size_t l = 0; l < degree; ++l) {
      std::size_t orbit = 0;
      for (std::size_t j = 0; j < degree; ++j) orbit += transversal[l][j] ? 1 : 0;
      result *= orbit;
    }
    return result;
  }
};

GroupHandle::GroupHandle(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)), chain_(std::make_shared<Chain>()) {
  for (const auto& g : generators_) {
    if (g.degree() != degree_) {
      throw InvalidArgument("generator " + g.to_string() + " has degree " +
                            std::to_string(g.degree()) + ", expected " + std::to_string(degree_));
    }
  }
}

const GroupHandle::Chain& GroupHandle::chain() const {
  if (degree_ > kMaxChainDegree) {
    throw BudgetExceeded("stabiliser chains are limited to degree " +
                         std::to_string(kMaxChainDegree));
  }
  std::call_once(chain_->once, [this] {
    chain_->init(degree_);
    for (const auto& g : generators_) chain_->add(0, g);
  });
  return *chain_;
}

BigInt GroupHandle::order() const { return chain().order(); }

bool GroupHandle::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  return chain().member_from(g, 0);
}

std::vector<Point> GroupHandle::orbit(Point x) const {
  std::vector<bool> seen(degree_, false);
  std::vector<Point> out{x};
  seen[x] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : generators_) {
      const Point y = g(out[i]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool GroupHandle::is_transitive() const {
  return degree_ <= 1 || orbit(0).size() == degree_;
}

std::vector<Permutation> GroupHandle::elements(std::size_t limit) const {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> out{Permutation(degree_)};
  seen.insert(out.front());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : generators_) {
      Permutation h = g * out[i];
      if (seen.insert(h).second) {
        out.push_back(std::move(h));
        if (out.size() > limit) {
          throw BudgetExceeded("group has more than " + std::to_string(limit) + " elements");
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt group_order(const GroupHandle& g) { return g.order(); }

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// ---------------------------------------------------------------------------
// Primitivity

std::vector<Point> minimal_block(const GroupHandle& g, Point x, Point y) {
  const std::size_t d = g.degree();
  std::vector<Point> parent(d);
  std::iota(parent.begin(), parent.end(), Point{0});
  std::function<Point(Point)> find = [&](Point a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  std::deque<std::pair<Point, Point>> queue;
  parent[find(y)] = find(x);
  queue.emplace_back(x, y);
  while (!queue.empty()) {
    const auto [a, b] = queue.front();
    queue.pop_front();
    for (const auto& gen : g.generators()) {
      const Point ra = find(gen(a));
      const Point rb = find(gen(b));
      if (ra != rb) {
        parent[rb] = ra;
        queue.emplace_back(ra, rb);
      }
    }
  }
  std::vector<Point> block;
  const Point root = find(x);
  for (std::size_t p = 0; p < d; ++p) {
    if (find(static_cast<Point>(p)) == root) block.push_back(static_cast<Point>(p));
  }
  return block;
}

PrimitivityResult is_primitive(const GroupHandle& g) {
  const std::size_t d = g.degree();
  if (d < 2) throw InvalidArgument("primitivity needs degree >= 2");
  if (!g.is_transitive()) {
    std::vector<bool> done(d, false);
    for (std::size_t p = 0; p < d; ++p) {
      if (done[p]) continue;
      auto orb = g.orbit(static_cast<Point>(p));
      for (auto q : orb) done[q] = true;
      if (orb.size() > 1 && orb.size() < d) return {false, orb};
    }
    if (d >= 3) return {false, {0, 1}};
    return {false, {}};
  }
  for (std::size_t y = 1; y < d; ++y) {
    auto block = minimal_block(g, 0, static_cast<Point>(y));
    if (block.size() < d) return {false, block};
  }
  return {true, {}};
}

// ---------------------------------------------------------------------------
// Certificate words

struct CertificateWord::Node {
  enum class Kind { Generator, RowSwap, ColSwap, Swap, Product, Inverse, Power };
  Kind kind;
  std::size_t a = 0;
  std::size_t b = 0;
  std::int64_t exponent = 0;
  std::shared_ptr<const Node> left;
  std::shared_ptr<const Node> right;
};

CertificateWord CertificateWord::generator(std::size_t index) {
  return CertificateWord(std::make_shared<Node>(Node{Node::Kind::Generator, index, 0, 0, {}, {}}));
}
CertificateWord CertificateWord::row_swap(std::size_t i, std::size_t j) {
  return CertificateWord(std::make_shared<Node>(Node{Node::Kind::RowSwap, i, j, 0, {}, {}}));
}
CertificateWord CertificateWord::col_swap(std::size_t i, std::size_t j) {
  return CertificateWord(std::make_shared<Node>(Node{Node::Kind::ColSwap, i, j, 0, {}, {}}));
}
CertificateWord CertificateWord::swap() {
  return CertificateWord(std::make_shared<Node>(Node{Node::Kind::Swap, 0, 0, 0, {}, {}}));
}
CertificateWord CertificateWord::operator*(const CertificateWord& other) const {
  return CertificateWord(
      std::make_shared<Node>(Node{Node::Kind::Product, 0, 0, 0, node_, other.node_}));
}
CertificateWord CertificateWord::inverse() const {
  return CertificateWord(std::make_shared<Node>(Node{Node::Kind::Inverse, 0, 0, 0, node_, {}}));
}
CertificateWord CertificateWord::pow(std::int64_t e) const {
  return CertificateWord(std::make_shared<Node>(Node{Node::Kind::Power, 0, 0, e, node_, {}}));
}
CertificateWord CertificateWord::conjugated_by(const CertificateWord& by) const {
  return by.inverse() * *this * by;
}
CertificateWord CertificateWord::star(const CertificateWord& by) const {
  return by.inverse() * inverse() * by * *this;
}

Permutation CertificateWord::evaluate(std::span<const Permutation> generators,
                                      std::size_t grid_side) const {
  std::function<Permutation(const Node&)> eval = [&](const Node& nd) -> Permutation {
    switch (nd.kind) {
      case Node::Kind::Generator:
        if (nd.a >= generators.size()) throw InvalidArgument("word names a missing generator");
        return generators[nd.a];
      case Node::Kind::RowSwap: return conjugator_row(nd.a, nd.b, grid_side);
      case Node::Kind::ColSwap: return conjugator_col(nd.a, nd.b, grid_side);
      case Node::Kind::Swap: return swap_map(grid_side);
      case Node::Kind::Product: return eval(*nd.left) * eval(*nd.right);
      case Node::Kind::Inverse: return eval(*nd.left).inverse();
      case Node::Kind::Power: return eval(*nd.left).pow(nd.exponent);
    }
    throw Error("unknown word node");
  };
  return eval(*node_);
}

std::string CertificateWord::to_string() const {
  std::function<std::string(const Node&)> show = [&](const Node& nd) -> std::string {
    switch (nd.kind) {
      case Node::Kind::Generator: return "g" + std::to_string(nd.a);
      case Node::Kind::RowSwap:
        return "R(" + std::to_string(nd.a) + "," + std::to_string(nd.b) + ")";
      case Node::Kind::ColSwap:
        return "C(" + std::to_string(nd.a) + "," + std::to_string(nd.b) + ")";
      case Node::Kind::Swap: return "s";
      case Node::Kind::Product: return "(" + show(*nd.left) + "*" + show(*nd.right) + ")";
      case Node::Kind::Inverse: return show(*nd.left) + "^-1";
      case Node::Kind::Power: return show(*nd.left) + "^" + std::to_string(nd.exponent);
    }
    return "?";
  };
  return show(*node_);
}

// ---------------------------------------------------------------------------
// p-cycles

namespace {

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

std::optional<std::pair<std::size_t, BigInt>> isolate_prime_cycle(const Permutation& g,
                                                                  std::size_t bound) {
  const auto type = g.cycle_type();
  if (type.empty()) return std::nullopt;
  const BigInt ord = g.order();
  for (std::size_t p = 2; p < bound; ++p) {
    if (!is_prime(p)) continue;
    std::size_t divisible = 0;
    bool exact = false;
    for (std::size_t len : type) {
      if (len % p == 0) {
        ++divisible;
        exact = len == p;
      }
    }
    if (divisible == 1 && exact) return std::make_pair(p, BigInt(ord / p));
  }
  return std::nullopt;
}

namespace {

struct Candidate {
  Permutation perm;
  CertificateWord word;
};

std::optional<CycleCertificate> try_isolate(const Candidate& c, std::size_t bound) {
  auto hit = isolate_prime_cycle(c.perm, bound);
  if (!hit) return std::nullopt;
  const auto e = hit->second.convert_to<std::int64_t>();
  return CycleCertificate{hit->first, c.perm.pow(e), c.word.pow(e)};
}

}  // namespace

std::optional<CycleCertificate> p_cycle_search(const GroupHandle& g,
                                               const SearchOptions& options) {
  const std::size_t d = g.degree();
  const std::size_t n = grid_side(Permutation(d));
  if (n < 3) return std::nullopt;
  const std::size_t bound = d - 2;
  const auto& gens = g.generators();
  std::size_t examined = 0;
  std::unordered_set<Permutation, PermutationHash> seen;

  std::vector<Candidate> frontier;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Candidate c{gens[i], CertificateWord::generator(i)};
    ++examined;
    if (auto hit = try_isolate(c, bound)) return hit;
    if (seen.insert(c.perm).second && !c.perm.is_identity()) frontier.push_back(std::move(c));
  }

  std::vector<Candidate> conjugators;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      conjugators.push_back({conjugator_row(i, j, n), CertificateWord::row_swap(i, j)});
      conjugators.push_back({conjugator_col(i, j, n), CertificateWord::col_swap(i, j)});
    }

  // Star moves by row/column exchanges, breadth first.
  while (!frontier.empty() && examined < options.budget) {
    std::vector<Candidate> next;
    for (const auto& c : frontier) {
      for (const auto& k : conjugators) {
        if (examined >= options.budget) break;
        Permutation s = star(c.perm, k.perm);
        if (s.is_identity() || !seen.insert(s).second) continue;
        ++examined;
        Candidate cand{std::move(s), c.word.star(k.word)};
        if (auto hit = try_isolate(cand, bound)) return hit;
        next.push_back(std::move(cand));
      }
    }
    frontier = std::move(next);
  }

  // Seeded random words, and their star moves.
  std::mt19937_64 rng(options.seed);
  while (examined < options.budget && !gens.empty()) {
    const std::size_t length = 1 + rng() % 8;
    Candidate c{Permutation(d), CertificateWord::generator(0).pow(0)};
    for (std::size_t t = 0; t < length; ++t) {
      const std::size_t i = rng() % gens.size();
      const bool inv = rng() % 2 == 1;
      c.perm = c.perm * (inv ? gens[i].inverse() : gens[i]);
      c.word = c.word * (inv ? CertificateWord::generator(i).inverse()
                             : CertificateWord::generator(i));
    }
    ++examined;
    if (auto hit = try_isolate(c, bound)) return hit;
    const auto& k = conjugators[rng() % conjugators.size()];
    Candidate s{star(c.perm, k.perm), c.word.star(k.word)};
    ++examined;
    if (auto hit = try_isolate(s, bound)) return hit;
  }
  return std::nullopt;
}

std::string to_string(JordanOutcome o) {
  switch (o) {
    case JordanOutcome::Sym: return "Sym";
    case JordanOutcome::Alt: return "Alt";
    case JordanOutcome::Unknown: return "Unknown";
  }
  return "?";
}

JordanVerdict jordan_verdict(const GroupHandle& g, const SearchOptions& options) {
  JordanVerdict v;
  const std::size_t d = g.degree();
  if (d < 2) {
    v.reason = "degree below 2";
    return v;
  }
  const auto prim = is_primitive(g);
  if (!prim.primitive) {
    v.reason = g.is_transitive() ? "imprimitive" : "intransitive";
    return v;
  }
  if (d < 5) {
    v.reason = "no prime p < degree - 2 exists below degree 5";
    return v;
  }
  const std::size_t bound = d - 2;
  const auto& gens = g.generators();
  std::optional<CycleCertificate> found;
  std::vector<Candidate> pool;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    pool.push_back({gens[i], CertificateWord::generator(i)});
  }
  std::size_t examined = 0;
  auto consider = [&](const Candidate& c) {
    ++examined;
    if (!found) found = try_isolate(c, bound);
  };
  for (const auto& c : pool) consider(c);
  for (std::size_t i = 0; i < pool.size() && !found; ++i)
    for (std::size_t j = 0; j < pool.size() && !found; ++j) {
      if (i == j) continue;
      consider({pool[i].perm * pool[j].perm, pool[i].word * pool[j].word});
      consider({star(pool[i].perm, pool[j].perm), pool[i].word.star(pool[j].word)});
    }
  std::mt19937_64 rng(options.seed);
  while (!found && examined < options.budget && !gens.empty()) {
    const std::size_t length = 1 + rng() % 10;
    Candidate c{Permutation(d), CertificateWord::generator(0).pow(0)};
    for (std::size_t t = 0; t < length; ++t) {
      const std::size_t i = rng() % gens.size();
      c.perm = c.perm * gens[i];
      c.word = c.word * CertificateWord::generator(i);
    }
    consider(c);
  }
  if (!found) {
    v.reason = "no prime cycle found within budget";
    return v;
  }
  v.cycle = found;
  bool odd_generator = false;
  for (const auto& gen : gens) odd_generator = odd_generator || !gen.is_even();
  if (d <= kMaxChainDegree) {
    const BigInt order = g.order();
    const BigInt full = factorial(d);
    if (order == full) {
      v.outcome = JordanOutcome::Sym;
    } else if (order * 2 == full) {
      v.outcome = JordanOutcome::Alt;
    } else {
      v.reason = "order " + order.str() + " contradicts a primitive group with a prime cycle";
      return v;
    }
  } else {
    v.outcome = odd_generator ? JordanOutcome::Sym : JordanOutcome::Alt;
  }
  v.reason = "primitive with a " + std::to_string(found->p) + "-cycle";
  return v;
}

// ---------------------------------------------------------------------------
// Goursat

std::pair<Permutation, Permutation> split_product(const Permutation& g, std::size_t d1) {
  const std::size_t d = g.degree();
  if (d1 > d) throw InvalidArgument("first factor larger than the degree");
  std::vector<Point> a(d1), b(d - d1);
  for (std::size_t x = 0; x < d1; ++x) {
    if (g(static_cast<Point>(x)) >= d1) throw InvalidArgument("permutation mixes the two factors");
    a[x] = g(static_cast<Point>(x));
  }
  for (std::size_t x = d1; x < d; ++x) {
    if (g(static_cast<Point>(x)) < d1) throw InvalidArgument("permutation mixes the two factors");
    b[x - d1] = static_cast<Point>(g(static_cast<Point>(x)) - d1);
  }
  return {Permutation(std::move(a)), Permutation(std::move(b))};
}

Permutation join_product(const Permutation& first, const Permutation& second) {
  const std::size_t d1 = first.degree();
  std::vector<Point> images(d1 + second.degree());
  for (std::size_t x = 0; x < d1; ++x) images[x] = first(static_cast<Point>(x));
  for (std::size_t x = 0; x < second.degree(); ++x) {
    images[d1 + x] = static_cast<Point>(second(static_cast<Point>(x)) + d1);
  }
  return Permutation(std::move(images));
}

GoursatDecomposition goursat_decompose(const GroupHandle& h, std::size_t first_degree,
                                       std::size_t element_budget) {
  for (const auto& g : h.generators()) split_product(g, first_degree);
  const auto elements = h.elements(element_budget);
  GoursatDecomposition out;
  out.first_degree = first_degree;
  out.second_degree = h.degree() - first_degree;
  std::set<Permutation> h1, h2, n1, n2;
  std::vector<std::pair<Permutation, Permutation>> pairs;
  for (const auto& g : elements) {
    auto pr = split_product(g, first_degree);
    h1.insert(pr.first);
    h2.insert(pr.second);
    if (pr.second.is_identity()) n1.insert(pr.first);
    if (pr.first.is_identity()) n2.insert(pr.second);
    pairs.push_back(std::move(pr));
  }
  out.h1.assign(h1.begin(), h1.end());
  out.h2.assign(h2.begin(), h2.end());
  out.n1.assign(n1.begin(), n1.end());
  out.n2.assign(n2.begin(), n2.end());
  auto coset_rep = [](const Permutation& x, const std::vector<Permutation>& normal) {
    Permutation best = x * normal.front();
    for (const auto& k : normal) best = std::min(best, x * k);
    return best;
  };
  std::map<Permutation, Permutation> psi;
  std::map<Permutation, Permutation> psi_inv;
  bool ok = true;
  for (const auto& [x, y] : pairs) {
    const Permutation cx = coset_rep(x, out.n1);
    const Permutation cy = coset_rep(y, out.n2);
    auto [it, fresh] = psi.emplace(cx, cy);
    if (!fresh && it->second != cy) ok = false;
    auto [jt, fresh_inv] = psi_inv.emplace(cy, cx);
    if (!fresh_inv && jt->second != cx) ok = false;
  }
  out.psi.assign(psi.begin(), psi.end());
  // H = {(x, y) in H1 x H2 : Psi([x]) = [y]}.
  std::set<Permutation> rebuilt;
  if (ok) {
    for (const auto& x : out.h1) {
      const auto it = psi.find(coset_rep(x, out.n1));
      if (it == psi.end()) {
        ok = false;
        break;
      }
      for (const auto& k : out.n2) rebuilt.insert(join_product(x, it->second * k));
    }
  }
  out.verified = ok && std::equal(rebuilt.begin(), rebuilt.end(), elements.begin(), elements.end());
  return out;
}

// ---------------------------------------------------------------------------
// Arrangements and recipes

namespace {

void require_side(std::size_t n) {
  if (n < 5) throw InvalidArgument("arrangement recipes need a grid of side at least 5");
}

Permutation base_arrangement(std::size_t arrangement, std::size_t n) {
  auto P = [n](std::size_t row, std::size_t col) {
    return static_cast<Point>(grid_index(n, GridPoint{row, col}));
  };
  std::vector<std::vector<Point>> cycles;
  switch (arrangement) {
    case 1:
      cycles = {{P(1, 1), P(2, 1)}, {P(1, 2), P(2, 2)}};
      break;
    case 2:
      cycles = {{P(1, 1), P(2, 1)}, {P(1, 2), P(2, 2)}, {P(3, 1), P(4, 1)}, {P(3, 2), P(4, 2)}};
      break;
    case 3:
      cycles = {{P(1, 1), P(2, 1), P(3, 1)}, {P(1, 2), P(2, 2), P(3, 2)}};
      break;
    default:
      throw InvalidArgument("arrangement must be in 1..6");
  }
  return Permutation::from_cycles(n * n, cycles);
}

bool matches_base(const Permutation& g, std::size_t arrangement, std::size_t n) {
  const Permutation expected = base_arrangement(arrangement, n);
  for (std::size_t row = 1; row <= 4; ++row)
    for (std::size_t col = 1; col <= 3; ++col) {
      const auto p = static_cast<Point>(grid_index(n, GridPoint{row, col}));
      if (g(p) != expected(p)) return false;
    }
  return true;
}

CertificateWord recipe_two(const CertificateWord& g3) {
  const CertificateWord g4 = g3.conjugated_by(CertificateWord::row_swap(3, 5));
  const CertificateWord g5 = g4.conjugated_by(CertificateWord::row_swap(2, 3)) * g4;
  return (g4 * g5.conjugated_by(CertificateWord::col_swap(1, 3))).pow(2);
}

CertificateWord recipe(std::size_t arrangement, const CertificateWord& g3) {
  switch (arrangement) {
    case 1: {
      const CertificateWord g4 = g3.conjugated_by(CertificateWord::row_swap(2, 3)) * g3;
      return (g3 * g4.conjugated_by(CertificateWord::col_swap(1, 3))).pow(2);
    }
    case 2:
      return recipe_two(g3);
    case 3: {
      const CertificateWord g4 = g3.conjugated_by(CertificateWord::row_swap(3, 4)) * g3;
      return recipe_two(g4.conjugated_by(CertificateWord::row_swap(2, 4)));
    }
    default:
      throw InvalidArgument("arrangement must be in 1..6");
  }
}

}  // namespace

Permutation arrangement_instance(std::size_t arrangement, std::size_t n) {
  require_side(n);
  if (arrangement >= 4 && arrangement <= 6) {
    return conjugate(base_arrangement(arrangement - 3, n), swap_map(n));
  }
  return base_arrangement(arrangement, n);
}

bool matches_arrangement(const Permutation& g, std::size_t arrangement, std::size_t n) {
  require_side(n);
  if (g.degree() != n * n) return false;
  if (arrangement >= 4 && arrangement <= 6) {
    return matches_base(conjugate(g, swap_map(n)), arrangement - 3, n);
  }
  if (arrangement < 1 || arrangement > 3) throw InvalidArgument("arrangement must be in 1..6");
  return matches_base(g, arrangement, n);
}

CycleCertificate three_cycle_from_arrangement(const Permutation& gamma, std::size_t arrangement) {
  const std::size_t n = grid_side(gamma);
  if (arrangement < 1 || arrangement > 6) throw InvalidArgument("arrangement must be in 1..6");
  if (!matches_arrangement(gamma, arrangement, n)) {
    throw ArrangementMismatch("permutation does not implement arrangement (" +
                              std::to_string(arrangement) + ") on the depicted points");
  }
  const CertificateWord gamma_word = CertificateWord::generator(0);
  CertificateWord word = arrangement <= 3
                             ? recipe(arrangement, gamma_word)
                             : recipe(arrangement - 3,
                                      gamma_word.conjugated_by(CertificateWord::swap()))
                                   .conjugated_by(CertificateWord::swap());
  const std::vector<Permutation> gens{gamma};
  Permutation result = word.evaluate(gens, n);
  if (result.cycle_type() != std::vector<std::size_t>{3}) {
    throw RecipeFailed("recipe for arrangement (" + std::to_string(arrangement) +
                       ") produced " + result.to_string());
  }
  return CycleCertificate{3, std::move(result), std::move(word)};
}

Permutation arrangement_a_involution(std::size_t n,
                                     const std::vector<std::pair<GridPoint, GridPoint>>& extra) {
  if (n < 3) throw InvalidArgument("arrangement (a) needs a grid of side at least 3");
  std::vector<std::vector<Point>> cycles{
      {static_cast<Point>(grid_index(n, {2, 1})), static_cast<Point>(grid_index(n, {3, 2}))}};
  for (const auto& [p, q] : extra) {
    if (p == GridPoint{1, 1} || q == GridPoint{1, 1}) {
      throw InvalidArgument("arrangement (a) fixes the point (1,1)");
    }
    cycles.push_back({static_cast<Point>(grid_index(n, p)), static_cast<Point>(grid_index(n, q))});
  }
  return Permutation::from_cycles(n * n, cycles);
}

}  // namespace stabaut
