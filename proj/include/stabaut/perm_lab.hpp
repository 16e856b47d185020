#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stabaut/permutation.hpp"

namespace stabaut {

// ---------------------------------------------------------------------------
// Star operation and the grid E x E with E = {1, ..., n}.

/// phi^-1 tau^-1 phi tau.
Permutation star(const Permutation& tau, const Permutation& phi);

/// A point (row, col) of the n x n grid, both 1-based. Row i is the set of
/// points with first coordinate i; column j those with second coordinate j.
struct GridPoint {
  std::size_t row = 1;
  std::size_t col = 1;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// 0-based index (row-1)*n + (col-1).
std::size_t grid_index(std::size_t n, GridPoint p);
GridPoint grid_point(std::size_t n, std::size_t index);

/// The componentwise action (x, y) -> (first(x), second(y)).
Permutation grid_product(const Permutation& first, const Permutation& second);
/// The swap (x, y) -> (y, x).
Permutation swap_map(std::size_t n);
/// Generators of the componentwise subgroup: a transposition and an n-cycle on
/// each coordinate.
std::vector<Permutation> p_generators(std::size_t n);
/// Involutions exchanging rows i and j (resp. columns i and j); 1-based.
Permutation conjugator_row(std::size_t i, std::size_t j, std::size_t n);
Permutation conjugator_col(std::size_t i, std::size_t j, std::size_t n);

enum class GridClass { Both, RowPreserving, ColumnPreserving, Free };
std::string to_string(GridClass c);
/// Row-preserving: the row of g(x, y) does not depend on y.
/// Column-preserving: the column of g(x, y) does not depend on x.
GridClass row_col_class(const Permutation& g, std::size_t n);

/// Integer square root of the degree of a grid permutation.
std::size_t grid_side(const Permutation& g);

// ---------------------------------------------------------------------------
// Permutation groups.

inline constexpr std::size_t kMaxChainDegree = 64;

/// A permutation group given by generators; the stabiliser chain is built on
/// first use and is read-only afterwards.
class GroupHandle {
 public:
  GroupHandle(std::size_t degree, std::vector<Permutation> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  /// Exact order; throws BudgetExceeded for degree > 64.
  BigInt order() const;
  bool contains(const Permutation& g) const;
  std::vector<Permutation::Point> orbit(Permutation::Point x) const;
  bool is_transitive() const;
  /// All elements, by closure; throws BudgetExceeded beyond limit.
  std::vector<Permutation> elements(std::size_t limit) const;

 private:
  struct Chain;
  const Chain& chain() const;

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<Chain> chain_;
};

BigInt group_order(const GroupHandle& g);
BigInt factorial(std::size_t n);

struct PrimitivityResult {
  bool primitive = false;
  /// A non-trivial block (0-based points) when not primitive, if one exists.
  std::vector<Permutation::Point> witness_block;
};

PrimitivityResult is_primitive(const GroupHandle& g);

/// Smallest block containing x and y (0-based), by union-find closure.
std::vector<Permutation::Point> minimal_block(const GroupHandle& g, Permutation::Point x,
                                              Permutation::Point y);

// ---------------------------------------------------------------------------
// Certificate words.

/// An expression over named group elements: generator i, the grid row/column
/// exchanges, and the swap map; combined by product, inverse and power.
class CertificateWord {
 public:
  static CertificateWord generator(std::size_t index);
  static CertificateWord row_swap(std::size_t i, std::size_t j);
  static CertificateWord col_swap(std::size_t i, std::size_t j);
  static CertificateWord swap();

  CertificateWord operator*(const CertificateWord& other) const;
  CertificateWord inverse() const;
  CertificateWord pow(std::int64_t e) const;
  /// by^-1 this by.
  CertificateWord conjugated_by(const CertificateWord& by) const;
  /// by^-1 this^-1 by this.
  CertificateWord star(const CertificateWord& by) const;

  /// grid_side is needed only when the word names grid elements.
  Permutation evaluate(std::span<const Permutation> generators, std::size_t grid_side) const;
  std::string to_string() const;

 private:
  struct Node;
  explicit CertificateWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct CycleCertificate {
  std::size_t p = 0;
  Permutation cycle;
  CertificateWord word;
};

/// If some power of g is a single p-cycle with p prime and p < bound, returns
/// (p, exponent) for the first such prime in increasing order.
std::optional<std::pair<std::size_t, BigInt>> isolate_prime_cycle(const Permutation& g,
                                                                  std::size_t bound);

struct SearchOptions {
  std::size_t budget = 20000;  // candidate elements examined
  std::uint64_t seed = 0;
};

enum class JordanOutcome { Sym, Alt, Unknown };
std::string to_string(JordanOutcome o);

struct JordanVerdict {
  JordanOutcome outcome = JordanOutcome::Unknown;
  std::optional<CycleCertificate> cycle;
  std::string reason;
};

JordanVerdict jordan_verdict(const GroupHandle& g, const SearchOptions& options = {});

/// Searches the group generated over the n x n grid for a single p-cycle with
/// p prime and p < n^2 - 2, using star moves by row/column exchanges,
/// power isolation and seeded random words.
std::optional<CycleCertificate> p_cycle_search(const GroupHandle& g,
                                               const SearchOptions& options = {});

// ---------------------------------------------------------------------------
// Goursat decomposition of a subgroup of Sym(X1) x Sym(X2), acting on the
// disjoint union with X1 = {0..d1-1}.

struct GoursatDecomposition {
  std::size_t first_degree = 0;
  std::size_t second_degree = 0;
  std::vector<Permutation> h1, h2, n1, n2;  // sorted
  /// Coset of N1 (by least representative) -> coset of N2 (least representative).
  std::vector<std::pair<Permutation, Permutation>> psi;
  bool verified = false;
};

GoursatDecomposition goursat_decompose(const GroupHandle& h, std::size_t first_degree,
                                       std::size_t element_budget = 100000);

/// Splits a permutation of the disjoint union into its two factors.
std::pair<Permutation, Permutation> split_product(const Permutation& g, std::size_t first_degree);
Permutation join_product(const Permutation& first, const Permutation& second);

// ---------------------------------------------------------------------------
// Three-cycle recipes on the grid.

/// The canonical involution of the given arrangement (1..6) on the n x n grid,
/// identity elsewhere. Needs n >= 5.
Permutation arrangement_instance(std::size_t arrangement, std::size_t n);

/// Whether g agrees with the arrangement on the depicted 4 x 3 region
/// (3 x 4 for arrangements 4-6).
bool matches_arrangement(const Permutation& g, std::size_t arrangement, std::size_t n);

/// Runs the recipe for the arrangement on gamma (generator 0 of the word).
/// Throws ArrangementMismatch or RecipeFailed.
CycleCertificate three_cycle_from_arrangement(const Permutation& gamma, std::size_t arrangement);

/// The involution swapping (2,1) and (3,2), fixing (1,1), plus the extra
/// transpositions given as pairs of grid points.
Permutation arrangement_a_involution(std::size_t n,
                                     const std::vector<std::pair<GridPoint, GridPoint>>& extra);

}  // namespace stabaut
