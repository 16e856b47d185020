#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stabaut/shift_core.hpp"

namespace stabaut {

/// Upper bound on the number of table entries any single code may hold.
inline constexpr std::uint64_t kMaxTableEntries = std::uint64_t{1} << 26;

/// A sliding block code commuting with a power of the shift:
///   phi(x)_z = beta_{z mod k}(x_{z-r} ... x_{z+r}).
/// Windows are indexed leftmost-significant (see power_alphabet_index).
class StabilizedCode {
 public:
  using Rule = std::function<Letter(std::size_t position_class, std::span<const Letter> window)>;

  /// tables[c] has n^(2r+1) entries, each < n.
  StabilizedCode(std::size_t n, std::size_t period, std::size_t radius,
                 std::vector<std::vector<Letter>> tables);

  /// Builds the tables by calling rule on every (class, window).
  static StabilizedCode from_rule(std::size_t n, std::size_t period, std::size_t radius,
                                  const Rule& rule);
  static StabilizedCode identity(std::size_t n);

  std::size_t alphabet_size() const { return n_; }
  std::size_t period() const { return period_; }
  std::size_t radius() const { return radius_; }
  std::size_t window_length() const { return 2 * radius_ + 1; }
  std::uint64_t table_size() const { return table_size_; }

  Letter lookup(std::size_t position_class, std::uint64_t window_index) const {
    return data_[position_class * table_size_ + window_index];
  }
  std::span<const Letter> table(std::size_t position_class) const {
    return {data_.data() + position_class * table_size_, table_size_};
  }
  std::vector<std::vector<Letter>> tables() const;

  /// Output at a position of the given class (reduced mod period).
  Letter evaluate(std::int64_t position_class, std::span<const Letter> window) const;

  friend bool operator==(const StabilizedCode&, const StabilizedCode&) = default;

 private:
  StabilizedCode(std::size_t n, std::size_t period, std::size_t radius,
                 std::vector<Letter> data);
  friend class CodeBuilder;

  std::size_t n_;
  std::size_t period_;
  std::size_t radius_;
  std::uint64_t table_size_;
  std::vector<Letter> data_;
};

/// Window-at-a-time construction of large codes without a std::function per entry.
class CodeBuilder {
 public:
  CodeBuilder(std::size_t n, std::size_t period, std::size_t radius);
  std::uint64_t table_size() const { return table_size_; }
  void set(std::size_t position_class, std::uint64_t window_index, Letter value) {
    data_[position_class * table_size_ + window_index] = value;
  }
  StabilizedCode build() &&;

 private:
  std::size_t n_, period_, radius_;
  std::uint64_t table_size_;
  std::vector<Letter> data_;
};

/// Output of the code on a periodic point.
PeriodicPoint apply_to_periodic(const StabilizedCode& code, const PeriodicPoint& x);

/// Same map, written with period K (a multiple of k) and radius R >= r.
StabilizedCode refine(const StabilizedCode& code, std::size_t K, std::size_t R);

/// f after g.
StabilizedCode compose(const StabilizedCode& f, const StabilizedCode& g);

/// Pointwise equality on the full shift.
bool equals(const StabilizedCode& f, const StabilizedCode& g);

/// Pointwise equality on the SFT whose edges are the alphabet letters.
bool equals_on(const SftMatrix& sft, const StabilizedCode& f, const StabilizedCode& g);

bool is_identity(const StabilizedCode& code);

/// sigma^m . code . sigma^-m.
StabilizedCode conjugate_by_shift(const StabilizedCode& code, std::int64_t m);

bool commutes_with_shift_power(const StabilizedCode& code, std::size_t m);

bool verify_inverse_pair(const StabilizedCode& f, const StabilizedCode& g);

/// The smallest radius at which the same map can be written (at most code.radius()).
std::size_t minimal_radius(const StabilizedCode& code);

/// The map rewritten at radius minimal_radius(code).
StabilizedCode reduce_radius(const StabilizedCode& code);

/// Bounded search for an inverse of the same period with radius <= max_radius.
/// Returns the inverse of least radius, verified with verify_inverse_pair.
std::optional<StabilizedCode> find_inverse(const StabilizedCode& f, std::size_t max_radius);

/// An invertible stabilized code together with its inverse.
class Automorphism {
 public:
  /// Verifies the pair; throws InvalidArgument if they are not mutually inverse.
  static Automorphism checked(StabilizedCode forward, StabilizedCode inverse);
  /// For constructions that are inverse pairs by design. Only shape is checked.
  static Automorphism by_construction(StabilizedCode forward, StabilizedCode inverse);
  static Automorphism identity(std::size_t n);

  const StabilizedCode& forward() const { return forward_; }
  const StabilizedCode& inverse_code() const { return inverse_; }
  std::size_t alphabet_size() const { return forward_.alphabet_size(); }
  std::size_t period() const { return forward_.period(); }
  std::size_t radius() const { return forward_.radius(); }
  std::size_t inverse_radius() const { return inverse_.radius(); }

  Automorphism inverse() const { return Automorphism(inverse_, forward_); }

 private:
  Automorphism(StabilizedCode forward, StabilizedCode inverse);

  StabilizedCode forward_;
  StabilizedCode inverse_;
};

/// a after b, with inverse b^-1 after a^-1.
Automorphism compose(const Automorphism& a, const Automorphism& b);
bool equals(const Automorphism& a, const Automorphism& b);

struct EnumerationOptions {
  /// Largest inverse radius tried; defaults to 2r when unset.
  std::optional<std::size_t> inverse_radius;
  /// Largest number of candidate codes examined.
  std::uint64_t budget = std::uint64_t{1} << 24;
};

/// Every code of the given shape with an inverse of bounded radius, in
/// increasing order of the concatenated tables read as a base-n numeral.
std::vector<Automorphism> enumerate_automorphisms(std::size_t n, std::size_t r, std::size_t k,
                                                  const EnumerationOptions& options = {});

}  // namespace stabaut
