#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "stabaut/block_codes.hpp"

namespace stabaut {

/// Data letters D (the first n^2 target letters), their pairing with W x W
/// (d_i <-> (i / n, i mod n)) and the gap R between letters of a stretch.
class MarkerScheme {
 public:
  MarkerScheme(SftMatrix target, std::size_t source_n, std::size_t gap);

  const SftMatrix& target() const { return target_; }
  std::size_t target_size() const { return target_.edge_count(); }
  std::size_t source_size() const { return source_n_; }
  std::size_t gap() const { return gap_; }
  std::vector<Letter> data_letters() const;

  bool is_data(Letter a) const { return a < source_n_ * source_n_; }
  /// (upper, lower) components of a data letter.
  std::pair<Letter, Letter> pair_of(Letter d) const {
    return {static_cast<Letter>(d / source_n_), static_cast<Letter>(d % source_n_)};
  }
  Letter letter_of(Letter upper, Letter lower) const {
    return static_cast<Letter>(upper * source_n_ + lower);
  }

  friend bool operator==(const MarkerScheme& a, const MarkerScheme& b) {
    return a.target_.entries() == b.target_.entries() && a.source_n_ == b.source_n_ &&
           a.gap_ == b.gap_;
  }

 private:
  SftMatrix target_;
  std::size_t source_n_;
  std::size_t gap_;
};

/// Full-shift target on q letters. Throws InsufficientAlphabet when q <= n^2.
MarkerScheme find_marker_scheme(std::size_t q, std::size_t n, std::size_t gap);

/// SFT target; every D-word of length <= feasibility_length must be realisable
/// as a stretch bounded by non-data letters, else FeasibilityUnverified.
MarkerScheme find_marker_scheme(const SftMatrix& target, std::size_t n, std::size_t gap,
                                std::size_t feasibility_length = 3);

struct Stretch {
  std::vector<std::int64_t> positions;
  bool left_open = false;
  bool right_open = false;
  bool total() const { return !left_open && !right_open; }
};

struct StretchView {
  std::int64_t offset = 0;
  Word window;
  std::vector<Stretch> stretches;  // ordered by first position
};

/// The gap-R progressions of data positions visible in window (whose first
/// letter sits at absolute position offset). A progression is open on a side
/// when the position one gap beyond it lies outside the window.
StretchView coded_stretches(const Word& window, std::int64_t offset, const MarkerScheme& scheme);

/// Index of position i in the upper row.
inline std::int64_t upper_index(std::int64_t i, std::size_t gap) {
  return floor_div(i, static_cast<std::int64_t>(gap));
}
/// Index of position i in the lower row (reflected through -1/2).
inline std::int64_t lower_index(std::int64_t i, std::size_t gap) {
  return -floor_div(i, static_cast<std::int64_t>(gap)) - 1;
}

struct RowRead {
  std::int64_t upper_start = 0;  // index of upper[0] in the upper row
  Word upper;
  std::int64_t lower_start = 0;  // index of lower[0] in the lower row
  Word lower;
};

/// Upper and lower source rows around data position i, 2*span+1 letters each.
RowRead read_at(const PeriodicPoint& x, std::int64_t i, const MarkerScheme& scheme,
                std::size_t span);
/// As above on a finite window; throws ContextExhausted when the walk leaves it.
RowRead read_at(const Word& window, std::int64_t offset, std::int64_t i,
                const MarkerScheme& scheme, std::size_t span);

/// The target code that rewrites every stretch by phi on both rows and copies
/// all other letters. Period kR, radius rR. Requires phi's period to be 1 or 2.
StabilizedCode embed_code(const StabilizedCode& phi, const MarkerScheme& scheme);
Automorphism embed_automorphism(const Automorphism& phi, const MarkerScheme& scheme);

}  // namespace stabaut
