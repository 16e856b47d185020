#include "stabaut/block_codes.hpp"

#include <algorithm>

#include "stabaut/errors.hpp"

namespace stabaut {

namespace {

std::uint64_t checked_table_size(std::size_t n, std::size_t period, std::size_t radius) {
  if (n == 0 || n > kMaxAlphabet) throw InvalidArgument("alphabet size must be in [1, 65535]");
  if (period == 0) throw InvalidArgument("period must be positive");
  const std::uint64_t size = checked_pow(n, 2 * radius + 1);
  if (size > kMaxTableEntries / period) {
    throw BudgetExceeded("code with n=" + std::to_string(n) + ", period " +
                         std::to_string(period) + ", radius " + std::to_string(radius) +
                         " exceeds the table budget");
  }
  return size;
}

/// Index of the radius-r centre of a radius-R window index.
inline std::uint64_t centre_index(std::uint64_t w, std::uint64_t outer_scale,
                                  std::uint64_t inner_size) {
  return (w / outer_scale) % inner_size;
}

void require_same_alphabet(const StabilizedCode& f, const StabilizedCode& g) {
  if (f.alphabet_size() != g.alphabet_size()) {
    throw InvalidArgument("codes over different alphabets (" +
                          std::to_string(f.alphabet_size()) + " vs " +
                          std::to_string(g.alphabet_size()) + ")");
  }
}

/// Advances digits (most significant first) as a base-n odometer.
inline void increment(std::vector<Letter>& digits, std::size_t n) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < n) return;
    digits[i] = 0;
  }
}

}  // namespace

StabilizedCode::StabilizedCode(std::size_t n, std::size_t period, std::size_t radius,
                               std::vector<Letter> data)
    : n_(n), period_(period), radius_(radius),
      table_size_(checked_table_size(n, period, radius)), data_(std::move(data)) {}

StabilizedCode::StabilizedCode(std::size_t n, std::size_t period, std::size_t radius,
                               std::vector<std::vector<Letter>> tables)
    : n_(n), period_(period), radius_(radius),
      table_size_(checked_table_size(n, period, radius)) {
  if (tables.size() != period) {
    throw InvalidArgument("expected " + std::to_string(period) + " tables, got " +
                          std::to_string(tables.size()));
  }
  data_.reserve(period * table_size_);
  for (std::size_t c = 0; c < period; ++c) {
    if (tables[c].size() != table_size_) {
      throw InvalidArgument("table " + std::to_string(c) + " has " +
                            std::to_string(tables[c].size()) + " entries, expected " +
                            std::to_string(table_size_));
    }
    for (std::size_t i = 0; i < tables[c].size(); ++i) {
      if (tables[c][i] >= n) {
        throw InvalidArgument("table " + std::to_string(c) + " entry " + std::to_string(i) +
                              " is " + std::to_string(tables[c][i]) + ", not < " +
                              std::to_string(n));
      }
    }
    data_.insert(data_.end(), tables[c].begin(), tables[c].end());
  }
}

StabilizedCode StabilizedCode::from_rule(std::size_t n, std::size_t period, std::size_t radius,
                                         const Rule& rule) {
  CodeBuilder builder(n, period, radius);
  std::vector<Letter> window(2 * radius + 1, 0);
  for (std::size_t c = 0; c < period; ++c) {
    std::fill(window.begin(), window.end(), Letter{0});
    for (std::uint64_t w = 0; w < builder.table_size(); ++w) {
      builder.set(c, w, rule(c, window));
      increment(window, n);
    }
  }
  return std::move(builder).build();
}

StabilizedCode StabilizedCode::identity(std::size_t n) {
  std::vector<Letter> table(n);
  for (std::size_t a = 0; a < n; ++a) table[a] = static_cast<Letter>(a);
  return StabilizedCode(n, 1, 0, std::vector<std::vector<Letter>>{table});
}

std::vector<std::vector<Letter>> StabilizedCode::tables() const {
  std::vector<std::vector<Letter>> out(period_);
  for (std::size_t c = 0; c < period_; ++c) {
    auto t = table(c);
    out[c].assign(t.begin(), t.end());
  }
  return out;
}

Letter StabilizedCode::evaluate(std::int64_t position_class,
                                std::span<const Letter> window) const {
  if (window.size() != window_length()) {
    throw InvalidArgument("window length " + std::to_string(window.size()) +
                          " does not match 2r+1 = " + std::to_string(window_length()));
  }
  return lookup(floor_mod(position_class, period_), power_alphabet_index(n_, window));
}

CodeBuilder::CodeBuilder(std::size_t n, std::size_t period, std::size_t radius)
    : n_(n), period_(period), radius_(radius),
      table_size_(checked_table_size(n, period, radius)), data_(period * table_size_, 0) {}

StabilizedCode CodeBuilder::build() && {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (data_[i] >= n_) throw InvalidArgument("code builder produced an out-of-range letter");
  }
  return StabilizedCode(n_, period_, radius_, std::move(data_));
}

PeriodicPoint apply_to_periodic(const StabilizedCode& code, const PeriodicPoint& x) {
  const std::size_t length = lcm_u64(x.period(), code.period());
  const auto r = static_cast<std::int64_t>(code.radius());
  const std::size_t n = code.alphabet_size();
  Word out(length);
  for (std::size_t z = 0; z < length; ++z) {
    std::uint64_t index = 0;
    for (std::int64_t t = -r; t <= r; ++t) {
      const Letter a = x.at(static_cast<std::int64_t>(z) + t);
      if (a >= n) throw InvalidArgument("periodic point uses a letter outside the alphabet");
      index = index * n + a;
    }
    out[z] = code.lookup(z % code.period(), index);
  }
  return PeriodicPoint(std::move(out), 0);
}

StabilizedCode refine(const StabilizedCode& code, std::size_t K, std::size_t R) {
  if (K == 0 || K % code.period() != 0) {
    throw InvalidArgument("refined period " + std::to_string(K) + " is not a multiple of " +
                          std::to_string(code.period()));
  }
  if (R < code.radius()) throw InvalidArgument("refined radius is smaller than the radius");
  const std::size_t n = code.alphabet_size();
  CodeBuilder builder(n, K, R);
  const std::uint64_t scale = checked_pow(n, R - code.radius());
  for (std::size_t c = 0; c < K; ++c) {
    const std::size_t src = c % code.period();
    for (std::uint64_t w = 0; w < builder.table_size(); ++w) {
      builder.set(c, w, code.lookup(src, centre_index(w, scale, code.table_size())));
    }
  }
  return std::move(builder).build();
}

StabilizedCode compose(const StabilizedCode& f, const StabilizedCode& g) {
  require_same_alphabet(f, g);
  const std::size_t n = f.alphabet_size();
  const std::size_t K = lcm_u64(f.period(), g.period());
  const std::size_t rf = f.radius();
  const std::size_t rg = g.radius();
  const std::size_t R = rf + rg;
  CodeBuilder builder(n, K, R);
  const std::size_t L = 2 * R + 1;
  const std::size_t inner_len = 2 * rg + 1;
  const std::uint64_t inner_drop = g.table_size() / n;  // n^(2 rg)
  std::vector<Letter> digits(L);
  for (std::size_t c = 0; c < K; ++c) {
    const std::size_t fc = c % f.period();
    std::vector<std::size_t> gc(2 * rf + 1);
    for (std::size_t t = 0; t <= 2 * rf; ++t) {
      gc[t] = floor_mod(static_cast<std::int64_t>(c + t) - static_cast<std::int64_t>(rf),
                        g.period());
    }
    std::fill(digits.begin(), digits.end(), Letter{0});
    for (std::uint64_t w = 0; w < builder.table_size(); ++w) {
      std::uint64_t inner = 0;
      for (std::size_t i = 0; i < inner_len; ++i) inner = inner * n + digits[i];
      std::uint64_t outer = g.lookup(gc[0], inner);
      for (std::size_t t = 1; t <= 2 * rf; ++t) {
        inner = (inner % inner_drop) * n + digits[t + inner_len - 1];
        outer = outer * n + g.lookup(gc[t], inner);
      }
      builder.set(c, w, f.lookup(fc, outer));
      increment(digits, n);
    }
  }
  return std::move(builder).build();
}

bool equals(const StabilizedCode& f, const StabilizedCode& g) {
  if (f.alphabet_size() != g.alphabet_size()) return false;
  const std::size_t n = f.alphabet_size();
  const std::size_t K = lcm_u64(f.period(), g.period());
  const std::size_t R = std::max(f.radius(), g.radius());
  const std::uint64_t size = checked_table_size(n, K, R);
  const std::uint64_t fs = checked_pow(n, R - f.radius());
  const std::uint64_t gs = checked_pow(n, R - g.radius());
  for (std::size_t c = 0; c < K; ++c) {
    const std::size_t fc = c % f.period();
    const std::size_t gc = c % g.period();
    for (std::uint64_t w = 0; w < size; ++w) {
      if (f.lookup(fc, centre_index(w, fs, f.table_size())) !=
          g.lookup(gc, centre_index(w, gs, g.table_size()))) {
        return false;
      }
    }
  }
  return true;
}

bool equals_on(const SftMatrix& sft, const StabilizedCode& f, const StabilizedCode& g) {
  if (f.alphabet_size() != g.alphabet_size()) return false;
  if (f.alphabet_size() != sft.edge_count()) {
    throw InvalidArgument("code alphabet does not match the SFT edge set");
  }
  const std::size_t n = f.alphabet_size();
  const std::size_t K = lcm_u64(f.period(), g.period());
  const std::size_t R = std::max(f.radius(), g.radius());
  const std::uint64_t size = checked_table_size(n, K, R);
  const std::uint64_t fs = checked_pow(n, R - f.radius());
  const std::uint64_t gs = checked_pow(n, R - g.radius());
  std::vector<Letter> digits(2 * R + 1);
  for (std::size_t c = 0; c < K; ++c) {
    std::fill(digits.begin(), digits.end(), Letter{0});
    for (std::uint64_t w = 0; w < size; ++w, increment(digits, n)) {
      if (!sft.admissible(digits)) continue;
      if (f.lookup(c % f.period(), centre_index(w, fs, f.table_size())) !=
          g.lookup(c % g.period(), centre_index(w, gs, g.table_size()))) {
        return false;
      }
    }
  }
  return true;
}

bool is_identity(const StabilizedCode& code) {
  const std::size_t n = code.alphabet_size();
  const std::uint64_t scale = checked_pow(n, code.radius());
  for (std::size_t c = 0; c < code.period(); ++c) {
    for (std::uint64_t w = 0; w < code.table_size(); ++w) {
      if (code.lookup(c, w) != (w / scale) % n) return false;
    }
  }
  return true;
}

StabilizedCode conjugate_by_shift(const StabilizedCode& code, std::int64_t m) {
  const std::size_t k = code.period();
  CodeBuilder builder(code.alphabet_size(), k, code.radius());
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t src = floor_mod(static_cast<std::int64_t>(c) + m, k);
    for (std::uint64_t w = 0; w < code.table_size(); ++w) builder.set(c, w, code.lookup(src, w));
  }
  return std::move(builder).build();
}

bool commutes_with_shift_power(const StabilizedCode& code, std::size_t m) {
  if (m == 0) throw InvalidArgument("shift power must be positive");
  const std::size_t k = code.period();
  for (std::size_t c = 0; c < k; ++c) {
    const auto a = code.table(c);
    const auto b = code.table((c + m) % k);
    if (!std::equal(a.begin(), a.end(), b.begin())) return false;
  }
  return true;
}

bool verify_inverse_pair(const StabilizedCode& f, const StabilizedCode& g) {
  if (f.alphabet_size() != g.alphabet_size()) return false;
  return is_identity(compose(f, g)) && is_identity(compose(g, f));
}

std::size_t minimal_radius(const StabilizedCode& code) {
  const std::size_t n = code.alphabet_size();
  for (std::size_t rr = 0; rr < code.radius(); ++rr) {
    const std::uint64_t scale = checked_pow(n, code.radius() - rr);
    const std::uint64_t inner = checked_pow(n, 2 * rr + 1);
    bool ok = true;
    for (std::size_t c = 0; c < code.period() && ok; ++c) {
      for (std::uint64_t w = 0; w < code.table_size(); ++w) {
        const std::uint64_t rep = centre_index(w, scale, inner) * scale;
        if (code.lookup(c, w) != code.lookup(c, rep)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return rr;
  }
  return code.radius();
}

StabilizedCode reduce_radius(const StabilizedCode& code) {
  const std::size_t rr = minimal_radius(code);
  if (rr == code.radius()) return code;
  const std::uint64_t scale = checked_pow(code.alphabet_size(), code.radius() - rr);
  CodeBuilder builder(code.alphabet_size(), code.period(), rr);
  for (std::size_t c = 0; c < code.period(); ++c) {
    for (std::uint64_t v = 0; v < builder.table_size(); ++v) {
      builder.set(c, v, code.lookup(c, v * scale));
    }
  }
  return std::move(builder).build();
}

std::optional<StabilizedCode> find_inverse(const StabilizedCode& f, std::size_t max_radius) {
  const std::size_t n = f.alphabet_size();
  const std::size_t k = f.period();
  const std::size_t rf = f.radius();
  constexpr Letter kUnset = 0xFFFF;
  for (std::size_t R = 0; R <= max_radius; ++R) {
    const std::size_t span = 2 * (R + rf) + 1;
    const std::uint64_t count = checked_pow(n, span);
    if (count > kMaxTableEntries) throw BudgetExceeded("inverse search window too large");
    CodeBuilder builder(n, k, R);
    std::vector<Letter> table(builder.table_size());
    std::vector<Letter> digits(span);
    const std::uint64_t drop = f.table_size() / n;
    bool consistent = true;
    for (std::size_t c = 0; c < k && consistent; ++c) {
      std::fill(table.begin(), table.end(), kUnset);
      std::fill(digits.begin(), digits.end(), Letter{0});
      for (std::uint64_t w = 0; w < count; ++w, increment(digits, n)) {
        std::uint64_t inner = 0;
        for (std::size_t i = 0; i < 2 * rf + 1; ++i) inner = inner * n + digits[i];
        std::uint64_t y = f.lookup(floor_mod(static_cast<std::int64_t>(c) -
                                                 static_cast<std::int64_t>(R),
                                             k),
                                   inner);
        for (std::size_t t = 1; t <= 2 * R; ++t) {
          inner = (inner % drop) * n + digits[t + 2 * rf];
          const std::size_t cls = floor_mod(static_cast<std::int64_t>(c + t) -
                                                static_cast<std::int64_t>(R),
                                            k);
          y = y * n + f.lookup(cls, inner);
        }
        const Letter centre = digits[R + rf];
        if (table[y] == kUnset) {
          table[y] = centre;
        } else if (table[y] != centre) {
          consistent = false;
          break;
        }
      }
      for (std::uint64_t y = 0; y < table.size(); ++y) {
        builder.set(c, y, table[y] == kUnset ? Letter{0} : table[y]);
      }
    }
    if (!consistent) continue;
    StabilizedCode g = std::move(builder).build();
    if (verify_inverse_pair(f, g)) return g;
  }
  return std::nullopt;
}

Automorphism::Automorphism(StabilizedCode forward, StabilizedCode inverse)
    : forward_(std::move(forward)), inverse_(std::move(inverse)) {}

Automorphism Automorphism::checked(StabilizedCode forward, StabilizedCode inverse) {
  if (!verify_inverse_pair(forward, inverse)) {
    throw InvalidArgument("codes are not mutually inverse");
  }
  return Automorphism(std::move(forward), std::move(inverse));
}

Automorphism Automorphism::by_construction(StabilizedCode forward, StabilizedCode inverse) {
  require_same_alphabet(forward, inverse);
  return Automorphism(std::move(forward), std::move(inverse));
}

Automorphism Automorphism::identity(std::size_t n) {
  return Automorphism(StabilizedCode::identity(n), StabilizedCode::identity(n));
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  return Automorphism::by_construction(compose(a.forward(), b.forward()),
                                       compose(b.inverse_code(), a.inverse_code()));
}

bool equals(const Automorphism& a, const Automorphism& b) {
  return equals(a.forward(), b.forward());
}

namespace {

/// Every letter occurs equally often in every table; necessary for surjectivity.
bool balanced(const std::vector<Letter>& entries, std::size_t n, std::uint64_t table_size,
              std::size_t period) {
  std::vector<std::uint64_t> counts(n);
  for (std::size_t c = 0; c < period; ++c) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t i = 0; i < table_size; ++i) ++counts[entries[c * table_size + i]];
    for (auto v : counts) {
      if (v * n != table_size) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Automorphism> enumerate_automorphisms(std::size_t n, std::size_t r, std::size_t k,
                                                  const EnumerationOptions& options) {
  const std::uint64_t table_size = checked_table_size(n, k, r);
  const std::uint64_t entries = table_size * k;
  const BigInt candidates = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(entries));
  if (candidates > options.budget) {
    throw BudgetExceeded("enumeration of " + candidates.str() + " candidate codes exceeds budget " +
                         std::to_string(options.budget));
  }
  const std::size_t inverse_bound = options.inverse_radius.value_or(2 * r);
  std::vector<Automorphism> out;
  std::vector<Letter> digits(entries, 0);
  const auto total = candidates.convert_to<std::uint64_t>();
  for (std::uint64_t i = 0; i < total; ++i, increment(digits, n)) {
    if (!balanced(digits, n, table_size, k)) continue;
    std::vector<std::vector<Letter>> tables(k);
    for (std::size_t c = 0; c < k; ++c) {
      tables[c].assign(digits.begin() + static_cast<std::ptrdiff_t>(c * table_size),
                       digits.begin() + static_cast<std::ptrdiff_t>((c + 1) * table_size));
    }
    StabilizedCode f(n, k, r, std::move(tables));
    if (auto g = find_inverse(f, inverse_bound)) {
      out.push_back(Automorphism::by_construction(std::move(f), std::move(*g)));
    }
  }
  return out;
}

}  // namespace stabaut
