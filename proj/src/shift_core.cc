#include "stabaut/shift_core.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "stabaut/errors.hpp"

namespace stabaut {

std::uint64_t checked_pow(std::uint64_t n, std::size_t e) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (n != 0 && result > std::numeric_limits<std::uint64_t>::max() / n) {
      throw BudgetExceeded("power " + std::to_string(n) + "^" + std::to_string(e) +
                           " exceeds 64 bits");
    }
    result *= n;
  }
  return result;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_u64(a, b) * b;
}

Alphabet::Alphabet(std::size_t size) : size_(size) {
  if (size == 0 || size > kMaxAlphabet) {
    throw InvalidArgument("alphabet size must be in [1, 65535]");
  }
}

void Alphabet::validate(std::span<const Letter> word) const {
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] >= size_) {
      throw InvalidArgument("letter " + std::to_string(word[i]) + " at index " +
                            std::to_string(i) + " is outside the alphabet of size " +
                            std::to_string(size_));
    }
  }
}

std::uint64_t power_alphabet_index(std::size_t n, std::span<const Letter> block) {
  Alphabet(n).validate(block);
  checked_pow(n, block.size());
  std::uint64_t index = 0;
  for (Letter a : block) index = index * n + a;
  return index;
}

Word power_alphabet_block(std::size_t n, std::size_t k, std::uint64_t index) {
  if (index >= checked_pow(n, k)) {
    throw InvalidArgument("block index " + std::to_string(index) + " out of range");
  }
  Word block(k);
  for (std::size_t i = k; i-- > 0;) {
    block[i] = static_cast<Letter>(index % n);
    index /= n;
  }
  return block;
}

SftMatrix::SftMatrix(std::vector<std::vector<std::uint64_t>> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("SFT matrix must be non-empty");
  for (const auto& row : entries_) {
    if (row.size() != entries_.size()) throw InvalidArgument("SFT matrix must be square");
  }
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      for (std::uint64_t m = 0; m < entries_[i][j]; ++m) {
        edges_.push_back(Edge{i, j, static_cast<std::size_t>(m)});
        if (edges_.size() > kMaxAlphabet) throw InvalidArgument("too many edges");
      }
    }
  }
}

SftMatrix SftMatrix::full_shift(std::size_t n) {
  return SftMatrix(std::vector<std::vector<std::uint64_t>>{{static_cast<std::uint64_t>(n)}});
}

bool SftMatrix::admissible(std::span<const Letter> word) const {
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] >= edges_.size()) return false;
    if (i > 0 && !follows(word[i - 1], word[i])) return false;
  }
  return true;
}

std::vector<Word> language_words(const SftMatrix& sft, std::size_t length) {
  if (length == 0) throw InvalidArgument("word length must be positive");
  std::vector<Word> out;
  Word current;
  const auto& edges = sft.edges();
  auto extend = [&](auto&& self) -> void {
    if (current.size() == length) {
      out.push_back(current);
      return;
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!current.empty() && !sft.follows(current.back(), static_cast<Letter>(e))) continue;
      current.push_back(static_cast<Letter>(e));
      self(self);
      current.pop_back();
    }
  };
  extend(extend);
  return out;
}

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  const std::size_t d = a.size();
  BigMatrix c(d, std::vector<BigInt>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < d; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

}  // namespace

BigInt count_periodic(const SftMatrix& sft, std::size_t k) {
  if (k == 0) throw InvalidArgument("period must be positive");
  const std::size_t d = sft.dim();
  BigMatrix base(d, std::vector<BigInt>(d));
  BigMatrix acc(d, std::vector<BigInt>(d));
  for (std::size_t i = 0; i < d; ++i) {
    acc[i][i] = 1;
    for (std::size_t j = 0; j < d; ++j) base[i][j] = sft.entry(i, j);
  }
  for (std::size_t e = k; e > 0; e >>= 1) {
    if (e & 1) acc = multiply(acc, base);
    if (e > 1) base = multiply(base, base);
  }
  BigInt trace = 0;
  for (std::size_t i = 0; i < d; ++i) trace += acc[i][i];
  return trace;
}

int moebius(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("moebius(0) is undefined");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

BigInt count_least_period_orbits(std::size_t n, std::size_t p) {
  if (p == 0) throw InvalidArgument("period must be positive");
  BigInt total = 0;
  for (std::size_t d = 1; d <= p; ++d) {
    if (p % d != 0) continue;
    const int mu = moebius(p / d);
    if (mu == 0) continue;
    const BigInt term = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(d));
    total += mu > 0 ? term : BigInt(-term);
  }
  return total / p;
}

PeriodicPoint::PeriodicPoint(Word block, std::size_t phase)
    : block_(std::move(block)), phase_(phase) {
  if (block_.empty()) throw InvalidArgument("periodic point needs a non-empty block");
  phase_ %= block_.size();
}

PeriodicPoint PeriodicPoint::canonical() const {
  const std::size_t P = block_.size();
  std::size_t d = P;
  for (std::size_t c = 1; c < P; ++c) {
    if (P % c != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < P && ok; ++i) ok = block_[i] == block_[(i + c) % P];
    if (ok) {
      d = c;
      break;
    }
  }
  Word base(block_.begin(), block_.begin() + static_cast<std::ptrdiff_t>(d));
  std::size_t best = 0;
  for (std::size_t s = 1; s < d; ++s) {
    for (std::size_t i = 0; i < d; ++i) {
      const Letter a = base[(s + i) % d];
      const Letter b = base[(best + i) % d];
      if (a != b) {
        if (a < b) best = s;
        break;
      }
    }
  }
  Word rotated(d);
  for (std::size_t j = 0; j < d; ++j) rotated[j] = base[(j + best) % d];
  const std::size_t phase = floor_mod(static_cast<std::int64_t>(phase_ % d) -
                                          static_cast<std::int64_t>(best),
                                      d);
  return PeriodicPoint(std::move(rotated), phase);
}

PeriodicPoint PeriodicPoint::unrolled(std::size_t length) const {
  if (length == 0 || length % block_.size() != 0) {
    throw InvalidArgument("unrolled length must be a positive multiple of the period");
  }
  Word out(length);
  for (std::size_t i = 0; i < length; ++i) out[i] = at(static_cast<std::int64_t>(i));
  return PeriodicPoint(std::move(out), 0);
}

std::string PeriodicPoint::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < block_.size(); ++i) os << (i ? " " : "") << block_[i];
  os << "] phase " << phase_;
  return os.str();
}

bool operator==(const PeriodicPoint& a, const PeriodicPoint& b) {
  const PeriodicPoint ca = a.canonical();
  const PeriodicPoint cb = b.canonical();
  return ca.block_ == cb.block_ && ca.phase_ == cb.phase_;
}

std::vector<PeriodicPoint> periodic_points(std::size_t n, std::size_t k) {
  const std::uint64_t count = checked_pow(n, k);
  std::vector<PeriodicPoint> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.emplace_back(power_alphabet_block(n, k, i), 0);
  }
  return out;
}

}  // namespace stabaut
