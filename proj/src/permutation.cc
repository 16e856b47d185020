#include "stabaut/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "stabaut/errors.hpp"

namespace stabaut {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  for (std::size_t i = 0; i < degree; ++i) images_[i] = static_cast<Point>(i);
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const Point y = images_[i];
    if (y >= images_.size() || seen[y]) {
      throw InvalidArgument("image list is not a bijection (index " + std::to_string(i) + ")");
    }
    seen[y] = true;
  }
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const Point x = cycle[i];
      if (x >= degree) throw InvalidArgument("cycle point " + std::to_string(x + 1) +
                                             " exceeds degree " + std::to_string(degree));
      if (used[x]) throw InvalidArgument("cycles are not disjoint at point " +
                                         std::to_string(x + 1));
      used[x] = true;
      p.images_[x] = cycle[(i + 1) % cycle.size()];
    }
  }
  return p;
}

Permutation Permutation::parse(std::size_t degree, std::string_view text) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw InvalidArgument("expected '(' in cycle notation");
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_space();
      if (i >= text.size()) throw InvalidArgument("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw InvalidArgument("unexpected character in cycle notation");
      }
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > degree) throw InvalidArgument("cycle point exceeds degree");
        ++i;
      }
      if (v == 0) throw InvalidArgument("cycle points are 1-based");
      cycle.push_back(static_cast<Point>(v - 1));
    }
    if (cycle.size() > 1) cycles.push_back(std::move(cycle));
    skip_space();
  }
  return from_cycles(degree, cycles);
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = static_cast<Point>(i);
  return p;
}

Permutation Permutation::pow(std::int64_t e) const {
  Permutation base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  Permutation acc(degree());
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::vector<std::vector<Permutation::Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    std::vector<Point> cycle;
    for (Point x = static_cast<Point>(i); !seen[x]; x = images_[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> type;
  for (const auto& c : cycles()) type.push_back(c.size());
  std::sort(type.rbegin(), type.rend());
  return type;
}

std::vector<Permutation::Point> Permutation::support() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) out.push_back(static_cast<Point>(i));
  }
  return out;
}

BigInt Permutation::order() const {
  BigInt result = 1;
  for (std::size_t len : cycle_type()) {
    result = result / boost::multiprecision::gcd(result, BigInt(len)) * len;
  }
  return result;
}

std::size_t Permutation::transposition_count() const {
  std::size_t moved_minus_cycles = 0;
  for (const auto& c : cycles()) moved_minus_cycles += c.size() - 1;
  return moved_minus_cycles;
}

bool Permutation::is_even() const { return transposition_count() % 2 == 0; }

std::string Permutation::to_string() const {
  const auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << "(";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + 1;
    os << ")";
  }
  return os.str();
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw InvalidArgument("degree mismatch: " + std::to_string(a.degree()) + " vs " +
                          std::to_string(b.degree()));
  }
  Permutation p;
  p.images_.resize(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) p.images_[i] = a.images_[b.images_[i]];
  return p;
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

Permutation conjugate(const Permutation& a, const Permutation& b) {
  return b.inverse() * a * b;
}

}  // namespace stabaut
