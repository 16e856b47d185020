#include "stabaut/kr_embed.hpp"

#include <algorithm>

#include "stabaut/errors.hpp"

namespace stabaut {

MarkerScheme::MarkerScheme(SftMatrix target, std::size_t source_n, std::size_t gap)
    : target_(std::move(target)), source_n_(source_n), gap_(gap) {
  if (source_n_ == 0) throw InvalidArgument("source alphabet must be non-empty");
  if (gap_ == 0) throw InvalidArgument("gap must be at least 1");
  if (target_.edge_count() < source_n_ * source_n_ + 1) {
    throw InsufficientAlphabet("target has " + std::to_string(target_.edge_count()) +
                               " letters; a marker scheme for n=" + std::to_string(source_n_) +
                               " needs at least " + std::to_string(source_n_ * source_n_ + 1));
  }
}

std::vector<Letter> MarkerScheme::data_letters() const {
  std::vector<Letter> d(source_n_ * source_n_);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<Letter>(i);
  return d;
}

namespace {

/// Vertex sets are bitmasks over at most 64 vertices.
using VertexSet = std::uint64_t;

VertexSet step_any(const SftMatrix& sft, VertexSet from) {
  VertexSet to = 0;
  for (const auto& e : sft.edges()) {
    if (from >> e.source & 1) to |= VertexSet{1} << e.target;
  }
  return to;
}

VertexSet step_edge(const SftMatrix& sft, VertexSet from, Letter edge) {
  const auto& e = sft.edges()[edge];
  return (from >> e.source & 1) ? VertexSet{1} << e.target : VertexSet{0};
}

/// Is there a path: non-data edge, then for each letter of word R-1 free edges
/// and the letter, then R-1 free edges and a closing non-data edge?
bool realisable(const SftMatrix& sft, const MarkerScheme& scheme, const Word& word) {
  VertexSet set = 0;
  for (std::size_t e = 0; e < sft.edge_count(); ++e) {
    if (!scheme.is_data(static_cast<Letter>(e))) set |= VertexSet{1} << sft.edges()[e].target;
  }
  for (Letter d : word) {
    for (std::size_t i = 0; i + 1 < scheme.gap(); ++i) set = step_any(sft, set);
    set = step_edge(sft, set, d);
  }
  for (std::size_t i = 0; i + 1 < scheme.gap(); ++i) set = step_any(sft, set);
  for (std::size_t e = 0; e < sft.edge_count(); ++e) {
    if (!scheme.is_data(static_cast<Letter>(e)) && (set >> sft.edges()[e].source & 1)) {
      return true;
    }
  }
  return false;
}

}  // namespace

MarkerScheme find_marker_scheme(std::size_t q, std::size_t n, std::size_t gap) {
  if (q < n * n + 1) {
    throw InsufficientAlphabet("full shift on " + std::to_string(q) +
                               " letters has no non-data letter for n=" + std::to_string(n));
  }
  return find_marker_scheme(SftMatrix::full_shift(q), n, gap, 3);
}

MarkerScheme find_marker_scheme(const SftMatrix& target, std::size_t n, std::size_t gap,
                                std::size_t feasibility_length) {
  if (target.dim() > 64) throw InvalidArgument("feasibility check supports at most 64 vertices");
  MarkerScheme scheme(target, n, gap);
  const std::size_t d = n * n;
  for (std::size_t len = 1; len <= feasibility_length; ++len) {
    const std::uint64_t count = checked_pow(d, len);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const Word word = power_alphabet_block(d, len, idx);
      if (!realisable(target, scheme, word)) {
        throw FeasibilityUnverified("data word of length " + std::to_string(len) +
                                    " (index " + std::to_string(idx) +
                                    ") is not realisable as a stretch");
      }
    }
  }
  return scheme;
}

StretchView coded_stretches(const Word& window, std::int64_t offset,
                            const MarkerScheme& scheme) {
  if (window.empty()) throw InvalidArgument("window must be non-empty");
  const auto R = static_cast<std::int64_t>(scheme.gap());
  const std::int64_t last = offset + static_cast<std::int64_t>(window.size()) - 1;
  auto in = [&](std::int64_t p) {
    return p >= offset && p <= last && scheme.is_data(window[static_cast<std::size_t>(p - offset)]);
  };
  StretchView view{offset, window, {}};
  for (std::int64_t p = offset; p <= last; ++p) {
    if (!in(p) || in(p - R)) continue;  // not the first visible member of its progression
    Stretch s;
    for (std::int64_t j = p; in(j); j += R) s.positions.push_back(j);
    s.left_open = p - R < offset;
    s.right_open = s.positions.back() + R > last;
    view.stretches.push_back(std::move(s));
  }
  return view;
}

namespace {

struct Cursor {
  bool upper;
  std::int64_t j;
};

template <class In>
Cursor step_forward(Cursor c, std::int64_t R, In&& in) {
  if (c.upper) return in(c.j + R) ? Cursor{true, c.j + R} : Cursor{false, c.j};
  return in(c.j - R) ? Cursor{false, c.j - R} : Cursor{true, c.j};
}

template <class In>
Cursor step_backward(Cursor c, std::int64_t R, In&& in) {
  if (c.upper) return in(c.j - R) ? Cursor{true, c.j - R} : Cursor{false, c.j};
  return in(c.j + R) ? Cursor{false, c.j + R} : Cursor{true, c.j};
}

/// Reads 2*span+1 row letters around the start cursor.
template <class In, class At>
Word read_row(Cursor start, std::size_t span, std::int64_t R, const MarkerScheme& scheme,
              In&& in, At&& at) {
  Word row(2 * span + 1);
  auto component = [&](Cursor c) {
    const auto [u, l] = scheme.pair_of(at(c.j));
    return c.upper ? u : l;
  };
  Cursor c = start;
  row[span] = component(c);
  for (std::size_t t = 1; t <= span; ++t) {
    c = step_backward(c, R, in);
    row[span - t] = component(c);
  }
  c = start;
  for (std::size_t t = 1; t <= span; ++t) {
    c = step_forward(c, R, in);
    row[span + t] = component(c);
  }
  return row;
}

template <class At>
RowRead read_generic(std::int64_t i, const MarkerScheme& scheme, std::size_t span, At&& at) {
  auto in = [&](std::int64_t p) { return scheme.is_data(at(p)); };
  if (!in(i)) throw InvalidArgument("position " + std::to_string(i) + " is not a data position");
  const auto R = static_cast<std::int64_t>(scheme.gap());
  RowRead out;
  out.upper_start = upper_index(i, scheme.gap()) - static_cast<std::int64_t>(span);
  out.lower_start = lower_index(i, scheme.gap()) - static_cast<std::int64_t>(span);
  out.upper = read_row(Cursor{true, i}, span, R, scheme, in, at);
  out.lower = read_row(Cursor{false, i}, span, R, scheme, in, at);
  return out;
}

}  // namespace

RowRead read_at(const PeriodicPoint& x, std::int64_t i, const MarkerScheme& scheme,
                std::size_t span) {
  return read_generic(i, scheme, span, [&](std::int64_t p) { return x.at(p); });
}

RowRead read_at(const Word& window, std::int64_t offset, std::int64_t i,
                const MarkerScheme& scheme, std::size_t span) {
  const std::int64_t last = offset + static_cast<std::int64_t>(window.size()) - 1;
  return read_generic(i, scheme, span, [&](std::int64_t p) -> Letter {
    if (p < offset || p > last) {
      throw ContextExhausted("reading position " + std::to_string(p) +
                             " needs letters outside the window [" + std::to_string(offset) +
                             ", " + std::to_string(last) + "]");
    }
    return window[static_cast<std::size_t>(p - offset)];
  });
}

namespace {

inline void increment(std::vector<Letter>& digits, std::size_t n) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < n) return;
    digits[i] = 0;
  }
}

}  // namespace

StabilizedCode embed_code(const StabilizedCode& phi, const MarkerScheme& scheme) {
  const std::size_t n = scheme.source_size();
  if (phi.alphabet_size() != n) {
    throw InvalidArgument("automorphism alphabet does not match the scheme's source alphabet");
  }
  const std::size_t k = phi.period();
  if (k != 1 && k != 2) {
    throw InvalidArgument("embedding supports periods 1 and 2; got " + std::to_string(k));
  }
  const std::size_t q = scheme.target_size();
  const std::size_t R = scheme.gap();
  const std::size_t r = phi.radius();
  const std::size_t H = r * R;
  CodeBuilder builder(q, k * R, H);
  std::vector<Letter> digits(2 * H + 1);
  std::vector<bool> data(q);
  for (std::size_t a = 0; a < q; ++a) data[a] = scheme.is_data(static_cast<Letter>(a));
  const auto iR = static_cast<std::int64_t>(R);
  for (std::size_t c = 0; c < k * R; ++c) {
    // Evaluate at absolute position z = c; digit d holds position z - H + d.
    const auto z = static_cast<std::int64_t>(c);
    const std::int64_t base = z - static_cast<std::int64_t>(H);
    const std::int64_t b = upper_index(z, R);
    const std::int64_t lam = lower_index(z, R);
    const std::size_t upper_class = floor_mod(b, k);
    const std::size_t lower_class = floor_mod(lam, k);
    auto at = [&](std::int64_t p) -> Letter {
      const std::int64_t d = p - base;
      if (d < 0 || d > static_cast<std::int64_t>(2 * H)) {
        throw ContextExhausted("embedded code radius too small (internal error)");
      }
      return digits[static_cast<std::size_t>(d)];
    };
    auto in = [&](std::int64_t p) { return static_cast<bool>(data[at(p)]); };
    std::fill(digits.begin(), digits.end(), Letter{0});
    for (std::uint64_t w = 0; w < builder.table_size(); ++w, increment(digits, q)) {
      const Letter centre = digits[H];
      if (!data[centre]) {
        builder.set(c, w, centre);
        continue;
      }
      std::uint64_t upper = 0;
      std::uint64_t lower = 0;
      if (r == 0) {
        const auto [u, l] = scheme.pair_of(centre);
        upper = u;
        lower = l;
      } else {
        const Word urow = read_row(Cursor{true, z}, r, iR, scheme, in, at);
        const Word lrow = read_row(Cursor{false, z}, r, iR, scheme, in, at);
        for (Letter a : urow) upper = upper * n + a;
        for (Letter a : lrow) lower = lower * n + a;
      }
      const Letter out_u = phi.lookup(upper_class, upper);
      const Letter out_l = phi.lookup(lower_class, lower);
      builder.set(c, w, scheme.letter_of(out_u, out_l));
    }
  }
  return std::move(builder).build();
}

Automorphism embed_automorphism(const Automorphism& phi, const MarkerScheme& scheme) {
  return Automorphism::by_construction(embed_code(phi.forward(), scheme),
                                       embed_code(phi.inverse_code(), scheme));
}

}  // namespace stabaut
