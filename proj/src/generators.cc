#include "stabaut/generators.hpp"

#include <algorithm>
#include <cstdlib>

#include "stabaut/errors.hpp"

namespace stabaut {

namespace {

inline void increment(std::vector<Letter>& digits, std::size_t n) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < n) return;
    digits[i] = 0;
  }
}

Permutation block_perm_from_images(std::size_t count,
                                   const std::function<std::uint64_t(std::uint64_t)>& image) {
  std::vector<Permutation::Point> images(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    images[i] = static_cast<Permutation::Point>(image(i));
  }
  return Permutation(std::move(images));
}

}  // namespace

SimpleGraphPerm::SimpleGraphPerm(std::size_t n_, std::size_t m_, Permutation perm_)
    : n(n_), m(m_), perm(std::move(perm_)) {
  if (n == 0 || m == 0) throw InvalidArgument("block permutation needs n >= 1 and m >= 1");
  if (perm.degree() != checked_pow(n, m)) {
    throw InvalidArgument("block permutation must have degree n^m = " +
                          std::to_string(checked_pow(n, m)));
  }
}

SimpleGraphPerm SimpleGraphPerm::identity(std::size_t n, std::size_t m) {
  return SimpleGraphPerm(n, m, Permutation(checked_pow(n, m)));
}

SimpleGraphPerm SimpleGraphPerm::transposition(std::size_t n, std::size_t m, std::uint64_t a,
                                               std::uint64_t b) {
  const std::uint64_t size = checked_pow(n, m);
  if (a >= size || b >= size) throw InvalidArgument("block index out of range");
  if (a == b) throw InvalidArgument("a transposition needs two distinct blocks");
  return SimpleGraphPerm(
      n, m,
      Permutation::from_cycles(size, {{static_cast<Permutation::Point>(a),
                                       static_cast<Permutation::Point>(b)}}));
}

Word SimpleGraphPerm::apply(const Word& block) const {
  if (block.size() != m) throw InvalidArgument("block length mismatch");
  return power_alphabet_block(n, m, perm(static_cast<Permutation::Point>(
                                            power_alphabet_index(n, block))));
}

SimpleGraphPerm operator*(const SimpleGraphPerm& a, const SimpleGraphPerm& b) {
  if (a.n != b.n || a.m != b.m) throw InvalidArgument("block permutations of different shape");
  return SimpleGraphPerm(a.n, a.m, a.perm * b.perm);
}

Automorphism shift_power(std::size_t n, std::int64_t j) {
  const std::size_t r = static_cast<std::size_t>(std::llabs(j));
  auto make = [&](std::int64_t step) {
    return StabilizedCode::from_rule(n, 1, r, [&](std::size_t, std::span<const Letter> w) {
      return w[static_cast<std::size_t>(static_cast<std::int64_t>(r) + step)];
    });
  };
  return Automorphism::by_construction(make(j), make(-j));
}

Automorphism positional_letter_permutation(std::size_t n, const std::vector<Permutation>& perms) {
  if (perms.empty()) throw InvalidArgument("need at least one letter permutation");
  std::vector<std::vector<Letter>> fwd(perms.size()), inv(perms.size());
  for (std::size_t c = 0; c < perms.size(); ++c) {
    if (perms[c].degree() != n) throw InvalidArgument("letter permutation has wrong degree");
    const Permutation pinv = perms[c].inverse();
    for (std::size_t a = 0; a < n; ++a) {
      fwd[c].push_back(static_cast<Letter>(perms[c](static_cast<Permutation::Point>(a))));
      inv[c].push_back(static_cast<Letter>(pinv(static_cast<Permutation::Point>(a))));
    }
  }
  return Automorphism::by_construction(StabilizedCode(n, perms.size(), 0, fwd),
                                       StabilizedCode(n, perms.size(), 0, inv));
}

namespace {

StabilizedCode block_code(std::size_t n, std::size_t m, const Permutation& perm) {
  const std::size_t radius = m - 1;
  CodeBuilder builder(n, m, radius);
  std::vector<Letter> digits(2 * radius + 1);
  const std::uint64_t block_count = checked_pow(n, m);
  for (std::size_t c = 0; c < m; ++c) {
    // window digit index of the block start is (m - 1 - c)
    const std::uint64_t low = checked_pow(n, c);  // digits after the block end
    const std::uint64_t out_scale = checked_pow(n, m - 1 - c);
    for (std::uint64_t w = 0; w < builder.table_size(); ++w) {
      const std::uint64_t block = (w / low) % block_count;
      const std::uint64_t image = perm(static_cast<Permutation::Point>(block));
      builder.set(c, w, static_cast<Letter>((image / out_scale) % n));
    }
  }
  return std::move(builder).build();
}

}  // namespace

Automorphism symbol_permutation(const SimpleGraphPerm& perm) {
  return Automorphism::by_construction(block_code(perm.n, perm.m, perm.perm),
                                       block_code(perm.n, perm.m, perm.perm.inverse()));
}

std::optional<SimpleGraphPerm> as_block_permutation(const StabilizedCode& code) {
  const std::size_t k = code.period();
  const std::size_t n = code.alphabet_size();
  const StabilizedCode c0 = code.radius() + 1 < k ? refine(code, k, k - 1) : code;
  const std::size_t R = c0.radius();
  const std::uint64_t block_count = checked_pow(n, k);
  std::vector<std::uint64_t> images(block_count, 0);
  for (std::size_t c = 0; c < k; ++c) {
    const std::uint64_t low = checked_pow(n, R + c + 1 - k);
    for (std::uint64_t w = 0; w < c0.table_size(); ++w) {
      const std::uint64_t masked = ((w / low) % block_count) * low;
      if (c0.lookup(c, w) != c0.lookup(c, masked)) return std::nullopt;
    }
    const std::uint64_t out_scale = checked_pow(n, k - 1 - c);
    for (std::uint64_t b = 0; b < block_count; ++b) {
      images[b] += c0.lookup(c, b * low) * out_scale;
    }
  }
  try {
    return SimpleGraphPerm(n, k, block_perm_from_images(block_count, [&](std::uint64_t b) {
                             return images[b];
                           }));
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

CommutatorWitness swap_commutator_witness(const SimpleGraphPerm& tau) {
  if (tau.perm.cycle_type() != std::vector<std::size_t>{2}) {
    throw InvalidArgument("swap commutator needs a transposition, got " + tau.perm.to_string());
  }
  const std::size_t n = tau.n;
  const std::size_t b = tau.m;
  const std::uint64_t blocks = checked_pow(n, b);
  const SimpleGraphPerm even_only(
      n, 2 * b, block_perm_from_images(blocks * blocks, [&](std::uint64_t idx) {
        return tau.perm(static_cast<Permutation::Point>(idx / blocks)) * blocks + idx % blocks;
      }));
  Automorphism phi0 = symbol_permutation(even_only);
  const Automorphism sigma = shift_power(n, static_cast<std::int64_t>(b));
  StabilizedCode tau_tilde = symbol_permutation(tau).forward();
  StabilizedCode commutator =
      compose(phi0.forward(),
              compose(sigma.forward(), compose(phi0.inverse_code(), sigma.inverse_code())));
  const bool ok = equals(tau_tilde, commutator);
  return CommutatorWitness{std::move(phi0), std::move(tau_tilde), std::move(commutator), ok};
}

CommutatorWitness swap_commutator_witness(std::size_t n, Letter a, Letter b) {
  return swap_commutator_witness(SimpleGraphPerm::transposition(n, 1, a, b));
}

CommutatorWitness swap_commutator_witness(const SftMatrix& sft, Letter e, Letter f) {
  const std::size_t E = sft.edge_count();
  if (e >= E || f >= E || e == f) throw InvalidArgument("need two distinct edges");
  const auto& edges = sft.edges();
  if (edges[e].source != edges[f].source || edges[e].target != edges[f].target) {
    throw InvalidArgument("edges must share source and target");
  }
  const Permutation tau = Permutation::from_cycles(E, {{e, f}});
  Automorphism phi0 = positional_letter_permutation(E, {tau, Permutation(E)});
  const Automorphism sigma = shift_power(E, 1);
  StabilizedCode tau_tilde = positional_letter_permutation(E, {tau}).forward();
  StabilizedCode commutator =
      compose(phi0.forward(),
              compose(sigma.forward(), compose(phi0.inverse_code(), sigma.inverse_code())));
  const bool ok = equals_on(sft, tau_tilde, commutator);
  return CommutatorWitness{std::move(phi0), std::move(tau_tilde), std::move(commutator), ok};
}

InflateReport inflate(const SimpleGraphPerm& perm, std::size_t t) {
  if (t == 0) throw InvalidArgument("inflation factor must be positive");
  const std::uint64_t blocks = checked_pow(perm.n, perm.m);
  const std::uint64_t total = checked_pow(blocks, t);
  if (total > kMaxTableEntries) throw BudgetExceeded("inflated permutation too large");
  SimpleGraphPerm result(
      perm.n, perm.m * t, block_perm_from_images(total, [&](std::uint64_t idx) {
        std::uint64_t out = 0;
        std::uint64_t scale = 1;
        for (std::size_t i = 0; i < t; ++i) {
          out += perm.perm(static_cast<Permutation::Point>(idx % blocks)) * scale;
          idx /= blocks;
          scale *= blocks;
        }
        return out;
      }));
  InflateReport report;
  report.cycle_type = result.perm.cycle_type();
  report.transpositions = result.perm.transposition_count();
  report.even = report.transpositions % 2 == 0;
  report.result = std::move(result);
  return report;
}

SimpleGraphPerm mth_root_block(const SimpleGraphPerm& phi0, std::size_t m) {
  if (m < 2) throw InvalidArgument("root order must be at least 2");
  const std::uint64_t N = checked_pow(phi0.n, phi0.m);
  const std::uint64_t total = checked_pow(N, m);
  if (total > kMaxTableEntries) throw BudgetExceeded("root permutation too large");
  const std::uint64_t top = total / N;  // N^(m-1)
  SimpleGraphPerm root(
      phi0.n, phi0.m * m, block_perm_from_images(total, [&](std::uint64_t idx) {
        const std::uint64_t a0 = idx / top;
        const std::uint64_t rest = idx % top;  // a_1 ... a_{m-1}
        const std::uint64_t a1 = rest / (top / N);
        const std::uint64_t tail = rest % (top / N);  // a_2 ... a_{m-1}
        const std::uint64_t head = phi0.perm(static_cast<Permutation::Point>(a1));
        return (head * (top / N) + tail) * N + a0;
      }));
  if (root.perm.pow(static_cast<std::int64_t>(m)) != inflate(phi0, m).result.perm) {
    throw Error("root construction failed its m-th power check");
  }
  return root;
}

Automorphism mth_root_of(const Automorphism& phi0, std::size_t m) {
  const auto block = as_block_permutation(phi0.forward());
  if (!block) throw InvalidArgument("mth_root_of needs a zero-block code");
  const Automorphism root = symbol_permutation(mth_root_block(*block, m));
  StabilizedCode power = root.forward();
  for (std::size_t i = 1; i < m; ++i) power = reduce_radius(compose(root.forward(), power));
  if (!equals(power, phi0.forward())) {
    throw Error("root construction failed its composition check");
  }
  return root;
}

StabilizedCode recode_to_power(const StabilizedCode& code, std::size_t block_length) {
  const std::size_t K = block_length == 0 ? code.period() : block_length;
  if (K % code.period() != 0) {
    throw InvalidArgument("block length must be a multiple of the period");
  }
  const std::size_t n = code.alphabet_size();
  const std::uint64_t N = checked_pow(n, K);
  if (N > kMaxAlphabet) throw BudgetExceeded("recoded alphabet exceeds 65535 letters");
  const std::size_t r = code.radius();
  const std::size_t rr = (r + K - 1) / K;
  CodeBuilder builder(N, 1, rr);
  std::vector<Letter> letters((2 * rr + 1) * K, 0);
  for (std::uint64_t W = 0; W < builder.table_size(); ++W, increment(letters, n)) {
    std::uint64_t out = 0;
    for (std::size_t c = 0; c < K; ++c) {
      const std::size_t centre = rr * K + c;
      std::uint64_t idx = 0;
      for (std::size_t p = centre - r; p <= centre + r; ++p) idx = idx * n + letters[p];
      out = out * n + code.lookup(c % code.period(), idx);
    }
    builder.set(0, W, static_cast<Letter>(out));
  }
  return std::move(builder).build();
}

Automorphism recode_to_power(const Automorphism& phi, std::size_t block_length) {
  const std::size_t K = block_length == 0 ? lcm_u64(phi.forward().period(),
                                                    phi.inverse_code().period())
                                          : block_length;
  return Automorphism::by_construction(recode_to_power(phi.forward(), K),
                                       recode_to_power(phi.inverse_code(), K));
}

}  // namespace stabaut
