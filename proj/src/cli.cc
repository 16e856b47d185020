#include "stabaut/cli.hpp"

#include <cstdlib>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabaut/block_codes.hpp"
#include "stabaut/dimension_rep.hpp"
#include "stabaut/errors.hpp"
#include "stabaut/generators.hpp"
#include "stabaut/invariants.hpp"
#include "stabaut/kr_embed.hpp"
#include "stabaut/perm_lab.hpp"
#include "stabaut/serialization.hpp"
#include "stabaut/shift_core.hpp"

namespace stabaut::cli {

using nlohmann::json;

namespace {

/// A command's outcome: exit code, text lines and the same data as JSON.
struct Report {
  int code = kExitOk;
  std::vector<std::string> lines;
  json data = json::object();

  void line(std::string s) { lines.push_back(std::move(s)); }
};

struct Globals {
  bool json_output = false;
  std::uint64_t seed = 0;
};

std::size_t search_budget(std::size_t fallback) {
  const char* v = std::getenv(kBudgetVariable);
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0' || parsed == 0) {
    throw InvalidArgument(std::string(kBudgetVariable) + " must be a positive integer");
  }
  return static_cast<std::size_t>(parsed);
}

std::string str(const BigInt& b) { return b.str(); }

json tables_json(const StabilizedCode& code) {
  json t = json::array();
  for (std::size_t c = 0; c < code.period(); ++c) {
    const auto s = code.table(c);
    t.push_back(std::vector<Letter>(s.begin(), s.end()));
  }
  return t;
}

json cycle_json(const CycleCertificate& c) {
  return json{{"cycle", c.cycle.to_string()}, {"p", c.p}, {"word", c.word.to_string()}};
}

std::vector<Permutation> parse_perms(std::size_t degree, const std::vector<std::string>& texts) {
  std::vector<Permutation> out;
  for (const auto& t : texts) out.push_back(Permutation::parse(degree, t));
  return out;
}

// ---------------------------------------------------------------------------
// Commands

Report cmd_invariants(std::uint64_t m, std::uint64_t n) {
  Report r;
  const Verdict s = distinguish_stabilized(m, n);
  const Verdict c = distinguish_classical(m, n);
  auto verdict_json = [](const Verdict& v) {
    json j{{"criterion", v.criterion}, {"detail", v.detail}, {"outcome", to_string(v.outcome)}};
    if (v.exponents) j["exponents"] = {v.exponents->first, v.exponents->second};
    return j;
  };
  r.data = {{"classical", verdict_json(c)},
            {"m", m},
            {"n", n},
            {"omega", {omega(m), omega(n)}},
            {"stabilized", verdict_json(s)}};
  r.line("stabilized: " + s.summary() + " [criterion: " + s.criterion + "]");
  r.line("classical: " + c.summary() + " [criterion: " + c.criterion + "]");
  return r;
}

Report cmd_dimrep(const std::string& path) {
  Report r;
  const Automorphism a = load_automorphism(read_file(path));
  const RayCount rc = ray_image_count(a, 0);
  const ExponentVector v = dimension_multiplier(a);
  r.data = {{"criterion", "ray-count-multiplier"},
            {"exponents", v.exponents()},
            {"inert", v.is_zero()},
            {"level", rc.level},
            {"primes", v.primes()},
            {"ray_count", rc.count}};
  r.line("ray count " + std::to_string(rc.count) + " at level " + std::to_string(rc.level));
  r.line("multiplier exponents: " + v.to_string());
  r.line(std::string("inert: ") + (v.is_zero() ? "true" : "false"));
  r.line("[criterion: ray-count-multiplier]");
  return r;
}

Report cmd_verify_commutator(std::size_t n, std::uint64_t a, std::uint64_t b) {
  Report r;
  if (a >= n || b >= n) throw InvalidArgument("letters must be below n");
  const CommutatorWitness w = swap_commutator_witness(n, static_cast<Letter>(a),
                                                      static_cast<Letter>(b));
  r.data = {{"commutator_period", w.commutator.period()},
            {"commutator_radius", w.commutator.radius()},
            {"criterion", "swap-commutator"},
            {"verified", w.verified}};
  r.line("commutator of phi0 and the block shift equals the swap on every block: " +
         std::string(w.verified ? "verified" : "FAILED"));
  r.line("[criterion: swap-commutator]");
  if (!w.verified) r.code = kExitVerification;
  return r;
}

Report cmd_root(const std::string& path, std::size_t m, const std::string& out_path) {
  Report r;
  const Automorphism phi0 = load_automorphism(read_file(path));
  try {
    const Automorphism root = mth_root_of(phi0, m);
    r.data = {{"criterion", "block-rotation-root"},
              {"m", m},
              {"period", root.period()},
              {"radius", root.radius()},
              {"verified", true}};
    r.line("root of order " + std::to_string(m) + ": period " + std::to_string(root.period()) +
           ", radius " + std::to_string(root.radius()));
    r.line("root^" + std::to_string(m) + " = phi0: verified");
    if (!out_path.empty()) write_file(out_path, save_automorphism(root));
  } catch (const InvalidArgument&) {
    throw;
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    r.data = {{"criterion", "block-rotation-root"}, {"error", e.what()}, {"verified", false}};
    r.line(std::string("root check FAILED: ") + e.what());
    r.code = kExitVerification;
  }
  r.line("[criterion: block-rotation-root]");
  return r;
}

Report cmd_embed(const std::string& path, std::size_t q, std::size_t gap,
                 const std::string& out_path, const std::string& scheme_path) {
  Report r;
  const Automorphism phi = load_automorphism(read_file(path));
  const MarkerScheme scheme = find_marker_scheme(q, phi.alphabet_size(), gap);
  const Automorphism e = embed_automorphism(phi, scheme);
  r.data = {{"criterion", "marker-embedding"},
            {"gap", gap},
            {"period", e.period()},
            {"radius", e.radius()},
            {"target", q}};
  r.line("embedded into the full " + std::to_string(q) + "-shift with gap " +
         std::to_string(gap) + ": period " + std::to_string(e.period()) + ", radius " +
         std::to_string(e.radius()));
  try {
    const ExponentVector v = dimension_multiplier(e);
    r.data["inert"] = v.is_zero();
    r.line(std::string("inert: ") + (v.is_zero() ? "true" : "false"));
    if (!v.is_zero()) r.code = kExitVerification;
  } catch (const BudgetExceeded&) {
    r.data["inert"] = nullptr;
    r.line("inert: not checked (ray enumeration exceeds budget)");
  }
  if (!out_path.empty()) write_file(out_path, save_automorphism(e));
  if (!scheme_path.empty()) write_file(scheme_path, save_marker_scheme(scheme));
  r.line("[criterion: marker-embedding]");
  return r;
}

Report cmd_orbits(std::size_t n, std::size_t p) {
  Report r;
  const BigInt count = count_least_period_orbits(n, p);
  r.data = {{"count", str(count)}, {"criterion", "moebius-orbit-count"}, {"n", n}, {"p", p}};
  r.line(str(count) + " orbits of least period " + std::to_string(p));
  r.line("[criterion: moebius-orbit-count]");
  return r;
}

Report cmd_enumerate(std::size_t n, std::size_t radius, std::size_t k) {
  Report r;
  const auto all = enumerate_automorphisms(n, radius, k);
  json list = json::array();
  for (const auto& a : all) {
    list.push_back({{"inverse_radius", a.inverse_radius()}, {"tables", tables_json(a.forward())}});
  }
  r.data = {{"automorphisms", std::move(list)},
            {"count", all.size()},
            {"n", n},
            {"period", k},
            {"radius", radius}};
  r.line(std::to_string(all.size()) + " automorphisms with n=" + std::to_string(n) +
         ", radius " + std::to_string(radius) + ", period " + std::to_string(k));
  for (const auto& a : all) r.line("  " + tables_json(a.forward()).dump());
  return r;
}

Report cmd_sl2z4() {
  Report r;
  const Sl2Z4Report s = sl2_z4_report();
  json members = json::array();
  for (const auto& [m, in] : s.quoted_members) members.push_back({{"matrix", mat4_to_string(m)},
                                                                  {"member", in}});
  r.data = {{"abelianization_order", s.abelianization_order},
            {"coinvariants_order", s.coinvariants_order},
            {"commutator_order", s.commutator_order},
            {"external_step", s.external_step},
            {"group_order", s.group_order},
            {"quoted_final_answer", s.quoted_final_answer},
            {"quoted_members", members},
            {"unipotent_image_order", s.unipotent_image_order}};
  r.line("SL2(Z/4) order " + std::to_string(s.group_order));
  r.line("commutator subgroup order " + std::to_string(s.commutator_order));
  bool all_in = true;
  for (const auto& [m, in] : s.quoted_members) {
    r.line("  " + mat4_to_string(m) + (in ? " lies in it" : " does NOT lie in it"));
    all_in = all_in && in;
  }
  r.line("image of (1 1; 0 1) in the quotient has order " +
         std::to_string(s.unipotent_image_order));
  r.line("coinvariants under diag(-1, 1) have order " + std::to_string(s.coinvariants_order));
  r.line("external: " + s.external_step);
  r.line("final answer: " + s.quoted_final_answer);
  if (!all_in) r.code = kExitVerification;
  return r;
}

// perm subcommands ------------------------------------------------------------

Report cmd_perm_order(std::size_t degree, const std::vector<std::string>& gens) {
  Report r;
  const GroupHandle g(degree, parse_perms(degree, gens));
  const BigInt order = g.order();
  r.data = {{"degree", degree}, {"order", str(order)}};
  r.line("order " + str(order));
  return r;
}

Report cmd_perm_primitive(std::size_t degree, const std::vector<std::string>& gens) {
  Report r;
  const GroupHandle g(degree, parse_perms(degree, gens));
  const PrimitivityResult p = is_primitive(g);
  std::vector<std::size_t> block;
  for (auto x : p.witness_block) block.push_back(x + 1);
  r.data = {{"block", block}, {"primitive", p.primitive}, {"transitive", g.is_transitive()}};
  if (p.primitive) {
    r.line("primitive");
  } else {
    std::ostringstream os;
    for (std::size_t i = 0; i < block.size(); ++i) os << (i ? " " : "") << block[i];
    r.line("not primitive; block {" + os.str() + "}");
  }
  return r;
}

Report cmd_perm_jordan(std::size_t degree, const std::vector<std::string>& gens,
                       const Globals& globals) {
  Report r;
  const GroupHandle g(degree, parse_perms(degree, gens));
  const JordanVerdict v = jordan_verdict(g, SearchOptions{search_budget(20000), globals.seed});
  r.data = {{"criterion", "jordan-prime-cycle"},
            {"outcome", to_string(v.outcome)},
            {"reason", v.reason}};
  if (v.cycle) r.data["cycle"] = cycle_json(*v.cycle);
  r.line(to_string(v.outcome) + " (" + v.reason + ")");
  if (v.cycle) r.line("cycle " + v.cycle->cycle.to_string() + " = " + v.cycle->word.to_string());
  r.line("[criterion: jordan-prime-cycle]");
  return r;
}

Report cmd_perm_star(std::size_t degree, const std::string& tau, const std::string& phi) {
  Report r;
  const Permutation s = star(Permutation::parse(degree, tau), Permutation::parse(degree, phi));
  r.data = {{"star", s.to_string()}};
  r.line(s.to_string());
  return r;
}

std::vector<Permutation> grid_generators(std::size_t n, const std::vector<std::string>& gens) {
  std::vector<Permutation> all = parse_perms(n * n, gens);
  for (auto& p : p_generators(n)) all.push_back(std::move(p));
  return all;
}

Report cmd_perm_grid_order(std::size_t n, const std::vector<std::string>& gens) {
  Report r;
  const GroupHandle g(n * n, grid_generators(n, gens));
  const BigInt order = g.order();
  const BigInt full = factorial(n * n);
  std::string relation = order == full ? "full symmetric group"
                         : order * 2 == full ? "alternating group"
                                             : "proper subgroup";
  r.data = {{"n", n}, {"order", str(order)}, {"relation", relation}};
  r.line("order " + str(order) + " (" + relation + " on " + std::to_string(n * n) + " points)");
  return r;
}

Report cmd_perm_obtainment(std::size_t n, std::vector<std::string> gens, const Globals& globals) {
  Report r;
  if (gens.empty()) {
    std::vector<std::pair<GridPoint, GridPoint>> extra;
    if (n >= 7) extra = {{{4, 4}, {6, 5}}, {{5, 7}, {7, 3}}};
    gens.push_back(arrangement_a_involution(n, extra).to_string());
  }
  const GroupHandle g(n * n, grid_generators(n, gens));
  const auto hit = p_cycle_search(g, SearchOptions{search_budget(20000), globals.seed});
  r.data = {{"criterion", "prime-cycle-search"}, {"found", hit.has_value()}};
  if (hit) {
    const Permutation check = hit->word.evaluate(g.generators(), n);
    r.data["certificate"] = cycle_json(*hit);
    r.data["certificate_verified"] = check == hit->cycle;
    r.line("found a " + std::to_string(hit->p) + "-cycle " + hit->cycle.to_string());
    r.line("word " + hit->word.to_string());
    if (check != hit->cycle) {
      r.line("certificate does NOT re-evaluate to the cycle");
      r.code = kExitVerification;
    }
  } else {
    r.line("no prime cycle found within budget");
  }
  r.line("[criterion: prime-cycle-search]");
  return r;
}

Report cmd_perm_somecycles(std::size_t n, std::size_t arrangement, const std::string& gamma) {
  Report r;
  const Permutation g = Permutation::parse(n * n, gamma);
  try {
    const CycleCertificate c = three_cycle_from_arrangement(g, arrangement);
    r.data = {{"arrangement", arrangement}, {"certificate", cycle_json(c)}};
    r.line("3-cycle " + c.cycle.to_string());
    r.line("word " + c.word.to_string());
  } catch (const RecipeFailed& e) {
    r.data = {{"arrangement", arrangement}, {"error", e.what()}};
    r.line(std::string("recipe FAILED: ") + e.what());
    r.code = kExitVerification;
  }
  return r;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stabilized automorphisms of full shifts: desk-scale experiments", "stabaut"};
  app.require_subcommand(1);
  Globals globals;
  app.add_flag("--json", globals.json_output, "Print the report as JSON");
  app.add_option("--seed", globals.seed, "Seed for randomized searches (default 0)");

  std::function<Report()> action;

  auto* inv = app.add_subcommand("invariants", "Distinguishability verdicts for m and n symbols");
  std::uint64_t inv_m = 0, inv_n = 0;
  inv->add_option("m", inv_m)->required()->check(CLI::Range(std::uint64_t{2}, UINT64_MAX));
  inv->add_option("n", inv_n)->required()->check(CLI::Range(std::uint64_t{2}, UINT64_MAX));
  inv->callback([&] { action = [&] { return cmd_invariants(inv_m, inv_n); }; });

  auto* dim = app.add_subcommand("dimrep", "Dimension multiplier of an automorphism file");
  std::string dim_file;
  dim->add_option("file", dim_file)->required();
  dim->callback([&] { action = [&] { return cmd_dimrep(dim_file); }; });

  auto* vc = app.add_subcommand("verify-commutator", "Check the swap commutator identity");
  std::size_t vc_n = 0;
  std::uint64_t vc_a = 0, vc_b = 0;
  vc->add_option("n", vc_n)->required()->check(CLI::Range(std::size_t{2}, std::size_t{255}));
  vc->add_option("a", vc_a, "first letter (0-based)")->required();
  vc->add_option("b", vc_b, "second letter (0-based)")->required();
  vc->callback([&] { action = [&] { return cmd_verify_commutator(vc_n, vc_a, vc_b); }; });

  auto* root = app.add_subcommand("root", "Construct an m-th root of a block permutation");
  std::string root_file, root_out;
  std::size_t root_m = 0;
  root->add_option("file", root_file)->required();
  root->add_option("m", root_m)->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  root->add_option("--out", root_out, "Write the root to this file");
  root->callback([&] { action = [&] { return cmd_root(root_file, root_m, root_out); }; });

  auto* emb = app.add_subcommand("embed", "Embed an automorphism into a full-shift target");
  std::string emb_file, emb_out, emb_scheme;
  std::size_t emb_q = 0, emb_gap = 0;
  emb->add_option("file", emb_file)->required();
  emb->add_option("--target", emb_q, "Target alphabet size")->required();
  emb->add_option("--gap", emb_gap, "Gap R between stretch letters")->required();
  emb->add_option("--out", emb_out, "Write the embedded automorphism to this file");
  emb->add_option("--scheme-out", emb_scheme, "Write the marker scheme to this file");
  emb->callback(
      [&] { action = [&] { return cmd_embed(emb_file, emb_q, emb_gap, emb_out, emb_scheme); }; });

  auto* orb = app.add_subcommand("orbits", "Count orbits of least period p");
  std::size_t orb_n = 0, orb_p = 0;
  orb->add_option("n", orb_n)->required()->check(CLI::Range(std::size_t{1}, std::size_t{65535}));
  orb->add_option("p", orb_p)->required()->check(CLI::Range(std::size_t{1}, std::size_t{4096}));
  orb->callback([&] { action = [&] { return cmd_orbits(orb_n, orb_p); }; });

  auto* en = app.add_subcommand("enumerate", "List automorphisms of a given shape");
  std::size_t en_n = 0, en_r = 0, en_k = 0;
  en->add_option("n", en_n)->required()->check(CLI::Range(std::size_t{1}, std::size_t{255}));
  en->add_option("r", en_r)->required();
  en->add_option("k", en_k)->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  en->callback([&] { action = [&] { return cmd_enumerate(en_n, en_r, en_k); }; });

  auto* sl = app.add_subcommand("sl2z4", "Finite computations in SL2(Z/4)");
  sl->callback([&] { action = [&] { return cmd_sl2z4(); }; });

  auto* perm = app.add_subcommand("perm", "Permutation group experiments (1-based points)");
  perm->require_subcommand(1);

  std::size_t pd = 0;
  std::vector<std::string> pgens;
  auto* p_order = perm->add_subcommand("order", "Order of the group generated");
  p_order->add_option("degree", pd)->required();
  p_order->add_option("generators", pgens, "cycle notation, e.g. \"(1,2,3)(4,5)\"");
  p_order->callback([&] { action = [&] { return cmd_perm_order(pd, pgens); }; });

  auto* p_prim = perm->add_subcommand("primitive", "Primitivity test with a block witness");
  p_prim->add_option("degree", pd)->required();
  p_prim->add_option("generators", pgens);
  p_prim->callback([&] { action = [&] { return cmd_perm_primitive(pd, pgens); }; });

  auto* p_jordan = perm->add_subcommand("jordan", "Sym/Alt verdict from a prime cycle");
  p_jordan->add_option("degree", pd)->required();
  p_jordan->add_option("generators", pgens);
  p_jordan->callback([&] { action = [&] { return cmd_perm_jordan(pd, pgens, globals); }; });

  std::string star_tau, star_phi;
  auto* p_star = perm->add_subcommand("star", "phi^-1 tau^-1 phi tau");
  p_star->add_option("degree", pd)->required();
  p_star->add_option("tau", star_tau)->required();
  p_star->add_option("phi", star_phi)->required();
  p_star->callback([&] { action = [&] { return cmd_perm_star(pd, star_tau, star_phi); }; });

  std::size_t grid_n = 0;
  auto* p_grid = perm->add_subcommand(
      "grid-order", "Order of the componentwise group on the n x n grid plus extra generators");
  p_grid->add_option("n", grid_n)->required()->check(CLI::Range(std::size_t{2}, std::size_t{8}));
  p_grid->add_option("generators", pgens, "points numbered (row-1)*n + col");
  p_grid->callback([&] { action = [&] { return cmd_perm_grid_order(grid_n, pgens); }; });

  auto* p_obt = perm->add_subcommand(
      "obtainment", "Search for a prime cycle in the componentwise group plus extra generators");
  p_obt->add_option("n", grid_n)->required()->check(CLI::Range(std::size_t{3}, std::size_t{8}));
  p_obt->add_option("generators", pgens, "points numbered (row-1)*n + col");
  p_obt->callback([&] { action = [&] { return cmd_perm_obtainment(grid_n, pgens, globals); }; });

  std::size_t arrangement = 0;
  std::string gamma;
  auto* p_some = perm->add_subcommand("somecycles", "Run the 3-cycle recipe for an arrangement");
  p_some->add_option("n", grid_n)->required()->check(CLI::Range(std::size_t{5}, std::size_t{64}));
  p_some->add_option("arrangement", arrangement)
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{6}));
  p_some->add_option("gamma", gamma, "points numbered (row-1)*n + col")->required();
  p_some->callback(
      [&] { action = [&] { return cmd_perm_somecycles(grid_n, arrangement, gamma); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  for (auto* sub : perm->get_subcommands({})) sub->fallthrough();

  std::vector<std::string> argv_store{"stabaut"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (!action) {
    err << "error: no command given\n";
    return kExitUsage;
  }
  Report report;
  try {
    report = action();
  } catch (const RecipeFailed& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (globals.json_output) {
    report.data["exit_code"] = report.code;
    out << report.data.dump() << "\n";
  } else {
    for (const auto& l : report.lines) out << l << "\n";
  }
  return report.code;
}

}  // namespace stabaut::cli
