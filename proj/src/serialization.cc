#include "stabaut/serialization.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stabaut/errors.hpp"

namespace stabaut {

using nlohmann::json;

namespace {

json code_record(const StabilizedCode& code) {
  json tables = json::array();
  for (std::size_t c = 0; c < code.period(); ++c) {
    const auto t = code.table(c);
    tables.push_back(std::vector<Letter>(t.begin(), t.end()));
  }
  return json{{"period", code.period()}, {"radius", code.radius()}, {"tables", std::move(tables)}};
}

std::string dump(const json& j) { return j.dump() + "\n"; }

const json& field(const json& obj, const std::string& key, const std::string& locus) {
  if (!obj.is_object()) throw ValidationError(locus + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(locus + (locus.empty() ? "" : ".") + key + ": missing");
  return *it;
}

std::uint64_t unsigned_field(const json& obj, const std::string& key, const std::string& locus) {
  const json& v = field(obj, key, locus);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ValidationError((locus.empty() ? "" : locus + ".") + key +
                          ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

StabilizedCode parse_code(const json& obj, std::size_t n, const std::string& locus) {
  const std::string prefix = locus.empty() ? "" : locus + ".";
  const std::uint64_t period = unsigned_field(obj, "period", locus);
  const std::uint64_t radius = unsigned_field(obj, "radius", locus);
  if (period == 0) throw ValidationError(prefix + "period: must be at least 1");
  std::uint64_t size = 0;
  try {
    size = checked_pow(n, 2 * radius + 1);
  } catch (const BudgetExceeded&) {
    throw ValidationError(prefix + "radius: table size overflows");
  }
  if (size * period > kMaxTableEntries) {
    throw ValidationError(prefix + "radius: tables exceed the size budget");
  }
  const json& tables = field(obj, "tables", locus);
  if (!tables.is_array()) throw ValidationError(prefix + "tables: expected an array");
  if (tables.size() != period) {
    throw ValidationError(prefix + "tables: expected " + std::to_string(period) +
                          " tables, found " + std::to_string(tables.size()));
  }
  std::vector<std::vector<Letter>> out(period);
  for (std::size_t c = 0; c < period; ++c) {
    const std::string tloc = prefix + "tables[" + std::to_string(c) + "]";
    const json& t = tables[c];
    if (!t.is_array()) throw ValidationError(tloc + ": expected an array");
    if (t.size() != size) {
      throw ValidationError(tloc + ": expected " + std::to_string(size) + " entries, found " +
                            std::to_string(t.size()));
    }
    out[c].resize(size);
    for (std::size_t w = 0; w < size; ++w) {
      const json& e = t[w];
      if (!e.is_number_integer() || e.get<std::int64_t>() < 0 ||
          e.get<std::uint64_t>() >= n) {
        throw ValidationError(tloc + "[" + std::to_string(w) + "]: entry " + e.dump() +
                              " is not a letter below n=" + std::to_string(n));
      }
      out[c][w] = static_cast<Letter>(e.get<std::uint64_t>());
    }
  }
  return StabilizedCode(n, period, radius, std::move(out));
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

void check_version(const json& j) {
  const std::uint64_t v = unsigned_field(j, "version", "");
  if (v != kFileVersion) throw ValidationError("version: unsupported value " + std::to_string(v));
}

}  // namespace

std::string save_code(const StabilizedCode& code) {
  json j = code_record(code);
  j["n"] = code.alphabet_size();
  j["version"] = kFileVersion;
  return dump(j);
}

std::string save_automorphism(const Automorphism& a) {
  json j = code_record(a.forward());
  j["n"] = a.alphabet_size();
  j["inverse"] = code_record(a.inverse_code());
  j["version"] = kFileVersion;
  return dump(j);
}

AutomorphismFile load_automorphism_file(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw ValidationError("top level: expected an object");
  check_version(j);
  const std::uint64_t n = unsigned_field(j, "n", "");
  if (n < 1 || n > kMaxAlphabet) throw ValidationError("n: out of range");
  AutomorphismFile file{parse_code(j, n, ""), std::nullopt};
  if (j.contains("inverse")) file.inverse = parse_code(j.at("inverse"), n, "inverse");
  return file;
}

Automorphism load_automorphism(const std::string& text, std::size_t max_inverse_radius) {
  AutomorphismFile file = load_automorphism_file(text);
  if (file.inverse) {
    try {
      return Automorphism::checked(std::move(file.forward), std::move(*file.inverse));
    } catch (const InvalidArgument& e) {
      throw ValidationError(std::string("inverse: ") + e.what());
    }
  }
  auto inverse = find_inverse(file.forward, max_inverse_radius);
  if (!inverse) {
    throw ValidationError("tables: no inverse of radius <= " + std::to_string(max_inverse_radius) +
                          " exists");
  }
  return Automorphism::checked(std::move(file.forward), std::move(*inverse));
}

std::string save_marker_scheme(const MarkerScheme& scheme) {
  json pairing = json::array();
  for (Letter d : scheme.data_letters()) {
    const auto [u, l] = scheme.pair_of(d);
    pairing.push_back({u, l});
  }
  json j{{"data_letters", scheme.data_letters()},
         {"gap", scheme.gap()},
         {"pairing", std::move(pairing)},
         {"source", scheme.source_size()},
         {"target", scheme.target().entries()},
         {"version", kFileVersion}};
  return dump(j);
}

MarkerScheme load_marker_scheme(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw ValidationError("top level: expected an object");
  check_version(j);
  const std::uint64_t n = unsigned_field(j, "source", "");
  const std::uint64_t gap = unsigned_field(j, "gap", "");
  const json& target = field(j, "target", "");
  std::vector<std::vector<std::uint64_t>> entries;
  try {
    entries = target.get<std::vector<std::vector<std::uint64_t>>>();
  } catch (const json::exception&) {
    throw ValidationError("target: expected a square matrix of non-negative integers");
  }
  try {
    MarkerScheme scheme(SftMatrix(std::move(entries)), n, gap);
    const std::string canonical = save_marker_scheme(scheme);
    const json expected = json::parse(canonical);
    for (const char* key : {"data_letters", "pairing"}) {
      const json& got = field(j, key, "");
      if (got != expected.at(key)) {
        const std::string k = key;
        for (std::size_t i = 0; i < expected.at(key).size(); ++i) {
          if (!got.is_array() || i >= got.size() || got[i] != expected.at(key)[i]) {
            throw ValidationError(k + "[" + std::to_string(i) + "]: does not match the scheme");
          }
        }
        throw ValidationError(k + ": has extra entries");
      }
    }
    return scheme;
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(std::string("scheme: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << contents;
}

}  // namespace stabaut
