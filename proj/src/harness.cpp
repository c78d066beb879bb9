#include "tracefield/harness.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "tracefield/errors.hpp"

namespace tf {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Ingestion

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

Rational rational_field(const json& v, std::size_t line, const std::string& what) {
  try {
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const InputError& e) {
    bad_line(line, what + ": " + e.what());
  }
  bad_line(line, what + " must be an integer or a rational string");
}

Integer integer_field(const json& v, std::size_t line, const std::string& what) {
  const Rational q = rational_field(v, line, what);
  if (!is_integral(q)) bad_line(line, what + " must be an integer");
  return q.get_num();
}

FieldRecord parse_record(const std::string& text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad_line(line, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) bad_line(line, "record must be a JSON object");
  static const std::set<std::string> known{"label", "poly", "integral_basis", "disc", "trusted", "note"};
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (!known.count(k)) bad_line(line, "unknown key '" + k + "'");
  }
  FieldRecord r;
  r.line = line;
  if (!j.contains("label") || !j["label"].is_string() || j["label"].get<std::string>().empty())
    bad_line(line, "missing or empty label");
  r.label = j["label"].get<std::string>();
  if (!j.contains("poly") || !j["poly"].is_array() || j["poly"].empty()) bad_line(line, "missing poly");
  std::vector<Integer> coeffs;
  for (const auto& c : j["poly"]) coeffs.push_back(integer_field(c, line, "poly coefficient"));
  r.poly = IntPoly(coeffs);
  if (r.poly.degree() < 1) bad_line(line, "poly must be nonconstant");
  if (r.poly.lc() != 1) bad_line(line, "poly is not monic");
  if (j.contains("integral_basis") && !j["integral_basis"].is_null()) {
    const auto& b = j["integral_basis"];
    if (!b.is_array()) bad_line(line, "integral_basis must be a matrix");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : b) {
      if (!row.is_array()) bad_line(line, "integral_basis must be a matrix");
      std::vector<Rational> rr;
      for (const auto& v : row) rr.push_back(rational_field(v, line, "integral_basis entry"));
      rows.push_back(std::move(rr));
    }
    try {
      r.integral_basis = RationalMatrix::from_rows(rows);
    } catch (const InputError& e) {
      bad_line(line, e.what());
    }
  }
  if (j.contains("disc") && !j["disc"].is_null()) r.disc = integer_field(j["disc"], line, "disc");
  if (j.contains("trusted")) {
    if (!j["trusted"].is_boolean()) bad_line(line, "trusted must be a boolean");
    r.trusted = j["trusted"].get<bool>();
  }
  if (j.contains("note")) {
    if (!j["note"].is_string()) bad_line(line, "note must be a string");
    r.note = j["note"].get<std::string>();
  }
  return r;
}

}  // namespace

std::vector<FieldRecord> ingest(std::istream& in) {
  std::vector<FieldRecord> out;
  std::map<std::string, std::size_t> seen;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    FieldRecord r = parse_record(text, line);
    auto [it, fresh] = seen.emplace(r.label, line);
    if (!fresh)
      bad_line(line, "duplicate label '" + r.label + "' (first on line " + std::to_string(it->second) + ")");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<FieldRecord> ingest_path(const std::string& path) {
  if (path == "-") return ingest(std::cin);
  std::ifstream f(path);
  if (!f) throw InputError("cannot open dataset '" + path + "'");
  return ingest(f);
}

json canonical_json(const FieldRecord& r) {
  json j;
  std::vector<std::string> poly;
  for (const auto& c : r.poly.coeffs()) poly.push_back(to_string(c));
  j["poly"] = poly;
  j["integral_basis"] = r.integral_basis ? to_json(*r.integral_basis) : json(nullptr);
  j["disc"] = r.disc ? json(to_string(*r.disc)) : json(nullptr);
  j["trusted"] = r.trusted;
  return j;
}

json to_json(const RationalMatrix& m) { return to_strings(m); }

RationalMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InputError("matrix must be a JSON array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError("matrix must be a JSON array of rows");
    std::vector<Rational> rr;
    for (const auto& v : row) {
      if (v.is_number_integer()) rr.emplace_back(Integer(v.dump()));
      else if (v.is_string()) rr.push_back(parse_rational(v.get<std::string>()));
      else throw InputError("matrix entries must be integers or rational strings");
    }
    rows.push_back(std::move(rr));
  }
  return RationalMatrix::from_rows(rows);
}

// ---------------------------------------------------------------------------
// Cache

std::string InvariantCache::key_for(const FieldRecord& r) {
  const std::string text = "tracefield-invariants-v" + std::to_string(kVersion) + "\n" + canonical_json(r).dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::optional<json> InvariantCache::load(const std::string& key) const {
  std::ifstream f(fs::path(dir_) / (key + ".json"));
  if (!f) return std::nullopt;
  try {
    json j = json::parse(f);
    if (j.value("version", -1) != kVersion || j.value("key", "") != key || !j.contains("data")) return std::nullopt;
    return j["data"];
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void InvariantCache::store(const std::string& key, const json& data) const {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return;
  std::ostringstream tmpname;
  tmpname << "." << key << "." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id())
          << ".tmp";
  const fs::path tmp = fs::path(dir_) / tmpname.str();
  {
    std::ofstream f(tmp);
    if (!f) return;
    json j{{"version", kVersion}, {"key", key}, {"data", data}};
    f << j.dump() << "\n";
    if (!f) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, fs::path(dir_) / (key + ".json"), ec);
  if (ec) fs::remove(tmp, ec);
}

// ---------------------------------------------------------------------------
// Common helpers

FieldData load_field(const FieldRecord& r) {
  NumberField K = NumberField::create(r.poly);
  MaximalOrder O = build_order(K, r.integral_basis, r.disc, r.trusted);
  TraceLattice L = gram_of_order(O);
  return FieldData{r, K, O, L};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const PropertyViolation*>(&e)) return 1;
  if (dynamic_cast<const BudgetError*>(&e)) return 3;
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const UnsupportedInput*>(&e))
    return 2;
  return 4;
}

std::string status_for(const std::exception& e) {
  switch (exit_code_for(e)) {
    case 1: return "violation";
    case 2: return "input";
    case 3: return "budget";
    default: return "internal";
  }
}

namespace {

void collect_status(const json& j, std::set<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "status" && v.is_string()) out.insert(v.get<std::string>());
      else collect_status(v, out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_status(v, out);
  }
}

}  // namespace

int exit_code_for(const json& report) {
  std::set<std::string> s;
  collect_status(report, s);
  if (s.count("internal")) return 4;
  if (s.count("violation")) return 1;
  if (s.count("budget")) return 3;
  if (s.count("input")) return 2;
  return 0;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

namespace {

json error_json(const std::exception& e) { return json{{"status", status_for(e)}, {"error", e.what()}}; }

json int_matrix_json(const IntMatrix& m) { return to_strings(m); }

json poly_json(const IntPoly& f) {
  std::vector<std::string> v;
  for (const auto& c : f.coeffs()) v.push_back(to_string(c));
  return v;
}

json checks_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks)
    a.push_back({{"name", c.name}, {"applicable", c.applicable}, {"passed", c.passed}, {"detail", c.detail}});
  return a;
}

json assertion(const std::string& name, bool passed, const std::string& detail = "") {
  return json{{"name", name}, {"passed", passed}, {"detail", detail}};
}

SearchBudget budget_of(const Options& opt) { return SearchBudget{opt.budget}; }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

bool below_pow2(const Real& r, int e) {
  Real t(64);
  mpfr_set_si_2exp(t.get(), 1, -e, MPFR_RNDN);
  return mpfr_cmp(r.get(), t.get()) < 0;
}

std::string real_text(const Real& r) { return r.to_string(6); }

LinearMap map_of(const FieldData& K, const FieldData& L, const IntMatrix& T) {
  return LinearMap(K.order, L.order, to_rational(T));
}

}  // namespace

json casimir_json(const CasimirElement& c) {
  json j;
  std::vector<std::string> coords;
  for (const auto& q : c.coords) coords.push_back(to_string(q));
  j["coords"] = coords;
  j["min_poly"] = coefficient_strings(c.min_poly);
  j["min_poly_text"] = to_string(c.min_poly);
  j["M"] = to_string(c.M);
  j["is_rational"] = c.is_rational;
  json comps = json::array();
  for (const auto& cc : c.components)
    comps.push_back({{"degree_over_K", cc.degree_over_K},
                     {"min_poly", coefficient_strings(cc.min_poly)},
                     {"min_poly_text", to_string(cc.min_poly)},
                     {"M", to_string(cc.M)},
                     {"is_zero", cc.is_zero}});
  j["components"] = comps;
  return j;
}

// ---------------------------------------------------------------------------
// field

namespace {

json compute_field(const FieldRecord& r, const Options& opt) {
  const FieldData d = load_field(r);
  const NumberField& K = d.field;
  const MaximalOrder& O = d.order;
  json j;
  j["poly"] = poly_json(r.poly);
  j["poly_text"] = to_string(r.poly);
  j["degree"] = K.degree();
  j["signature"] = {K.signature().r1, K.signature().r2};
  j["totally_real"] = K.totally_real();
  j["disc"] = to_string(O.disc());
  j["poly_disc"] = to_string(K.poly_disc());
  j["index"] = to_string(O.index());
  j["order_provenance"] = to_string(O.provenance());
  j["integral_basis"] = to_json(O.basis());
  const Integer ad = abs(O.disc());
  const auto split = discriminant_split(ad);
  j["split"] = {{"d_s", to_string(split.d_s)}, {"d_f", to_string(split.d_f)}, {"rad_ds", to_string(split.rad_ds)}};
  j["fundamental"] = is_fundamental(O.disc());
  j["squarefree_disc"] = is_squarefree(ad);
  j["gram"] = int_matrix_json(O.gram());
  json tame = json::object();
  for (const auto& [p, e] : factor_integer(ad)) {
    (void)e;
    tame[to_string(p)] = to_string(tameness(O, p));
  }
  j["tameness"] = tame;
  j["sn_certificate"] = to_string(certify_sn(K));
  if (K.totally_real()) {
    const auto aut = automorphism_group(d.lattice, budget_of(opt));
    json gens = json::array();
    for (const auto& g : aut.generators) gens.push_back(int_matrix_json(g));
    j["aut"] = {{"order", to_string(aut.order)}, {"generators", gens}};
  } else {
    j["aut"] = {{"status", "skipped"}, {"reason", "not totally real: the trace form is indefinite"}};
  }
  return j;
}

}  // namespace

json field_report(const FieldRecord& r, const Options& opt) {
  json j;
  try {
    std::optional<json> hit;
    std::string key;
    if (opt.use_cache) {
      key = InvariantCache::key_for(r);
      hit = InvariantCache(opt.cache_dir).load(key);
    }
    if (hit) {
      j = *hit;
    } else {
      j = compute_field(r, opt);
      if (opt.use_cache) InvariantCache(opt.cache_dir).store(key, j);
    }
    j["status"] = "ok";
  } catch (const Error& e) {
    j = error_json(e);
  }
  j["label"] = r.label;
  return j;
}

// ---------------------------------------------------------------------------
// isometries

std::vector<IntMatrix> all_isometries(const FieldData& K, const FieldData& L, const Options& opt) {
  if (!K.field.totally_real() || !L.field.totally_real()) return {};
  if (K.order.degree() != L.order.degree() || K.order.disc() != L.order.disc()) return {};
  const auto found = isometry(L.lattice, K.lattice, budget_of(opt));
  if (!found.found) return {};
  const auto aut = automorphism_group(L.lattice, budget_of(opt));
  std::vector<IntMatrix> out;
  for (const auto& a : aut.elements) out.push_back(a * *found.map);
  std::sort(out.begin(), out.end(), [](const IntMatrix& a, const IntMatrix& b) { return a.data() < b.data(); });
  return out;
}

// ---------------------------------------------------------------------------
// compare

namespace {

// Everything after an isometry phi: K -> L has been found.
void isometry_pipeline(const FieldData& K, const FieldData& L, const IntMatrix& T, const TensorAlgebra& TA,
                       const Options& opt, json& rep, json& assertions) {
  const bool real = K.field.totally_real() && L.field.totally_real();
  if (real) {
    try {
      const UnitSign s = check_unit_image(T, K.lattice, L.lattice);
      rep["unit_image"] = to_string(s);
      assertions.push_back(assertion("unit_maps_to_pm1", true, to_string(s)));
    } catch (const PropertyViolation& e) {
      assertions.push_back(assertion("unit_maps_to_pm1", false, e.what()));
    }
    const bool tz = restrict_isometry(T, trace_zero_lattice(K.order), trace_zero_lattice(L.order)).has_value();
    const bool pp = restrict_isometry(T, perp_lattice(K.order), perp_lattice(L.order)).has_value();
    assertions.push_back(assertion("restricts_to_trace_zero", tz));
    assertions.push_back(assertion("restricts_to_perp", pp));
  }
  const LinearMap phi = map_of(K, L, T);
  const CasimirElement c = casimir_element(TA, phi);
  rep["casimir"] = casimir_json(c);
  try {
    const auto ir = verify_integrality_theorem(TA, phi, c);
    rep["integrality"] = checks_json(ir.checks);
    assertions.push_back(assertion("integrality", true));
  } catch (const PropertyViolation& e) {
    assertions.push_back(assertion("integrality", false, e.what()));
  }
  if (real) {
    try {
      const auto br = casimir_bound_check(TA, phi, c);
      rep["bound"] = checks_json(br.checks);
      assertions.push_back(assertion("bound", true));
    } catch (const PropertyViolation& e) {
      assertions.push_back(assertion("bound", false, e.what()));
    }
    const auto split = discriminant_split(abs(K.order.disc()));
    try {
      const auto sr = small_casimir_classifier(c, phi, split, opt.precision_bits);
      rep["casimir"]["small"] = {{"verdict", to_string(sr.verdict)},
                                 {"hypotheses_hold", sr.hypotheses_hold},
                                 {"components_small", sr.components_small},
                                 {"detail", sr.detail}};
      assertions.push_back(assertion("small_values", true, sr.detail));
    } catch (const PropertyViolation& e) {
      assertions.push_back(assertion("small_values", false, e.what()));
    }
    if (split.d_s == 1) {
      bool rational = true;
      for (const auto& cc : c.components) rational = rational && cc.min_poly.degree() == 1;
      assertions.push_back(assertion("squarefree_disc_components_rational", rational));
    }
  }
}

}  // namespace

json compare_report(const FieldRecord& a, const FieldRecord& b, const Options& opt) {
  json rep;
  rep["labels"] = {a.label, b.label};
  json assertions = json::array();
  try {
    const FieldData K = load_field(a), L = load_field(b);
    const bool deg = K.field.degree() == L.field.degree();
    const bool sig = deg && K.field.signature().r1 == L.field.signature().r1;
    const bool disc = K.order.disc() == L.order.disc();
    rep["invariants"] = {{"degree", deg}, {"signature", sig}, {"disc", disc}};
    rep["status"] = "ok";
    std::optional<TensorAlgebra> TA;
    if (deg) {
      TA.emplace(K.order, L.order);
      const auto dj = linearly_disjoint(*TA);
      rep["disjointness"] = {{"verdict", to_string(dj.verdict)},
                             {"witness_min_poly", dj.witness_min_poly ? json(coefficient_strings(*dj.witness_min_poly))
                                                                      : json(nullptr)}};
      rep["isomorphic"] = fields_isomorphic(*TA);
    } else {
      rep["isomorphic"] = false;
      rep["disjointness"] = {{"verdict", "not computed: degrees differ"}};
    }
    if (!(deg && sig && disc)) {
      rep["isometric"] = false;
      rep["isometry"] = {{"verdict", "not isometric"},
                         {"certificate", std::string("invariant mismatch:") + (deg ? "" : " degree") +
                                             (sig || !deg ? "" : " signature") + (disc ? "" : " discriminant")}};
    } else if (!K.field.totally_real() && canonical_json(a) == canonical_json(b)) {
      const IntMatrix id = IntMatrix::identity(static_cast<std::size_t>(K.order.degree()));
      rep["isometric"] = true;
      rep["isometry"] = {{"verdict", "isometric"}, {"witness", int_matrix_json(id)}};
      isometry_pipeline(K, L, id, *TA, opt, rep, assertions);
    } else if (!K.field.totally_real()) {
      const bool iso = rep["isomorphic"].get<bool>();
      rep["isometric"] = iso ? json(true) : json(nullptr);
      rep["isometry"] = {{"verdict", iso ? "isometric" : "undecided"},
                         {"certificate", iso ? "a field isomorphism restricts to an isometry of the trace forms"
                                             : "trace form is indefinite"}};
    } else {
      const auto found = isometry(L.lattice, K.lattice, budget_of(opt));
      rep["isometric"] = found.found;
      if (!found.found) {
        rep["isometry"] = {{"verdict", "not isometric"}, {"certificate", found.certificate}};
      } else {
        rep["isometry"] = {{"verdict", "isometric"}, {"witness", int_matrix_json(*found.map)}};
        isometry_pipeline(K, L, *found.map, *TA, opt, rep, assertions);
        if (K.field.totally_real() && is_fundamental(K.order.disc()))
          assertions.push_back(assertion("fundamental_disc_isometric_implies_isomorphic",
                                         rep["isomorphic"].get<bool>()));
      }
    }
  } catch (const Error& e) {
    rep["status"] = status_for(e);
    rep["error"] = e.what();
  }
  rep["assertions"] = assertions;
  bool ok = true;
  for (const auto& x : assertions) ok = ok && x["passed"].get<bool>();
  if (!ok) rep["status"] = "violation";
  const std::string st = rep["status"];
  rep["verdict"] = st == "ok" ? "consistent with every checked statement"
                   : st == "violation" ? "inconsistent: see failed assertions"
                                       : "incomplete: " + st + " error";
  return rep;
}

// ---------------------------------------------------------------------------
// scan

json scan_report(const std::vector<FieldRecord>& records_in, const Options& opt, const ScanFilters& filters) {
  std::vector<FieldRecord> records = records_in;
  std::sort(records.begin(), records.end(), [](const auto& x, const auto& y) { return x.label < y.label; });
  struct Info {
    bool ok = false;
    int degree = 0, r1 = 0, r2 = 0;
    Integer abs_disc;
    bool real = false, fundamental = false;
    json error;
  };
  std::vector<Info> info(records.size());
  parallel_for(records.size(), opt.jobs, [&](std::size_t i) {
    try {
      const FieldData d = load_field(records[i]);
      info[i] = Info{true,
                     d.field.degree(),
                     d.field.signature().r1,
                     d.field.signature().r2,
                     abs(d.order.disc()),
                     d.field.totally_real(),
                     is_fundamental(d.order.disc()),
                     nullptr};
    } catch (const Error& e) {
      info[i].error = error_json(e);
      info[i].error["label"] = records[i].label;
    }
  });
  json rep;
  json errors = json::array(), skipped = json::array();
  std::map<std::tuple<int, int, Integer>, std::vector<std::size_t>> bins;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!info[i].ok) {
      errors.push_back(info[i].error);
      continue;
    }
    if (filters.totally_real && !info[i].real) {
      skipped.push_back({{"label", records[i].label}, {"reason", "not totally real"}});
      continue;
    }
    if (filters.fundamental && !info[i].fundamental) {
      skipped.push_back({{"label", records[i].label}, {"reason", "discriminant not fundamental"}});
      continue;
    }
    bins[{info[i].degree, info[i].r1, info[i].abs_disc}].push_back(i);
  }
  json bin_list = json::array();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [key, idx] : bins) {
    json labels = json::array();
    for (auto i : idx) labels.push_back(records[i].label);
    bin_list.push_back({{"degree", std::get<0>(key)},
                        {"signature", {std::get<1>(key), (std::get<0>(key) - std::get<1>(key)) / 2}},
                        {"abs_disc", to_string(std::get<2>(key))},
                        {"labels", labels}});
    for (std::size_t x = 0; x < idx.size(); ++x)
      for (std::size_t y = x + 1; y < idx.size(); ++y) pairs.emplace_back(idx[x], idx[y]);
  }
  std::vector<json> results(pairs.size());
  parallel_for(pairs.size(), opt.jobs, [&](std::size_t k) {
    results[k] = compare_report(records[pairs[k].first], records[pairs[k].second], opt);
  });
  json pair_list = json::array(), iso_non = json::array(), violations = json::array(), isomorphic = json::array();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const json& r = results[k];
    json s{{"labels", r["labels"]},
           {"isometric", r.value("isometric", json(nullptr))},
           {"isomorphic", r.value("isomorphic", json(nullptr))},
           {"status", r["status"]},
           {"verdict", r["verdict"]}};
    if (r.contains("error")) s["error"] = r["error"];
    json failed = json::array();
    for (const auto& a : r["assertions"])
      if (!a["passed"].get<bool>()) failed.push_back(a);
    if (!failed.empty()) s["failed_assertions"] = failed;
    pair_list.push_back(s);
    const bool isometric = s["isometric"].is_boolean() && s["isometric"].get<bool>();
    const bool iso = s["isomorphic"].is_boolean() && s["isomorphic"].get<bool>();
    if (iso) isomorphic.push_back(r["labels"]);
    if (isometric && !iso) {
      iso_non.push_back(r["labels"]);
      const auto& i = info[pairs[k].first];
      if (i.real && i.fundamental) violations.push_back(r["labels"]);
    }
    if (r["status"] == "violation" && !(isometric && !iso)) violations.push_back(r["labels"]);
  }
  rep["filters"] = {{"totally_real", filters.totally_real}, {"fundamental", filters.fundamental}};
  rep["records"] = records.size();
  rep["errors"] = errors;
  rep["skipped"] = skipped;
  rep["bins"] = bin_list;
  rep["pairs"] = pair_list;
  rep["isomorphic_pairs"] = isomorphic;
  rep["isometric_non_isomorphic"] = iso_non;
  rep["violations"] = violations;
  rep["status"] = violations.empty() ? "ok" : "violation";
  return rep;
}

// ---------------------------------------------------------------------------
// verify

const std::vector<std::string>& verify_ids() {
  static const std::vector<std::string> ids{"orthonormal", "fourier", "aut", "integrality", "bound", "unit", "small"};
  return ids;
}

namespace {

json skipped(const std::string& label, const std::string& reason) {
  return json{{"label", label}, {"status", "skipped"}, {"reason", reason}};
}

json verify_orthonormal(const FieldData& d, const Options& opt) {
  const auto u = numeric_U_matrix(LinearMap::identity(d.order), opt.precision_bits);
  Real worst(64);
  for (std::size_t i = 0; i < u.U.size(); ++i)
    for (std::size_t j = 0; j < u.U.size(); ++j) {
      const ComplexBall diff = u.U[i][j] - ComplexBall::from_integer(i == j ? 1 : 0, u.U[i][j].precision());
      const Real a = diff.abs_upper();
      if (mpfr_cmp(a.get(), worst.get()) > 0) mpfr_set(worst.get(), a.get(), MPFR_RNDU);
    }
  const bool ok = below_pow2(worst, opt.precision_bits / 2);
  return json{{"status", ok ? "ok" : "violation"},
              {"residual", real_text(worst)},
              {"threshold_log2", -(opt.precision_bits / 2)}};
}

json verify_fourier(const FieldData& d, const Options& opt) {
  std::mt19937_64 rng(fnv1a(d.record.label));
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  const std::size_t n = static_cast<std::size_t>(d.order.degree());
  Real worst(64);
  for (int t = 0; t < 20; ++t) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const int a = num(rng), b = den(rng);
        m(i, j) = Rational(a) / b;
      }
    const auto fr = fourier_reconstruct(LinearMap(d.order, d.order, m), opt.precision_bits);
    if (mpfr_cmp(fr.residual.get(), worst.get()) > 0) mpfr_set(worst.get(), fr.residual.get(), MPFR_RNDU);
  }
  const bool ok = below_pow2(worst, opt.precision_bits / 2);
  return json{{"status", ok ? "ok" : "violation"},
              {"maps", 20},
              {"residual", real_text(worst)},
              {"threshold_log2", -(opt.precision_bits / 2)}};
}

json verify_aut(const FieldData& d, const Options& opt) {
  if (!d.field.totally_real()) return skipped(d.record.label, "not totally real");
  if (!is_squarefree(abs(d.order.disc()))) return skipped(d.record.label, "discriminant not squarefree");
  const auto aut = automorphism_group(d.lattice, budget_of(opt));
  const Integer expected = d.order.degree() == 2 ? 4 : 2;
  return json{{"status", aut.order == expected ? "ok" : "violation"},
              {"order", to_string(aut.order)},
              {"expected", to_string(expected)}};
}

// One entry of the isometry-based suites: every isometry K -> L.
json verify_isometries(const std::string& id, const FieldData& K, const FieldData& L, const Options& opt) {
  const bool real = K.field.totally_real() && L.field.totally_real();
  std::vector<IntMatrix> isos;
  if (real) {
    isos = all_isometries(K, L, opt);
  } else {
    if (id != "integrality") return json{{"status", "skipped"}, {"reason", "not totally real"}};
    if (&K != &L) return json{{"status", "skipped"}, {"reason", "not totally real"}};
    const std::size_t n = static_cast<std::size_t>(K.order.degree());
    isos = {IntMatrix::identity(n), Integer(-1) * IntMatrix::identity(n)};
  }
  if (id == "small") {
    const auto split = discriminant_split(abs(K.order.disc()));
    for (const auto& [p, e] : factor_integer(split.d_s)) {
      (void)e;
      if (tameness(K.order, p) != Tameness::Tame)
        return json{{"status", "skipped"}, {"reason", "ramification at " + to_string(p) + " not certified tame"}};
    }
  }
  TensorAlgebra TA(K.order, L.order);
  json failures = json::array();
  json verdicts = json::object();
  for (const auto& T : isos) {
    const LinearMap phi = map_of(K, L, T);
    try {
      if (id == "unit") {
        check_unit_image(T, K.lattice, L.lattice);
        if (!restrict_isometry(T, trace_zero_lattice(K.order), trace_zero_lattice(L.order)))
          throw PropertyViolation("isometry does not restrict to the trace-zero lattices");
        if (!restrict_isometry(T, perp_lattice(K.order), perp_lattice(L.order)))
          throw PropertyViolation("isometry does not restrict to the perp lattices");
        continue;
      }
      const CasimirElement c = casimir_element(TA, phi);
      if (id == "integrality") {
        verify_integrality_theorem(TA, phi, c);
      } else if (id == "bound") {
        casimir_bound_check(TA, phi, c);
      } else if (id == "small") {
        const auto r = small_casimir_classifier(c, phi, discriminant_split(abs(K.order.disc())), opt.precision_bits);
        verdicts[to_string(r.verdict)] = verdicts.value(to_string(r.verdict), 0) + 1;
      }
    } catch (const PropertyViolation& e) {
      failures.push_back({{"map", int_matrix_json(T)}, {"error", e.what()}});
    }
  }
  json j{{"status", failures.empty() ? "ok" : "violation"}, {"isometries", isos.size()}};
  if (!failures.empty()) j["failures"] = failures;
  if (id == "small") j["verdicts"] = verdicts;
  return j;
}

}  // namespace

json verify_report(const std::string& id, const std::vector<FieldRecord>& records_in, const Options& opt) {
  if (std::find(verify_ids().begin(), verify_ids().end(), id) == verify_ids().end())
    throw InputError("unknown theorem id '" + id + "'");
  std::vector<FieldRecord> records = records_in;
  std::sort(records.begin(), records.end(), [](const auto& x, const auto& y) { return x.label < y.label; });
  std::vector<std::optional<FieldData>> data(records.size());
  std::vector<json> load_errors(records.size());
  parallel_for(records.size(), opt.jobs, [&](std::size_t i) {
    try {
      data[i] = load_field(records[i]);
    } catch (const Error& e) {
      load_errors[i] = error_json(e);
    }
  });

  // Work items: every record, plus ordered pairs of distinct records with
  // equal degree, signature and discriminant for the isometry suites.
  std::vector<std::pair<std::size_t, std::size_t>> items;
  for (std::size_t i = 0; i < records.size(); ++i) items.emplace_back(i, i);
  const bool cross = id == "integrality" || id == "bound" || id == "unit" || id == "small";
  if (cross)
    for (std::size_t i = 0; i < records.size(); ++i)
      for (std::size_t j = 0; j < records.size(); ++j) {
        if (i == j || !data[i] || !data[j]) continue;
        if (data[i]->field.degree() == data[j]->field.degree() &&
            data[i]->field.signature().r1 == data[j]->field.signature().r1 &&
            data[i]->order.disc() == data[j]->order.disc() && data[i]->field.totally_real())
          items.emplace_back(i, j);
      }
  std::vector<json> results(items.size());
  parallel_for(items.size(), opt.jobs, [&](std::size_t k) {
    const auto [i, j] = items[k];
    const std::string label = i == j ? records[i].label : records[i].label + "->" + records[j].label;
    json r;
    if (!data[i] || !data[j]) {
      r = load_errors[data[i] ? j : i];
    } else {
      try {
        const FieldData& K = *data[i];
        if (id == "orthonormal") r = verify_orthonormal(K, opt);
        else if (id == "fourier") r = verify_fourier(K, opt);
        else if (id == "aut") r = verify_aut(K, opt);
        else r = verify_isometries(id, K, *data[j], opt);
      } catch (const Error& e) {
        r = error_json(e);
      }
    }
    r["label"] = label;
    results[k] = r;
  });
  json list = json::array();
  std::map<std::string, int> counts{{"ok", 0}, {"violation", 0}, {"skipped", 0}, {"input", 0}, {"budget", 0}};
  for (auto& r : results) {
    const bool cross_pair = r["label"].get<std::string>().find("->") != std::string::npos;
    if (cross_pair && r.value("isometries", std::size_t{1}) == 0) continue;
    ++counts[r["status"].get<std::string>()];
    list.push_back(r);
  }
  json rep;
  rep["suite"] = id;
  rep["precision_bits"] = opt.precision_bits;
  rep["results"] = list;
  rep["summary"] = counts;
  rep["all_passed"] = counts["violation"] == 0 && counts["input"] == 0 && counts["budget"] == 0;
  return rep;
}

// ---------------------------------------------------------------------------
// casimir

json casimir_report(const FieldRecord& a, const FieldRecord& b, const std::optional<RationalMatrix>& map,
                    const Options& opt) {
  json rep;
  rep["labels"] = {a.label, b.label};
  try {
    const FieldData K = load_field(a), L = load_field(b);
    std::optional<IntMatrix> T;
    RationalMatrix m;
    if (map) {
      m = *map;
      rep["map_source"] = "given";
    } else if (a.label == b.label) {
      m = RationalMatrix::identity(static_cast<std::size_t>(K.order.degree()));
      rep["map_source"] = "identity";
    } else {
      const auto isos = all_isometries(K, L, opt);
      if (isos.empty()) {
        rep["status"] = "ok";
        rep["map_source"] = "none: no isometry between the trace lattices found";
        return rep;
      }
      m = to_rational(isos.front());
      rep["map_source"] = "isometry search";
    }
    const LinearMap phi(K.order, L.order, m);
    rep["map"] = to_json(m);
    TensorAlgebra TA(K.order, L.order);
    const CasimirElement c = casimir_element(TA, phi);
    const json cj = casimir_json(c);
    for (auto it = cj.begin(); it != cj.end(); ++it) rep[it.key()] = it.value();
    json checks = json::array();
    const bool iso = is_integral(m) && phi.is_isometry() && (determinant(m) == 1 || determinant(m) == -1);
    checks.push_back({{"name", "isometry"}, {"applicable", true}, {"passed", iso}, {"detail", ""}});
    rep["status"] = "ok";
    if (iso) {
      const bool real = K.field.totally_real() && L.field.totally_real();
      try {
        for (auto& x : checks_json(verify_integrality_theorem(TA, phi, c).checks)) checks.push_back(x);
        if (real) {
          for (auto& x : checks_json(casimir_bound_check(TA, phi, c).checks)) checks.push_back(x);
          const auto sr =
              small_casimir_classifier(c, phi, discriminant_split(abs(K.order.disc())), opt.precision_bits);
          rep["small"] = {{"verdict", to_string(sr.verdict)},
                          {"hypotheses_hold", sr.hypotheses_hold},
                          {"components_small", sr.components_small},
                          {"detail", sr.detail}};
        }
      } catch (const PropertyViolation& e) {
        checks.push_back({{"name", "theorem"}, {"applicable", true}, {"passed", false}, {"detail", e.what()}});
        rep["status"] = "violation";
      }
      const auto U = numeric_U_matrix(phi, opt.precision_bits);
      rep["U_residual"] = real_text(U.residual);
    }
    rep["checks"] = checks;
  } catch (const Error& e) {
    rep["status"] = status_for(e);
    rep["error"] = e.what();
  }
  return rep;
}

}  // namespace tf
