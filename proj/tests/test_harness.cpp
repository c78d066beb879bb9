#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tracefield/errors.hpp"
#include "tracefield/harness.hpp"

using namespace tf;

namespace {

std::vector<FieldRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return ingest(in);
}

FieldRecord rec(const std::string& line) { return parse(line).at(0); }

std::string ingest_error(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() / ("tfield-test-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

Options no_cache() {
  Options o;
  o.use_cache = false;
  return o;
}

const FieldRecord& by_label(const std::vector<FieldRecord>& rs, const std::string& l) {
  for (const auto& r : rs)
    if (r.label == l) return r;
  throw std::runtime_error("missing " + l);
}

}  // namespace

TEST_CASE("ingest") {
  auto rs = parse("{\"label\":\"F5\",\"poly\":[-1,-1,1]}\n\n  \n{\"label\":\"B\",\"poly\":[\"-2\",0,\"1\"],"
                  "\"disc\":\"8\",\"note\":\"x\"}\n");
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].label == "F5");
  CHECK(rs[0].poly == IntPoly({-1, -1, 1}));
  CHECK(rs[0].line == 1);
  CHECK(rs[1].line == 4);
  CHECK(*rs[1].disc == 8);
  CHECK(rs[1].note == "x");

  auto b = rec(R"({"label":"F5b","poly":[-5,0,1],"integral_basis":[["1","0"],["1/2","1/2"]],"trusted":true})");
  REQUIRE(b.integral_basis);
  CHECK((*b.integral_basis)(1, 0) == Rational(1) / 2);
  CHECK(b.trusted);

  CHECK(ingest_error("{\"label\":\"A\",\"poly\":[1,0,1]}\n{\"label\":\"A\",\"poly\":[2,0,1]}").find("line 2") == 0);
  CHECK(ingest_error("{\"label\":\"A\",\"poly\":[1,0,1]").find("line 1: malformed JSON") == 0);
  CHECK(ingest_error("{\"label\":\"A\",\"poly\":[1,0,2]}").find("not monic") != std::string::npos);
  CHECK(ingest_error("{\"label\":\"A\",\"poly\":[1,0,1],\"extra\":1}").find("unknown key") != std::string::npos);
  CHECK(ingest_error("{\"label\":\"A\",\"poly\":[\"1/2\",0,1]}").find("integer") != std::string::npos);
  CHECK(ingest_error("{\"label\":\"A\",\"poly\":[7]}").find("nonconstant") != std::string::npos);
  CHECK(ingest_error("{\"label\":\"\",\"poly\":[0,1]}").find("label") != std::string::npos);
  CHECK(ingest_error("[1,2]").find("object") != std::string::npos);
  CHECK(ingest_error("{\"label\":\"A\",\"poly\":[-5,0,1],\"integral_basis\":[[\"1\",\"x\"],[\"0\",\"1\"]]}") != "");
  CHECK(parse("").empty());

  // Reducible polynomials are accepted here and rejected when the field is built.
  auto x4 = rec(R"({"label":"X","poly":[4,0,0,0,1]})");
  CHECK_THROWS_AS(load_field(x4), Error);
  try {
    load_field(x4);
  } catch (const std::exception& e) {
    CHECK(exit_code_for(e) == 2);
  }
}

TEST_CASE("canonical form and cache") {
  auto a = rec(R"({"label":"A","poly":[-1,-1,1],"note":"one"})");
  auto b = rec(R"({"label":"B","poly":["-1","-1","1"]})");
  auto c = rec(R"({"label":"A","poly":[-1,-1,1],"disc":5})");
  CHECK(canonical_json(a) == canonical_json(b));
  CHECK(InvariantCache::key_for(a) == InvariantCache::key_for(b));
  CHECK(InvariantCache::key_for(a) != InvariantCache::key_for(c));
  CHECK(InvariantCache::key_for(a).size() == 64);

  TempDir dir("cache");
  InvariantCache cache(dir.path.string());
  const std::string key = InvariantCache::key_for(a);
  CHECK_FALSE(cache.load(key));
  cache.store(key, json{{"x", 1}});
  REQUIRE(cache.load(key));
  CHECK((*cache.load(key))["x"] == 1);
  {
    std::ofstream f(dir.path / (key + ".json"));
    f << R"({"version":0,"key":")" << key << R"(","data":{"x":2}})";
  }
  CHECK_FALSE(cache.load(key));
  {
    std::ofstream f(dir.path / (key + ".json"));
    f << "{truncated";
  }
  CHECK_FALSE(cache.load(key));
  // Unwritable directory: storing is silently skipped.
  InvariantCache nowhere("/proc/tfield-no-such-dir");
  nowhere.store(key, json{{"x", 1}});
  CHECK_FALSE(nowhere.load(key));
}

TEST_CASE("cached field reports equal fresh ones on the bundled dataset") {
  const auto rs = ingest_path(TF_DATASET);
  REQUIRE(rs.size() >= 12);
  TempDir dir("dataset");
  Options cached;
  cached.cache_dir = dir.path.string();
  for (const auto& r : rs) {
    const json fresh = field_report(r, no_cache());
    const json first = field_report(r, cached);
    const json second = field_report(r, cached);
    CHECK(fresh.dump() == first.dump());
    CHECK(fresh.dump() == second.dump());
  }
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path)) files += e.path().extension() == ".json";
  CHECK(files == rs.size());
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(PropertyViolation("p")) == 1);
  CHECK(exit_code_for(BudgetError("b")) == 3);
  CHECK(exit_code_for(InputError("i")) == 2);
  CHECK(exit_code_for(DomainError("d")) == 2);
  CHECK(exit_code_for(UnsupportedInput("u")) == 2);
  CHECK(exit_code_for(json{{"status", "ok"}}) == 0);
  CHECK(exit_code_for(json::array({{{"status", "input"}}, {{"status", "budget"}}})) == 3);
  CHECK(exit_code_for(json{{"a", {{"status", "budget"}}}, {"b", {{"status", "violation"}}}}) == 1);
  CHECK(exit_code_for(json{{"r", {{{"status", "skipped"}}, {{"status", "input"}}}}}) == 2);
}

TEST_CASE("parallel_for") {
  for (int jobs : {1, 3, 8}) {
    std::vector<int> hit(37, 0);
    parallel_for(hit.size(), jobs, [&](std::size_t i) { hit[i] += 1; });
    CHECK(std::count(hit.begin(), hit.end(), 1) == 37);
    CHECK_THROWS_AS(parallel_for(10, jobs, [](std::size_t i) {
                      if (i == 4) throw InputError("x");
                    }),
                    InputError);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL("called"); });
}

TEST_CASE("field reports") {
  const auto rs = ingest_path(TF_DATASET);
  const json f5 = field_report(by_label(rs, "F5"), no_cache());
  CHECK(f5["status"] == "ok");
  CHECK(f5["disc"] == "5");
  CHECK(f5["split"]["d_s"] == "1");
  CHECK(f5["split"]["d_f"] == "5");
  CHECK(f5["fundamental"] == true);
  CHECK(f5["gram"] == json::parse(R"([["2","1"],["1","3"]])"));
  CHECK(f5["aut"]["order"] == "4");
  CHECK(f5["sn_certificate"] == to_string(SnCertificate::CertifiedSn));

  const json c229 = field_report(by_label(rs, "C229"), no_cache());
  CHECK(c229["disc"] == "229");
  CHECK(c229["aut"]["order"] == "2");
  CHECK(c229["sn_certificate"] == to_string(SnCertificate::CertifiedSn));

  const json q = field_report(by_label(rs, "Q1"), no_cache());
  CHECK(q["degree"] == 1);
  CHECK(q["disc"] == "1");
  CHECK(q["gram"] == json::parse(R"([["1"]])"));

  const json gi = field_report(by_label(rs, "Gi"), no_cache());
  CHECK(gi["aut"]["status"] == "skipped");
  CHECK(gi["signature"] == json({0, 1}));
}

TEST_CASE("compare reports") {
  const auto rs = ingest_path(TF_DATASET);
  const Options o = no_cache();
  const json same = compare_report(by_label(rs, "F5"), by_label(rs, "F5"), o);
  CHECK(same["status"] == "ok");
  CHECK(same["isometric"] == true);
  CHECK(same["isomorphic"] == true);
  REQUIRE(same["casimir"]["components"].size() == 2);
  CHECK(same["casimir"]["components"][0]["min_poly_text"] == "x - 1");
  CHECK(same["casimir"]["components"][1]["min_poly_text"] == "x");
  for (const auto& a : same["assertions"]) CHECK(a["passed"] == true);

  const json f5f8 = compare_report(by_label(rs, "F5"), by_label(rs, "F8"), o);
  CHECK(f5f8["isometric"] == false);
  CHECK(f5f8["invariants"]["disc"] == false);
  CHECK(f5f8["isometry"]["certificate"].get<std::string>().find("discriminant") != std::string::npos);

  const json f5f13 = compare_report(by_label(rs, "F5"), by_label(rs, "F13"), o);
  CHECK(f5f13["isometric"] == false);

  const json dup = compare_report(by_label(rs, "F5"), by_label(rs, "F5b"), o);
  CHECK(dup["isometric"] == true);
  CHECK(dup["isomorphic"] == true);

  const json cubics = compare_report(by_label(rs, "C32009a"), by_label(rs, "C32009b"), o);
  CHECK(cubics["isometric"] == false);
  CHECK(cubics["isomorphic"] == false);
  CHECK(cubics["status"] == "ok");

  const json gi = compare_report(by_label(rs, "Gi"), by_label(rs, "Gi"), o);
  CHECK(gi["isometric"] == true);
  CHECK(gi["status"] == "ok");

  Options tiny = o;
  tiny.budget = 1;
  const json budget = field_report(by_label(rs, "C229"), tiny);
  CHECK(budget["status"] == "budget");
  CHECK(exit_code_for(budget) == 3);
}

TEST_CASE("scan and verify reports") {
  const auto rs = ingest_path(TF_DATASET);
  const Options o = no_cache();
  const json scan = scan_report(rs, o, ScanFilters{true, true});
  CHECK(scan["violations"].empty());
  CHECK(scan["isometric_non_isomorphic"].empty());
  CHECK(scan["isomorphic_pairs"] == json::parse(R"([["F5","F5b"]])"));
  CHECK(scan_report({}, o)["pairs"].empty());

  const json aut = verify_report("aut", rs, o);
  CHECK(aut["all_passed"] == true);
  bool saw_gi = false;
  for (const auto& r : aut["results"])
    if (r["label"] == "Gi") {
      saw_gi = true;
      CHECK(r["status"] == "skipped");
      CHECK(r["reason"] == "not totally real");
    }
  CHECK(saw_gi);
  CHECK_THROWS_AS(verify_report("nope", rs, o), InputError);

  const json cas = casimir_report(by_label(rs, "F5"), by_label(rs, "F5"), std::nullopt, o);
  CHECK(cas["map_source"] == "identity");
  CHECK(cas["min_poly_text"] == "x^2 - x");
  const json bad = casimir_report(by_label(rs, "F5"), by_label(rs, "F5"),
                                  matrix_from_json(json::parse(R"([[2,0],[0,1]])")), o);
  CHECK(bad["checks"][0]["passed"] == false);
  CHECK(exit_code_for(bad) == 0);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"([[1,2],[3]])")), InputError);
}
