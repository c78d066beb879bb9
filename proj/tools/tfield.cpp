// tfield: trace forms of number fields from the command line.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "tracefield/errors.hpp"
#include "tracefield/harness.hpp"

namespace {

using tf::json;

struct Global {
  tf::Options opt;
  std::string dataset = "data/fields.jsonl";
  bool json_only = false;
};

const tf::FieldRecord& find(const std::vector<tf::FieldRecord>& records, const std::string& label) {
  for (const auto& r : records)
    if (r.label == label) return r;
  throw tf::InputError("no record labelled '" + label + "' in the dataset");
}

std::string yes_no(const json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return "undecided";
}

void summarize_field(const json& r, std::ostream& out) {
  out << r["label"].get<std::string>() << ": ";
  if (r["status"] != "ok") {
    out << r["status"].get<std::string>() << " error: " << r["error"].get<std::string>() << "\n";
    return;
  }
  out << "degree " << r["degree"] << ", signature (" << r["signature"][0] << "," << r["signature"][1] << "), disc "
      << r["disc"].get<std::string>() << ", d_s " << r["split"]["d_s"].get<std::string>() << ", d_f "
      << r["split"]["d_f"].get<std::string>() << (r["fundamental"].get<bool>() ? ", fundamental" : "");
  if (r["aut"].contains("order")) out << ", |Aut| " << r["aut"]["order"].get<std::string>();
  out << ", " << r["sn_certificate"].get<std::string>() << "\n";
}

void summarize_compare(const json& r, std::ostream& out) {
  out << r["labels"][0].get<std::string>() << " vs " << r["labels"][1].get<std::string>() << ": ";
  if (r.contains("error")) {
    out << r["status"].get<std::string>() << " error: " << r["error"].get<std::string>() << "\n";
    return;
  }
  out << "isometric " << yes_no(r["isometric"]) << ", isomorphic " << yes_no(r["isomorphic"]);
  if (r.contains("casimir")) {
    out << ", c min poly " << r["casimir"]["min_poly_text"].get<std::string>() << ", M "
        << r["casimir"]["M"].get<std::string>();
    if (r["casimir"].contains("small")) out << ", small " << r["casimir"]["small"]["verdict"].get<std::string>();
  }
  out << "\n  " << r["verdict"].get<std::string>() << "\n";
  for (const auto& a : r["assertions"])
    if (!a["passed"].get<bool>())
      out << "  FAILED " << a["name"].get<std::string>() << ": " << a["detail"].get<std::string>() << "\n";
}

void summarize_scan(const json& r, std::ostream& out) {
  out << r["records"] << " records, " << r["bins"].size() << " bins, " << r["pairs"].size() << " pairs compared\n";
  for (const auto& p : r["isomorphic_pairs"])
    out << "  isomorphic: " << p[0].get<std::string>() << " " << p[1].get<std::string>() << "\n";
  for (const auto& p : r["isometric_non_isomorphic"])
    out << "  isometric but not isomorphic: " << p[0].get<std::string>() << " " << p[1].get<std::string>() << "\n";
  for (const auto& p : r["violations"])
    out << "  VIOLATION: " << p[0].get<std::string>() << " " << p[1].get<std::string>() << "\n";
  for (const auto& e : r["errors"])
    out << "  error in " << e["label"].get<std::string>() << ": " << e["error"].get<std::string>() << "\n";
  out << "violations: " << r["violations"].size() << "\n";
}

void summarize_verify(const json& r, std::ostream& out) {
  for (const auto& x : r["results"]) {
    out << "  " << x["label"].get<std::string>() << ": " << x["status"].get<std::string>();
    if (x.contains("reason")) out << " (" << x["reason"].get<std::string>() << ")";
    if (x.contains("error")) out << " (" << x["error"].get<std::string>() << ")";
    if (x.contains("residual")) out << " residual " << x["residual"].get<std::string>();
    if (x.contains("order")) out << " order " << x["order"].get<std::string>();
    out << "\n";
  }
  out << "suite " << r["suite"].get<std::string>() << ":";
  for (const auto& [k, v] : r["summary"].items()) out << " " << k << "=" << v;
  out << "\n";
}

void summarize_casimir(const json& r, std::ostream& out) {
  out << r["labels"][0].get<std::string>() << " -> " << r["labels"][1].get<std::string>() << ": ";
  if (r.contains("error")) {
    out << r["status"].get<std::string>() << " error: " << r["error"].get<std::string>() << "\n";
    return;
  }
  if (!r.contains("min_poly_text")) {
    out << r["map_source"].get<std::string>() << "\n";
    return;
  }
  out << "c min poly " << r["min_poly_text"].get<std::string>() << ", M " << r["M"].get<std::string>()
      << (r["is_rational"].get<bool>() ? ", rational" : "") << "\n";
  for (const auto& c : r["components"])
    out << "  component [E:K]=" << c["degree_over_K"] << " min poly " << c["min_poly_text"].get<std::string>()
        << "\n";
  for (const auto& c : r["checks"])
    if (c["applicable"].get<bool>() && !c["passed"].get<bool>())
      out << "  FAILED " << c["name"].get<std::string>() << ": " << c["detail"].get<std::string>() << "\n";
}

int emit(const Global& g, const json& report, void (*summary)(const json&, std::ostream&)) {
  std::cout << report.dump(g.json_only ? -1 : 2) << "\n";
  if (!g.json_only) summary(report, std::cerr);
  return tf::exit_code_for(report);
}

std::optional<tf::RationalMatrix> parse_map(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string body = text;
  if (text[0] == '@') {
    std::ifstream f(text.substr(1));
    if (!f) throw tf::InputError("cannot open map file '" + text.substr(1) + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    body = ss.str();
  }
  try {
    return tf::matrix_from_json(json::parse(body));
  } catch (const json::parse_error& e) {
    throw tf::InputError(std::string("malformed map: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral trace forms of number fields: invariants, isometries and Casimir elements"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--precision-bits", g.opt.precision_bits, "working precision of ball arithmetic")
      ->capture_default_str()
      ->check(CLI::Range(16, 65536));
  app.add_option("--budget", g.opt.budget, "node budget for lattice searches")->capture_default_str();
  app.add_option("--cache-dir", g.opt.cache_dir, "invariant cache directory")->capture_default_str();
  app.add_flag("--no-cache", [&](std::int64_t) { g.opt.use_cache = false; }, "do not read or write the cache");
  app.add_option("--dataset", g.dataset, "JSONL dataset, or - for standard input")->capture_default_str();
  app.add_flag("--json", g.json_only, "compact JSON only, no summary");
  app.add_option("--jobs", g.opt.jobs, "worker threads")->capture_default_str()->check(CLI::Range(1, 256));

  std::vector<std::string> field_labels;
  auto* field = app.add_subcommand("field", "invariants of fields (all records when no label is given)");
  field->add_option("labels", field_labels);

  std::string a, b;
  auto* compare = app.add_subcommand("compare", "compare the trace forms of two fields");
  compare->add_option("A", a)->required();
  compare->add_option("B", b)->required();

  tf::ScanFilters filters;
  auto* scan = app.add_subcommand("scan", "compare every pair with equal degree, signature and |disc|");
  scan->add_flag("--totally-real", filters.totally_real);
  scan->add_flag("--fundamental", filters.fundamental);

  std::string theorem;
  auto* verify = app.add_subcommand("verify", "run a verification suite over the dataset");
  verify->add_option("id", theorem, "orthonormal, fourier, aut, integrality, bound, unit or small")
      ->required()
      ->check(CLI::IsMember(tf::verify_ids()));

  std::string ca, cb, map_text;
  auto* casimir = app.add_subcommand("casimir", "Casimir element of a map O_A -> O_B");
  casimir->add_option("A", ca)->required();
  casimir->add_option("B", cb)->required();
  casimir->add_option("--map", map_text, "matrix in order coordinates as JSON, or @file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto records = tf::ingest_path(g.dataset);
    if (field->parsed()) {
      std::vector<tf::FieldRecord> chosen;
      if (field_labels.empty()) {
        chosen = records;
      } else {
        for (const auto& l : field_labels) chosen.push_back(find(records, l));
      }
      std::sort(chosen.begin(), chosen.end(), [](const auto& x, const auto& y) { return x.label < y.label; });
      std::vector<json> out(chosen.size());
      tf::parallel_for(chosen.size(), g.opt.jobs, [&](std::size_t i) { out[i] = tf::field_report(chosen[i], g.opt); });
      json report = out;
      std::cout << report.dump(g.json_only ? -1 : 2) << "\n";
      if (!g.json_only)
        for (const auto& r : report) summarize_field(r, std::cerr);
      return tf::exit_code_for(report);
    }
    if (compare->parsed()) return emit(g, tf::compare_report(find(records, a), find(records, b), g.opt), summarize_compare);
    if (scan->parsed()) return emit(g, tf::scan_report(records, g.opt, filters), summarize_scan);
    if (verify->parsed()) return emit(g, tf::verify_report(theorem, records, g.opt), summarize_verify);
    if (casimir->parsed())
      return emit(g, tf::casimir_report(find(records, ca), find(records, cb), parse_map(map_text), g.opt),
                  summarize_casimir);
  } catch (const tf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tf::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
