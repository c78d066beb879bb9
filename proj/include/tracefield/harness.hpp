#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tracefield/casimir.hpp"
#include "tracefield/lattice.hpp"

namespace tf {

using json = nlohmann::json;

/// One line of a JSONL dataset.
struct FieldRecord {
  std::string label;
  IntPoly poly;
  std::optional<RationalMatrix> integral_basis;
  std::optional<Integer> disc;
  bool trusted = false;
  std::string note;
  std::size_t line = 0;
};

/// Parses JSONL records, one per non-blank line. Throws InputError
/// naming the line on malformed JSON, a non-monic polynomial, a bad
/// rational string or a duplicate label.
std::vector<FieldRecord> ingest(std::istream& in);
/// Reads a file, or standard input for "-".
std::vector<FieldRecord> ingest_path(const std::string& path);

/// The record without its label and note, in a fixed key order.
json canonical_json(const FieldRecord& r);

struct Options {
  int precision_bits = 128;
  std::uint64_t budget = 10'000'000;
  std::string cache_dir = "./.tfcache";
  bool use_cache = true;
  int jobs = 1;
};

/// Field invariants keyed by the SHA-256 of the canonical record.
/// Entries carry a format version; stale versions are recomputed.
class InvariantCache {
 public:
  static constexpr int kVersion = 1;
  explicit InvariantCache(std::string dir) : dir_(std::move(dir)) {}
  static std::string key_for(const FieldRecord& r);
  std::optional<json> load(const std::string& key) const;
  /// Write-to-temporary-then-rename; failures to write are ignored.
  void store(const std::string& key, const json& data) const;

 private:
  std::string dir_;
};

/// Number field, maximal order and trace lattice of a record.
struct FieldData {
  FieldRecord record;
  NumberField field;
  MaximalOrder order;
  TraceLattice lattice;
};
FieldData load_field(const FieldRecord& r);

/// Process exit code for an exception from the library.
int exit_code_for(const std::exception& e);
/// "ok", "violation", "input" or "budget".
std::string status_for(const std::exception& e);
/// Exit code from the "status" fields found anywhere in a report.
int exit_code_for(const json& report);

json field_report(const FieldRecord& r, const Options& opt);
json compare_report(const FieldRecord& a, const FieldRecord& b, const Options& opt);

struct ScanFilters {
  bool totally_real = false;
  bool fundamental = false;
};
json scan_report(const std::vector<FieldRecord>& records, const Options& opt, const ScanFilters& filters = {});

/// Theorem suites: orthonormal, fourier, aut, integrality, bound, unit,
/// small.
const std::vector<std::string>& verify_ids();
json verify_report(const std::string& id, const std::vector<FieldRecord>& records, const Options& opt);

/// Casimir element of a map between two records' fields. Without a map:
/// the identity for equal records, otherwise the isometry found by the
/// search (if any).
json casimir_report(const FieldRecord& a, const FieldRecord& b, const std::optional<RationalMatrix>& map,
                    const Options& opt);

/// Isometries O_K -> O_L as order-coordinate matrices: every automorphism
/// composed with one found isometry. Empty when none exists; only for
/// totally real fields.
std::vector<IntMatrix> all_isometries(const FieldData& K, const FieldData& L, const Options& opt);

json casimir_json(const CasimirElement& c);
json to_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const json& j);

/// Runs f(i) for i in [0, n) on `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& f);

}  // namespace tf
