#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cancov/divisor_theory.hpp"
#include "cancov/findim_algebra.hpp"
#include "cancov/toric_ring.hpp"

namespace cancov::io {

using Json = nlohmann::ordered_json;

/// Reads a JSON document. Raises ParseError on I/O or syntax errors.
Json load_file(const std::filesystem::path& path);
Json parse_text(const std::string& text);

/// {"lattice_rank": d, "rays" | "facet_normals": [[...]], "congruence": {...}}
AffineMonoid parse_ring(const Json& j);
/// Internal-coordinate presentation: {"lattice_rank": d, "facet_normals": ...}.
Json ring_to_json(const AffineMonoid& monoid);
/// {"coeffs": [...]} in facet order.
WeilDivisor parse_divisor(const Json& j, const AffineMonoid& monoid);
Json divisor_to_json(const WeilDivisor& D);
/// {"summands": [{"coeffs": [...]}, ...]}
ModuleClass parse_module_class(const Json& j, const AffineMonoid& monoid);
/// {"field": {"char": p}, "modulus": n, "basis": [...], "degrees": [...],
///  "unit": [...], "mult": mult[i][j] = coefficients of e_i e_j}.
/// Coefficients are integers or strings such as "-1/2".
FinDimGradedAlgebra parse_algebra(const Json& j);
Json algebra_to_json(const FinDimGradedAlgebra& A);
Scalar parse_scalar(const Json& j, const Field& F);
Json scalar_to_json(const Scalar& x);

Json homdim_to_json(const HomDim& h);

struct AnalyzeOptions {
  bool cover = false;
  std::vector<WeilDivisor> divisors;
  std::optional<std::int64_t> box;
  std::optional<AffineMonoid> cover_target;  // report whether the cover is isomorphic to it
  std::string cover_target_name;
  std::optional<std::pair<std::size_t, std::int64_t>> stable_search;  // (max size, window)
  bool timing = false;
};
Json depth_report(const AffineMonoid& monoid, const WeilDivisor& D);
Json cover_report(const AffineMonoid& monoid, const AnalyzeOptions& opts);
Json analyze(const Json& ring_spec, const AnalyzeOptions& opts);

struct FindimOptions {
  bool smash = false;
  std::optional<Json> skew;  // zeta, parsed in the algebra's field
  std::int64_t cutoff = 12;
  bool timing = false;
};
Json findim(const Json& algebra_spec, const FindimOptions& opts);

/// Named examples bundled with the repository.
struct Example {
  std::string name;
  std::string origin;  // "named" or "derived"
  std::string kind;    // "ring" or "algebra"
  std::string file;
  AnalyzeOptions analyze;
  std::vector<std::string> depth_files;
  std::string cover_target_file;
  FindimOptions findim;
};
std::vector<Example> examples();
Json run_example(const Example& ex, const std::filesystem::path& fixture_dir);

struct SuiteResult {
  Json report;
  std::vector<std::string> diffs;
  bool ok() const { return diffs.empty(); }
};
/// Runs every example and compares with golden/<name>.json under golden_dir.
SuiteResult run_suite(const std::filesystem::path& fixture_dir, const std::filesystem::path& golden_dir);
void write_goldens(const std::filesystem::path& fixture_dir, const std::filesystem::path& golden_dir);

/// Paths where `a` and `b` differ, with both values.
std::vector<std::string> json_diff(const Json& a, const Json& b, const std::string& path = "");

/// Indented "key: value" rendering of a report.
std::string render(const Json& report);

/// 0 ok, 1 input error, 2 budget, 3 verification mismatch.
int exit_code(ErrorKind kind);

}  // namespace cancov::io
