#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cancov/errors.hpp"
#include "cancov/io.hpp"
#include "cancov/parallel.hpp"

#ifndef CANCOV_FIXTURE_DIR
#define CANCOV_FIXTURE_DIR "fixtures"
#endif

using namespace cancov;
using io::Json;

namespace {

void emit(const Json& report, bool json) {
  if (json) std::cout << report.dump(2) << '\n';
  else std::cout << io::render(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical covers of toric rings and Gabriel covers of graded algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::size_t threads = 1;
  bool timing = false;
  app.add_flag("--json", json, "Print the JSON report");
  app.add_option("--threads", threads, "Worker threads for library loops")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "Add wall-clock timings to the report");

  auto* analyze = app.add_subcommand("analyze", "Class group, Q-Gorenstein index, GM modules, cover and depth");
  std::string ring_path, depth_path, iso_path;
  bool cover = false, stable = false;
  std::int64_t box = 0;
  analyze->add_option("ring", ring_path, "Ring spec")->required();
  analyze->add_flag("--cover", cover, "Build the canonical cover");
  analyze->add_option("--depth", depth_path, "Divisor spec, or an array of divisor specs");
  analyze->add_option("--box", box, "Box radius for the strong grading check")->check(CLI::PositiveNumber);
  analyze->add_option("--cover-iso", iso_path, "Ring spec to compare the cover monoid with");
  analyze->add_flag("--stable-sets", stable, "Search nu-stable class sets of size <= 4 in the window [-6, 6]");

  auto* findim = app.add_subcommand("findim", "Global and injective dimensions, smash product, skew group ring");
  std::string alg_path, zeta;
  bool smash = false;
  std::int64_t cutoff = 12;
  findim->add_option("algebra", alg_path, "Algebra spec")->required();
  findim->add_flag("--smash", smash, "Compare with the smash product A#Z_n");
  findim->add_option("--skew", zeta, "Primitive n-th root of unity for the skew group ring comparison");
  findim->add_option("--cutoff", cutoff, "Resolution length limit")->check(CLI::NonNegativeNumber);

  auto* examples = app.add_subcommand("paper-examples", "Run the bundled examples against golden reports");
  bool list = false;
  std::string fixture_dir = CANCOV_FIXTURE_DIR, golden_dir, write_dir;
  examples->add_flag("--list", list, "Print example names only");
  examples->add_option("--fixtures-dir", fixture_dir, "Fixture directory");
  examples->add_option("--golden-dir", golden_dir, "Golden report directory (default <fixtures>/golden)");
  examples->add_option("--write-goldens", write_dir, "Regenerate golden reports into this directory");

  CLI11_PARSE(app, argc, argv);
  set_thread_count(threads);

  try {
    if (*analyze) {
      io::AnalyzeOptions opts;
      opts.cover = cover;
      opts.timing = timing;
      if (box > 0) opts.box = box;
      Json spec = io::load_file(ring_path);
      auto monoid = io::parse_ring(spec);
      if (!depth_path.empty()) {
        Json d = io::load_file(depth_path);
        if (d.is_array())
          for (const auto& x : d) opts.divisors.push_back(io::parse_divisor(x, monoid));
        else
          opts.divisors.push_back(io::parse_divisor(d, monoid));
      }
      if (!iso_path.empty()) {
        opts.cover = true;
        opts.cover_target = io::parse_ring(io::load_file(iso_path));
        opts.cover_target_name = std::filesystem::path(iso_path).stem().string();
      }
      if (stable) opts.stable_search = std::make_pair(std::size_t{4}, std::int64_t{6});
      emit(io::analyze(spec, opts), json);
      return 0;
    }
    if (*findim) {
      io::FindimOptions opts;
      opts.smash = smash;
      opts.cutoff = cutoff;
      opts.timing = timing;
      if (!zeta.empty()) opts.skew = Json(zeta);
      Json report = io::findim(io::load_file(alg_path), opts);
      emit(report, json);
      return report["valid"].get<bool>() ? 0 : 1;
    }
    if (list) {
      for (const auto& ex : io::examples()) std::cout << ex.name << '\n';
      return 0;
    }
    if (!write_dir.empty()) {
      io::write_goldens(fixture_dir, write_dir);
      return 0;
    }
    if (golden_dir.empty()) golden_dir = (std::filesystem::path(fixture_dir) / "golden").string();
    auto res = io::run_suite(fixture_dir, golden_dir);
    emit(res.report, json);
    for (const auto& d : res.diffs) std::cerr << "mismatch " << d << '\n';
    return res.ok() ? 0 : 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return io::exit_code(e.kind());
  }
}
