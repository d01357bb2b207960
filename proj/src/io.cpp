#include "cancov/io.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "cancov/canonical_cover.hpp"
#include "cancov/depth_engine.hpp"
#include "cancov/errors.hpp"
#include "cancov/gabriel_cover.hpp"

namespace cancov::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> as_ints(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  std::vector<std::int64_t> out;
  for (const auto& x : j) out.push_back(as_int(x, what + " entry"));
  return out;
}

std::vector<Point> as_points(const Json& j, std::size_t d, const std::string& what) {
  if (!j.is_array() || j.empty()) bad(what + " must be a nonempty array");
  std::vector<Point> out;
  for (const auto& row : j) {
    auto p = as_ints(row, what);
    if (p.size() != d) bad(what + " entries must have lattice_rank coordinates");
    out.push_back(std::move(p));
  }
  return out;
}

Json to_json(const Point& p) { return Json(std::vector<std::int64_t>(p.begin(), p.end())); }

Json strings(const std::vector<GroupElement>& xs, const FgAbelianGroup& G) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(G.format(x));
  return out;
}

Json opt_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

class Stopwatch {
public:
  explicit Stopwatch(Json* sink) : sink_(sink) {}
  template <class F>
  auto time(const char* key, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    if (sink_) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      (*sink_)[key] = static_cast<std::int64_t>(ms);
    }
    return r;
  }

private:
  Json* sink_;
};

std::int64_t strong_grading_box(const GradedCover& cover) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < cover.index(); ++i) r = std::max(r, generator_radius(cover.base(), cover.piece(i)));
  return r;
}

}  // namespace

Json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

AffineMonoid parse_ring(const Json& j) {
  auto d = as_int(field(j, "lattice_rank"), "lattice_rank");
  if (d < 1) bad("lattice_rank must be positive");
  const bool has_rays = j.contains("rays");
  const bool has_facets = j.contains("facet_normals");
  if (has_rays == has_facets) bad("exactly one of \"rays\" and \"facet_normals\" is required");
  std::optional<Congruence> cong;
  if (j.contains("congruence")) {
    const auto& c = j.at("congruence");
    Congruence k;
    k.weights = as_ints(field(c, "weights"), "congruence weights");
    k.modulus = as_int(field(c, "modulus"), "congruence modulus");
    if (k.weights.size() != static_cast<std::size_t>(d)) bad("congruence weights must have lattice_rank entries");
    if (k.modulus < 1) bad("congruence modulus must be positive");
    cong = k;
  }
  auto ud = static_cast<std::size_t>(d);
  if (has_rays) return AffineMonoid::from_rays(as_points(j.at("rays"), ud, "rays"), cong);
  return AffineMonoid::from_facets(as_points(j.at("facet_normals"), ud, "facet_normals"), cong);
}

Json ring_to_json(const AffineMonoid& monoid) {
  Json out;
  out["lattice_rank"] = monoid.rank();
  Json normals = Json::array();
  for (const auto& v : monoid.facet_normals()) normals.push_back(to_json(v));
  out["facet_normals"] = normals;
  return out;
}

WeilDivisor parse_divisor(const Json& j, const AffineMonoid& monoid) {
  WeilDivisor D{as_ints(field(j, "coeffs"), "coeffs")};
  if (D.size() != monoid.num_facets())
    bad("divisor has " + std::to_string(D.size()) + " coefficients, ring has " +
        std::to_string(monoid.num_facets()) + " facets");
  return D;
}

Json divisor_to_json(const WeilDivisor& D) { return Json{{"coeffs", D.coeffs}}; }

ModuleClass parse_module_class(const Json& j, const AffineMonoid& monoid) {
  const auto& s = field(j, "summands");
  if (!s.is_array() || s.empty()) bad("summands must be a nonempty array");
  ModuleClass M{monoid, {}};
  for (const auto& x : s) M.summands.push_back(parse_divisor(x, monoid));
  return M;
}

Scalar parse_scalar(const Json& j, const Field& F) {
  Scalar x;
  if (j.is_number_integer()) {
    x = Scalar(Integer(std::to_string(j.get<std::int64_t>())));
  } else if (j.is_string()) {
    try {
      x = Scalar(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      bad("invalid scalar \"" + j.get<std::string>() + "\"");
    }
    if (x.get_den() == 0) bad("zero denominator");
    x.canonicalize();
  } else {
    bad("scalars must be integers or strings");
  }
  if (!F.is_rational() && x.get_den() != 1) x = F.mul(Scalar(x.get_num()), F.inv(F.normalize(Scalar(x.get_den()))));
  return F.normalize(x);
}

Json scalar_to_json(const Scalar& x) {
  if (x.get_den() == 1 && x.get_num().fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_num().get_si()));
  return Json(x.get_str());
}

FinDimGradedAlgebra parse_algebra(const Json& j) {
  auto p = as_int(field(field(j, "field"), "char"), "field char");
  Field F = p == 0 ? Field::rationals() : Field::prime(p);
  auto n = as_int(field(j, "modulus"), "modulus");
  if (n < 1) bad("modulus must be positive");
  const auto& basis = field(j, "basis");
  if (!basis.is_array() || basis.empty()) bad("basis must be a nonempty array");
  const std::size_t d = basis.size();
  auto A = FinDimGradedAlgebra::blank(F, d, n);
  for (std::size_t i = 0; i < d; ++i) {
    if (!basis[i].is_string()) bad("basis labels must be strings");
    A.labels[i] = basis[i].get<std::string>();
  }
  auto degs = as_ints(field(j, "degrees"), "degrees");
  if (degs.size() != d) bad("degrees must have one entry per basis element");
  for (std::size_t i = 0; i < d; ++i) A.degrees[i] = mod_floor(degs[i], n);
  const auto& unit = field(j, "unit");
  if (!unit.is_array() || unit.size() != d) bad("unit must have one entry per basis element");
  for (std::size_t i = 0; i < d; ++i) A.unit[i] = parse_scalar(unit[i], F);
  const auto& mult = field(j, "mult");
  if (!mult.is_array() || mult.size() != d) bad("mult must be a d x d x d tensor");
  for (std::size_t a = 0; a < d; ++a) {
    if (!mult[a].is_array() || mult[a].size() != d) bad("mult must be a d x d x d tensor");
    for (std::size_t b = 0; b < d; ++b) {
      const auto& v = mult[a][b];
      if (!v.is_array() || v.size() != d) bad("mult must be a d x d x d tensor");
      for (std::size_t c = 0; c < d; ++c) A.c(a, b, c) = parse_scalar(v[c], F);
    }
  }
  return A;
}

Json algebra_to_json(const FinDimGradedAlgebra& A) {
  Json out;
  out["field"] = {{"char", A.field.characteristic()}};
  out["modulus"] = A.modulus;
  out["basis"] = A.labels;
  out["degrees"] = A.degrees;
  Json unit = Json::array();
  for (const auto& x : A.unit) unit.push_back(scalar_to_json(x));
  out["unit"] = unit;
  Json mult = Json::array();
  for (std::size_t a = 0; a < A.dim(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < A.dim(); ++b) {
      Json v = Json::array();
      for (std::size_t c = 0; c < A.dim(); ++c) v.push_back(scalar_to_json(A.c(a, b, c)));
      row.push_back(v);
    }
    mult.push_back(row);
  }
  out["mult"] = mult;
  return out;
}

Json homdim_to_json(const HomDim& h) {
  if (h.is_finite()) return h.value;
  return h.str();
}

Json depth_report(const AffineMonoid& monoid, const WeilDivisor& D) {
  auto r = depth(monoid, D);
  Json out;
  out["divisor"] = D.coeffs;
  out["depth"] = r.depth;
  out["cm"] = r.cm;
  if (r.witness) {
    Json w;
    w["signs"] = r.witness->signs;
    if (r.witness->lattice_witness)
      w["degree"] = to_json(monoid.to_ambient(*r.witness->lattice_witness));
    w["betti"] = r.witness_betti;
    out["witness_chamber"] = w;
  } else {
    out["witness_chamber"] = nullptr;
  }
  out["chambers"] = r.chambers_total;
  out["torsion_free"] = r.torsion_free;
  return out;
}

Json cover_report(const AffineMonoid& monoid, const AnalyzeOptions& opts) {
  auto cover = build_cover(monoid);
  Json out;
  out["index"] = cover.index();
  out["m_q"] = to_json(monoid.to_ambient(cover.m_q()));
  auto g = is_gorenstein_cover(cover);
  out["gorenstein"] = g.combinatorial;
  out["pieces_cm"] = g.all_pieces_cm;
  out["gorenstein_verdicts_agree"] = g.agree();
  out["strongly_graded"] = check_strong_grading(cover, opts.box.value_or(strong_grading_box(cover)));
  auto coc = check_cocycle(cover);
  out["cocycle"] = coc.ok;
  auto cm = cover_as_monoid(cover);
  out["cover_monoid"] = ring_to_json(cm.monoid);
  out["cover_monoid_consistent"] = check_cover_monoid(cover, cm, 3).ok();
  out["cover_hilbert_basis_size"] = cm.monoid.hilbert_basis().size();
  if (opts.cover_target) {
    out["cover_isomorphic"] = {{"target", opts.cover_target_name},
                               {"found", find_monoid_isomorphism(cm.monoid, *opts.cover_target).has_value()}};
  }
  return out;
}

Json analyze(const Json& ring_spec, const AnalyzeOptions& opts) {
  Json timing = Json::object();
  Stopwatch sw(opts.timing ? &timing : nullptr);
  auto monoid = sw.time("parse", [&] { return parse_ring(ring_spec); });
  const auto& G = monoid.class_group().group;
  Json out;
  out["ring"] = ring_spec;
  out["rank"] = monoid.rank();
  out["facets"] = monoid.num_facets();
  out["hilbert_basis_size"] = sw.time("hilbert_basis", [&] { return monoid.hilbert_basis().size(); });
  out["class_group"] = G.describe();
  auto K = canonical_divisor(monoid);
  auto k = monoid.class_group().of(K);
  out["canonical_class"] = G.format(k);
  auto order = G.order(k);
  out["canonical_order"] = order ? Json(order->get_si()) : Json("infinite");
  auto qg = is_q_gorenstein(monoid);
  out["q_gorenstein"] = qg.flag;
  out["index"] = qg.index ? Json(*qg.index) : Json(nullptr);
  auto gm = sw.time("gm_exists", [&] { return gm_exists(monoid); });
  out["gm_exists"] = gm.exists;
  out["gm_witness"] = gm.witness ? strings(class_multiset(*gm.witness), G) : Json(nullptr);
  if (opts.stable_search) {
    auto s = sw.time("stable_search", [&] {
      return search_stable_class_sets(monoid, opts.stable_search->first, opts.stable_search->second);
    });
    out["stable_class_sets"] = {{"max_size", opts.stable_search->first},
                                {"window", opts.stable_search->second},
                                {"sets_checked", s.sets_checked},
                                {"found", s.stable ? strings(*s.stable, G) : Json(nullptr)}};
  }
  if (opts.cover) out["cover"] = sw.time("cover", [&] { return cover_report(monoid, opts); });
  if (!opts.divisors.empty()) {
    Json ds = Json::array();
    sw.time("depth", [&] {
      for (const auto& D : opts.divisors) ds.push_back(depth_report(monoid, D));
      return 0;
    });
    out["depth"] = ds;
  }
  if (opts.timing) out["timing_ms"] = timing;
  return out;
}

Json findim(const Json& algebra_spec, const FindimOptions& opts) {
  Json timing = Json::object();
  Stopwatch sw(opts.timing ? &timing : nullptr);
  auto A = parse_algebra(algebra_spec);
  Json out;
  out["algebra"] = {{"field", A.field.name()}, {"modulus", A.modulus}, {"dim", A.dim()}};
  auto v = validate(A);
  out["valid"] = v.ok;
  if (!v.ok) {
    out["violation"] = {{"kind", v.kind}, {"witness", v.witness}, {"message", v.message}};
    return out;
  }
  auto certificate = [](const HomDim& h) -> Json {
    if (!h.certificate) return nullptr;
    return {{"syzygy", h.certificate->j}, {"isomorphic_to", h.certificate->i}, {"dim", h.certificate->second.dim}};
  };
  if (opts.smash) {
    auto t = sw.time("transfer", [&] { return verify_homological_transfer(A, opts.cutoff); });
    out["gl_dim"] = homdim_to_json(t.gl_A);
    out["gl_dim_certificate"] = certificate(t.gl_A);
    out["inj_dim"] = homdim_to_json(t.inj_A);
    out["smash_dim"] = A.dim() * static_cast<std::size_t>(A.modulus);
    out["smash_gl_dim"] = homdim_to_json(t.gl_smash);
    out["smash_inj_dim"] = homdim_to_json(t.inj_smash);
    out["char_divides_n"] = t.char_divides;
    out["gl_le"] = opt_bool(t.gl_le);
    out["inj_le"] = opt_bool(t.inj_le);
    out["gl_eq"] = opt_bool(t.gl_eq);
    out["inj_eq"] = opt_bool(t.inj_eq);
    out["strict"] = t.strict;
    out["transfer_holds"] = t.holds();
    auto e = sw.time("graded_end", [&] { return graded_end(A); });
    out["graded_end"] = {{"end_dim", e.end_dim},       {"smash_dim", e.smash_dim},
                         {"image_in_end", e.image_in_end}, {"injective", e.injective},
                         {"multiplicative", e.multiplicative}, {"agree", e.agree()}};
  } else {
    auto gl = sw.time("gl_dim", [&] { return gl_dim(A, opts.cutoff); });
    out["gl_dim"] = homdim_to_json(gl);
    out["gl_dim_certificate"] = certificate(gl);
    out["inj_dim"] = homdim_to_json(sw.time("inj_dim", [&] { return inj_dim_self(A, opts.cutoff); }));
  }
  if (opts.skew) {
    Scalar zeta = parse_scalar(*opts.skew, A.field);
    auto s = sw.time("skew", [&] { return skew_group_ring(A, zeta); });
    out["skew"] = {{"zeta", scalar_to_json(zeta)},
                   {"vandermonde_det", scalar_to_json(s.vandermonde_det)},
                   {"multiplicative", s.multiplicative},
                   {"bijective", s.bijective},
                   {"isomorphism", s.isomorphism()}};
  }
  if (opts.timing) out["timing_ms"] = timing;
  return out;
}

std::vector<Example> examples() {
  std::vector<Example> out;
  auto ring = [&](std::string name, std::string origin, std::string file) -> Example& {
    Example e;
    e.name = std::move(name);
    e.origin = std::move(origin);
    e.kind = "ring";
    e.file = std::move(file);
    e.analyze.cover = true;
    out.push_back(std::move(e));
    return out.back();
  };
  auto alg = [&](std::string name, std::string origin, std::string file) -> Example& {
    Example e;
    e.name = std::move(name);
    e.origin = std::move(origin);
    e.kind = "algebra";
    e.file = std::move(file);
    out.push_back(std::move(e));
    return out.back();
  };
  ring("quadric", "named", "rings/quadric.json").depth_files = {
      "divisors/zero4.json", "divisors/quadric_d1.json", "divisors/quadric_minus_d1.json",
      "divisors/quadric_2d1.json", "divisors/quadric_minus_2d1.json"};
  auto& v6 = ring("veronese6", "named", "rings/veronese6.json");
  v6.cover_target_file = "rings/veronese3.json";
  v6.depth_files = {"divisors/zero3.json"};
  ring("veronese3", "derived", "rings/veronese3.json").depth_files = {"divisors/zero3.json"};
  ring("one_third", "named", "rings/one_third.json").depth_files = {"divisors/zero2.json"};
  auto& fr = ring("francia", "named", "rings/francia.json");
  fr.analyze.cover = false;
  fr.analyze.stable_search = std::make_pair(std::size_t{4}, std::int64_t{6});
  fr.depth_files = {"divisors/zero4.json"};
  alg("char2", "named", "algebras/char2.json").findim.smash = true;
  auto& q = alg("qx2", "named", "algebras/qx2.json");
  q.findim.smash = true;
  q.findim.skew = Json(-1);
  alg("mat2", "derived", "algebras/mat2.json");
  auto& u = alg("upper2", "derived", "algebras/upper2.json");
  u.findim.smash = true;
  u.findim.skew = Json(1);
  alg("qx3", "derived", "algebras/qx3.json").findim.smash = true;
  auto& f = alg("f5x4", "derived", "algebras/f5x4.json");
  f.findim.smash = true;
  f.findim.skew = Json(2);
  return out;
}

Json run_example(const Example& ex, const std::filesystem::path& fixture_dir) {
  Json spec = load_file(fixture_dir / ex.file);
  if (ex.kind == "algebra") return findim(spec, ex.findim);
  AnalyzeOptions opts = ex.analyze;
  auto monoid = parse_ring(spec);
  for (const auto& f : ex.depth_files) opts.divisors.push_back(parse_divisor(load_file(fixture_dir / f), monoid));
  if (!ex.cover_target_file.empty()) {
    opts.cover_target = parse_ring(load_file(fixture_dir / ex.cover_target_file));
    opts.cover_target_name = std::filesystem::path(ex.cover_target_file).stem().string();
  }
  return analyze(spec, opts);
}

SuiteResult run_suite(const std::filesystem::path& fixture_dir, const std::filesystem::path& golden_dir) {
  SuiteResult res;
  Json list = Json::array();
  std::size_t passed = 0;
  for (const auto& ex : examples()) {
    Json entry;
    entry["name"] = ex.name;
    entry["origin"] = ex.origin;
    Json report = run_example(ex, fixture_dir);
    std::vector<std::string> diffs;
    auto golden_path = golden_dir / (ex.name + ".json");
    if (!std::filesystem::exists(golden_path)) {
      diffs.push_back(ex.name + ": missing golden " + golden_path.string());
    } else {
      Json golden = load_file(golden_path);
      if (!golden.contains("report")) diffs.push_back(ex.name + ": golden has no \"report\" field");
      else
        for (auto& d : json_diff(golden["report"], report)) diffs.push_back(ex.name + ": " + d);
    }
    entry["status"] = diffs.empty() ? "pass" : "fail";
    if (!diffs.empty()) entry["diff"] = diffs;
    entry["report"] = report;
    passed += diffs.empty();
    res.diffs.insert(res.diffs.end(), diffs.begin(), diffs.end());
    list.push_back(entry);
  }
  res.report["examples"] = list;
  res.report["passed"] = passed;
  res.report["failed"] = list.size() - passed;
  return res;
}

void write_goldens(const std::filesystem::path& fixture_dir, const std::filesystem::path& golden_dir) {
  std::filesystem::create_directories(golden_dir);
  for (const auto& ex : examples()) {
    Json g;
    g["name"] = ex.name;
    g["origin"] = ex.origin;
    g["report"] = run_example(ex, fixture_dir);
    std::ofstream(golden_dir / (ex.name + ".json")) << g.dump(2) << '\n';
  }
}

std::vector<std::string> json_diff(const Json& a, const Json& b, const std::string& path) {
  std::vector<std::string> out;
  const std::string here = path.empty() ? "/" : path;
  if (a.type() != b.type() && !(a.is_number() && b.is_number())) {
    out.push_back(here + ": expected " + a.dump() + ", got " + b.dump());
  } else if (a.is_object()) {
    for (const auto& [k, v] : a.items()) {
      if (!b.contains(k)) out.push_back(path + "/" + k + ": missing");
      else
        for (auto& d : json_diff(v, b.at(k), path + "/" + k)) out.push_back(d);
    }
    for (const auto& [k, v] : b.items())
      if (!a.contains(k)) out.push_back(path + "/" + k + ": unexpected " + v.dump());
  } else if (a.is_array()) {
    if (a.size() != b.size()) {
      out.push_back(here + ": expected " + a.dump() + ", got " + b.dump());
    } else {
      for (std::size_t i = 0; i < a.size(); ++i)
        for (auto& d : json_diff(a[i], b[i], path + "/" + std::to_string(i))) out.push_back(d);
    }
  } else if (a != b) {
    out.push_back(here + ": expected " + a.dump() + ", got " + b.dump());
  }
  return out;
}

namespace {

bool is_flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  return std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive() || (x.is_array() && is_flat(x)); });
}

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render_into(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_flat(v)) {
        os << pad << k << ": " << scalar(v) << '\n';
      } else {
        os << pad << k << ":\n";
        render_into(os, v, indent + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (is_flat(x)) {
        os << pad << "- " << scalar(x) << '\n';
      } else {
        os << pad << "-\n";
        render_into(os, x, indent + 1);
      }
    }
  } else {
    os << pad << scalar(j) << '\n';
  }
}

}  // namespace

std::string render(const Json& report) {
  std::ostringstream os;
  render_into(os, report, 0);
  return os.str();
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::BoxTooSmall:
    case ErrorKind::Overflow:
      return 2;
    case ErrorKind::Inconsistent:
      return 3;
    default:
      return 1;
  }
}

}  // namespace cancov::io
