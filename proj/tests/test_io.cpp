#include <doctest.h>

#include "cancov/errors.hpp"
#include "cancov/io.hpp"
#include "fixtures.hpp"

using namespace cancov;
using io::Json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("ring specs") {
  auto q = io::parse_ring(io::parse_text(R"({"lattice_rank": 3, "facet_normals": [[1,0,0],[0,1,0],[-1,0,1],[0,-1,1]]})"));
  CHECK(q.same_as(fixtures::quadric()));
  auto v = io::parse_ring(io::parse_text(
      R"({"lattice_rank": 3, "facet_normals": [[1,0,0],[0,1,0],[0,0,1]], "congruence": {"weights": [1,1,1], "modulus": 6}})"));
  CHECK(v.class_group().group.describe() == "Z_6");
  auto t = io::parse_ring(io::parse_text(R"({"lattice_rank": 2, "rays": [[1,0],[1,3]]})"));
  CHECK(t.class_group().group.describe() == "Z_3");

  // Internal presentation round trip.
  auto back = io::parse_ring(io::ring_to_json(v));
  CHECK(back.rank() == 3);
  CHECK(back.class_group().group.describe() == "Z_6");
  CHECK(back.hilbert_basis().size() == v.hilbert_basis().size());

  for (const char* text : {R"({"rays": [[1,0]]})", R"({"lattice_rank": 2})",
                           R"({"lattice_rank": 2, "rays": [[1,0],[0,1]], "facet_normals": [[1,0],[0,1]]})",
                           R"({"lattice_rank": 2, "rays": [[1,0],[0,1,2]]})",
                           R"({"lattice_rank": 2, "rays": [[1,0],[0.5,1]]})",
                           R"({"lattice_rank": 2, "rays": [[1,0],[0,1]], "congruence": {"weights": [1], "modulus": 2}})",
                           R"({"lattice_rank": 2, "rays": [[1,0],[0,1]], "congruence": {"weights": [1,1], "modulus": 0}})"})
    CHECK(kind_of([&] { io::parse_ring(io::parse_text(text)); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_text("{"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::load_file("/nonexistent/ring.json"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_ring(io::parse_text(R"({"lattice_rank": 2, "rays": [[1,0],[-1,0],[0,1]]})")); }) ==
        ErrorKind::NotPointed);
}

TEST_CASE("divisor and module class specs") {
  auto q = fixtures::quadric();
  auto D = io::parse_divisor(io::parse_text(R"({"coeffs": [1, 0, -2, 0]})"), q);
  CHECK(D.coeffs == std::vector<std::int64_t>{1, 0, -2, 0});
  CHECK(io::divisor_to_json(D) == io::parse_text(R"({"coeffs": [1, 0, -2, 0]})"));
  CHECK(kind_of([&] { io::parse_divisor(io::parse_text(R"({"coeffs": [1, 0]})"), q); }) == ErrorKind::ParseError);
  auto M = io::parse_module_class(io::parse_text(R"({"summands": [{"coeffs": [0,0,0,0]}, {"coeffs": [1,0,0,0]}]})"), q);
  CHECK(M.rank() == 2);
  CHECK(q.class_group().group.format(det_class(M)) == "1");
  CHECK(kind_of([&] { io::parse_module_class(io::parse_text(R"({"summands": []})"), q); }) == ErrorKind::ParseError);
}

TEST_CASE("algebra specs") {
  for (const auto& A : {fixtures::char2(), fixtures::qx3(), fixtures::mat2(), fixtures::f5x4(), fixtures::upper2()}) {
    auto B = io::parse_algebra(io::algebra_to_json(A));
    CHECK(B.mult == A.mult);
    CHECK(B.unit == A.unit);
    CHECK(B.degrees == A.degrees);
    CHECK(B.field == A.field);
  }
  CHECK(io::parse_scalar(Json("1/2"), Field::prime(5)) == 3);
  CHECK(io::parse_scalar(Json(-1), Field::prime(5)) == 4);
  CHECK(io::parse_scalar(Json("-2/4"), Field::rationals()) == Scalar(-1, 2));
  CHECK(io::scalar_to_json(Scalar(-1, 2)) == Json("-1/2"));
  CHECK(io::scalar_to_json(Scalar(7)) == Json(7));
  CHECK(kind_of([] { io::parse_scalar(Json("x"), Field::rationals()); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_scalar(Json("1/0"), Field::rationals()); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::parse_scalar(Json("1/5"), Field::prime(5)); }) == ErrorKind::NoInverse);

  auto spec = io::algebra_to_json(fixtures::char2());
  spec["mult"][1][1] = Json::array({1});
  CHECK(kind_of([&] { io::parse_algebra(spec); }) == ErrorKind::ParseError);

  // A non-associative table is reported, not thrown.
  auto bad = io::algebra_to_json(fixtures::qx3());
  bad["mult"][1][2] = Json::array({1, 0, 0});
  auto rep = io::findim(bad, {});
  CHECK(rep["valid"] == false);
  CHECK(rep["violation"]["kind"] == "associativity");
}

TEST_CASE("reports") {
  io::AnalyzeOptions opts;
  opts.cover = true;
  auto v = io::analyze(io::ring_to_json(fixtures::veronese(6)), opts);
  CHECK(v["class_group"] == "Z_6");
  CHECK(v["canonical_order"] == 2);
  CHECK(v["index"] == 2);
  CHECK(v["gm_exists"] == true);
  CHECK(v["cover"]["strongly_graded"] == true);
  CHECK(v["cover"]["gorenstein"] == true);
  CHECK_FALSE(v.contains("timing_ms"));

  auto f = io::analyze(io::ring_to_json(fixtures::francia()), {});
  CHECK(f["q_gorenstein"] == false);
  CHECK(f["canonical_order"] == "infinite");
  CHECK(f["index"].is_null());
  CHECK(f["gm_exists"] == false);
  CHECK(kind_of([] {
          io::AnalyzeOptions o;
          o.cover = true;
          io::analyze(io::ring_to_json(fixtures::francia()), o);
        }) == ErrorKind::NotQGorenstein);

  auto d = io::depth_report(fixtures::quadric(), WeilDivisor::unit(4, 0).scaled(2));
  CHECK(d["depth"] == 2);
  CHECK(d["cm"] == false);
  CHECK(d["witness_chamber"]["betti"][2] != 0);

  io::FindimOptions fo;
  fo.smash = true;
  auto c = io::findim(io::algebra_to_json(fixtures::char2()), fo);
  CHECK(c["gl_dim"] == "infinite");
  CHECK(c["smash_gl_dim"] == 0);
  CHECK(c["strict"].size() == 1);
  auto m = io::findim(io::algebra_to_json(fixtures::mat2()), {});
  CHECK(m["gl_dim"] == 0);
  fo.skew = Json("-1");
  auto q = io::findim(io::algebra_to_json(fixtures::qx2()), fo);
  CHECK(q["gl_eq"] == true);
  CHECK(q["skew"]["isomorphism"] == true);
}

TEST_CASE("diff and rendering") {
  auto a = io::parse_text(R"({"x": 1, "y": [1, 2], "z": {"w": "s"}})");
  CHECK(io::json_diff(a, a).empty());
  auto b = a;
  b["y"][1] = 3;
  b["z"].erase("w");
  b["extra"] = true;
  auto d = io::json_diff(a, b);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == "/y/1: expected 2, got 3");
  CHECK(d[1] == "/z/w: missing");
  CHECK(d[2] == "/extra: unexpected true");
  CHECK(io::json_diff(io::parse_text("5"), Json(std::int64_t{5})).empty());
  CHECK(io::render(a) == "x: 1\ny: [1,2]\nz:\n  w: s\n");
}

TEST_CASE("exit codes") {
  CHECK(io::exit_code(ErrorKind::ParseError) == 1);
  CHECK(io::exit_code(ErrorKind::NotQGorenstein) == 1);
  CHECK(io::exit_code(ErrorKind::BudgetExceeded) == 2);
  CHECK(io::exit_code(ErrorKind::Inconsistent) == 3);
}

TEST_CASE("examples list") {
  auto ex = io::examples();
  std::vector<std::string> names;
  for (const auto& e : ex) names.push_back(e.name);
  for (const char* n : {"quadric", "veronese6", "one_third", "francia", "char2", "qx2"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
}
