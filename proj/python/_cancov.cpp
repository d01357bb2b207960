#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cancov/abelian_group.hpp"
#include "cancov/errors.hpp"
#include "cancov/io.hpp"
#include "cancov/parallel.hpp"

namespace py = pybind11;
using namespace cancov;
using io::Json;

namespace {

std::string analyze(const std::string& ring, bool cover, const std::vector<std::string>& divisors,
                    std::optional<std::int64_t> box) {
  Json spec = io::parse_text(ring);
  auto monoid = io::parse_ring(spec);
  io::AnalyzeOptions opts;
  opts.cover = cover;
  opts.box = box;
  for (const auto& d : divisors) opts.divisors.push_back(io::parse_divisor(io::parse_text(d), monoid));
  return io::analyze(spec, opts).dump();
}

std::string findim(const std::string& algebra, bool smash, std::optional<std::string> skew, std::int64_t cutoff) {
  io::FindimOptions opts;
  opts.smash = smash;
  opts.cutoff = cutoff;
  if (skew) opts.skew = Json(*skew);
  return io::findim(io::parse_text(algebra), opts).dump();
}

std::vector<std::string> invariant_factors(const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<Point> pts(rows.begin(), rows.end());
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  auto s = smith_normal_form(IntMatrix::from_points(pts, cols));
  auto d = s.diagonal();
  d.resize(s.rank);
  std::vector<std::string> out;
  for (const auto& x : d) out.push_back(x.get_str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_cancov, m) {
  m.doc() = "Canonical covers of toric rings and Gabriel covers of graded algebras";
  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object kind = py::str(std::string(to_string(e.kind())));
      PyErr_SetObject(error.ptr(), py::make_tuple(kind, e.what()).ptr());
    }
  });
  m.def("analyze", &analyze, py::arg("ring"), py::arg("cover") = false,
        py::arg("divisors") = std::vector<std::string>{}, py::arg("box") = py::none());
  m.def("findim", &findim, py::arg("algebra"), py::arg("smash") = false, py::arg("skew") = py::none(),
        py::arg("cutoff") = 12);
  m.def("invariant_factors", &invariant_factors, py::arg("rows"));
  m.def("set_threads", [](std::size_t k) { set_thread_count(k); }, py::arg("k"));
  m.def("examples", [] {
    std::vector<std::string> out;
    for (const auto& e : io::examples()) out.push_back(e.name);
    return out;
  });
}
