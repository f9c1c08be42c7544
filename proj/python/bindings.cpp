#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdist/cayley.hpp"
#include "gdist/config.hpp"
#include "gdist/errors.hpp"
#include "gdist/experiments.hpp"
#include "gdist/surfaces.hpp"
#include "gdist/zoo.hpp"

namespace py = pybind11;
using namespace gdist;

namespace {

BallOptions ball_options(std::size_t max_elements, unsigned threads) {
  return BallOptions{.max_elements = max_elements, .threads = threads};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Cayley-graph computations: balls, distortion, combings, surface arithmetic.";

  static py::exception<Error> error(m, "GdistError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  m.def("zoo_names", &zoo_names);
  m.def(
      "word_length",
      [](const std::string& group, const std::string& word, std::size_t cap) {
        MarkedGroup g = resolve_group(group);
        return word_length_of(g.element(word), g, cap);
      },
      py::arg("group"), py::arg("word"), py::arg("cap") = 64);
  m.def(
      "geodesic",
      [](const std::string& group, const std::string& word, std::size_t cap) {
        MarkedGroup g = resolve_group(group);
        return g.format(geodesic_shortlex(g.element(word), g, cap));
      },
      py::arg("group"), py::arg("word"), py::arg("cap") = 64);
  m.def(
      "growth_series",
      [](const std::string& group, std::size_t radius, std::size_t max_elements, unsigned threads) {
        return growth_series(resolve_group(group), radius, ball_options(max_elements, threads));
      },
      py::arg("group"), py::arg("radius"), py::arg("max_elements") = 10'000'000, py::arg("threads") = 1);

  m.def("euler_characteristic", [](const std::string& s) { return euler_characteristic(SurfaceSig::parse(s)); });
  m.def("orientation_double_cover",
        [](const std::string& s) { return orientation_double_cover(SurfaceSig::parse(s)).to_string(); });
  m.def("exceptional_case", [](const std::string& s) { return to_string(exceptional_case(SurfaceSig::parse(s))); });

  m.def(
      "ball_report",
      [](const std::string& group, std::size_t radius, std::size_t max_elements, unsigned threads) {
        return run_ball(resolve_group(group), radius, ball_options(max_elements, threads)).to_json();
      },
      py::arg("group"), py::arg("radius"), py::arg("max_elements") = 10'000'000, py::arg("threads") = 1);
  m.def(
      "klein_check_report",
      [](std::size_t radius, unsigned threads) { return run_klein_check(radius, ball_options(10'000'000, threads)).to_json(); },
      py::arg("radius") = 8, py::arg("threads") = 1);
  m.def(
      "distortion_report",
      [](const std::string& group, const std::string& subgroup, std::size_t n_max, const std::string& expect,
         std::optional<bool> expect_undistorted, unsigned threads) {
        DistortionRun run{"custom", group, subgroup, n_max, expect, expect_undistorted};
        return run_distortion(run, ball_options(10'000'000, threads)).to_json();
      },
      py::arg("group"), py::arg("subgroup"), py::arg("n_max"), py::arg("expect") = "",
      py::arg("expect_undistorted") = py::none(), py::arg("threads") = 1);
  m.def(
      "combing_report",
      [](const std::string& group, std::size_t radius, std::vector<std::string> elements, std::size_t triples,
         unsigned threads) {
        CombingConfig c{group, radius, std::move(elements), triples, 1};
        return run_combing_report(c, ball_options(10'000'000, threads)).to_json();
      },
      py::arg("group"), py::arg("radius") = 6, py::arg("elements") = std::vector<std::string>{},
      py::arg("triples") = 1000, py::arg("threads") = 1);
  m.def(
      "centralizer_report",
      [](const std::string& group, const std::string& element, std::size_t radius, unsigned threads) {
        return run_centralizer(resolve_group(group), element, radius, ball_options(10'000'000, threads)).to_json();
      },
      py::arg("group"), py::arg("element"), py::arg("radius") = 6, py::arg("threads") = 1);
  m.def(
      "cover_table_report", [](std::size_t max_complexity) { return run_cover_table(max_complexity).to_json(); },
      py::arg("max_complexity") = 20);
  m.def(
      "verify_hom_report",
      [](const std::string& lift_json) { return run_iota_verification(parse_lift_data(lift_json)).to_json(); },
      py::arg("lift_json"));
}
