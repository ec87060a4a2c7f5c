#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stardecomp/conditions.hpp"
#include "stardecomp/decompose.hpp"
#include "stardecomp/error.hpp"
#include "stardecomp/experiments.hpp"
#include "stardecomp/graph.hpp"
#include "stardecomp/numerics.hpp"

namespace py = pybind11;
using namespace stardecomp;

namespace {

std::vector<std::pair<int, int>> edge_pairs(const SimpleGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

SimpleGraph make_graph(int N, int d, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> es;
  for (const auto& [u, v] : edges) es.push_back({std::min(u, v), std::max(u, v)});
  return SimpleGraph(N, d, std::move(es));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "k-star decompositions of random regular graphs";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<FeasibilityError>(m, "FeasibilityError", base.ptr());
  py::register_exception<RegimeError>(m, "RegimeError", base.ptr());
  py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
  py::register_exception<DivisibilityError>(m, "DivisibilityError", base.ptr());
  py::register_exception<ProfileError>(m, "ProfileError", base.ptr());
  py::register_exception<RegularityError>(m, "RegularityError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());

  m.def("entropy_H", &entropy_H, py::arg("x"));
  m.def("rate_F", [](double x, double t) { return rate_F({x, t}); }, py::arg("x"), py::arg("t"));
  m.def("rate_Fd", [](double x, double t, int d) { return rate_Fd({x, t}, d); }, py::arg("x"), py::arg("t"),
        py::arg("d"));
  m.def("log_P_Mr", [](std::int64_t N, std::int64_t d, std::int64_t M, std::int64_t r) {
    return log_P_Mr({N, d, M, r});
  }, py::arg("N"), py::arg("d"), py::arg("M"), py::arg("inside"));

  py::class_<StrongResult>(m, "StrongResult")
      .def_readonly("holds", &StrongResult::holds)
      .def_readonly("margin", &StrongResult::margin)
      .def_readonly("high_precision", &StrongResult::high_precision);
  m.def("strong_condition", [](int d, int k) { return strong_condition(star_params(d, k)); }, py::arg("d"),
        py::arg("k"));
  m.def("k_sc", [](int d) { return k_sc(d).k_sc; }, py::arg("d"));
  m.def("k_sc_table", [](const std::vector<int>& degrees, unsigned threads) {
    std::vector<int> out;
    for (const ThresholdRow& row : k_sc_table(degrees, threads)) out.push_back(row.k_sc);
    return out;
  }, py::arg("degrees"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("gamma_beta", &gamma_beta, py::arg("beta"));
  m.def("C0", &C0);
  m.def("scan_quarter_case", [](int grid) {
    const QuarterScan s = scan_quarter_case(grid);
    return py::make_tuple(s.max_value, s.argmax, s.verdict);
  }, py::arg("grid") = 10000);
  m.def("weak_certificate_json", [](int d, int k, double grid_step, bool curves) {
    return to_json(weak_certificate(star_params(d, k), grid_step), curves);
  }, py::arg("d"), py::arg("k"), py::arg("grid_step") = 1e-4, py::arg("curves") = false);

  py::class_<SimpleGraph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("N"), py::arg("d"), py::arg("edges"))
      .def_property_readonly("N", &SimpleGraph::num_vertices)
      .def_property_readonly("d", &SimpleGraph::degree)
      .def_property_readonly("edges", &edge_pairs)
      .def("__len__", &SimpleGraph::num_edges)
      .def(py::self == py::self);
  m.def("sample_regular", [](int N, int d, std::uint64_t seed) { return sample_simple(N, d, seed).graph; },
        py::arg("N"), py::arg("d"), py::arg("seed") = 0);

  // (stars, None) on success, (None, (U, lhs, rhs)) otherwise
  m.def("decompose", [](const SimpleGraph& g, int k, const std::vector<int>& j) -> py::tuple {
    const StarProfile profile{j, k};
    const DecompositionResult r = decompose(g, profile);
    if (const auto* w = std::get_if<Witness>(&r)) {
      return py::make_tuple(py::none(), py::make_tuple(w->U.members(), w->lhs, w->rhs));
    }
    const auto& dec = std::get<StarDecomposition>(r);
    std::vector<std::pair<int, std::vector<int>>> stars;
    for (const Star& s : dec.stars) stars.emplace_back(s.center, s.edges);
    if (!verify_decomposition(g, profile, dec)) throw InvariantError("decomposition failed verification");
    return py::make_tuple(stars, py::none());
  }, py::arg("graph"), py::arg("k"), py::arg("j"));
  m.def("balanced_profile", [](int N, int d, int k, const std::vector<int>& A) {
    return balanced_profile(N, d, k, VertexSet(N, A)).j_of;
  }, py::arg("N"), py::arg("d"), py::arg("k"), py::arg("A"));
  m.def("brute_force_condition", [](const SimpleGraph& g, int k, const std::vector<int>& j) -> py::object {
    const auto w = brute_force_condition(g, {j, k});
    if (!w) return py::none();
    return py::make_tuple(w->U.members(), w->lhs, w->rhs);
  }, py::arg("graph"), py::arg("k"), py::arg("j"));

  m.def("run_trials_json", [](int d, int k, int N, std::int64_t trials, const std::string& a_mode,
                              std::uint64_t seed, unsigned threads, bool records) {
    TrialConfig c{d, k, N, trials, parse_a_mode(a_mode), seed};
    c.threads = threads;
    return to_json(run_decomposition_trials(c), records);
  }, py::arg("d"), py::arg("k"), py::arg("N"), py::arg("trials"), py::arg("a_mode") = "random",
        py::arg("seed") = 0, py::arg("threads") = 1, py::arg("records") = false,
        py::call_guard<py::gil_scoped_release>());
}
