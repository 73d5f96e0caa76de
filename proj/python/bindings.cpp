#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dephasing/dfs.hpp"
#include "dephasing/errors.hpp"
#include "dephasing/evolution.hpp"
#include "dephasing/model.hpp"
#include "dephasing/spectrum.hpp"
#include "dephasing/verify.hpp"

namespace py = pybind11;
using namespace dephasing;

namespace {

// Rationals cross the boundary as "p/q" text; the Python layer turns them into Fractions.
std::vector<std::string> to_text(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

InteractionMatrix matrix_from_text(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Rational>> parsed;
  parsed.reserve(rows.size());
  for (const auto& row : rows) {
    auto& out = parsed.emplace_back();
    for (const auto& cell : row) {
      try {
        out.push_back(Rational::parse(cell));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
  }
  return InteractionMatrix::from_rows(parsed);
}

EnvState env_from_amplitudes(int width, const std::map<std::uint64_t, std::complex<double>>& amps, bool normalize) {
  std::vector<EnvTerm> terms;
  for (const auto& [n, a] : amps) terms.push_back({BasisIndex(n, width), a});
  return normalize ? EnvState::normalized(width, std::move(terms)) : EnvState(width, std::move(terms));
}

}  // namespace

PYBIND11_MODULE(_dephasing, m) {
  m.doc() = "Exact pure-dephasing dynamics and decoherence-free subspaces";

  auto base = py::register_exception<Error>(m, "DephasingError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<DimensionError>(m, "DimensionError", base);
  py::register_exception<LimitError>(m, "LimitError", base);
  py::register_exception<IndexError>(m, "BasisIndexError", base);
  py::register_exception<StateError>(m, "StateError", base);
  py::register_exception<UsageError>(m, "UsageError", base);

  py::class_<InteractionMatrix>(m, "InteractionMatrix")
      .def(py::init(&matrix_from_text), py::arg("rows"))
      .def_static("from_json", [](const std::string& text) { return parse_interaction_matrix(text); })
      .def("to_json", &serialize_interaction_matrix)
      .def_property_readonly("K", &InteractionMatrix::register_size)
      .def_property_readonly("N", &InteractionMatrix::env_size)
      .def("_rows",
           [](const InteractionMatrix& g) {
             std::vector<std::vector<std::string>> out;
             for (int i = 0; i < g.register_size(); ++i) {
               auto r = g.row(i);
               out.push_back(to_text(std::vector<Rational>(r.begin(), r.end())));
             }
             return out;
           })
      .def(py::self == py::self);

  py::class_<EnvState>(m, "EnvState")
      .def(py::init(&env_from_amplitudes), py::arg("N"), py::arg("amplitudes"), py::arg("normalize") = false)
      .def_static("uniform", &EnvState::uniform, py::arg("N"))
      .def_static("from_json", [](const std::string& text) { return parse_env_state(text); })
      .def("to_json", &serialize_env_state)
      .def_property_readonly("N", &EnvState::width)
      .def("amplitudes", [](const EnvState& env) {
        std::map<std::uint64_t, std::complex<double>> out;
        for (const auto& t : env.terms()) out[t.index.value()] = t.amplitude;
        return out;
      });

  m.def(
      "energy",
      [](const InteractionMatrix& g, std::uint64_t k, std::uint64_t n) {
        return energy(g, BasisIndex(k, g.register_size()), BasisIndex(n, g.env_size())).str();
      },
      py::arg("g"), py::arg("k"), py::arg("n"));
  m.def(
      "signature",
      [](const InteractionMatrix& g, std::uint64_t k) { return to_text(signature(g, BasisIndex(k, g.register_size())).values); },
      py::arg("g"), py::arg("k"));
  m.def(
      "preserves_coherence",
      [](const InteractionMatrix& g, std::uint64_t k, std::uint64_t k2) {
        return preserves_coherence(g, BasisIndex(k, g.register_size()), BasisIndex(k2, g.register_size()));
      },
      py::arg("g"), py::arg("k"), py::arg("k2"));
  m.def(
      "dfs_partition",
      [](const InteractionMatrix& g) {
        std::vector<std::vector<std::uint64_t>> out;
        for (auto& c : dfs_partition(g).classes) out.push_back(std::move(c.members));
        return out;
      },
      py::arg("g"));
  m.def("collective_partition", &collective_partition, py::arg("K"));
  m.def(
      "dfs_report_json", [](const InteractionMatrix& g, int indent) { return serialize_report(dfs_report(g), indent); },
      py::arg("g"), py::arg("indent") = 2);
  m.def(
      "decoherence_rate",
      [](const InteractionMatrix& g, std::uint64_t k, std::uint64_t k2, const EnvState& env, double t) {
        return decoherence_rate(g, BasisIndex(k, g.register_size()), BasisIndex(k2, g.register_size()), env, t);
      },
      py::arg("g"), py::arg("k"), py::arg("k2"), py::arg("env"), py::arg("t"));
  m.def(
      "rate_series",
      [](const InteractionMatrix& g, std::uint64_t k, std::uint64_t k2, const EnvState& env, const std::vector<double>& grid) {
        auto s = rate_series(g, BasisIndex(k, g.register_size()), BasisIndex(k2, g.register_size()), env, grid);
        std::vector<std::complex<double>> out;
        out.reserve(s.samples.size());
        for (const auto& p : s.samples) out.push_back(p.r);
        return out;
      },
      py::arg("g"), py::arg("k"), py::arg("k2"), py::arg("env"), py::arg("t_grid"));
  m.def("time_grid", &time_grid, py::arg("t_max"), py::arg("steps"));
  m.def(
      "evolve_density",
      [](const InteractionMatrix& g, const Eigen::MatrixXcd& rho0, const EnvState& env, double t) {
        return Eigen::MatrixXcd(evolve_density(g, RegisterDensity(g.register_size(), rho0), env, t).matrix());
      },
      py::arg("g"), py::arg("rho0"), py::arg("env"), py::arg("t"));
  m.def(
      "pair_case",
      [](std::uint64_t k, std::uint64_t k2, int width) {
        PairCase pc = pair_case(BasisIndex(k, width), BasisIndex(k2, width));
        return py::make_tuple(to_string(pc.tag), pc.l1 == 0 ? py::object(py::none()) : py::int_(pc.l1),
                              pc.l2 ? py::object(py::int_(*pc.l2)) : py::object(py::none()));
      },
      py::arg("k"), py::arg("k2"), py::arg("K"));
  m.def(
      "verify",
      [](const InteractionMatrix& g) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& r : verify_small_instance(g)) out.emplace_back(r.name, r.passed, r.detail);
        return out;
      },
      py::arg("g"));
}
