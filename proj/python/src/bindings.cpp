// Thin Python surface over xcov_core. Exact values come back as fractions.Fraction,
// matrices as numpy arrays. Rational inputs accept int, str ("3/7", "0.4") or Fraction.
#include "xcov/errors.hpp"
#include "xcov/experiment.hpp"
#include "xcov/free_cumulants.hpp"
#include "xcov/limit_laws.hpp"
#include "xcov/matrix_lab.hpp"
#include "xcov/partition.hpp"
#include "xcov/polynomial.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace xcov;

namespace {

ExactScalar exact(const py::handle& value) {
  if (py::isinstance<py::float_>(value)) {
    // repr of a float is its shortest round-trip decimal
    return parse_exact(py::repr(value).cast<std::string>());
  }
  return parse_exact(py::str(value).cast<std::string>());
}

py::object fraction(const ExactScalar& x) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_fraction_string(x));
}

FamilyParams family_params(const py::dict& params) {
  FamilyParams out;
  for (auto [key, value] : params) {
    auto pair = value.cast<py::sequence>();
    if (pair.size() != 2) throw DomainError("family parameters are (rho, y) pairs");
    out[key.cast<int>()] = CrossCovParams{exact(pair[0]), exact(pair[1])};
  }
  validate(out);
  return out;
}

EllipticParams elliptic_params(const py::dict& params) {
  EllipticParams out;
  for (auto [key, value] : params) out[key.cast<int>()] = exact(value);
  validate(out);
  return out;
}

std::vector<std::vector<int>> blocks_of(const NCPartition& p) { return p.blocks(); }

NCPartition partition_from(int n, const std::vector<std::vector<int>>& blocks) {
  return NCPartition(SetPartition(n, blocks));
}

ConfigMap config_from(const py::dict& settings) {
  ConfigMap map;
  for (auto [key, value] : settings) map[py::str(key)] = py::str(value);
  return map;
}

}  // namespace

PYBIND11_MODULE(_xcov, m) {
  m.doc() = "Free cross-covariance limits, exact free cumulants and Monte Carlo checks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_OverflowError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_MemoryError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  // combinatorics
  m.def("catalan", [](int k) { return py::int_(py::str(catalan(k).str())); }, py::arg("k"));
  m.def("nc_partitions", [](int n) {
    std::vector<std::vector<std::vector<int>>> out;
    for (const auto& p : enumerate_nc(n)) out.push_back(blocks_of(p));
    return out;
  }, py::arg("n"), "Non-crossing partitions of {1..n} as lists of blocks.");
  m.def("kreweras", [](int n, const std::vector<std::vector<int>>& blocks) {
    return blocks_of(kreweras_complement(partition_from(n, blocks)));
  }, py::arg("n"), py::arg("blocks"));
  m.def("mobius", [](int n, const std::vector<std::vector<int>>& lower, const std::vector<std::vector<int>>& upper) {
    return mobius_nc(partition_from(n, lower), partition_from(n, upper));
  }, py::arg("n"), py::arg("lower"), py::arg("upper"));

  // exact states; words are written "1 2* 1"
  m.def("cc_moment", [](const std::string& word, const py::dict& params) {
    return fraction(cc_family_moment(StarWord::parse(word), family_params(params)));
  }, py::arg("word"), py::arg("params"), "phi(word) for free cross-covariance elements; params {label: (rho, y)}.");
  m.def("cc_cumulant", [](const std::string& word, const py::dict& params) {
    return fraction(cumulants_from_moments(StarWord::parse(word), cc_moment_functional(family_params(params))));
  }, py::arg("word"), py::arg("params"));
  m.def("elliptic_moment", [](const std::string& word, const py::dict& params) {
    return fraction(elliptic_family_moment(StarWord::parse(word), elliptic_params(params)));
  }, py::arg("word"), py::arg("params"), "phi(word) for free elliptic elements; params {label: rho^2}.");
  m.def("mp_moment", [](int k, const py::object& y) { return fraction(mp_moment(k, exact(y))); },
        py::arg("k"), py::arg("y"));
  m.def("poly_moment", [](const std::string& poly, int k, const py::dict& params) {
    return fraction(poly_moment(parse_polynomial(poly).polynomial, k, cc_moment_functional(family_params(params))));
  }, py::arg("poly"), py::arg("k"), py::arg("params"), "phi(a^k) for a polynomial in C symbols.");
  m.def("poly_cumulant", [](const std::string& poly, int k, const py::dict& params) {
    return fraction(poly_cumulant_power(parse_polynomial(poly).polynomial, k, cc_moment_functional(family_params(params))));
  }, py::arg("poly"), py::arg("k"), py::arg("params"));
  m.def("centered_limit", [](const std::string& poly, const py::dict& rhos, const py::dict& ratios) {
    std::map<int, ExactScalar> rho_map;
    for (auto [key, value] : rhos) rho_map[key.cast<int>()] = exact(value);
    std::map<int, RatioLimit> ratio_map;
    for (auto [key, value] : ratios) ratio_map[key.cast<int>()] = RatioLimit::finite(exact(value));
    return centered_scaled_limit(parse_polynomial(poly).polynomial, rho_map, ratio_map).to_string('e');
  }, py::arg("poly"), py::arg("rhos"), py::arg("ratios"),
     "Limit polynomial in e symbols of the centered and scaled polynomial, as text.");

  // sampling
  m.def("sample_cross_covariance", [](int p, int n, double rho, std::uint64_t seed, int replicate, const std::string& dist) {
    EnsembleConfig cfg;
    cfg.p = p;
    cfg.families = {{n, rho}};
    cfg.seed = seed;
    cfg.replicates = replicate + 1;
    if (dist == "rademacher") cfg.dist = EntryDist::Rademacher;
    else if (dist != "gaussian") throw DomainError("dist must be gaussian or rademacher");
    return Matrix(sample_family(cfg, replicate).c(1));
  }, py::arg("p"), py::arg("n"), py::arg("rho"), py::arg("seed") = 0, py::arg("replicate") = 0,
     py::arg("dist") = "gaussian");
  m.def("trace_moments", &trace_moments, py::arg("m"), py::arg("max_order"));

  // experiment driver: settings as for the command line tool
  m.def("run", [](const std::string& command, const py::dict& settings) {
    const auto cfg = build_experiment(config_from(settings));
    std::ostringstream out;
    int status = 0;
    {
      py::gil_scoped_release release;
      status = run_command(command, cfg, out);
    }
    return py::make_tuple(status, out.str());
  }, py::arg("command"), py::arg("settings"), "Returns (exit status, CSV text).");
}
