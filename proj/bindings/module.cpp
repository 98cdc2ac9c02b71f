#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eqcoh/cellular.hpp"
#include "eqcoh/report.hpp"
#include "eqcoh/zcoeff.hpp"

namespace py = pybind11;
using namespace eqcoh;

namespace {

MackeyTable coeff_table(const GroupSpec& g, const std::string& coeff) {
    if (coeff == "Z") return concretize(atom_const_z(g.primes.size()), g);
    if (coeff == "A") return concretize(atom_burnside(g.primes.size()), g);
    return load_table(coeff);
}

}  // namespace

// Reports cross into Python as JSON strings; the eqcohpy package parses them.
PYBIND11_MODULE(_eqcoh, m) {
    m.doc() = "exact RO(C_n)-graded Bredon cohomology engine";

    m.def("cohomology_report",
          [](long n, const std::string& coeff, const std::vector<std::string>& alphas,
             bool oracle) { return cohomology_report(n, coeff, alphas, oracle).dump(); },
          py::arg("n"), py::arg("coeff"), py::arg("alphas"), py::arg("oracle") = false);

    m.def("ring_mul_report",
          [](long n, const std::string& lhs, const std::string& rhs, long scale) {
              return ring_mul_report(n, lhs, rhs, scale).dump();
          },
          py::arg("n"), py::arg("lhs"), py::arg("rhs"), py::arg("scale") = 1);

    m.def("oracle_report",
          [](long n, int max_factors, const std::string& coeff, long random_gradings,
             unsigned seed) {
              return oracle_report(n, max_factors, coeff, random_gradings, seed).dump();
          },
          py::arg("n"), py::arg("max_factors") = 2, py::arg("coeff") = "Z",
          py::arg("random_gradings") = 0, py::arg("seed") = 12345u);

    m.def("freeness_cp_report",
          [](long n, long m_top) { return freeness_cp_report(n, m_top).dump(); });
    m.def("freeness_grassmann_report",
          [](long n, long l, long mm) { return freeness_grassmann_report(n, l, mm).dump(); });

    m.def("fixed_dims",
          [](long n, const std::string& alpha) { return fixed_dims(parse_grading(n, alpha)); });
    m.def("m_alpha",
          [](long n, const std::string& alpha) { return m_alpha(parse_grading(n, alpha)); });

    m.def("bredon_homology",
          [](long n, const std::vector<long>& exponents, long k, const std::string& coeff,
             long level) {
              GroupSpec g(n);
              if (level < 0) level = n;
              return bredon_homology(g, exponents, k, coeff_table(g, coeff), level).str();
          },
          py::arg("n"), py::arg("exponents"), py::arg("k"), py::arg("coeff") = "Z",
          py::arg("level") = -1);

    m.def("bredon_cohomology",
          [](long n, const std::vector<long>& exponents, long k, const std::string& coeff,
             long level) {
              GroupSpec g(n);
              if (level < 0) level = n;
              return bredon_cohomology(g, exponents, k, coeff_table(g, coeff), level).str();
          },
          py::arg("n"), py::arg("exponents"), py::arg("k"), py::arg("coeff") = "Z",
          py::arg("level") = -1);

    m.def("sphere_mackey",
          [](long n, const std::vector<long>& exponents, long k, const std::string& coeff,
             bool homology) {
              GroupSpec g(n);
              MackeyTable t = mackey_assemble(g, exponents, k, coeff_table(g, coeff),
                                              homology ? Variance::Homology
                                                       : Variance::Cohomology);
              std::map<long, std::string> out;
              for (long d : g.divisors) out[d] = t.value(d).str();
              return out;
          },
          py::arg("n"), py::arg("exponents"), py::arg("k"), py::arg("coeff") = "Z",
          py::arg("homology") = true);
}
