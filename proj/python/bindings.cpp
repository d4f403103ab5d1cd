#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "mwi/counterexamples.hpp"
#include "mwi/errors.hpp"
#include "mwi/inequality.hpp"
#include "mwi/io.hpp"
#include "mwi/lemma_constants.hpp"
#include "mwi/martingale.hpp"
#include "mwi/verify/acceptance.hpp"

namespace py = pybind11;
using namespace mwi;

namespace {

ExtendedIndex index_of(double v) { return {v}; }

double as_float(ExtendedIndex p) { return p.value; }

py::list entries_of(const Coupling& c) {
  py::list out;
  for (const auto& e : c.entries()) out.append(py::make_tuple(e.i, e.j, e.w));
  return out;
}

py::dict coords(const ReducedCoords& r) {
  py::dict d;
  d["z"] = r.z;
  d["omega"] = r.omega;
  return d;
}

}  // namespace

PYBIND11_MODULE(_mwi, m) {
  m.doc() = "Martingale optimal transport and Wasserstein inequality tools.";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<NotInConvexOrder>(m, "NotInConvexOrder", base.ptr());
  py::register_exception<DegenerateDenominator>(m, "DegenerateDenominator",
                                                base.ptr());
  py::register_exception<SolverLimit>(m, "SolverLimit", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<Norm>(m, "Norm")
      .def(py::init([](const std::string& s) { return Norm::parse(s); }),
           py::arg("spec") = "euclidean")
      .def_static("euclidean", &Norm::euclidean)
      .def_static("p_norm", &Norm::p_norm)
      .def_static("sup", &Norm::sup)
      .def("__call__", [](const Norm& n, const std::vector<double>& v) {
        return n(v);
      })
      .def("equivalence_lambda", &Norm::equivalence_lambda)
      .def("__repr__", [](const Norm& n) { return "Norm('" + n.to_string() + "')"; })
      .def("__str__", &Norm::to_string);
  py::implicitly_convertible<std::string, Norm>();

  py::class_<DiscreteMeasure>(m, "DiscreteMeasure")
      .def(py::init(&DiscreteMeasure::make), py::arg("points"),
           py::arg("weights"))
      .def_static("from_1d", &DiscreteMeasure::make_1d)
      .def_static("dirac", &DiscreteMeasure::dirac)
      .def_static("from_json",
                  [](const std::string& text) {
                    try {
                      return io::measure_from_json(io::json::parse(text));
                    } catch (const io::json::exception& e) {
                      throw ParseError(e.what());
                    }
                  })
      .def("to_json", [](const DiscreteMeasure& mu) {
        return io::to_json(mu).dump();
      })
      .def_property_readonly("dim", &DiscreteMeasure::dim)
      .def("__len__", &DiscreteMeasure::size)
      .def_property_readonly("points",
                             [](const DiscreteMeasure& mu) {
                               std::vector<std::vector<double>> pts;
                               for (int i = 0; i < mu.size(); ++i)
                                 pts.emplace_back(mu.point(i).begin(),
                                                  mu.point(i).end());
                               return pts;
                             })
      .def_property_readonly("weights", &DiscreteMeasure::weights)
      .def("translated", [](const DiscreteMeasure& mu,
                            const std::vector<double>& v) {
        return mu.translated(v);
      })
      .def("scaled", &DiscreteMeasure::scaled)
      .def("approx_equal", &DiscreteMeasure::approx_equal, py::arg("other"),
           py::arg("tol") = 1e-12);

  m.def("mean", &mean);
  m.def("raw_moment", &raw_moment, py::arg("mu"), py::arg("p"),
        py::arg("norm") = Norm::euclidean());
  m.def(
      "central_moment",
      [](const DiscreteMeasure& nu, double p, const Norm& norm) {
        return central_moment(nu, index_of(p), norm);
      },
      py::arg("nu"), py::arg("p"), py::arg("norm") = Norm::euclidean(),
      "Central moment sigma_p; pass float('inf') for the Chebyshev radius.");
  m.def("embed_1d", &embed_1d);

  m.def(
      "wasserstein",
      [](const DiscreteMeasure& mu, const DiscreteMeasure& nu, double q,
         const Norm& norm, bool force_lp) {
        TransportOptions opts;
        opts.force_lp = force_lp;
        auto r = wasserstein(mu, nu, index_of(q), norm, opts);
        return py::make_tuple(r.value, entries_of(r.coupling));
      },
      py::arg("mu"), py::arg("nu"), py::arg("q") = 1.0,
      py::arg("norm") = Norm::euclidean(), py::arg("force_lp") = false,
      "Returns (value, [(i, j, weight), ...]).");

  m.def("check_convex_order",
        [](const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
          return check_convex_order(mu, nu);
        });
  m.def("convex_order_1d", &convex_order_1d, py::arg("mu"), py::arg("nu"),
        py::arg("tol") = 1e-9);
  m.def(
      "mot_bounds",
      [](const DiscreteMeasure& mu, const DiscreteMeasure& nu, double rho,
         const Norm& norm) {
        auto b = mot_bounds({mu, nu, rho, norm});
        py::dict d;
        d["lower_cost"] = b.lower_cost;
        d["upper_cost"] = b.upper_cost;
        d["argmin"] = entries_of(b.argmin);
        d["argmax"] = entries_of(b.argmax);
        return d;
      },
      py::arg("mu"), py::arg("nu"), py::arg("rho"),
      py::arg("norm") = Norm::euclidean());

  m.def("sigma_index", [](double rho, double q) {
    return as_float(sigma_index(rho, index_of(q)));
  });
  m.def(
      "ratio",
      [](const DiscreteMeasure& mu, const DiscreteMeasure& nu, double rho,
         double q, const Norm& norm) {
        auto r = ratio(mu, nu, rho, index_of(q), norm);
        py::dict d;
        d["rho"] = r.rho;
        d["q"] = as_float(r.q);
        d["sigma_index"] = as_float(r.sigma_index);
        d["w_q"] = r.w_q;
        d["sigma"] = r.sigma_value;
        d["mot_lower"] = r.mot_lower;
        d["mot_upper"] = r.mot_upper;
        d["ratio_lower"] = r.ratio_lower;
        d["ratio_upper"] = r.ratio_upper;
        return d;
      },
      py::arg("mu"), py::arg("nu"), py::arg("rho"), py::arg("q") = 1.0,
      py::arg("norm") = Norm::euclidean());

  py::class_<LemmaConstants>(m, "LemmaConstants")
      .def_readonly("rho", &LemmaConstants::rho)
      .def_readonly("kappa", &LemmaConstants::kappa)
      .def_readonly("kappa_tilde", &LemmaConstants::kappa_tilde)
      .def_property_readonly("kappa_argmax", [](const LemmaConstants& c) {
        return coords(c.kappa_argmax);
      })
      .def_property_readonly("kappa_tilde_argmax", [](const LemmaConstants& c) {
        return coords(c.kappa_tilde_argmax);
      })
      .def("to_json", [](const LemmaConstants& c) {
        return io::to_json(c).dump();
      });
  m.def(
      "lemma_constants",
      [](double rho, bool force_numeric) {
        SupremumOptions opts;
        opts.force_numeric = force_numeric;
        return lemma_constants(rho, opts);
      },
      py::arg("rho"), py::arg("force_numeric") = false);
  m.def("theoretical_bound", &theoretical_bound, py::arg("rho"),
        py::arg("norm"), py::arg("dim"), py::arg("constants"));
  m.def(
      "verify_pointwise",
      [](double rho, int dim, long samples, const LemmaConstants& c,
         std::uint64_t seed) {
        auto r = verify_pointwise(rho, dim, samples, c, seed);
        py::dict d;
        d["samples"] = r.samples;
        d["distance_violations"] = r.distance_violations;
        d["growth_violations"] = r.growth_violations;
        d["max_violation"] = r.max_violation;
        d["passed"] = r.passed();
        return d;
      },
      py::arg("rho"), py::arg("dim"), py::arg("samples"), py::arg("constants"),
      py::arg("seed") = 0);

  m.def("family_1d", [](int n, double z) {
    auto f = family_1d(n, z);
    return py::make_tuple(f.mu, f.nu, entries_of(f.coupling));
  });
  m.def("family_2d_rotated", [](int n, double alpha, double theta) {
    auto f = family_2d_rotated(n, alpha, theta);
    return py::make_tuple(f.mu, f.nu, entries_of(f.coupling));
  });
  m.def(
      "closed_forms",
      [](int n, double z, double rho, double q) {
        FamilyParams p;
        p.n = n;
        p.z = z;
        p.rho = rho;
        p.q = index_of(q);
        auto cf = closed_forms(p);
        py::dict d;
        d["coupling_cost"] = cf.coupling_cost;
        d["w_rho_pow"] = cf.w_rho_pow;
        d["w_inf"] = cf.w_inf;
        d["sigma_inf"] = cf.sigma_inf;
        d["sigma_rho_pow"] = cf.sigma_rho_pow;
        return d;
      },
      py::arg("n"), py::arg("z"), py::arg("rho"), py::arg("q") = 1.0);
  m.def("family_ratio", [](int n, double z, double rho, double q) {
    return family_ratio(n, z, rho, index_of(q));
  });
  m.def("asymptotics", [](double rho, double q, double alpha) {
    auto a = asymptotics(rho, index_of(q), alpha);
    return py::make_tuple(a.prefactor, a.exponent);
  });

  m.def(
      "run_criterion",
      [](int id, bool full) {
        auto r = acceptance::run_criterion(
            id, full ? acceptance::Level::kFull : acceptance::Level::kQuick);
        return py::make_tuple(r.passed, acceptance::format_line(r));
      },
      py::arg("id"), py::arg("full") = false);
}
