#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symq/json_io.hpp"
#include "symq/oracles.hpp"
#include "symq/parse.hpp"
#include "symq/version.hpp"

namespace py = pybind11;
using namespace symq;

namespace {

py::object to_fraction(const Rat& q) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(q.get_num().get_str(), q.get_den().get_str());
}

py::list one_indexed(const std::vector<int>& v) {
  py::list out;
  for (int x : v) out.append(x + 1);
  return out;
}

py::dict dist_to_dict(const FiniteDistribution& d) {
  py::dict out;
  for (size_t i = 0; i < d.size(); ++i)
    out[py::str(display_string(d.support()[i]))] = to_fraction(d.weights()[i]);
  return out;
}

Rat fraction_to_rat(py::handle obj) {
  py::object frac = py::module_::import("fractions").attr("Fraction")(obj);
  std::string num = py::str(frac.attr("numerator"));
  std::string den = py::str(frac.attr("denominator"));
  return rat_from_string(num + "/" + den);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "group-action query-complexity laboratory";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "SymqError");

  py::class_<GroupAction>(m, "GroupAction")
      .def_property_readonly("degree", &GroupAction::degree)
      .def("order", [](const GroupAction& g) {
        return py::int_(py::str(g.order().get_str()));
      })
      .def("contains",
           [](const GroupAction& g, const std::vector<int>& images) {
             return g.contains(Permutation::from_one_indexed(images));
           },
           py::arg("images"), "membership test; images are 1-indexed")
      .def("orbit",
           [](const GroupAction& g, int point) { return one_indexed(g.orbit(point - 1)); },
           py::arg("point"))
      .def("orbits",
           [](const GroupAction& g) {
             py::list out;
             for (const auto& orb : g.orbits()) out.append(one_indexed(orb));
             return out;
           })
      .def("is_k_transitive", &GroupAction::is_k_transitive, py::arg("k"))
      .def("uniform_sample",
           [](const GroupAction& g, std::uint64_t seed) {
             Rng rng(seed);
             return one_indexed(g.uniform_sample(rng).images());
           },
           py::arg("seed"))
      .def("tuple_map_prob",
           [](const GroupAction& g, std::vector<int> from, std::vector<int> to) {
             for (int& v : from) --v;
             for (int& v : to) --v;
             return to_fraction(g.tuple_map_prob(from, to));
           },
           py::arg("src"), py::arg("dst"))
      .def("generators",
           [](const GroupAction& g) {
             py::list out;
             for (const Permutation& p : g.generators()) out.append(one_indexed(p.images()));
             return out;
           })
      .def("__repr__", [](const GroupAction& g) {
        return "<GroupAction degree=" + std::to_string(g.degree()) + ">";
      });

  py::class_<PartialFn>(m, "PartialFn")
      .def_property_readonly("n", &PartialFn::n)
      .def_property_readonly("m", &PartialFn::m)
      .def_property_readonly("name", &PartialFn::name)
      .def("domain_size", &PartialFn::domain_size)
      .def("evaluate",
           [](const PartialFn& f, const std::string& x) -> py::object {
             std::optional<int> v = f.evaluate(parse_display(x, f.m()));
             if (!v.has_value()) return py::none();
             return py::int_(*v);
           },
           py::arg("x"))
      .def("table",
           [](const PartialFn& f) {
             py::list out;
             for (const auto& [s, v] : f.table())
               out.append(py::make_tuple(display_string(s), v));
             return out;
           })
      .def("__repr__", [](const PartialFn& f) { return "<PartialFn " + f.name() + ">"; });

  m.def("group", [](const std::string& spec) { return parse_group_spec(spec).action; },
        py::arg("spec"), "build a group action from a constructor expression");
  m.def("fn", [](const std::string& spec) { return parse_fn_spec(spec); }, py::arg("spec"),
        "build a partial function from a constructor expression");

  m.def("is_symmetric_under",
        [](const PartialFn& f, const GroupAction& g) {
          SymmetryReport rep = is_symmetric_under(f, g);
          py::dict out;
          out["symmetric"] = rep.symmetric;
          if (!rep.symmetric) {
            out["witness_input"] = display_string(*rep.witness_input);
            out["witness_perm"] = one_indexed(rep.witness_perm->images());
          }
          return out;
        },
        py::arg("fn"), py::arg("group"));

  m.def("apply_perm",
        [](const std::string& x, const std::vector<int>& images, int m) {
          std::vector<int> zero(images.size());
          for (size_t i = 0; i < images.size(); ++i) zero[i] = images[i] - 1;
          return display_string(apply_index_map(parse_display(x, m), zero));
        },
        py::arg("x"), py::arg("images"), py::arg("m") = 36,
        "compose a string with a 1-indexed index map");

  m.def("enumerate_small_range",
        [](int n, int r) {
          py::list out;
          for (const std::string& s : enumerate_small_range(n, r)) out.append(display_string(s));
          return out;
        },
        py::arg("n"), py::arg("r"));
  m.def("small_range_count",
        [](int n, int r) { return py::int_(py::str(small_range_count(n, r).get_str())); },
        py::arg("n"), py::arg("r"));

  m.def("shuffle_simulate",
        [](const PartialFn& f, const GroupAction& g, int r, const std::string& x,
           const std::string& mode, std::uint64_t seed) {
          Rng rng(seed);
          QueryOracle oracle = QueryOracle::over_string(parse_display(x, f.m()));
          ShuffleSimResult res = shuffle_simulate(evaluator_for(f), g, r, oracle,
                                                  shuffle_mode_from_name(mode), rng);
          py::dict out;
          out["promise_violated"] = res.promise_violated;
          if (!res.promise_violated) out["value"] = res.value;
          out["queries_used"] = res.queries_used;
          out["range_used"] = res.range_used;
          return out;
        },
        py::arg("fn"), py::arg("group"), py::arg("r"), py::arg("x"),
        py::arg("mode") = "uniform-balanced", py::arg("seed") = 0);

  m.def("symmetrize",
        [](const py::dict& dist, const GroupAction& g, int m) {
          std::vector<std::pair<Str, Rat>> weighted;
          for (const auto& [k, v] : dist)
            weighted.push_back({parse_display(py::str(k), m), fraction_to_rat(v)});
          return dist_to_dict(symmetrize(FiniteDistribution::from_weights(std::move(weighted)), g));
        },
        py::arg("dist"), py::arg("group"), py::arg("m") = 36);

  m.def("det_query_complexity",
        [](const PartialFn& f) { return det_query_complexity(f); }, py::arg("fn"));

  m.def("approx_degree",
        [](const PartialFn& f, py::handle eps, bool bounded) {
          DegreeLpOptions opts;
          opts.bounded = bounded;
          LPCertificate cert = approx_degree(f, fraction_to_rat(eps), opts);
          py::dict out;
          out["degree"] = cert.degree;
          out["epsilon"] = to_fraction(cert.epsilon);
          out["dual"] = dist_to_dict(cert.dual);
          out["mode"] = cert.exact_mode ? "exact" : "float";
          return out;
        },
        py::arg("fn"), py::arg("eps"), py::arg("bounded") = true);

  m.def("cost_lower_proxy",
        [](const GroupAction& g, int r, py::handle eps) -> py::object {
          CostProxyResult res = cost_lower_proxy(g, r, fraction_to_rat(eps));
          if (res.infinite) return py::module_::import("math").attr("inf");
          return to_fraction(res.value);
        },
        py::arg("group"), py::arg("r"), py::arg("eps") = py::cast("1/3"),
        "degree/2 lower bound; math.inf when r >= n");

  m.def("hard_distribution",
        [](const PartialFn& f, int budget, const std::string& kind, std::uint64_t seed) {
          Rng rng(seed);
          HardDistribution hd = hard_distribution(
              f, budget, kind == "dp" ? HardDistKind::Dp : HardDistKind::Poly, rng);
          py::dict out;
          out["certified_error"] = to_fraction(hd.certified_error);
          out["dist"] = dist_to_dict(hd.dist);
          return out;
        },
        py::arg("fn"), py::arg("budget"), py::arg("kind") = "poly", py::arg("seed") = 0);
}
