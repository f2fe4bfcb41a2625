#include <complex>
#include <stdexcept>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "layerlab/commutator_ops.hpp"
#include "layerlab/experiments.hpp"
#include "layerlab/fundsol.hpp"
#include "layerlab/layer_potentials.hpp"
#include "layerlab/specfun.hpp"

namespace py = pybind11;
using namespace layerlab;

namespace {

geom::CurveKind curve_kind(const std::string& preset) {
  if (preset == "circle") return geom::CurveKind::Circle;
  if (preset == "ellipse") return geom::CurveKind::Ellipse;
  if (preset == "kite") return geom::CurveKind::Kite;
  throw std::invalid_argument("unknown curve preset '" + preset + "'");
}

OperatorCoefficients make_op(const std::vector<std::vector<double>>& a2,
                             const std::vector<Complex>& a1, Complex a0) {
  if (a2.size() != 2 || a2[0].size() != 2 || a2[1].size() != 2 || a1.size() != 2)
    throw std::invalid_argument("a2 must be 2x2 and a1 length 2");
  Mat2 m = Mat2::of(a2[0][0], a2[0][1], a2[1][0], a2[1][1]);
  return validate(m, {a1[0], a1[1]}, a0);
}

geom::BoundaryFunction to_bf(const std::vector<Complex>& v) {
  geom::BoundaryFunction f(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) f[static_cast<int>(i)] = v[i];
  return f;
}

std::vector<Complex> from_bf(const geom::BoundaryFunction& f) {
  return f.v;
}

} // namespace

PYBIND11_MODULE(_layerlab, m) {
  m.doc() = "layer potentials for constant-coefficient second order operators";

  m.def("curve_nodes",
        [](const std::string& preset, double p0, double p1, int N) {
          const auto c = geom::preset_curve(curve_kind(preset), p0, p1, N);
          std::vector<std::pair<double, double>> pts;
          for (const auto& x : c.x) pts.emplace_back(x[0], x[1]);
          return pts;
        },
        py::arg("preset"), py::arg("p0") = 1.0, py::arg("p1") = 1.0,
        py::arg("N") = 64);

  const auto with_setup = [](const std::string& preset, double p0, double p1,
                             const std::vector<std::vector<double>>& a2,
                             const std::vector<Complex>& a1, Complex a0,
                             const std::vector<Complex>& mu, auto&& fn) {
    const auto curve =
        geom::preset_curve(curve_kind(preset), p0, p1, static_cast<int>(mu.size()));
    const auto fs = fundsol::build(make_op(a2, a1, a0));
    return fn(fs, curve, to_bf(mu));
  };

#define LAYER_FN(name, call)                                                    \
  m.def(name,                                                                   \
        [with_setup](const std::string& preset, double p0, double p1,           \
                     const std::vector<std::vector<double>>& a2,                \
                     const std::vector<Complex>& a1, Complex a0,                \
                     const std::vector<Complex>& mu) {                          \
          return with_setup(preset, p0, p1, a2, a1, a0, mu,                     \
                            [](const fundsol::FundamentalSolution& fs,          \
                               const geom::BoundaryCurve& curve,                \
                               const geom::BoundaryFunction& bf) {              \
                              return from_bf(call(fs, curve, bf));              \
                            });                                                 \
        },                                                                      \
        py::arg("preset"), py::arg("p0"), py::arg("p1"), py::arg("a2"),         \
        py::arg("a1"), py::arg("a0"), py::arg("mu"))

  LAYER_FN("single_layer", potentials::single_layer);
  LAYER_FN("double_layer", potentials::double_layer);
  LAYER_FN("w_star", potentials::w_star);
#undef LAYER_FN

  m.def("fundamental_solution",
        [](const std::vector<std::vector<double>>& a2,
           const std::vector<Complex>& a1, Complex a0, double x, double y) {
          return fundsol::eval(fundsol::build(make_op(a2, a1, a0)), Vec2{x, y});
        });

  m.def("cylinder", [](const std::string& kind, double x) {
    if (kind == "j0") return specfun::bessel_j0(x);
    if (kind == "y0") return specfun::bessel_y0(x);
    if (kind == "i0") return specfun::bessel_i0(x);
    if (kind == "k0") return specfun::bessel_k0(x);
    if (kind == "j1") return specfun::bessel_j1(x);
    if (kind == "y1") return specfun::bessel_y1(x);
    if (kind == "i1") return specfun::bessel_i1(x);
    if (kind == "k1") return specfun::bessel_k1(x);
    throw std::invalid_argument("kind must be one of j0, y0, i0, k0, j1, y1, i1, k1");
  });

  m.def("experiment_names", [] { return experiments::experiment_names(); });

  m.def("run_experiment", [](const std::string& config_json,
                             const std::string& out_dir) {
    const auto cfg = experiments::parse_config(config_json);
    const auto res = experiments::run(cfg);
    if (!out_dir.empty()) experiments::write_report(cfg, res, out_dir);
    py::dict d;
    d["pass"] = res.pass;
    d["summary"] = res.summary;
    d["csv"] = experiments::to_csv(res.rows);
    return d;
  }, py::arg("config_json"), py::arg("out_dir") = "");

  m.def("selftest", [] {
    py::list out;
    for (const auto& r : experiments::selftest()) {
      py::dict d;
      d["index"] = r.index;
      d["name"] = r.name;
      d["pass"] = r.pass;
      d["measured"] = r.measured;
      d["threshold"] = r.threshold;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  });
}
