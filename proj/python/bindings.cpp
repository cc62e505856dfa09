#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wrtkit/calibrate.hpp"
#include "wrtkit/error.hpp"
#include "wrtkit/io.hpp"
#include "wrtkit/pipeline.hpp"
#include "wrtkit/selftest.hpp"

namespace py = pybind11;
using namespace wrtkit;

namespace {

PhantomSpec phantom_of(const std::string& s) { return phantom_from_json(json::parse(s)); }
WindowSpec window_of(const std::string& s) { return window_from_json(json::parse(s)); }

Grid grid_of(std::size_t n, std::size_t size, double extent, const std::vector<double>& center) {
  std::vector<std::size_t> shape(n, size);
  std::vector<double> ext(n, extent);
  return make_grid(shape, ext, center);
}

py::array_t<double> to_numpy(const ScalarField& f) {
  std::vector<py::ssize_t> shape(f.grid.shape.begin(), f.grid.shape.end());
  py::array_t<double> a(shape);
  std::copy(f.values.begin(), f.values.end(), a.mutable_data());
  return a;
}

ScalarField from_numpy(py::array_t<double, py::array::c_style | py::array::forcecast> a, double extent) {
  std::vector<std::size_t> shape(a.shape(), a.shape() + a.ndim());
  std::vector<double> ext(shape.size(), extent);
  Grid g = make_grid(shape, ext);
  return ScalarField(g, std::vector<double>(a.data(), a.data() + a.size()));
}

MethodParams params_of(const py::dict& kw) {
  MethodParams p;
  for (auto [k, v] : kw) {
    const auto key = py::cast<std::string>(k);
    if (key == "constant") {
      p.t1.constant = parse_constant(py::cast<std::string>(v));
      p.t2.params.constant = p.t1.constant;
    } else if (key == "directions") {
      p.t1.directions = py::cast<std::size_t>(v);
      p.t2.directions = py::cast<std::size_t>(v);
    } else if (key == "radii") {
      p.t1.radii = py::cast<std::size_t>(v);
      p.t2.radii = py::cast<std::size_t>(v);
    } else if (key == "sigma_count") {
      p.t2.sigma_count = py::cast<std::size_t>(v);
    } else if (key == "a") {
      p.slice_a = py::cast<double>(v);
    } else if (key == "V") {
      p.slice.V = py::cast<double>(v);
    } else if (key == "apodization") {
      p.slice.apodization = parse_apodization(py::cast<std::string>(v));
    } else if (key == "lmax") {
      p.lmax = py::cast<int>(v);
    } else if (key == "t") {
      p.mellin.t = py::cast<double>(v);
    } else {
      throw InvalidArgument("unknown parameter '" + key + "'");
    }
  }
  return p;
}

}  // namespace

PYBIND11_MODULE(_wrtkit, m) {
  m.doc() = "windowed ray transform: forward model and inversions";

  static py::exception<InvalidArgument> invalid(m, "InvalidArgument", PyExc_ValueError);
  static py::exception<NumericalError> numerical(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      py::set_error(invalid, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical, e.what());
    } catch (const json::exception& e) {
      py::set_error(invalid, e.what());
    }
  });

  m.def(
      "sample_phantom",
      [](const std::string& spec, std::size_t size, double extent, const std::vector<double>& center) {
        const auto f = phantom_of(spec);
        return to_numpy(sample_phantom(f, grid_of(f.dim(), size, extent, center)));
      },
      py::arg("spec"), py::arg("size"), py::arg("extent"), py::arg("center") = std::vector<double>{});

  m.def(
      "window_eval",
      [](const std::string& w, const std::vector<double>& t) {
        const auto h = window_of(w);
        std::vector<cplx> out;
        for (double x : t) out.push_back(window_eval(h, x));
        return out;
      },
      py::arg("window"), py::arg("t"));
  m.def(
      "window_ft",
      [](const std::string& w, const std::vector<double>& eta) {
        const auto h = window_of(w);
        std::vector<cplx> out;
        for (double x : eta) out.push_back(window_ft(h, x));
        return out;
      },
      py::arg("window"), py::arg("eta"));

  m.def(
      "forward",
      [](const std::string& spec, const std::string& window, std::size_t size, double extent, const std::string& vset) {
        const auto f = phantom_of(spec);
        const auto vs = vset_from_json(json::parse(vset));
        const auto d = windowed_ray_transform(f, window_of(window), grid_of(f.dim(), size, extent, {}), vs);
        py::array_t<cplx> a({static_cast<py::ssize_t>(d.values.size() / d.v_count()), static_cast<py::ssize_t>(d.v_count())});
        std::copy(d.values.begin(), d.values.end(), a.mutable_data());
        return a;
      },
      py::arg("spec"), py::arg("window"), py::arg("size"), py::arg("extent"), py::arg("vset"));

  m.def(
      "ray",
      [](const std::string& spec, const std::string& window, const std::vector<double>& u, const std::vector<double>& v) {
        const auto src = make_ray_source(phantom_of(spec), window_of(window));
        return (*src)(u, v);
      },
      py::arg("spec"), py::arg("window"), py::arg("u"), py::arg("v"));

  m.def(
      "invert",
      [](const std::string& method, const std::string& spec, const std::string& window, std::size_t size, double extent,
         const py::dict& params) {
        const Method meth = parse_method(method);
        const auto w = window_of(window);
        check_method_window(meth, w);
        const auto f = phantom_of(spec);
        const MethodParams p = params_of(params);
        const auto src = make_ray_source(f, w);
        ScalarField r;
        {
          py::gil_scoped_release release;
          r = invert_from_source(meth, *src, grid_of(f.dim(), size, extent, {}), p);
        }
        return to_numpy(r);
      },
      py::arg("method"), py::arg("spec"), py::arg("window"), py::arg("size"), py::arg("extent"),
      py::arg("params") = py::dict());

  m.def(
      "calibrate",
      [](const std::string& method, const std::string& window, std::size_t size, double extent) {
        const auto r = calibrate(parse_method(method), calibration_phantoms(2), window_of(window),
                                 grid_of(2, size, extent, {}), MethodParams{});
        py::dict d;
        d["method"] = r.method;
        d["alpha"] = r.alpha;
        d["paper_constant"] = r.paper_constant;
        d["derived_constant"] = r.derived_constant;
        d["ratio"] = r.ratio;
        d["derived_ratio"] = r.derived_ratio;
        d["alphas"] = r.alphas;
        d["cv"] = r.cv;
        return d;
      },
      py::arg("method"), py::arg("window"), py::arg("size") = 32, py::arg("extent") = 8.0);

  m.def(
      "rel_l2_error",
      [](py::array_t<double> a, py::array_t<double> b) {
        if (a.size() != b.size()) throw InvalidArgument("rel_l2_error: sizes differ");
        return rel_l2_error(std::span<const double>(a.data(), a.size()), std::span<const double>(b.data(), b.size()));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "write_gf1",
      [](const std::string& path, py::array_t<double, py::array::c_style | py::array::forcecast> a, double extent) {
        write_gf1(path, from_numpy(a, extent));
      },
      py::arg("path"), py::arg("values"), py::arg("extent"));
  m.def("read_gf1", [](const std::string& path) { return to_numpy(read_gf1_scalar(path)); }, py::arg("path"));

  m.def(
      "selftest",
      [](std::uint64_t seed) {
        SelftestReport r;
        {
          py::gil_scoped_release release;
          r = run_selftest({seed, false});
        }
        py::list out;
        for (const auto& c : r.checks) {
          py::dict d;
          d["name"] = c.name;
          d["value"] = c.value;
          d["limit"] = c.limit;
          d["pass"] = c.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 1);
}
