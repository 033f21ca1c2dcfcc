#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thuefam/errors.hpp"
#include "thuefam/io.hpp"
#include "thuefam/solver.hpp"
#include "thuefam/tracer.hpp"
#include "thuefam/verify.hpp"

namespace py = pybind11;
using namespace thuefam;

namespace {

PyObject* error_type = nullptr;

py::int_ to_py(const mpz_class& z) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

mpz_class from_py(const py::int_& v) { return mpz_class(py::str(v).cast<std::string>()); }

py::tuple form_tuple(const BinaryCubicForm& f) { return py::make_tuple(to_py(f.a[0]), to_py(f.a[1]), to_py(f.a[2]), to_py(f.a[3])); }

std::vector<py::tuple> search(long D, const py::int_& k, long n_lo, long n_hi, long y_max, bool include_trivial,
                              bool include_degenerate, bool oracle) {
    const FormFamily fam = example_family(D);
    SearchSpec s;
    s.k = from_py(k);
    s.n_lo = n_lo;
    s.n_hi = n_hi;
    s.y_max = y_max;
    s.exclude_trivial = !include_trivial;
    s.exclude_degenerate = !include_degenerate;
    std::vector<SolutionRecord> recs;
    {
        py::gil_scoped_release nogil;
        recs = oracle ? brute_force_oracle(fam, s) : solve_box(fam, s);
    }
    std::vector<py::tuple> out;
    for (const SolutionRecord& r : recs) out.push_back(py::make_tuple(r.n, to_py(r.x), to_py(r.y), to_py(r.value)));
    return out;
}

std::string trace_json(long D, long n, const py::int_& x, const py::int_& y, const py::int_& k) {
    const FormFamily fam = example_family(D);
    const mpz_class X = from_py(x), Y = from_py(y), K = from_py(k);
    py::gil_scoped_release nogil;
    return to_json(trace_solution(fam, n, X, Y, K)).dump();
}

std::vector<py::tuple> verify(long D, bool deep) {
    VerifyOptions opt;
    opt.deep = deep;
    std::vector<CheckResult> res;
    {
        py::gil_scoped_release nogil;
        res = verify_family(example_family(D), opt);
    }
    std::vector<py::tuple> out;
    for (const CheckResult& c : res) out.push_back(py::make_tuple(c.name, c.passed, c.detail));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Thue equations over a family of cubic forms";

    // kept alive for the life of the interpreter
    error_type = PyErr_NewException("thuefam.Error", PyExc_RuntimeError, nullptr);
    m.attr("Error") = py::handle(error_type);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const thuefam::Error& e) {
            py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
            inst.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type, inst.ptr());
        }
    });

    m.def("form", [](long D, long n) { return form_tuple(example_family(D).form_at(n)); }, py::arg("D"), py::arg("n"),
          "Coefficients (a0, a1, a2, a3) of F_n for the example family with parameter D.");
    m.def("search", &search, py::arg("D"), py::arg("k"), py::arg("n_lo"), py::arg("n_hi"), py::arg("y_max"),
          py::arg("include_trivial") = false, py::arg("include_degenerate") = false, py::arg("oracle") = false,
          "All (n, x, y, F_n(x, y)) with |F_n(x, y)| <= k, n_lo <= n <= n_hi, |y| <= y_max.");
    m.def("trace_json", &trace_json, py::arg("D"), py::arg("n"), py::arg("x"), py::arg("y"), py::arg("k"));
    m.def("verify", &verify, py::arg("D"), py::arg("deep") = false);
    m.attr("schema_version") = kSchemaVersion;
}
