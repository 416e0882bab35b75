#include "symindiv/acceptance.hpp"
#include "symindiv/constructions.hpp"
#include "symindiv/embeddings.hpp"
#include "symindiv/indivisibility.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace symindiv;

namespace {

py::object exhausted_type;

// Raises symindiv.Exhausted carrying the outcome's fields.
[[noreturn]] void raise(const Exhausted& ex) {
    py::object err = exhausted_type(ex.stage + ": " + ex.detail);
    err.attr("stage") = ex.stage;
    err.attr("stuck_index") = ex.stuck_index ? py::cast(*ex.stuck_index) : py::none();
    err.attr("detail") = ex.detail;
    err.attr("deepest") = py::cast(ex.deepest);
    PyErr_SetObject(exhausted_type.ptr(), err.ptr());
    throw py::error_already_set();
}

template <class T>
T unwrap(const Outcome<T>& o) {
    if (!found(o)) raise(exhausted(o));
    return value(o);
}

py::object parse_json(const nlohmann::ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_symindiv, m) {
    m.doc() = "Countable structures, embeddings and symmetric-indivisibility experiments";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
    py::register_exception<SignatureMismatch>(m, "SignatureMismatch", error.ptr());
    py::register_exception<NotAnEncoding>(m, "NotAnEncoding", error.ptr());
    exhausted_type = py::reinterpret_borrow<py::object>(
        PyErr_NewException("symindiv._symindiv.Exhausted", PyExc_RuntimeError, nullptr));
    m.attr("Exhausted") = exhausted_type;

    m.def("canonical", [](const std::string& text) { return to_string(parse_term(text)); },
          "Parse a term and print it canonically.");

    py::class_<CountableStructure>(m, "Structure")
        .def_property_readonly("size", [](const CountableStructure& s) { return s.size(); })
        .def_property_readonly("symbols",
                               [](const CountableStructure& s) {
                                   std::vector<std::pair<std::string, std::size_t>> out;
                                   for (const auto& sym : s.signature().symbols()) out.emplace_back(sym.name, sym.arity);
                                   return out;
                               })
        .def_property_readonly("term",
                               [](const CountableStructure& s) {
                                   return s.provenance() ? to_string(s.provenance()) : std::string();
                               })
        .def("holds",
             [](const CountableStructure& s, const std::string& symbol, const std::vector<Index>& tuple) {
                 return s.holds(s.signature().index_of(symbol), tuple);
             })
        .def("prefix", [](const CountableStructure& s, Index n) { return prefix(s, n).serialize(); })
        .def("__repr__", [](const CountableStructure& s) {
            return "<Structure " + (s.provenance() ? to_string(s.provenance()) : std::string("?")) + ">";
        });

    m.def("eval", [](const std::string& text) { return eval(text); }, py::arg("term"));

    m.def(
        "greedy_embedding",
        [](const CountableStructure& a, const CountableStructure& u, Index steps, Index budget, Index backtrack,
           bool ordered) {
            GreedyOptions o;
            o.steps = steps;
            o.witness_budget = budget;
            o.backtrack_depth = backtrack;
            o.respect_enum_order = ordered;
            return unwrap(greedy_embedding(a, u, o)).resolved().pairs;
        },
        py::arg("source"), py::arg("target"), py::arg("steps") = 16, py::arg("budget") = 65536,
        py::arg("backtrack") = 8, py::arg("ordered") = false);

    m.def(
        "back_and_forth",
        [](const CountableStructure& s, const CountableStructure& t, Index steps, Index budget) {
            return unwrap(back_and_forth(s, t, steps, budget)).pairs;
        },
        py::arg("s"), py::arg("t"), py::arg("steps") = 16, py::arg("budget") = 65536);

    m.def(
        "monochromatic_copy",
        [](const CountableStructure& u, const std::string& coloring, const CountableStructure& target,
           std::optional<Color> color, Index steps, Index budget, Index backtrack) {
            SearchOptions o;
            o.steps = steps;
            o.witness_budget = budget;
            o.backtrack_depth = backtrack;
            const auto& r = unwrap(find_monochromatic_copy(u, Coloring::parse(coloring), target, color, o));
            return py::make_tuple(r.color, r.embedding.resolved().pairs);
        },
        py::arg("universe"), py::arg("coloring"), py::arg("target"), py::arg("color") = py::none(),
        py::arg("steps") = 16, py::arg("budget") = 65536, py::arg("backtrack") = 8);

    m.def("color_of", [](const std::string& coloring, Index i) { return color_of(Coloring::parse(coloring), i); });

    m.def(
        "gamma_star_obstruction",
        [](Index n, Index prefix_size) {
            auto [a, b] = gamma_star_obstruction(n, prefix_size);
            return py::make_tuple(parse_json(a.to_json()), parse_json(b.to_json()));
        },
        py::arg("n"), py::arg("prefix_size"));

    m.def(
        "decode_graph",
        [](const std::string& text, Index budget) {
            auto d = decode_graph(parse_term(text), budget);
            return py::make_tuple(to_string(d.graph), parse_json(d.certificate.to_json()));
        },
        py::arg("term"), py::arg("budget") = 64);

    m.def(
        "decode_order",
        [](const std::string& text, Index budget) {
            const auto& d = unwrap(decode_order(parse_term(text), budget));
            return py::make_tuple(to_string(d.order), d.indices);
        },
        py::arg("term"), py::arg("budget") = 512);

    m.def(
        "transfer_rado_parity",
        [](Index steps, Index budget) {
            auto rado = eval("(rado)");
            auto id = SymmetricEmbeddingHandle::identity(rado);
            const auto& r = unwrap(transfer_symmetric_copy(rado, rado, id, id, Coloring(coloring::Parity{}),
                                                           greedy_base_finder(), steps, budget));
            return parse_json(r.to_json());
        },
        py::arg("steps") = 8, py::arg("budget") = 65536);

    m.def(
        "reduct_demo",
        [](Index prefix_size, Index steps, Index budget) {
            return parse_json(reduct_counterexample_demo(prefix_size, steps, budget).to_json());
        },
        py::arg("prefix_size") = 64, py::arg("steps") = 24, py::arg("budget") = 65536);

    m.def(
        "verify",
        [](int id) {
            auto r = acceptance::run_criterion(id);
            return py::make_tuple(r.passed, acceptance::format_line(r));
        },
        py::arg("criterion"));
}
