#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "focml/cli.hpp"
#include "focml/report.hpp"

namespace py = pybind11;
using namespace focml;

namespace {

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Note: return "note";
  }
  return "?";
}

py::dict diagnostic_dict(const Diagnostic& d) {
  py::dict out;
  out["severity"] = severity_name(d.severity);
  out["kind"] = std::string(to_string(d.kind));
  out["file"] = d.loc.file;
  out["line"] = d.loc.line;
  out["column"] = d.loc.column;
  out["message"] = d.message;
  out["witness"] = d.witness;
  out["text"] = format(d);
  return out;
}

ValuePtr to_value(const py::handle& o) {
  if (py::isinstance<py::bool_>(o)) return Value::boolean(o.cast<bool>());
  if (py::isinstance<py::int_>(o)) return Value::integer(BigInt(py::str(o).cast<std::string>()));
  if (py::isinstance<py::str>(o)) return literal_value(o.cast<std::string>());
  if (py::isinstance<py::tuple>(o)) {
    std::vector<ValuePtr> items;
    for (auto x : o) items.push_back(to_value(x));
    return Value::tuple(std::move(items));
  }
  throw py::type_error("arguments are int, bool, tuple or literal text");
}

// Ints, bools and strings map to Python; tuples to tuples; a constant
// constructor to its name; anything else to its printed form.
py::object from_value(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: return py::module_::import("builtins").attr("int")(v.num.str());
    case Value::Kind::Bool: return py::bool_(v.flag);
    case Value::Kind::Str: return py::str(v.text);
    case Value::Kind::Tuple: {
      py::list items;
      for (const auto& x : v.items) items.append(from_value(*x));
      return py::tuple(items);
    }
    case Value::Kind::Ctor:
      if (v.items.empty()) return py::str(v.text);
      break;
    default: break;
  }
  return py::str(show_value(v));
}

ValuePtr call(const Program& p, const std::string& coll, const std::string& method, const py::list& args,
              std::size_t steps) {
  std::vector<ValuePtr> vs;
  for (auto a : args) vs.push_back(to_value(a));
  try {
    return eval_call(p, coll, method, vs, steps);
  } catch (const EvalError& e) {
    throw py::value_error(std::string("[") + to_string(e.kind) + "] " + e.what());
  }
}

std::shared_ptr<Program> wrap(Program p) { return std::make_shared<Program>(std::move(p)); }

}  // namespace

PYBIND11_MODULE(_focml, m) {
  m.doc() = "Species compiler: checking, dependency analysis, emission and evaluation.";

  py::class_<Program, std::shared_ptr<Program>>(m, "Program")
      .def_property_readonly("ok", &Program::ok)
      .def_property_readonly("error_count", &Program::error_count)
      .def_property_readonly("diagnostics",
                             [](const Program& p) {
                               py::list out;
                               for (const auto& d : p.diagnostics) out.append(diagnostic_dict(d));
                               return out;
                             })
      .def_property_readonly("entities",
                             [](const Program& p) {
                               py::list out;
                               for (const auto& e : p.entries) out.append(py::make_tuple(e.name, e.ok));
                               return out;
                             })
      .def("deps_json", [](const Program& p, int indent) { return deps_json(p).dump(indent); }, py::arg("indent") = 2)
      .def("emit_logical", &emit_logical)
      .def("emit_computational", &emit_computational)
      .def("doc", &doc_text)
      .def("diagnostics_text", [](const Program& p) { return format_diagnostics(p, false); })
      .def(
          "eval",
          [](const Program& p, const std::string& coll, const std::string& method, const py::list& args,
             std::size_t steps) { return from_value(*call(p, coll, method, args, steps)); },
          py::arg("collection"), py::arg("method"), py::arg("args") = py::list(), py::arg("steps") = 1000000)
      .def(
          "eval_text",
          [](const Program& p, const std::string& coll, const std::string& method, const py::list& args,
             std::size_t steps) { return show_value(*call(p, coll, method, args, steps)); },
          py::arg("collection"), py::arg("method"), py::arg("args") = py::list(), py::arg("steps") = 1000000);

  m.def(
      "compile_files",
      [](const std::vector<std::string>& paths) {
        std::vector<SourceFile> files;
        try {
          files = read_files(paths);
        } catch (const std::runtime_error& e) {
          throw py::value_error(e.what());
        }
        return wrap(compile(files));
      },
      py::arg("paths"));
  m.def(
      "compile_text", [](const std::string& text, const std::string& file) { return wrap(compile_text(text, file)); },
      py::arg("text"), py::arg("file") = "<input>");
  m.def(
      "run",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "focmlc");
        std::ostringstream out, err;
        int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line driver; returns (exit code, stdout, stderr).");
}
