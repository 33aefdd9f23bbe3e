#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ontohyp/cli.hpp"
#include "ontohyp/error.hpp"
#include "ontohyp/harness.hpp"
#include "ontohyp/io.hpp"
#include "ontohyp/language.hpp"
#include "ontohyp/metrics.hpp"
#include "ontohyp/prover.hpp"

namespace py = pybind11;
using namespace ontohyp;
using nlohmann::json;

namespace {

std::vector<Axiom> axioms_of(const std::vector<std::string>& texts) {
  std::vector<Axiom> out;
  for (const auto& t : texts) out.push_back(axiom_from_string(t));
  return out;
}

std::string generate(int height, const std::string& mode, std::uint64_t seed,
                     const std::string& subtask, const std::string& subtype_style,
                     const std::string& id) {
  GenConfig config;
  config.height = height;
  config.mode = mode_from_string(mode);
  config.seed = seed;
  config.subtask = subtask_from_string(subtask);
  config.subtype_style = subtype_style_from_string(subtype_style);
  return to_json(make_record(id, generate_example(config))).dump();
}

std::string grade_json(const std::string& record, const std::string& response) {
  return to_json(grade_response(dataset_record_from_json(json::parse(record)), response)).dump();
}

std::optional<std::string> parse(const std::string& text) {
  auto r = parse_statement(text);
  if (auto* a = std::get_if<Axiom>(&r)) return to_string(*a);
  return std::nullopt;
}

std::optional<std::string> explain_json(const std::vector<std::string>& visible,
                                        const std::vector<std::string>& hypotheses,
                                        const std::vector<std::string>& observations) {
  const auto v = axioms_of(visible), h = axioms_of(hypotheses), o = axioms_of(observations);
  const auto forest = explain(v, h, o);
  if (!forest) return std::nullopt;
  json trees = json::array();
  for (const auto& t : forest->trees) trees.push_back(to_json(t));
  return trees.dump();
}

std::vector<std::string> closure(const std::vector<std::string>& axioms) {
  const auto v = axioms_of(axioms);
  std::vector<std::string> out;
  for (const auto& f : close(v).facts) out.push_back(to_string(f));
  return out;
}

py::tuple run(const std::vector<std::string>& args) {
  std::vector<std::string> full{"ontohyp"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hypothesis-discovery reasoning examples: generator, prover and grader";

  // Translators are tried newest first, so the base class goes in first.
  const auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<Infeasible>(m, "Infeasible", base.ptr());
  py::register_exception<InvalidCounts>(m, "InvalidCounts", base.ptr());

  m.def("generate", &generate, py::arg("height") = 1, py::arg("mode") = "multi",
        py::arg("seed") = 0, py::arg("subtask") = "random",
        py::arg("subtype_style") = "mixed", py::arg("id") = "ex-000000",
        "One dataset record as a JSON string.");
  m.def("grade", &grade_json, py::arg("record"), py::arg("response"),
        "Grade a raw response against a dataset record (both JSON strings).");
  m.def("parse", &parse, py::arg("text"),
        "Axiom text form of an English statement, or None.");
  m.def("render", [](const std::string& axiom) { return render_axiom(axiom_from_string(axiom)); },
        py::arg("axiom"));
  m.def("explain", &explain_json, py::arg("visible"), py::arg("hypotheses"),
        py::arg("observations"), "Minimal proof trees as a JSON string, or None.");
  m.def("close", &closure, py::arg("axioms"));
  m.def("wilson_interval",
        [](long s, long n, double conf) {
          const auto i = wilson_interval(s, n, conf);
          return std::pair{i.lower, i.upper};
        },
        py::arg("successes"), py::arg("trials"), py::arg("confidence") = 0.95);
  m.def("run_cli", &run, py::arg("args"), "Run the command line; returns (code, stdout, stderr).");
}
