#include "focml/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "focml/parser.hpp"
#include "focml/report.hpp"

namespace focml {

ValuePtr eval_call(const Program& p, const std::string& collection, const std::string& method,
                   const std::vector<ValuePtr>& args, std::size_t step_limit) {
  const Entry* e = p.find(collection);
  if (!e || e->kind != TopLevelRef::Kind::Collection || !e->ok)
    throw EvalError(EvalError::Kind::UnknownName, "unknown collection " + collection);
  const CollectionPlan& plan = *e->collection_plan;
  auto it = std::find(plan.methods.begin(), plan.methods.end(), method);
  if (it == plan.methods.end())
    throw EvalError(EvalError::Kind::UnknownName, collection + " has no method " + method);
  if (plan.logical[static_cast<std::size_t>(it - plan.methods.begin())])
    throw EvalError(EvalError::Kind::UnknownName, collection + "!" + method + " is logical and has no computational content");
  Evaluator ev(comp_modules(p), step_limit);
  return ev.call(collection, method, args);
}

CallSpec parse_call(const std::string& text) {
  // Arguments are literals, split at top-level commas so that `-3` is
  // accepted although the expression syntax has no unary minus.
  std::size_t open = text.find('(');
  CallSpec c;
  Expr head = parse_expression(text.substr(0, open));
  if (head.kind != ExprKind::Qualified)
    throw EvalError(EvalError::Kind::UnknownName, "expected Collection!method(args...), got " + text);
  c.collection = head.qualifier;
  c.method = head.name;
  if (open == std::string::npos) return c;
  std::size_t close = text.find_last_of(')');
  if (close == std::string::npos || close < open || text.find_first_not_of(" \t\n", close + 1) != std::string::npos)
    fail(ErrorKind::SyntaxError, {"<call>", 1, static_cast<int>(open) + 1}, "unbalanced argument list in " + text);
  std::string inner = text.substr(open + 1, close - open - 1);
  if (inner.find_first_not_of(" \t\n") == std::string::npos) return c;
  int depth = 0;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= inner.size(); ++i) {
    char ch = i < inner.size() ? inner[i] : ',';
    if (ch == '"') quoted = !quoted;
    if (quoted) continue;
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      c.args.push_back(literal_value(inner.substr(start, i - start)));
      start = i + 1;
    }
  }
  return c;
}

namespace {

bool color_enabled() {
  const char* v = std::getenv("FOCML_COLOR");
  return v && std::string(v) == "1";
}

// "-" is standard output.
bool write_output(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
  if (path == "-") {
    out << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "focmlc: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return true;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"focmlc: compiler for species, collections and their proofs"};
  app.require_subcommand(1);
  std::vector<std::string> files;
  std::string json_out = "-", logical_out, comp_out, call, doc_out = "-";
  std::size_t steps = 1000000;

  auto add_files = [&](CLI::App* sub) { sub->add_option("files", files, "source files")->required(); };
  CLI::App* check = app.add_subcommand("check", "parse, flatten, type and analyse");
  add_files(check);
  CLI::App* deps = app.add_subcommand("deps", "dependency report as JSON");
  add_files(deps);
  deps->add_option("--json", json_out, "output file, - for stdout");
  CLI::App* emit = app.add_subcommand("emit", "write the logical and computational targets");
  add_files(emit);
  emit->add_option("--logical", logical_out, "logical output file");
  emit->add_option("--comp", comp_out, "computational output file");
  CLI::App* eval = app.add_subcommand("eval", "run a collection method");
  add_files(eval);
  eval->add_option("--call", call, "Collection!method(args...)")->required();
  eval->add_option("--steps", steps, "step limit");
  CLI::App* doc = app.add_subcommand("doc", "method list with origins, reverted proofs and admitted facts");
  add_files(doc);
  doc->add_option("--out", doc_out, "output file, - for stdout");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();  // program name
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "focmlc: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  Program p;
  try {
    p = compile(read_files(files));
  } catch (const std::runtime_error& e) {
    err << "focmlc: " << e.what() << "\n";
    return kExitUsage;
  }
  err << format_diagnostics(p, color_enabled());
  const int status = p.ok() ? kExitOk : kExitCompileError;

  if (check->parsed()) return status;
  if (deps->parsed()) {
    if (!write_output(json_out, deps_json(p).dump(2) + "\n", out, err)) return kExitUsage;
    return status;
  }
  if (doc->parsed()) {
    if (!write_output(doc_out, doc_text(p), out, err)) return kExitUsage;
    return status;
  }
  if (status != kExitOk) return status;
  if (emit->parsed()) {
    if (logical_out.empty() && comp_out.empty()) logical_out = "-";
    if (!logical_out.empty() && !write_output(logical_out, emit_logical(p), out, err)) return kExitUsage;
    if (!comp_out.empty() && !write_output(comp_out, emit_computational(p), out, err)) return kExitUsage;
    return kExitOk;
  }
  // eval
  try {
    CallSpec c = parse_call(call);
    out << show_value(*eval_call(p, c.collection, c.method, c.args, steps)) << "\n";
  } catch (const CompileError& e) {
    err << format(e.diagnostic(), color_enabled()) << "\n";
    return kExitUsage;
  } catch (const EvalError& e) {
    err << "focmlc: eval: [" << to_string(e.kind) << "] " << e.what() << "\n";
    return kExitCompileError;
  }
  return kExitOk;
}

}  // namespace focml
