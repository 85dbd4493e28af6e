#include "focml/program.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "focml/parser.hpp"
#include "focml/typing.hpp"

namespace focml {

bool Program::ok() const { return error_count() == 0; }

std::size_t Program::error_count() const {
  std::size_t n = 0;
  for (const auto& d : diagnostics) n += d.is_error();
  return n;
}

const Entry* Program::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

// Names of other top-level declarations a declaration mentions.
struct Mentions {
  std::set<std::string> names;

  void type(const TypeExpr& t) {
    if (t.kind == TypeExpr::Kind::Named) names.insert(t.name);
    for (const auto& a : t.args) type(a);
  }
  void expr(const Expr& e) {
    if (e.kind == ExprKind::Qualified) names.insert(e.qualifier);
    if (e.binder_type) type(*e.binder_type);
    for (const auto& k : e.kids) expr(k);
  }
  void facts(const Facts& f) {
    for (const auto& r : f.definitions)
      if (!r.qualifier.empty()) names.insert(r.qualifier);
    for (const auto& r : f.properties)
      if (!r.qualifier.empty()) names.insert(r.qualifier);
    for (const auto& t : f.types) names.insert(t);
  }
  void proof(const Proof& p) {
    facts(p.facts);
    for (const auto& s : p.steps) {
      for (const auto& a : s.assumes) type(a.type);
      for (const auto& h : s.hypotheses) expr(h.statement);
      if (s.goal) expr(*s.goal);
      proof(s.proof);
    }
  }
  void species_expr(const SpeciesExpr& s) {
    names.insert(s.name);
    for (const auto& a : s.args) expr(a);
  }
  void species(const SpeciesDecl& d) {
    for (const auto& p : d.params)
      if (p.kind == SpeciesParam::Kind::Collection) species_expr(p.iface);
    for (const auto& i : d.inherits) species_expr(i);
    for (const auto& m : d.methods) {
      if (m.type) type(*m.type);
      for (const auto& p : m.params)
        if (p.type) type(*p.type);
      if (m.body) expr(*m.body);
      if (m.statement) expr(*m.statement);
      if (m.proof) proof(*m.proof);
    }
  }
};

Diagnostic skip_note(const std::string& name, const std::string& failed, const SourceLoc& loc) {
  Diagnostic d;
  d.severity = Severity::Note;
  d.kind = ErrorKind::UnknownSpecies;
  d.loc = loc;
  d.message = "'" + name + "' skipped: it depends on '" + failed + "', which failed";
  d.witness = {failed};
  return d;
}

}  // namespace

Program compile(const std::vector<SourceFile>& files) {
  Program p;
  try {
    for (const auto& f : files) p.unit->append(parse_source(f.text, f.path, p.unit.get()));
  } catch (const CompileError& e) {
    p.diagnostics.push_back(e.diagnostic());
    return p;
  }

  std::set<std::string> failed;
  CompilationUnit& u = *p.unit;
  for (const auto& ref : u.order) {
    Entry entry;
    entry.kind = ref.kind;
    Mentions mentions;
    SourceLoc loc;
    switch (ref.kind) {
      case TopLevelRef::Kind::Type:
        entry.name = u.type_decls[ref.index].name;
        loc = u.type_decls[ref.index].loc;
        for (const auto& c : u.type_decls[ref.index].ctors)
          for (const auto& a : c.args) mentions.type(a);
        break;
      case TopLevelRef::Kind::Species:
        entry.name = u.species[ref.index].name;
        loc = u.species[ref.index].loc;
        mentions.species(u.species[ref.index]);
        break;
      case TopLevelRef::Kind::Collection:
        entry.name = u.collections[ref.index].name;
        loc = u.collections[ref.index].loc;
        mentions.species_expr(u.collections[ref.index].implements);
        break;
    }
    std::string blocker;
    for (const auto& n : mentions.names)
      if (failed.count(n)) {
        blocker = n;
        break;
      }
    if (!blocker.empty()) {
      p.diagnostics.push_back(skip_note(entry.name, blocker, loc));
      failed.insert(entry.name);
      p.entries.push_back(std::move(entry));
      continue;
    }

    try {
      switch (ref.kind) {
        case TopLevelRef::Kind::Type: {
          const UnionTypeDecl& t = u.type_decls[ref.index];
          p.env.types[t.name] = &t;
          for (const auto& c : t.ctors) p.env.constructors[c.name] = t.name;
          entry.type = &t;
          break;
        }
        case TopLevelRef::Kind::Species: {
          NormalFormSpecies nf = normalize(u.species[ref.index], p.env);
          infer_types(nf, p.env);
          if (auto leak = check_carrier_leak(nf, p.env)) throw CompileError(*leak);
          invalidate_proofs(nf);
          SpeciesDeps deps = analyze(nf, p.env);
          SpeciesPlan plan = plan_species(nf, deps, p.env, p.plans);
          for (const auto& w : nf.warnings) p.diagnostics.push_back(w);
          for (const auto& m : nf.methods)
            if (m.admitted && m.valid_proof && m.origin == nf.name) {
              Diagnostic d;
              d.severity = Severity::Warning;
              d.kind = ErrorKind::AdmittedProof;
              d.loc = m.loc;
              d.message = "proof of '" + m.name + "' in species '" + nf.name + "' is admitted";
              d.witness = {m.name};
              p.diagnostics.push_back(std::move(d));
            }
          auto shared = std::make_shared<const NormalFormSpecies>(std::move(nf));
          p.env.species[shared->name] = shared;
          p.env.orders[shared->name] = deps.order;
          p.plans[shared->name] = plan;
          entry.species = shared;
          entry.deps = std::move(deps);
          entry.plan = std::move(plan);
          break;
        }
        case TopLevelRef::Kind::Collection: {
          CollectionModel c = make_collection(u.collections[ref.index], p.env);
          CollectionPlan plan = plan_collection(c, p.env, p.plans);
          auto shared = std::make_shared<const CollectionModel>(std::move(c));
          p.env.collections[shared->name] = shared;
          entry.collection = shared;
          entry.collection_plan = std::move(plan);
          break;
        }
      }
      entry.ok = true;
    } catch (const CompileError& e) {
      p.diagnostics.push_back(e.diagnostic());
      failed.insert(entry.name);
    }
    p.entries.push_back(std::move(entry));
  }
  return p;
}

Program compile_text(const std::string& text, const std::string& file) {
  return compile({SourceFile{file, text}});
}

std::vector<SourceFile> read_files(const std::vector<std::string>& paths) {
  std::vector<SourceFile> out;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    out.push_back({path, ss.str()});
  }
  return out;
}

std::vector<LogicalBlock> logical_blocks(const Program& p) {
  std::vector<LogicalBlock> out;
  for (const auto& e : p.entries) {
    if (!e.ok) continue;
    switch (e.kind) {
      case TopLevelRef::Kind::Type: out.push_back(logical_type(*e.type, p.env)); break;
      case TopLevelRef::Kind::Species: out.push_back(logical_species(*e.species, *e.plan, p.env)); break;
      case TopLevelRef::Kind::Collection:
        out.push_back(logical_collection(*e.collection, *e.collection_plan, p.env));
        break;
    }
  }
  return out;
}

std::vector<CModule> comp_modules(const Program& p) {
  std::vector<CModule> out;
  for (const auto& e : p.entries) {
    if (!e.ok) continue;
    switch (e.kind) {
      case TopLevelRef::Kind::Type: out.push_back(comp_type(*e.type, p.env)); break;
      case TopLevelRef::Kind::Species: out.push_back(comp_species(*e.species, *e.plan)); break;
      case TopLevelRef::Kind::Collection:
        out.push_back(comp_collection(*e.collection, *e.collection_plan));
        break;
    }
  }
  return out;
}

std::string emit_logical(const Program& p) {
  std::string s = "Require Export basics.\n";
  for (const auto& b : logical_blocks(p)) s += "\n" + b.text();
  return s;
}

std::string emit_computational(const Program& p) {
  std::string s;
  bool first = true;
  for (const auto& m : comp_modules(p)) {
    if (!first) s += "\n";
    first = false;
    s += render_comp(m);
  }
  return s;
}

}  // namespace focml
