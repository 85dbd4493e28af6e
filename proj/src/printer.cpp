#include "focml/printer.hpp"

#include <sstream>

namespace focml {

namespace {

bool atomic(const TypeExpr& t) {
  return t.kind == TypeExpr::Kind::Named || t.kind == TypeExpr::Kind::Self;
}

bool atomic(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Ident:
    case ExprKind::Qualified:
    case ExprKind::Int:
    case ExprKind::Bool:
    case ExprKind::String:
    case ExprKind::App:
    case ExprKind::Tuple:
      return true;
    default:
      return false;
  }
}

std::string sub(const Expr& e) {
  std::string s = print_expr(e);
  return atomic(e) ? s : "(" + s + ")";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

std::string print_pattern(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Wildcard: return "_";
    case Pattern::Kind::Var: return p.name;
    case Pattern::Kind::Ctor:
    case Pattern::Kind::Tuple: {
      std::string s = p.kind == Pattern::Kind::Ctor ? p.name : "";
      if (p.args.empty()) return s;
      s += p.kind == Pattern::Kind::Ctor ? " (" : "(";
      for (std::size_t i = 0; i < p.args.size(); ++i)
        s += (i ? ", " : "") + print_pattern(p.args[i]);
      return s + ")";
    }
  }
  return "_";
}

std::string join_refs(const std::vector<FactRef>& refs) {
  std::string s;
  for (std::size_t i = 0; i < refs.size(); ++i) s += (i ? ", " : "") + refs[i].str();
  return s;
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F f) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + f(xs[i]);
  return s;
}

std::string print_facts(const Facts& f) {
  std::string s = "by";
  if (!f.definitions.empty()) s += " definition of " + join_refs(f.definitions);
  if (!f.properties.empty()) s += " property " + join_refs(f.properties);
  if (!f.steps.empty())
    s += " step " + join(f.steps, [](const StepLabel& l) { return l.str(); });
  if (!f.hypotheses.empty())
    s += " hypothesis " + join(f.hypotheses, [](const std::string& h) { return h; });
  if (!f.types.empty()) s += " type " + join(f.types, [](const std::string& t) { return t; });
  return s;
}

std::string print_species_expr(const SpeciesExpr& e) {
  if (e.args.empty()) return e.name;
  return e.name + " (" + join(e.args, [](const Expr& a) { return print_expr(a); }) + ")";
}

}  // namespace

std::string print_type(const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Kind::Named: return t.name;
    case TypeExpr::Kind::Self: return "Self";
    case TypeExpr::Kind::Arrow: {
      const std::string lhs = print_type(t.args[0]);
      return (t.args[0].kind == TypeExpr::Kind::Arrow ? "(" + lhs + ")" : lhs) + " -> " +
             print_type(t.args[1]);
    }
    case TypeExpr::Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        const std::string part = print_type(t.args[i]);
        s += (i ? " * " : "") + (atomic(t.args[i]) ? part : "(" + part + ")");
      }
      return s + ")";
    }
  }
  return "?";
}

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Ident: return e.name;
    case ExprKind::Qualified: return e.qualifier + "!" + e.name;
    case ExprKind::Int: return e.name;
    case ExprKind::Bool: return e.name;
    case ExprKind::String: return quote(e.name);
    case ExprKind::App: {
      std::string s = print_expr(e.kids[0]) + " (";
      for (std::size_t i = 1; i < e.kids.size(); ++i) s += (i > 1 ? ", " : "") + print_expr(e.kids[i]);
      return s + ")";
    }
    case ExprKind::Tuple:
      return "(" + join(e.kids, [](const Expr& k) { return print_expr(k); }) + ")";
    case ExprKind::If:
      return "if " + print_expr(e.kids[0]) + " then " + sub(e.kids[1]) + " else " + sub(e.kids[2]);
    case ExprKind::Match: {
      std::string s = "match " + print_expr(e.kids[0]) + " with";
      for (std::size_t i = 1; i < e.kids.size(); ++i)
        s += " | " + print_pattern(e.patterns[i - 1]) + " -> " + sub(e.kids[i]);
      return s;
    }
    case ExprKind::Unary: return std::string(op_spelling(e.op)) + " " + sub(e.kids[0]);
    case ExprKind::Binary:
      return sub(e.kids[0]) + " " + op_spelling(e.op) + " " + sub(e.kids[1]);
    case ExprKind::Quant: {
      std::string s = e.op == Op::Forall ? "all" : "ex";
      for (const auto& b : e.binders) s += " " + b;
      return s + " : " + print_type(*e.binder_type) + ", " + print_expr(e.kids[0]);
    }
  }
  return "?";
}

std::string print_proof(const Proof& p, int indent) {
  switch (p.kind) {
    case Proof::Kind::Admitted: return "admitted";
    case Proof::Kind::By: return print_facts(p.facts);
    case Proof::Kind::Steps: break;
  }
  std::string pad(indent, ' ');
  std::string s;
  for (const auto& st : p.steps) {
    s += "\n" + pad + st.label.str() + " ";
    if (st.qed) {
      s += "qed";
    } else {
      for (const auto& a : st.assumes) {
        s += "assume";
        for (const auto& n : a.names) s += " " + n;
        s += " : " + print_type(a.type) + ", ";
      }
      for (const auto& h : st.hypotheses) s += "hypothesis " + h.name + " : " + print_expr(h.statement) + ", ";
      s += "prove " + print_expr(*st.goal);
    }
    s += " " + print_proof(st.proof, indent + 2);
  }
  return s;
}

std::string print_unit(const CompilationUnit& u) {
  std::ostringstream os;
  for (const auto& ref : u.order) {
    switch (ref.kind) {
      case TopLevelRef::Kind::Type: {
        const auto& t = u.type_decls[ref.index];
        os << "type " << t.name << " =";
        for (const auto& c : t.ctors) {
          os << " | " << c.name;
          if (!c.args.empty())
            os << " (" << join(c.args, [](const TypeExpr& a) { return print_type(a); }) << ")";
        }
        os << " ;;\n\n";
        break;
      }
      case TopLevelRef::Kind::Collection: {
        const auto& c = u.collections[ref.index];
        os << "collection " << c.name << " = implement " << print_species_expr(c.implements)
           << " ; end ;;\n\n";
        break;
      }
      case TopLevelRef::Kind::Species: {
        const auto& s = u.species[ref.index];
        os << "species " << s.name;
        if (!s.params.empty()) {
          os << " (";
          for (std::size_t i = 0; i < s.params.size(); ++i) {
            const auto& p = s.params[i];
            os << (i ? ", " : "") << p.name;
            if (p.kind == SpeciesParam::Kind::Collection) os << " is " << print_species_expr(p.iface);
            else os << " in " << p.carrier;
          }
          os << ")";
        }
        os << " =\n";
        if (!s.inherits.empty())
          os << "  inherit " << join(s.inherits, print_species_expr) << " ;\n";
        for (const auto& m : s.methods) {
          os << "  ";
          switch (m.kind) {
            case MethodKind::Representation: os << "representation = " << print_type(*m.type); break;
            case MethodKind::Signature: os << "signature " << m.name << " : " << print_type(*m.type); break;
            case MethodKind::Let:
              os << "let " << (m.rec ? "rec " : "") << m.name;
              if (!m.params.empty()) {
                os << " (";
                for (std::size_t i = 0; i < m.params.size(); ++i) {
                  os << (i ? ", " : "") << m.params[i].name;
                  if (m.params[i].type) os << " : " << print_type(*m.params[i].type);
                }
                os << ")";
              }
              if (m.type) os << " : " << print_type(*m.type);
              os << " = " << print_expr(*m.body);
              break;
            case MethodKind::Property: os << "property " << m.name << " : " << print_expr(*m.statement); break;
            case MethodKind::Theorem:
              os << "theorem " << m.name << " : " << print_expr(*m.statement) << "\n  proof = "
                 << print_proof(*m.proof, 4);
              break;
            case MethodKind::ProofOf: os << "proof of " << m.name << " = " << print_proof(*m.proof, 4); break;
          }
          os << " ;\n";
        }
        os << "end ;;\n\n";
        break;
      }
    }
  }
  return os.str();
}

}  // namespace focml
