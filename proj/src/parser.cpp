#include "focml/parser.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "focml/lexer.hpp"

namespace focml {

namespace {

bool capitalized(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

StepLabel parse_label_text(const std::string& text) {
  // "<l>i"
  const auto gt = text.find('>');
  return StepLabel{std::stoi(text.substr(1, gt - 1)), std::stoi(text.substr(gt + 1))};
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  CompilationUnit unit() {
    CompilationUnit u;
    while (!at(Tok::Eof)) {
      if (at(Tok::KwType)) {
        u.order.push_back({TopLevelRef::Kind::Type, u.type_decls.size()});
        u.type_decls.push_back(type_decl());
      } else if (at(Tok::KwSpecies)) {
        u.order.push_back({TopLevelRef::Kind::Species, u.species.size()});
        u.species.push_back(species());
      } else if (at(Tok::KwCollection)) {
        u.order.push_back({TopLevelRef::Kind::Collection, u.collections.size()});
        u.collections.push_back(collection());
      } else {
        unexpected("'type', 'species' or 'collection'");
      }
    }
    return u;
  }

  Expr lone_expression() {
    Expr e = formula();
    expect(Tok::Eof, "end of expression");
    return e;
  }

 private:
  // -- token plumbing -------------------------------------------------------
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t n) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  Token expect(Tok k, const char* what = nullptr) {
    if (!at(k)) unexpected(what ? what : describe(k));
    return toks_[pos_++];
  }
  [[noreturn]] void unexpected(const std::string& wanted) const {
    const Token& t = cur();
    std::string got = t.kind == Tok::Eof ? "end of input" : "'" + t.text + "'";
    fail(ErrorKind::SyntaxError, t.loc, "expected " + wanted + " but found " + got);
  }
  std::string ident(const char* what = "identifier") { return expect(Tok::Ident, what).text; }

  // -- top level ------------------------------------------------------------
  UnionTypeDecl type_decl() {
    UnionTypeDecl d;
    d.loc = expect(Tok::KwType).loc;
    d.name = ident("type name");
    expect(Tok::Equal);
    accept(Tok::Bar);
    do {
      Constructor c;
      c.name = ident("constructor name");
      if (accept(Tok::LParen)) {
        do c.args.push_back(type_expr());
        while (accept(Tok::Comma));
        expect(Tok::RParen);
      }
      d.ctors.push_back(std::move(c));
    } while (accept(Tok::Bar));
    expect(Tok::SemiSemi);
    return d;
  }

  SpeciesExpr species_expr() {
    SpeciesExpr e;
    e.loc = cur().loc;
    e.name = ident("species name");
    if (accept(Tok::LParen)) {
      do e.args.push_back(cexpr());
      while (accept(Tok::Comma));
      expect(Tok::RParen);
    }
    return e;
  }

  SpeciesDecl species() {
    SpeciesDecl s;
    s.loc = expect(Tok::KwSpecies).loc;
    s.name = ident("species name");
    params_.clear();
    if (accept(Tok::LParen)) {
      do {
        SpeciesParam p;
        p.loc = cur().loc;
        p.name = ident("parameter name");
        if (accept(Tok::KwIs)) {
          p.kind = SpeciesParam::Kind::Collection;
          p.iface = species_expr();
        } else if (accept(Tok::KwIn)) {
          p.kind = SpeciesParam::Kind::Entity;
          const Token c = expect(Tok::Ident, "collection parameter");
          bool found = false;
          for (const auto& q : s.params)
            if (q.kind == SpeciesParam::Kind::Collection && q.name == c.text) found = true;
          if (!found)
            fail(ErrorKind::UnknownName, c.loc,
                 "entity parameter '" + p.name + "' must range over a preceding collection parameter, not '" + c.text + "'");
          p.carrier = c.text;
        } else {
          unexpected("'is' or 'in'");
        }
        for (const auto& q : s.params)
          if (q.name == p.name)
            fail(ErrorKind::DuplicateName, p.loc, "duplicate parameter '" + p.name + "'");
        params_.insert(p.name);
        s.params.push_back(std::move(p));
      } while (accept(Tok::Comma));
      expect(Tok::RParen);
    }
    expect(Tok::Equal);
    while (!at(Tok::KwEnd)) {
      if (at(Tok::KwInherit)) {
        ++pos_;
        do s.inherits.push_back(species_expr());
        while (accept(Tok::Comma));
      } else {
        s.methods.push_back(method());
      }
      if (!accept(Tok::Semi) && !at(Tok::KwEnd)) unexpected("';' or 'end'");
    }
    expect(Tok::KwEnd);
    expect(Tok::SemiSemi);
    params_.clear();
    return s;
  }

  CollectionDecl collection() {
    CollectionDecl c;
    c.loc = expect(Tok::KwCollection).loc;
    c.name = ident("collection name");
    expect(Tok::Equal);
    expect(Tok::KwImplement);
    c.implements = species_expr();
    if (accept(Tok::Semi)) expect(Tok::KwEnd);
    expect(Tok::SemiSemi);
    return c;
  }

  // -- methods --------------------------------------------------------------
  MethodDecl method() {
    MethodDecl m;
    m.loc = cur().loc;
    switch (cur().kind) {
      case Tok::KwRepresentation:
        ++pos_;
        m.kind = MethodKind::Representation;
        m.name = "rep";
        expect(Tok::Equal);
        m.type = type_expr();
        return m;
      case Tok::KwSignature:
        ++pos_;
        m.kind = MethodKind::Signature;
        m.name = method_name();
        expect(Tok::Colon);
        m.type = type_expr();
        return m;
      case Tok::KwLet:
        ++pos_;
        m.kind = MethodKind::Let;
        m.rec = accept(Tok::KwRec);
        m.name = method_name();
        if (accept(Tok::LParen)) {
          do {
            LetParam p;
            p.name = ident("parameter name");
            if (accept(Tok::Colon)) p.type = type_expr();
            m.params.push_back(std::move(p));
          } while (accept(Tok::Comma));
          expect(Tok::RParen);
        }
        if (accept(Tok::Colon)) m.type = type_expr();
        expect(Tok::Equal);
        m.body = formula();
        return m;
      case Tok::KwProperty:
        ++pos_;
        m.kind = MethodKind::Property;
        m.name = method_name();
        expect(Tok::Colon);
        m.statement = formula();
        return m;
      case Tok::KwTheorem:
        ++pos_;
        m.kind = MethodKind::Theorem;
        m.name = method_name();
        expect(Tok::Colon);
        m.statement = formula();
        // A theorem stated without its proof is an ordinary property.
        if (!accept(Tok::KwProof)) {
          m.kind = MethodKind::Property;
          return m;
        }
        expect(Tok::Equal);
        m.proof = proof_root();
        return m;
      case Tok::KwProof:
        ++pos_;
        m.kind = MethodKind::ProofOf;
        expect(Tok::KwOf);
        m.name = method_name();
        expect(Tok::Equal);
        m.proof = proof_root();
        return m;
      default:
        unexpected("a method declaration");
    }
  }

  std::string method_name() {
    const Token t = expect(Tok::Ident, "method name");
    if (t.text == "rep")
      fail(ErrorKind::SyntaxError, t.loc, "'rep' is reserved for the representation");
    return t.text;
  }

  // -- types ----------------------------------------------------------------
  TypeExpr type_expr() {
    TypeExpr lhs = tuple_type();
    if (accept(Tok::Arrow)) return TypeExpr::arrow(std::move(lhs), type_expr());
    return lhs;
  }

  TypeExpr tuple_type() {
    const SourceLoc loc = cur().loc;
    std::vector<TypeExpr> parts{atom_type()};
    while (accept(Tok::Star)) parts.push_back(atom_type());
    if (parts.size() == 1) return std::move(parts[0]);
    TypeExpr t = TypeExpr::tuple(std::move(parts));
    t.loc = loc;
    return t;
  }

  TypeExpr atom_type() {
    const SourceLoc loc = cur().loc;
    if (accept(Tok::KwSelf)) return TypeExpr::self(loc);
    if (at(Tok::Ident)) return TypeExpr::named(ident(), loc);
    if (accept(Tok::LParen)) {
      TypeExpr t = type_expr();
      expect(Tok::RParen);
      return t;
    }
    unexpected("a type");
  }

  // -- expressions and formulas ---------------------------------------------
  Expr formula() {
    if (at(Tok::KwAll) || at(Tok::KwEx)) return quantifier();
    return iff();
  }

  Expr quantifier() {
    const Token q = toks_[pos_++];
    std::vector<std::string> vars;
    do vars.push_back(ident("bound variable"));
    while (at(Tok::Ident));
    expect(Tok::Colon);
    TypeExpr ty = type_expr();
    expect(Tok::Comma);
    Expr body = formula();
    return Expr::quant(q.kind == Tok::KwAll ? Op::Forall : Op::Exists, std::move(vars),
                       std::move(ty), std::move(body), q.loc);
  }

  Expr iff() {
    Expr lhs = implies();
    while (at(Tok::Iff)) {
      const SourceLoc loc = toks_[pos_++].loc;
      lhs = Expr::binary(Op::Iff, std::move(lhs), implies(), loc);
    }
    return lhs;
  }

  Expr implies() {
    Expr lhs = disj();
    if (at(Tok::Arrow)) {
      const SourceLoc loc = toks_[pos_++].loc;
      return Expr::binary(Op::Implies, std::move(lhs), implies(), loc);
    }
    return lhs;
  }

  Expr disj() {
    Expr lhs = conj();
    while (at(Tok::Disj)) {
      const SourceLoc loc = toks_[pos_++].loc;
      lhs = Expr::binary(Op::Disj, std::move(lhs), conj(), loc);
    }
    return lhs;
  }

  Expr conj() {
    Expr lhs = neg();
    while (at(Tok::Conj)) {
      const SourceLoc loc = toks_[pos_++].loc;
      lhs = Expr::binary(Op::Conj, std::move(lhs), neg(), loc);
    }
    return lhs;
  }

  Expr neg() {
    if (at(Tok::Tilde)) {
      const SourceLoc loc = toks_[pos_++].loc;
      return Expr::unary(Op::Neg, neg(), loc);
    }
    if (at(Tok::KwAll) || at(Tok::KwEx)) return quantifier();
    return cexpr();
  }

  Expr cexpr() {
    if (at(Tok::KwIf)) return if_expr();
    if (at(Tok::KwMatch)) return match_expr();
    return orelse();
  }

  Expr if_expr() {
    const SourceLoc loc = expect(Tok::KwIf).loc;
    Expr c = formula();
    expect(Tok::KwThen);
    Expr t = cexpr();
    expect(Tok::KwElse);
    Expr e = cexpr();
    return Expr::if_(std::move(c), std::move(t), std::move(e), loc);
  }

  Expr match_expr() {
    Expr m;
    m.kind = ExprKind::Match;
    m.loc = expect(Tok::KwMatch).loc;
    m.kids.push_back(formula());
    expect(Tok::KwWith);
    accept(Tok::Bar);
    do {
      m.patterns.push_back(pattern());
      expect(Tok::Arrow);
      m.kids.push_back(cexpr());
    } while (accept(Tok::Bar));
    return m;
  }

  Pattern pattern() {
    Pattern p;
    p.loc = cur().loc;
    if (accept(Tok::Underscore)) return p;
    if (accept(Tok::LParen)) {
      std::vector<Pattern> parts{pattern()};
      while (accept(Tok::Comma)) parts.push_back(pattern());
      expect(Tok::RParen);
      if (parts.size() == 1) return std::move(parts[0]);
      p.kind = Pattern::Kind::Tuple;
      p.args = std::move(parts);
      return p;
    }
    p.name = ident("pattern");
    if (!capitalized(p.name)) {
      p.kind = Pattern::Kind::Var;
      return p;
    }
    p.kind = Pattern::Kind::Ctor;
    if (accept(Tok::LParen)) {
      do p.args.push_back(pattern());
      while (accept(Tok::Comma));
      expect(Tok::RParen);
    }
    return p;
  }

  Expr orelse() {
    Expr lhs = andalso();
    while (at(Tok::OrOr)) {
      const SourceLoc loc = toks_[pos_++].loc;
      lhs = Expr::binary(Op::Or, std::move(lhs), andalso(), loc);
    }
    return lhs;
  }

  Expr andalso() {
    Expr lhs = comparison();
    while (at(Tok::AndAnd)) {
      const SourceLoc loc = toks_[pos_++].loc;
      lhs = Expr::binary(Op::And, std::move(lhs), comparison(), loc);
    }
    return lhs;
  }

  Expr comparison() {
    Expr lhs = additive();
    Op op;
    if (at(Tok::Equal)) op = Op::Eq;
    else if (at(Tok::LtInt)) op = Op::LtInt;
    else if (at(Tok::EqInt)) op = Op::EqInt;
    else return lhs;
    const SourceLoc loc = toks_[pos_++].loc;
    return Expr::binary(op, std::move(lhs), additive(), loc);
  }

  Expr additive() {
    Expr lhs = prefix();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const Op op = at(Tok::Plus) ? Op::Add : Op::Sub;
      const SourceLoc loc = toks_[pos_++].loc;
      lhs = Expr::binary(op, std::move(lhs), prefix(), loc);
    }
    return lhs;
  }

  Expr prefix() {
    if (at(Tok::TildeTilde)) {
      const SourceLoc loc = toks_[pos_++].loc;
      return Expr::unary(Op::Not, prefix(), loc);
    }
    return application();
  }

  Expr application() {
    const SourceLoc loc = cur().loc;
    Expr head = atom();
    const bool callable = head.kind == ExprKind::Ident || head.kind == ExprKind::Qualified;
    if (callable && at(Tok::LParen)) {
      ++pos_;
      std::vector<Expr> args;
      do args.push_back(formula());
      while (accept(Tok::Comma));
      expect(Tok::RParen);
      return Expr::app(std::move(head), std::move(args), loc);
    }
    return head;
  }

  Expr atom() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Ident: {
        ++pos_;
        if (accept(Tok::Bang)) {
          const Token m = expect(Tok::Ident, "method name");
          return Expr::qualified(t.text, m.text, t.loc);
        }
        return Expr::ident(t.text, t.loc);
      }
      case Tok::Int:
        ++pos_;
        return Expr::int_lit(t.text, t.loc);
      case Tok::String:
        ++pos_;
        return Expr::string_lit(t.text, t.loc);
      case Tok::KwTrue:
      case Tok::KwFalse:
        ++pos_;
        return Expr::bool_lit(t.kind == Tok::KwTrue, t.loc);
      case Tok::KwIf:
        return if_expr();
      case Tok::KwMatch:
        return match_expr();
      case Tok::LParen: {
        const SourceLoc loc = t.loc;
        ++pos_;
        std::vector<Expr> parts{formula()};
        while (accept(Tok::Comma)) parts.push_back(formula());
        expect(Tok::RParen);
        if (parts.size() == 1) return std::move(parts[0]);
        return Expr::tuple(std::move(parts), loc);
      }
      default:
        unexpected("an expression");
    }
  }

  // -- proofs ---------------------------------------------------------------
  struct Scope {
    std::vector<StepLabel> closed;
    std::vector<std::string> hypotheses;
  };

  Proof proof_root() {
    std::vector<Scope> scopes;
    return proof(1, scopes);
  }

  // A proof at nesting depth `level`; `scopes` holds what enclosing steps see.
  Proof proof(int level, std::vector<Scope>& scopes) {
    Proof p;
    p.loc = cur().loc;
    if (accept(Tok::KwAdmitted)) {
      p.kind = Proof::Kind::Admitted;
      return p;
    }
    if (at(Tok::KwBy)) {
      p.kind = Proof::Kind::By;
      p.facts = facts(scopes);
      return p;
    }
    if (!at(Tok::StepLabel)) unexpected("'admitted', 'by' or a step label");
    p.kind = Proof::Kind::Steps;
    scopes.push_back(Scope{});
    while (at(Tok::StepLabel)) {
      const Token lt = toks_[pos_];
      const StepLabel label = parse_label_text(lt.text);
      if (label.level != level) break;
      ++pos_;
      if (!p.steps.empty() && p.steps.back().qed)
        fail(ErrorKind::IllFormedProof, lt.loc,
             "step " + label.str() + " follows the qed step of its level");
      for (const auto& s : p.steps)
        if (s.label == label)
          fail(ErrorKind::IllFormedProof, lt.loc, "duplicate step label " + label.str());
      ProofStep step;
      step.label = label;
      step.loc = lt.loc;
      Scope inner;
      if (accept(Tok::KwQed)) {
        step.qed = true;
      } else {
        for (;;) {
          if (accept(Tok::KwAssume)) {
            Assumption a;
            do a.names.push_back(ident("variable"));
            while (at(Tok::Ident));
            expect(Tok::Colon);
            a.type = type_expr();
            expect(Tok::Comma);
            step.assumes.push_back(std::move(a));
          } else if (accept(Tok::KwHypothesis)) {
            Hypothesis h;
            h.name = ident("hypothesis name");
            expect(Tok::Colon);
            h.statement = formula();
            expect(Tok::Comma);
            inner.hypotheses.push_back(h.name);
            step.hypotheses.push_back(std::move(h));
          } else {
            break;
          }
        }
        expect(Tok::KwProve, "'assume', 'hypothesis', 'prove' or 'qed'");
        step.goal = formula();
      }
      scopes.push_back(std::move(inner));
      step.proof = proof(level + 1, scopes);
      scopes.pop_back();
      scopes.back().closed.push_back(label);
      p.steps.push_back(std::move(step));
    }
    scopes.pop_back();
    if (p.steps.empty()) unexpected("a step labelled <" + std::to_string(level) + ">n");
    if (!p.steps.back().qed)
      fail(ErrorKind::IllFormedProof, p.steps.back().loc,
           "step list at level " + std::to_string(level) + " does not end with a qed step");
    return p;
  }

  FactRef fact_ref() {
    FactRef r;
    const Token t = expect(Tok::Ident, "fact name");
    r.loc = t.loc;
    if (accept(Tok::Bang)) {
      r.qualifier = t.text;
      r.name = expect(Tok::Ident, "method name").text;
    } else {
      r.name = t.text;
    }
    return r;
  }

  Facts facts(const std::vector<Scope>& scopes) {
    expect(Tok::KwBy);
    Facts f;
    bool any = false;
    for (;;) {
      if (accept(Tok::KwDefinition)) {
        expect(Tok::KwOf);
        do {
          FactRef r = fact_ref();
          if (!r.qualifier.empty())
            fail(ErrorKind::InvalidUnfold, r.loc,
                 "cannot unfold '" + r.str() + "': definitions of " +
                     (params_.count(r.qualifier) ? "collection parameters" : "collections") +
                     " are encapsulated");
          f.definitions.push_back(std::move(r));
        } while (accept(Tok::Comma));
      } else if (accept(Tok::KwProperty)) {
        do f.properties.push_back(fact_ref());
        while (accept(Tok::Comma));
      } else if (accept(Tok::KwStep)) {
        do {
          const Token t = expect(Tok::StepLabel, "step label");
          const StepLabel l = parse_label_text(t.text);
          bool visible = false;
          for (const auto& s : scopes)
            for (const auto& c : s.closed) visible = visible || c == l;
          if (!visible)
            fail(ErrorKind::IllFormedProof, t.loc,
                 "step " + l.str() + " is not a previously closed step in scope");
          f.steps.push_back(l);
        } while (accept(Tok::Comma));
      } else if (accept(Tok::KwHypothesis)) {
        do {
          const Token t = expect(Tok::Ident, "hypothesis name");
          bool visible = false;
          for (const auto& s : scopes)
            for (const auto& h : s.hypotheses) visible = visible || h == t.text;
          if (!visible)
            fail(ErrorKind::IllFormedProof, t.loc, "hypothesis '" + t.text + "' is not in scope");
          f.hypotheses.push_back(t.text);
        } while (accept(Tok::Comma));
      } else if (accept(Tok::KwType)) {
        do f.types.push_back(ident("type name"));
        while (accept(Tok::Comma));
      } else {
        break;
      }
      any = true;
    }
    if (!any) unexpected("'definition of', 'property', 'step', 'hypothesis' or 'type'");
    return f;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> params_;
};

// ---------------------------------------------------------------------------
// Checks needing the whole unit: top-level names, inheritance references,
// duplicate methods, stratification and `proof of` targets.
// ---------------------------------------------------------------------------

struct UnitView {
  std::map<std::string, const SpeciesDecl*> species;
  std::set<std::string> collections;
  std::set<std::string> types;
};

void collect_view(const CompilationUnit& u, UnitView& v) {
  for (const auto& s : u.species) v.species[s.name] = &s;
  for (const auto& c : u.collections) v.collections.insert(c.name);
  for (const auto& t : u.type_decls) v.types.insert(t.name);
}

// Kinds of every method visible in `s`, including inherited ones.
void visible_kinds(const UnitView& v, const SpeciesDecl& s, std::map<std::string, MethodKind>& out,
                   std::set<std::string>& visiting) {
  if (!visiting.insert(s.name).second) return;
  for (const auto& inh : s.inherits) {
    auto it = v.species.find(inh.name);
    if (it != v.species.end()) visible_kinds(v, *it->second, out, visiting);
  }
  for (const auto& m : s.methods) {
    if (m.kind == MethodKind::ProofOf) continue;
    auto [it, fresh] = out.emplace(m.name, m.kind);
    // A definition refines a signature; a theorem refines a property.
    if (!fresh && !(is_logical(it->second) && m.kind == MethodKind::Signature)) it->second = m.kind;
  }
}

void check_function_body(const Expr& e, const std::map<std::string, MethodKind>& kinds,
                         const std::set<std::string>& bound) {
  if ((e.kind == ExprKind::Unary || e.kind == ExprKind::Binary || e.kind == ExprKind::Quant) &&
      is_formula_op(e.op))
    fail(ErrorKind::StratificationViolation, e.loc,
         std::string("formula connective '") + op_spelling(e.op) + "' in a function body");
  if (e.kind == ExprKind::Ident && !bound.count(e.name)) {
    auto it = kinds.find(e.name);
    if (it != kinds.end() && is_logical(it->second))
      fail(ErrorKind::StratificationViolation, e.loc,
           "function body refers to the logical method '" + e.name + "'");
  }
  std::set<std::string> inner = bound;
  if (e.kind == ExprKind::Match) {
    std::function<void(const Pattern&, std::set<std::string>&)> bind =
        [&](const Pattern& p, std::set<std::string>& b) {
          if (p.kind == Pattern::Kind::Var) b.insert(p.name);
          for (const auto& a : p.args) bind(a, b);
        };
    check_function_body(e.kids[0], kinds, bound);
    for (std::size_t i = 1; i < e.kids.size(); ++i) {
      std::set<std::string> b = bound;
      bind(e.patterns[i - 1], b);
      check_function_body(e.kids[i], kinds, b);
    }
    return;
  }
  for (const auto& k : e.kids) check_function_body(k, kinds, inner);
}

void check_unit(const CompilationUnit& u, const CompilationUnit* prior) {
  UnitView view;
  if (prior) collect_view(*prior, view);

  std::set<std::string> top;
  if (prior) {
    for (const auto& s : prior->species) top.insert(s.name);
    for (const auto& c : prior->collections) top.insert(c.name);
    for (const auto& t : prior->type_decls) top.insert(t.name);
  }
  auto declare = [&](const std::string& name, const SourceLoc& loc) {
    if (!top.insert(name).second)
      fail(ErrorKind::DuplicateName, loc, "'" + name + "' is already declared");
  };
  auto known_species = [&](const SpeciesExpr& e) {
    if (!view.species.count(e.name))
      fail(ErrorKind::UnknownSpecies, e.loc, "unknown species '" + e.name + "'");
  };

  for (const auto& ref : u.order) {
    switch (ref.kind) {
      case TopLevelRef::Kind::Type: {
        const auto& t = u.type_decls[ref.index];
        declare(t.name, t.loc);
        std::set<std::string> ctors;
        for (const auto& c : t.ctors)
          if (!ctors.insert(c.name).second)
            fail(ErrorKind::DuplicateName, t.loc, "duplicate constructor '" + c.name + "'");
        view.types.insert(t.name);
        break;
      }
      case TopLevelRef::Kind::Collection: {
        const auto& c = u.collections[ref.index];
        declare(c.name, c.loc);
        known_species(c.implements);
        view.collections.insert(c.name);
        break;
      }
      case TopLevelRef::Kind::Species: {
        const auto& s = u.species[ref.index];
        declare(s.name, s.loc);
        for (const auto& p : s.params)
          if (p.kind == SpeciesParam::Kind::Collection) known_species(p.iface);
        for (const auto& inh : s.inherits) known_species(inh);

        std::set<std::string> local;
        bool has_rep = false;
        for (const auto& m : s.methods) {
          if (m.kind == MethodKind::ProofOf) continue;
          if (m.kind == MethodKind::Representation) {
            if (has_rep)
              fail(ErrorKind::RepresentationRedefined, m.loc,
                   "species '" + s.name + "' declares its representation twice");
            has_rep = true;
            continue;
          }
          if (!local.insert(m.name).second)
            fail(ErrorKind::DuplicateMethod, m.loc,
                 "method '" + m.name + "' is declared twice in species '" + s.name + "'");
        }

        view.species[s.name] = &s;
        std::map<std::string, MethodKind> kinds;
        std::set<std::string> visiting;
        visible_kinds(view, s, kinds, visiting);
        for (const auto& m : s.methods) {
          if (m.kind == MethodKind::ProofOf) {
            auto it = kinds.find(m.name);
            if (it == kinds.end() || !is_logical(it->second))
              fail(ErrorKind::UnknownProperty, m.loc,
                   "'proof of " + m.name + "' names no property of species '" + s.name + "'");
          }
          if (m.kind == MethodKind::Let && m.body) {
            std::set<std::string> bound;
            for (const auto& p : m.params) bound.insert(p.name);
            if (m.rec) bound.erase(m.name);
            check_function_body(*m.body, kinds, bound);
          }
        }
        break;
      }
    }
  }
}

}  // namespace

CompilationUnit parse_source(std::string_view text, const std::string& file,
                             const CompilationUnit* prior) {
  Parser p(lex(text, file));
  CompilationUnit u = p.unit();
  check_unit(u, prior);
  return u;
}

Expr parse_expression(std::string_view text, const std::string& file) {
  Parser p(lex(text, file));
  return p.lone_expression();
}

}  // namespace focml
