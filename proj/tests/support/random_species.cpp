#include "random_species.hpp"

#include <algorithm>
#include <optional>
#include <random>

namespace focml::testing {

namespace {

const char* kPrelude = R"((* interface used by the parameters *)
species Iface =
  signature h : Self -> Self ;
  signature k : int -> Self ;
  property hk : all x : int, h (k (x)) = k (x) ;
end ;;

species IfaceImpl =
  inherit Iface ;
  representation = int ;
  let h (x) : Self = x ;
  let k (x) : Self = x ;
  proof of hk = by definition of h, k ;
end ;;

collection IC = implement IfaceImpl ; end ;;

)";

// Int: int -> int. Self: Self -> Self. Peek: Self -> int, whose body needs
// the representation. Param: P -> P. Logic: property or theorem.
enum class Fam { Int, Self, Peek, Param, Logic };
enum class Kind { Signature, Let, Property, Theorem, ProofOf };

struct Version {
  Kind kind = Kind::Signature;
  std::string text;
  std::set<std::string> body;  // let body
  std::set<std::string> stmt;  // statement
  std::set<std::string> defs;  // proof: definition of
  std::set<std::string> props; // proof: Self properties
  bool self_binder = false;
};

struct Slot {
  std::string name;
  Fam fam = Fam::Int;
  std::string param;  // Param family
  std::optional<Version> base, child;
  const Version& last() const { return child ? *child : *base; }
};

struct Builder {
  std::mt19937_64 rng;
  std::vector<Slot> slots;
  std::vector<std::string> coll_params;  // "P", "Q"
  bool entity = false;                   // v in P
  bool rep_base = false, rep_child = false;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  bool chance(int pct) { return pick(100) < pct; }
  template <class T>
  T any(const std::vector<T>& v) { return v[static_cast<std::size_t>(pick(static_cast<int>(v.size())))]; }

  // The version of slot j seen from the base (child == false) or from S.
  const Version* seen(std::size_t j, bool child) const {
    const Slot& s = slots[j];
    if (!child) return s.base ? &*s.base : nullptr;
    return s.child ? &*s.child : s.base ? &*s.base : nullptr;
  }

  std::vector<std::string> functions(bool child, std::size_t below, Fam fam, const std::string& param = "",
                                     bool lets_only = false) const {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < std::min(below, slots.size()); ++j) {
      const Version* v = seen(j, child);
      if (!v || slots[j].fam != fam || (fam == Fam::Param && slots[j].param != param)) continue;
      if (lets_only && v->kind != Kind::Let) continue;
      out.push_back(slots[j].name);
    }
    return out;
  }

  std::vector<std::string> lets(bool child) const {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < slots.size(); ++j)
      if (const Version* v = seen(j, child); v && v->kind == Kind::Let) out.push_back(slots[j].name);
    return out;
  }

  std::vector<std::string> logicals(bool child, std::size_t below) const {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < below; ++j)
      if (seen(j, child) && slots[j].fam == Fam::Logic) out.push_back(slots[j].name);
    return out;
  }

  bool rep_visible(bool child) const { return rep_base || (child && rep_child); }

  std::string type_of(const Slot& s) const {
    switch (s.fam) {
      case Fam::Int: return "int -> int";
      case Fam::Self: return "Self -> Self";
      case Fam::Peek: return "Self -> int";
      case Fam::Param: return s.param + " -> " + s.param;
      case Fam::Logic: break;
    }
    return "";
  }

  Version let(std::size_t i, bool child) {
    const Slot& s = slots[i];
    Version v;
    v.kind = Kind::Let;
    std::vector<std::string> ints = functions(child, i, Fam::Int);
    std::string body;
    switch (s.fam) {
      case Fam::Int:
        switch (pick(4)) {
          case 0: body = "x"; break;
          case 1: body = "x + 1"; break;
          default:
            if (ints.empty()) {
              body = "x + 1";
            } else {
              std::string f = any(ints);
              v.body.insert(f);
              body = f + " (x)";
              if (chance(50)) {
                std::string g = any(ints);
                v.body.insert(g);
                body += " + " + g + " (0)";
              }
            }
        }
        break;
      case Fam::Self: {
        std::vector<std::string> selfs = functions(child, i, Fam::Self);
        int form = pick(3);
        if (form == 0 || selfs.empty()) {
          body = "x";
        } else {
          std::string s2 = any(selfs);
          v.body.insert(s2);
          body = s2 + " (x)";
          if (form == 2 && !ints.empty()) {
            std::string f = any(ints);
            v.body.insert(f);
            body = "if " + f + " (0) = 0 then x else " + body;
          }
        }
        break;
      }
      case Fam::Peek:
        if (!ints.empty() && chance(50)) {
          std::string f = any(ints);
          v.body.insert(f);
          body = "x + " + f + " (x)";
        } else {
          body = chance(50) ? "x + 1" : "x";
        }
        break;
      case Fam::Param: {
        std::vector<std::string> same = functions(child, i, Fam::Param, s.param);
        switch (pick(5)) {
          case 0: body = "x"; break;
          case 1: body = s.param + "!h (x)"; break;
          case 2:
            if (!same.empty()) {
              std::string q = any(same);
              v.body.insert(q);
              body = q + " (" + s.param + "!h (x))";
            } else {
              body = s.param + "!h (x)";
            }
            break;
          case 3:
            if (!ints.empty()) {
              std::string f = any(ints);
              v.body.insert(f);
              body = s.param + "!k (" + f + " (0))";
            } else {
              body = s.param + "!k (0)";
            }
            break;
          default: body = entity && s.param == "P" ? "v" : "x"; break;
        }
        break;
      }
      case Fam::Logic: break;
    }
    std::string arg = s.fam == Fam::Int ? "int" : s.fam == Fam::Param ? s.param : "Self";
    std::string res = s.fam == Fam::Int || s.fam == Fam::Peek ? "int" : s.fam == Fam::Param ? s.param : "Self";
    v.text = "let " + s.name + " (x : " + arg + ") : " + res + " = " + body + " ;";
    return v;
  }

  Version statement(std::size_t i, bool child, Kind kind) {
    Version v;
    v.kind = kind;
    std::vector<std::string> flavours = {"int", "Self"};
    for (const auto& p : coll_params) flavours.push_back(p);
    std::string fl = any(flavours);
    std::string stmt;
    if (fl == "int") {
      std::vector<std::string> ints = functions(child, slots.size(), Fam::Int);
      if (ints.empty()) {
        stmt = "all x : int, x = x";
      } else {
        std::string f = any(ints), g = any(ints);
        v.stmt = {f, g};
        stmt = "all x : int, " + f + " (x) = " + (chance(50) ? g + " (x)" : (v.stmt = {f}, std::string("x")));
      }
    } else if (fl == "Self") {
      v.self_binder = true;
      std::vector<std::string> selfs = functions(child, slots.size(), Fam::Self);
      std::vector<std::string> peeks = functions(child, slots.size(), Fam::Peek);
      if (!peeks.empty() && chance(40)) {
        std::string r = any(peeks);
        v.stmt = {r};
        stmt = "all x : Self, " + r + " (x) = 0";
      } else if (!selfs.empty()) {
        std::string a = any(selfs), b = any(selfs);
        v.stmt = {a, b};
        stmt = "all x : Self, " + a + " (x) = " + (chance(50) ? b + " (x)" : (v.stmt = {a}, std::string("x")));
      } else {
        stmt = "all x y : Self, x = y -> y = x";
      }
    } else {
      std::vector<std::string> qs = functions(child, slots.size(), Fam::Param, fl);
      if (qs.empty()) {
        stmt = "all x : " + fl + ", " + fl + "!h (x) = x";
      } else {
        std::string q = any(qs);
        v.stmt = {q};
        stmt = "all x : " + fl + ", " + q + " (x) = " + fl + "!h (x)";
      }
    }
    v.text = stmt;  // completed by the caller
    return v;
  }

  std::string proof(Version& v, std::size_t i, bool child) {
    std::vector<std::string> ls = lets(child);
    std::vector<std::string> ps = logicals(child, i);
    std::vector<std::string> defs, props;
    int nd = ls.empty() ? 0 : pick(3);
    for (int k = 0; k < nd; ++k) {
      std::string d = any(ls);
      if (v.defs.insert(d).second) defs.push_back(d);
    }
    if (!ps.empty() && chance(40)) {
      std::string p = any(ps);
      v.props.insert(p);
      props.push_back(p);
    }
    if (!coll_params.empty() && chance(30)) props.push_back(any(coll_params) + "!hk");
    if (defs.empty() && props.empty()) props.push_back("int_eqRefl");
    std::string s = "by";
    auto join = [](const std::vector<std::string>& xs) {
      std::string out;
      for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? ", " : "") + xs[k];
      return out;
    };
    if (!defs.empty()) s += " definition of " + join(defs);
    if (!props.empty()) s += " property " + join(props);
    return s;
  }

  Version logical(std::size_t i, bool child) {
    bool theorem = chance(50);
    Version v = statement(i, child, theorem ? Kind::Theorem : Kind::Property);
    const std::string stmt = v.text;
    if (theorem) v.text = "theorem " + slots[i].name + " : " + stmt + "\n  proof = " + proof(v, i, child) + " ;";
    else v.text = "property " + slots[i].name + " : " + stmt + " ;";
    return v;
  }

  Version fresh(std::size_t i, bool child) {
    const Slot& s = slots[i];
    if (s.fam == Fam::Logic) return logical(i, child);
    bool can_let = s.fam != Fam::Peek || rep_visible(child);
    if (can_let && chance(70)) return let(i, child);
    Version v;
    v.kind = Kind::Signature;
    v.text = "signature " + s.name + " : " + type_of(s) + " ;";
    return v;
  }
};

std::string params_text(const Builder& b, bool decl) {
  if (b.coll_params.empty()) return "";
  std::string s = " (";
  for (std::size_t k = 0; k < b.coll_params.size(); ++k)
    s += (k ? ", " : "") + b.coll_params[k] + (decl ? " is Iface" : "");
  if (b.entity) s += decl ? ", v in P" : ", v";
  return s + ")";
}

}  // namespace

RandomCase random_case(std::uint64_t seed) {
  Builder b;
  b.rng.seed(seed);
  switch (b.pick(4)) {
    case 1: b.coll_params = {"P"}; break;
    case 2: b.coll_params = {"P"}; b.entity = true; break;
    case 3: b.coll_params = {"P", "Q"}; break;
    default: break;
  }
  int rep = b.pick(3);
  b.rep_base = rep == 1;
  b.rep_child = rep == 2;
  const int n = 1 + b.pick(6);
  const int nbase = b.pick(n + 1);

  const char* prefix[] = {"f", "s", "r", "q", "t"};
  for (int i = 0; i < n; ++i) {
    Slot s;
    std::vector<Fam> fams = {Fam::Int, Fam::Self, Fam::Peek, Fam::Logic, Fam::Logic};
    if (!b.coll_params.empty()) fams.push_back(Fam::Param);
    s.fam = b.any(fams);
    if (s.fam == Fam::Param) s.param = b.any(b.coll_params);
    s.name = prefix[static_cast<int>(s.fam)] + std::to_string(i);
    b.slots.push_back(s);
  }
  // Base versions first, in rank order, then what S adds or redefines.
  for (int i = 0; i < nbase; ++i) b.slots[static_cast<std::size_t>(i)].base = b.fresh(static_cast<std::size_t>(i), false);
  std::set<std::string> redefined;
  for (int i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    Slot& s = b.slots[k];
    if (i >= nbase) {
      s.child = b.fresh(k, true);
    } else if (s.fam != Fam::Logic && b.chance(40) && (s.fam != Fam::Peek || b.rep_visible(true))) {
      s.child = b.let(k, true);
      redefined.insert(s.name);
    }
  }
  std::set<std::string> reverted;
  for (int i = 0; i < nbase; ++i) {
    auto k = static_cast<std::size_t>(i);
    Slot& s = b.slots[k];
    if (s.fam != Fam::Logic) continue;
    bool broken = false;
    if (s.base->kind == Kind::Theorem)
      for (const auto& d : s.base->defs) broken = broken || redefined.count(d);
    int pct = s.base->kind == Kind::Property ? 35 : broken ? 50 : 15;
    if (b.chance(pct)) {
      Version v;
      v.kind = Kind::ProofOf;
      v.stmt = s.base->stmt;
      v.self_binder = s.base->self_binder;
      v.text = "proof of " + s.name + " = " + b.proof(v, k, true) + " ;";
      s.child = v;
    } else if (broken) {
      reverted.insert(s.name);
    }
  }

  RandomCase rc;
  rc.seed = seed;
  std::string src = kPrelude;
  const bool has_base = nbase > 0 || b.rep_base;
  if (has_base) {
    src += "species Base" + params_text(b, true) + " =\n";
    if (b.rep_base) src += "  representation = int ;\n";
    for (int i = 0; i < nbase; ++i) src += "  " + b.slots[static_cast<std::size_t>(i)].base->text + "\n";
    src += "end ;;\n\n";
  }
  src += "species S" + params_text(b, true) + " =\n";
  if (has_base) src += "  inherit Base" + params_text(b, false) + " ;\n";
  if (b.rep_child) src += "  representation = int ;\n";
  for (const auto& s : b.slots)
    if (s.child) src += "  " + s.child->text + "\n";
  src += "end ;;\n";

  // Truth for the flattened S.
  const bool has_rep = b.rep_base || b.rep_child;
  bool complete = has_rep;
  rc.truth["rep"] = {};
  for (const auto& s : b.slots) {
    rc.methods.push_back(s.name);
    const Version& v = s.last();
    MethodTruth t;
    if (s.fam != Fam::Logic) {
      const bool self_type = s.fam == Fam::Self || s.fam == Fam::Peek;
      if (v.kind == Kind::Let) t.decl = v.body;
      if (self_type) {
        t.decl.insert("rep");
        t.types.insert("rep");
      }
      if (v.kind == Kind::Let && s.fam == Fam::Peek) t.def.insert("rep");
      complete = complete && v.kind == Kind::Let;
    } else {
      const bool valid = (v.kind == Kind::Theorem || v.kind == Kind::ProofOf) && !reverted.count(s.name);
      bool touch = v.self_binder;
      for (const auto& r : v.stmt)
        for (const auto& o : b.slots)
          if (o.name == r && (o.fam == Fam::Self || o.fam == Fam::Peek)) touch = true;
      t.decl = v.stmt;
      t.types = v.stmt;
      if (v.self_binder) t.types.insert("rep");
      if (touch) t.decl.insert("rep");
      if (valid) {
        t.decl.insert(v.defs.begin(), v.defs.end());
        t.decl.insert(v.props.begin(), v.props.end());
        t.def = v.defs;
      }
      complete = complete && valid;
    }
    rc.truth[s.name] = t;
  }
  rc.complete = complete;
  if (complete) {
    std::string args;
    if (!b.coll_params.empty()) {
      args = " (";
      for (std::size_t k = 0; k < b.coll_params.size(); ++k) args += (k ? ", " : "") + std::string("IC");
      if (b.entity) args += ", IC!k (3)";
      args += ")";
    }
    src += "\ncollection CS = implement S" + args + " ; end ;;\n";
  }
  rc.source = src;
  return rc;
}

std::set<std::string> oracle_def_closure(const std::string& x, const std::map<std::string, MethodTruth>& t) {
  std::set<std::string> out;
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::string> frontier = t.at(x).def;
    for (const auto& z : out) frontier.insert(t.at(z).def.begin(), t.at(z).def.end());
    for (const auto& z : frontier)
      if (out.insert(z).second) changed = true;
  }
  return out;
}

std::set<std::string> oracle_universe(const std::string& x, const std::map<std::string, MethodTruth>& t) {
  const std::set<std::string> trans = oracle_def_closure(x, t);
  std::set<std::string> u;
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::string> add = t.at(x).decl;                       // y in decl(x)
    for (const auto& z : trans) {
      add.insert(z);                                                 // y def-depends into x
      add.insert(t.at(z).decl.begin(), t.at(z).decl.end());          // decl of those
    }
    for (const auto& z : u) add.insert(t.at(z).types.begin(), t.at(z).types.end());  // types of U
    for (const auto& y : add)
      if (u.insert(y).second) changed = true;
  }
  u.erase(x);
  return u;
}

}  // namespace focml::testing
