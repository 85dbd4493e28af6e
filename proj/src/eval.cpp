#include "focml/eval.hpp"

#include <map>
#include <optional>

#include "focml/parser.hpp"

namespace focml {

struct Env {
  std::string name;
  ValuePtr value;
  std::shared_ptr<const Env> next;
};
using EnvPtr = std::shared_ptr<const Env>;

struct Closure {
  // User function: params over body in env, evaluated within `module`.
  std::vector<std::string> params;
  const CExpr* body = nullptr;
  EnvPtr env;
  std::string module;
  // Built-in function.
  std::string builtin;
  std::size_t arity = 0;
  std::vector<ValuePtr> applied;  // partial application

  std::size_t remaining() const { return (builtin.empty() ? params.size() : arity) - applied.size(); }
};

ValuePtr Value::integer(BigInt n) {
  auto v = std::make_shared<Value>();
  v->kind = Kind::Int;
  v->num = std::move(n);
  return v;
}

ValuePtr Value::boolean(bool b) {
  auto v = std::make_shared<Value>();
  v->kind = Kind::Bool;
  v->flag = b;
  return v;
}

ValuePtr Value::string(std::string s) {
  auto v = std::make_shared<Value>();
  v->kind = Kind::Str;
  v->text = std::move(s);
  return v;
}

ValuePtr Value::tuple(std::vector<ValuePtr> items) {
  auto v = std::make_shared<Value>();
  v->kind = Kind::Tuple;
  v->items = std::move(items);
  return v;
}

ValuePtr Value::ctor(std::string name, std::vector<ValuePtr> args) {
  auto v = std::make_shared<Value>();
  v->kind = Kind::Ctor;
  v->text = std::move(name);
  v->items = std::move(args);
  return v;
}

bool values_equal(const Value& a, const Value& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::Int: return a.num == b.num;
    case Value::Kind::Bool: return a.flag == b.flag;
    case Value::Kind::Str: return a.text == b.text;
    case Value::Kind::Function:
      throw EvalError(EvalError::Kind::TypeError, "functional values cannot be compared");
    case Value::Kind::Ctor:
      if (a.text != b.text) return false;
      [[fallthrough]];
    case Value::Kind::Tuple:
    case Value::Kind::Record:
      if (a.items.size() != b.items.size() || a.fields != b.fields) return false;
      for (std::size_t i = 0; i < a.items.size(); ++i)
        if (!values_equal(*a.items[i], *b.items[i])) return false;
      return true;
  }
  return false;
}

std::string show_value(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Int: return v.num.str();
    case Value::Kind::Bool: return v.flag ? "true" : "false";
    case Value::Kind::Str: {
      std::string s = "\"";
      for (char c : v.text) {
        if (c == '"' || c == '\\') s += '\\';
        s += c;
      }
      return s + "\"";
    }
    case Value::Kind::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < v.items.size(); ++i) s += (i ? ", " : "") + show_value(*v.items[i]);
      return s + ")";
    }
    case Value::Kind::Ctor: {
      if (v.items.empty()) return v.text;
      std::string s = v.text + " (";
      for (std::size_t i = 0; i < v.items.size(); ++i) s += (i ? ", " : "") + show_value(*v.items[i]);
      return s + ")";
    }
    case Value::Kind::Record: {
      std::string s = "{";
      for (std::size_t i = 0; i < v.items.size(); ++i)
        s += (i ? "; " : " ") + v.fields[i] + " = " + show_value(*v.items[i]);
      return s + " }";
    }
    case Value::Kind::Function: return "<fun>";
  }
  return "?";
}

const char* to_string(EvalError::Kind k) {
  switch (k) {
    case EvalError::Kind::UnknownName: return "UnknownName";
    case EvalError::Kind::ArityMismatch: return "ArityMismatch";
    case EvalError::Kind::MatchFailure: return "MatchFailure";
    case EvalError::Kind::StepLimit: return "StepLimit";
    case EvalError::Kind::TypeError: return "TypeError";
  }
  return "?";
}

namespace {

constexpr std::size_t kMaxDepth = 10000;

const std::map<std::string, std::size_t>& builtin_arities() {
  static const std::map<std::string, std::size_t> table = {
      {"not", 1},        {"fst", 1},     {"snd", 1},     {"_equal_", 2},
      {"_equal_0x", 2},  {"_lt_0x", 2},  {"_plus_", 2},  {"_dash_", 2},
  };
  return table;
}

ValuePtr function_value(std::shared_ptr<Closure> c) {
  auto v = std::make_shared<Value>();
  v->kind = Value::Kind::Function;
  v->fn = std::move(c);
  return v;
}

const BigInt& as_int(const ValuePtr& v) {
  if (v->kind != Value::Kind::Int) throw EvalError(EvalError::Kind::TypeError, "integer expected, got " + show_value(*v));
  return v->num;
}

bool as_bool(const ValuePtr& v) {
  if (v->kind != Value::Kind::Bool) throw EvalError(EvalError::Kind::TypeError, "boolean expected, got " + show_value(*v));
  return v->flag;
}

const ValuePtr& pair_item(const ValuePtr& v, std::size_t i) {
  if (v->kind != Value::Kind::Tuple || v->items.size() != 2)
    throw EvalError(EvalError::Kind::TypeError, "pair expected, got " + show_value(*v));
  return v->items[i];
}

ValuePtr run_builtin(const std::string& f, const std::vector<ValuePtr>& a) {
  if (f == "not") return Value::boolean(!as_bool(a[0]));
  if (f == "fst") return pair_item(a[0], 0);
  if (f == "snd") return pair_item(a[0], 1);
  if (f == "_equal_") return Value::boolean(values_equal(*a[0], *a[1]));
  if (f == "_equal_0x") return Value::boolean(as_int(a[0]) == as_int(a[1]));
  if (f == "_lt_0x") return Value::boolean(as_int(a[0]) < as_int(a[1]));
  if (f == "_plus_") return Value::integer(as_int(a[0]) + as_int(a[1]));
  if (f == "_dash_") return Value::integer(as_int(a[0]) - as_int(a[1]));
  throw EvalError(EvalError::Kind::UnknownName, "unknown built-in basics." + f);
}

bool match(const Pattern& p, const ValuePtr& v, EnvPtr& env) {
  switch (p.kind) {
    case Pattern::Kind::Wildcard: return true;
    case Pattern::Kind::Var: env = std::make_shared<Env>(Env{p.name, v, env}); return true;
    case Pattern::Kind::Ctor:
      if (v->kind != Value::Kind::Ctor || v->text != p.name || v->items.size() != p.args.size()) return false;
      break;
    case Pattern::Kind::Tuple:
      if (v->kind != Value::Kind::Tuple || v->items.size() != p.args.size()) return false;
      break;
  }
  for (std::size_t i = 0; i < p.args.size(); ++i)
    if (!match(p.args[i], v->items[i], env)) return false;
  return true;
}

}  // namespace

struct Evaluator::Impl {
  Evaluator& self;
  std::vector<CModule> modules;
  std::size_t limit;
  std::size_t depth = 0;
  std::map<std::pair<std::string, std::string>, ValuePtr> cache;
  std::map<std::pair<std::string, std::string>, bool> in_progress;

  const CModule* module(const std::string& n) const {
    for (const auto& m : modules)
      if (m.name == n && m.kind != CModule::Kind::Type) return &m;
    return nullptr;
  }

  void tick() {
    if (++self.steps_ > limit)
      throw EvalError(EvalError::Kind::StepLimit, "step limit of " + std::to_string(limit) + " exceeded");
  }

  ValuePtr global(const std::string& mod, const std::string& name) {
    if (mod == "basics") {
      auto it = builtin_arities().find(name);
      if (it == builtin_arities().end())
        throw EvalError(EvalError::Kind::UnknownName, "unknown built-in basics." + name);
      auto c = std::make_shared<Closure>();
      c->builtin = name;
      c->arity = it->second;
      return function_value(c);
    }
    const CModule* m = module(mod);
    const CDef* d = m ? m->find(name) : nullptr;
    if (!d) throw EvalError(EvalError::Kind::UnknownName, "unknown name " + mod + "." + name);
    if (!d->params.empty()) {
      auto c = std::make_shared<Closure>();
      c->params = d->params;
      c->body = &d->body;
      c->module = mod;
      return function_value(c);
    }
    auto key = std::make_pair(mod, name);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    if (in_progress[key])
      throw EvalError(EvalError::Kind::StepLimit, mod + "." + name + " is defined in terms of itself");
    in_progress[key] = true;
    ValuePtr v;
    try {
      v = eval(d->body, nullptr, mod);
    } catch (...) {
      in_progress[key] = false;
      throw;
    }
    in_progress[key] = false;
    cache[key] = v;
    return v;
  }

  ValuePtr apply(const ValuePtr& fn, const std::vector<ValuePtr>& args) {
    if (args.empty()) return fn;
    if (fn->kind != Value::Kind::Function)
      throw EvalError(EvalError::Kind::ArityMismatch, show_value(*fn) + " is not a function");
    const Closure& c = *fn->fn;
    std::size_t need = c.remaining();
    std::vector<ValuePtr> all = c.applied;
    std::size_t take = std::min(need, args.size());
    all.insert(all.end(), args.begin(), args.begin() + static_cast<std::ptrdiff_t>(take));
    if (take < need) {
      auto partial = std::make_shared<Closure>(c);
      partial->applied = std::move(all);
      return function_value(partial);
    }
    ValuePtr result;
    if (!c.builtin.empty()) {
      result = run_builtin(c.builtin, all);
    } else {
      EnvPtr env = c.env;
      for (std::size_t i = 0; i < c.params.size(); ++i)
        env = std::make_shared<Env>(Env{c.params[i], all[i], env});
      result = eval(*c.body, env, c.module);
    }
    if (take < args.size())
      return apply(result, std::vector<ValuePtr>(args.begin() + static_cast<std::ptrdiff_t>(take), args.end()));
    return result;
  }

  ValuePtr eval(const CExpr& e, const EnvPtr& env, const std::string& mod) {
    tick();
    if (++depth > kMaxDepth) {
      depth = 0;
      throw EvalError(EvalError::Kind::StepLimit, "recursion depth limit exceeded");
    }
    struct Guard {
      std::size_t& d;
      ~Guard() {
        if (d) --d;
      }
    } guard{depth};
    switch (e.kind) {
      case CExpr::Kind::Var: {
        for (const Env* p = env.get(); p; p = p->next.get())
          if (p->name == e.name) return p->value;
        if (const CModule* m = module(mod); m && m->find(e.name)) return global(mod, e.name);
        throw EvalError(EvalError::Kind::UnknownName, "unbound variable " + e.name);
      }
      case CExpr::Kind::Global: return global(e.module, e.name);
      case CExpr::Kind::Int: return Value::integer(BigInt(e.text));
      case CExpr::Kind::Bool: return Value::boolean(e.flag);
      case CExpr::Kind::Str: return Value::string(e.text);
      case CExpr::Kind::App: {
        ValuePtr fn = eval(e.kids[0], env, mod);
        std::vector<ValuePtr> args;
        for (std::size_t i = 1; i < e.kids.size(); ++i) args.push_back(eval(e.kids[i], env, mod));
        return apply(fn, args);
      }
      case CExpr::Kind::And:
        if (!as_bool(eval(e.kids[0], env, mod))) return Value::boolean(false);
        return Value::boolean(as_bool(eval(e.kids[1], env, mod)));
      case CExpr::Kind::Or:
        if (as_bool(eval(e.kids[0], env, mod))) return Value::boolean(true);
        return Value::boolean(as_bool(eval(e.kids[1], env, mod)));
      case CExpr::Kind::If:
        return eval(e.kids[as_bool(eval(e.kids[0], env, mod)) ? 1 : 2], env, mod);
      case CExpr::Kind::Tuple:
      case CExpr::Kind::Ctor: {
        std::vector<ValuePtr> items;
        for (const auto& k : e.kids) items.push_back(eval(k, env, mod));
        return e.kind == CExpr::Kind::Tuple ? Value::tuple(std::move(items)) : Value::ctor(e.name, std::move(items));
      }
      case CExpr::Kind::Match: {
        ValuePtr s = eval(e.kids[0], env, mod);
        for (std::size_t i = 1; i < e.kids.size(); ++i) {
          EnvPtr extended = env;
          if (match(e.patterns[i - 1], s, extended)) return eval(e.kids[i], extended, mod);
        }
        throw EvalError(EvalError::Kind::MatchFailure, "no case matches " + show_value(*s));
      }
      case CExpr::Kind::Let: {
        ValuePtr v = eval(e.kids[0], env, mod);
        return eval(e.kids[1], std::make_shared<Env>(Env{e.name, v, env}), mod);
      }
      case CExpr::Kind::Record: {
        auto v = std::make_shared<Value>();
        v->kind = Value::Kind::Record;
        v->fields = e.fields;
        for (const auto& k : e.kids) v->items.push_back(eval(k, env, mod));
        return v;
      }
      case CExpr::Kind::Field: {
        ValuePtr r = eval(e.kids[0], env, mod);
        if (r->kind == Value::Kind::Record)
          for (std::size_t i = 0; i < r->fields.size(); ++i)
            if (r->fields[i] == e.name) return r->items[i];
        throw EvalError(EvalError::Kind::UnknownName, "no field " + e.name + " in " + show_value(*r));
      }
    }
    throw EvalError(EvalError::Kind::TypeError, "unsupported expression");
  }
};

Evaluator::Evaluator(std::vector<CModule> modules, std::size_t step_limit)
    : impl_(std::make_unique<Impl>(Impl{*this, std::move(modules), step_limit, 0, {}, {}})) {}

Evaluator::~Evaluator() = default;

ValuePtr Evaluator::global(const std::string& module, const std::string& name) {
  return impl_->global(module, name);
}

ValuePtr Evaluator::apply(const ValuePtr& fn, const std::vector<ValuePtr>& args) {
  impl_->depth = 0;
  return impl_->apply(fn, args);
}

ValuePtr Evaluator::call(const std::string& module, const std::string& name, const std::vector<ValuePtr>& args) {
  impl_->depth = 0;
  ValuePtr fn = impl_->global(module, name);
  if (args.empty()) return fn;
  if (fn->kind == Value::Kind::Function && fn->fn->remaining() != args.size())
    throw EvalError(EvalError::Kind::ArityMismatch,
                    module + "." + name + " expects " + std::to_string(fn->fn->remaining()) + " argument(s), got " +
                        std::to_string(args.size()));
  return impl_->apply(fn, args);
}

namespace {

ValuePtr literal(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Int: return Value::integer(BigInt(e.name));
    case ExprKind::Bool: return Value::boolean(e.name == "true");
    case ExprKind::String: return Value::string(e.name);
    case ExprKind::Tuple: {
      std::vector<ValuePtr> items;
      for (const auto& k : e.kids) items.push_back(literal(k));
      return Value::tuple(std::move(items));
    }
    case ExprKind::Ident:
      if (!e.name.empty() && std::isupper(static_cast<unsigned char>(e.name[0]))) return Value::ctor(e.name, {});
      break;
    case ExprKind::App:
      if (e.kids[0].kind == ExprKind::Ident && std::isupper(static_cast<unsigned char>(e.kids[0].name[0]))) {
        std::vector<ValuePtr> args;
        for (std::size_t i = 1; i < e.kids.size(); ++i) args.push_back(literal(e.kids[i]));
        return Value::ctor(e.kids[0].name, std::move(args));
      }
      break;
    case ExprKind::Binary:
      if (e.op == Op::Sub && e.kids[0].kind == ExprKind::Int && e.kids[0].name == "0" &&
          e.kids[1].kind == ExprKind::Int)
        return Value::integer(-BigInt(e.kids[1].name));
      break;
    default: break;
  }
  throw EvalError(EvalError::Kind::TypeError, "not a literal value");
}

}  // namespace

ValuePtr literal_value(const std::string& text) {
  std::string t = text;
  // Negative integers: `-3` is read as `0 - 3`.
  std::size_t i = t.find_first_not_of(" \t");
  if (i != std::string::npos && t[i] == '-') t.insert(i, "0 ");
  return literal(parse_expression(t));
}

ValuePtr literal_value(const Expr& e) { return literal(e); }

}  // namespace focml
