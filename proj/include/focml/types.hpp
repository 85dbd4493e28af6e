#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace focml {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

// Semantic types. `Carrier` is the abstract carrier of a collection
// parameter or of a collection; `Self` is the carrier of the species being
// analysed; `Prop` types statements.
struct Type {
  enum class Kind { Var, Base, Union, Self, Carrier, Arrow, Tuple, Prop };
  Kind kind = Kind::Var;
  int var = -1;
  std::string name;
  std::vector<TypePtr> args;  // Arrow: [from, to]; Tuple: components
};

TypePtr t_var(int id);
TypePtr t_base(const std::string& name);  // int, bool, string
TypePtr t_union(const std::string& name);
TypePtr t_self();
TypePtr t_carrier(const std::string& name);
TypePtr t_arrow(TypePtr from, TypePtr to);
TypePtr t_arrows(const std::vector<TypePtr>& from, TypePtr to);
TypePtr t_tuple(std::vector<TypePtr> parts);
TypePtr t_prop();

// Source-like rendering: `Self -> Self -> bool`, `(V * statut_t)`, `'a`.
std::string show(const TypePtr& t);

bool type_equal(const TypePtr& a, const TypePtr& b);
// Equality up to a consistent renaming of type variables.
bool alpha_equal(const TypePtr& a, const TypePtr& b);

bool mentions_self(const TypePtr& t);
void collect_carriers(const TypePtr& t, std::set<std::string>& out);
void collect_vars(const TypePtr& t, std::set<int>& out);

// Replaces carriers by name; the key "Self" stands for Self.
TypePtr replace_carriers(const TypePtr& t, const std::map<std::string, TypePtr>& m);

// Splits `a1 -> ... -> an -> r` into n domains and the remainder.
bool split_arrows(const TypePtr& t, std::size_t n, std::vector<TypePtr>& doms, TypePtr& result);

// Substitution-based unifier. In body mode with a known representation,
// unifying Self against a concrete type unifies the representation instead
// and records that the definition of the carrier was needed.
class Unifier {
 public:
  int fresh();
  TypePtr fresh_var() { return t_var(fresh()); }
  TypePtr resolve(const TypePtr& t) const;
  bool unify(const TypePtr& a, const TypePtr& b);
  // Fresh copy of every variable in `t` (let-polymorphism at method level).
  TypePtr instantiate(const TypePtr& t);
  // Renames free variables to 0..n-1 in order of first occurrence.
  TypePtr generalize(const TypePtr& t) const;

  void set_body_mode(TypePtr rep) { rep_ = std::move(rep); body_mode_ = true; }
  void set_statement_mode() { body_mode_ = false; }
  bool rep_used() const { return rep_used_; }
  void reset_rep_used() { rep_used_ = false; }

 private:
  bool bind(int v, const TypePtr& t);
  bool occurs(int v, const TypePtr& t) const;

  std::vector<TypePtr> subst_;
  TypePtr rep_;
  bool body_mode_ = false;
  bool rep_used_ = false;
};

}  // namespace focml
