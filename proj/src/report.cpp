#include "focml/report.hpp"

#include <algorithm>

namespace focml {

namespace {

Json strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

std::vector<std::string> strings(const Json& j) {
  std::vector<std::string> out;
  for (const auto& s : j) out.push_back(s.get<std::string>());
  return out;
}

}  // namespace

Json deps_json(const SpeciesDeps& d, const NormalFormSpecies& nf) {
  Json s = Json::object();
  s["@order"] = strings(d.order);
  Json entities = Json::array();
  for (const auto& p : nf.params)
    if (p.kind == SpeciesParam::Kind::Entity) entities.push_back(p.name);
  s["@entities"] = entities;
  for (const auto& m : d.methods) {
    Json j;
    j["decl"] = strings(m.decl);
    j["def"] = strings(m.def);
    j["universe"] = strings(m.universe);
    Json env = Json::array();
    for (const auto& e : m.min_env) env.push_back({{"name", e.name}, {"keep", to_string(e.keep)}});
    j["min_env"] = env;
    Json params = Json::object();
    for (const auto& p : m.params) {
      Json members = Json::array();
      // A lifted carrier shows up as a member named "rep".
      if (p.carrier) members.push_back({{"name", kRep}, {"type", "Set"}});
      for (const auto& x : p.members) members.push_back({{"name", x.name}, {"type", x.type}});
      params[p.param] = members;
    }
    j["params"] = params;
    j["order_index"] = m.order_index;
    const NfMethod* nm = nf.find(m.name);
    if (nm && nm->kind == MethodKind::Theorem) j["valid_proof"] = nm->valid_proof;
    else if (nm && nm->kind == MethodKind::Property) j["valid_proof"] = false;
    else j["valid_proof"] = nullptr;
    j["carrier_decl"] = m.carrier_decl;
    j["carrier_def"] = m.carrier_def;
    s[m.name] = j;
  }
  return s;
}

Json deps_json(const Program& p) {
  Json out = Json::object();
  for (const auto& e : p.entries)
    if (e.ok && e.kind == TopLevelRef::Kind::Species) out[e.name] = deps_json(*e.deps, *e.species);
  return out;
}

std::map<std::string, SpeciesDeps> deps_from_json(const Json& j) {
  std::map<std::string, SpeciesDeps> out;
  for (const auto& [species, body] : j.items()) {
    SpeciesDeps d;
    d.species = species;
    d.order = strings(body.at("@order"));
    std::vector<std::string> entities = strings(body.at("@entities"));
    for (const auto& [name, m] : body.items()) {
      if (name.empty() || name[0] == '@') continue;
      MethodDeps md;
      md.name = name;
      md.decl = strings(m.at("decl"));
      md.def = strings(m.at("def"));
      md.universe = strings(m.at("universe"));
      for (const auto& e : m.at("min_env"))
        md.min_env.push_back({e.at("name").get<std::string>(),
                              e.at("keep").get<std::string>() == to_string(Keep::TypeAndBody) ? Keep::TypeAndBody
                                                                                             : Keep::TypeOnly});
      for (const auto& [param, members] : m.at("params").items()) {
        ParamDeps pd;
        pd.param = param;
        pd.entity = std::find(entities.begin(), entities.end(), param) != entities.end();
        for (const auto& x : members) {
          std::string n = x.at("name").get<std::string>();
          if (n == kRep) pd.carrier = true;
          else pd.members.push_back({n, x.at("type").get<std::string>()});
        }
        md.params.push_back(std::move(pd));
      }
      md.order_index = m.at("order_index").get<int>();
      md.carrier_decl = m.at("carrier_decl").get<bool>();
      md.carrier_def = m.at("carrier_def").get<bool>();
      d.methods.push_back(std::move(md));
    }
    std::sort(d.methods.begin(), d.methods.end(),
              [](const MethodDeps& a, const MethodDeps& b) { return a.order_index < b.order_index; });
    out[species] = std::move(d);
  }
  return out;
}

std::string doc_text(const Program& p) {
  std::string s;
  for (const auto& e : p.entries) {
    if (!e.ok || e.kind != TopLevelRef::Kind::Species) continue;
    const NormalFormSpecies& nf = *e.species;
    s += "species " + nf.name + (e.plan->complete ? " (complete)" : "") + "\n";
    for (const auto& name : e.deps->order) {
      const NfMethod* m = nf.find(name);
      if (!m) {
        s += "  " + name + " : representation, undefined\n";
        continue;
      }
      std::string status;
      switch (m->kind) {
        case MethodKind::Signature: status = "declared"; break;
        case MethodKind::Property: status = "unproved"; break;
        case MethodKind::Theorem:
          status = !m->valid_proof ? "proof reverted" : m->admitted ? "admitted" : "proved";
          break;
        default: status = "defined"; break;
      }
      s += "  " + name + " : " + to_string(m->kind) + ", " + status + ", from " + m->origin + "\n";
    }
    std::vector<std::string> reverted, admitted;
    for (const auto& m : nf.methods) {
      if (m.kind == MethodKind::Theorem && !m.valid_proof) reverted.push_back(m.name);
      else if (m.admitted) admitted.push_back(m.name);
    }
    if (!reverted.empty()) {
      s += "  reverted proofs:";
      for (const auto& r : reverted) s += " " + r;
      s += "\n";
    }
    if (!admitted.empty()) {
      s += "  admitted:";
      for (const auto& r : admitted) s += " " + r;
      s += "\n";
    }
  }
  return s;
}

std::string format_diagnostics(const Program& p, bool color) {
  std::string s;
  for (const auto& d : p.diagnostics) s += format(d, color) + "\n";
  return s;
}

}  // namespace focml
