#include "atc/json_io.hpp"

#include <algorithm>
#include <map>

namespace atc {

namespace {

std::string kind_name(Law::Kind k) {
  switch (k) {
    case Law::Kind::Static: return "static";
    case Law::Kind::Effect: return "effect";
    case Law::Kind::Exec: return "exec";
  }
  return {};
}

Json world_json(Val v, const Signature& sig) {
  Json lits = Json::array();
  for (int i = 0; i < sig.num_atoms(); ++i) {
    lits.push_back(((v >> i) & 1u) ? sig.atoms()[i] : "~" + sig.atoms()[i]);
  }
  return lits;
}

Val world_from_json(const Json& j, const Signature& sig) {
  if (!j.is_array()) throw Error("a world must be an array of literals");
  Val v = 0;
  std::uint32_t seen = 0;
  for (const auto& lit : j) {
    std::string s = lit.get<std::string>();
    bool pos = true;
    if (!s.empty() && s[0] == '~') {
      pos = false;
      s.erase(0, 1);
    }
    const int i = sig.require_atom(s);
    if ((seen >> i) & 1u) throw Error("atom '" + s + "' listed twice in a world");
    seen |= 1u << i;
    if (pos) v |= 1u << i;
  }
  if (seen != sig.num_valuations() - 1) throw Error("a world must assign every atom");
  return v;
}

std::string action_name(int a, const Signature& sig) { return sig.actions()[a]; }

}  // namespace

Json theory_to_json(const ActionTheory& t) {
  const Signature& sig = t.sig();
  Json j;
  j["name"] = t.name();
  j["atoms"] = sig.atoms();
  j["actions"] = sig.actions();
  j["static"] = Json::array();
  j["effect"] = Json::array();
  j["exec"] = Json::array();
  for (const auto& l : t.laws()) {
    switch (l.kind) {
      case Law::Kind::Static: j["static"].push_back(l.pre.to_string(sig)); break;
      case Law::Kind::Effect:
        j["effect"].push_back(
            {{"pre", l.pre.to_string(sig)}, {"action", action_name(l.action, sig)}, {"post", l.post.to_string(sig)}});
        break;
      case Law::Kind::Exec:
        j["exec"].push_back({{"pre", l.pre.to_string(sig)}, {"action", action_name(l.action, sig)}});
        break;
    }
  }
  return j;
}

ActionTheory theory_from_json(const Json& j) {
  try {
    Signature sig(j.at("atoms").get<std::vector<std::string>>(), j.at("actions").get<std::vector<std::string>>());
    ActionTheory t(j.value("name", std::string("theory")), sig);
    for (const auto& s : j.value("static", Json::array())) t.add(Law::static_law(parse_formula(s.get<std::string>(), sig)));
    for (const auto& e : j.value("effect", Json::array())) {
      t.add(Law::effect(parse_formula(e.at("pre").get<std::string>(), sig),
                        sig.require_action(e.at("action").get<std::string>()),
                        parse_formula(e.at("post").get<std::string>(), sig)));
    }
    for (const auto& x : j.value("exec", Json::array())) {
      t.add(Law::exec(parse_formula(x.at("pre").get<std::string>(), sig),
                      sig.require_action(x.at("action").get<std::string>())));
    }
    return t;
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed theory JSON: ") + e.what());
  }
}

Json model_to_json(const KripkeModel& m, const Signature& sig) {
  Json j;
  j["worlds"] = Json::array();
  std::map<Val, std::size_t> index;
  for (Val w : m.worlds()) {
    index[w] = index.size();
    j["worlds"].push_back(world_json(w, sig));
  }
  j["relations"] = Json::object();
  for (int a = 0; a < sig.num_actions(); ++a) j["relations"][action_name(a, sig)] = Json::array();
  for (const auto& ar : m.arrows()) {
    j["relations"][action_name(ar.action, sig)].push_back({index.at(ar.from), index.at(ar.to)});
  }
  return j;
}

KripkeModel model_from_json(const Json& j, const Signature& sig) {
  try {
    std::vector<Val> worlds;
    for (const auto& w : j.at("worlds")) worlds.push_back(world_from_json(w, sig));
    KripkeModel m(std::set<Val>(worlds.begin(), worlds.end()));
    const Json relations = j.value("relations", Json::object());
    for (const auto& [name, pairs] : relations.items()) {
      const int a = sig.require_action(name);
      for (const auto& p : pairs) {
        m.add_arrow(a, worlds.at(p.at(0).get<std::size_t>()), worlds.at(p.at(1).get<std::size_t>()));
      }
    }
    return m;
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed model JSON: ") + e.what());
  } catch (const std::out_of_range&) {
    throw Error("malformed model JSON: world index out of range");
  }
}

Json model_set_to_json(const ModelSet& ms, const Signature& sig) {
  Json j = Json::array();
  for (const auto& m : ms) j.push_back(model_to_json(m, sig));
  return j;
}

Json provenance_to_json(const Provenance& p, const Signature& sig) {
  Json j;
  j["algorithm"] = algorithm_name(p.algorithm);
  j["context"] = p.context ? Json(context_to_string(*p.context, sig)) : Json(nullptr);
  j["piPrime"] = p.pi_prime ? Json(term_to_string(*p.pi_prime, sig)) : Json(nullptr);
  j["kernels"] = Json::array();
  for (const auto& k : p.kernels) {
    Json laws = Json::array();
    for (const auto& l : k.laws) laws.push_back(render_law(l, sig));
    j["kernels"].push_back(laws);
  }
  j["admitted"] = p.admitted ? Json(valuation_to_string(*p.admitted, sig)) : Json(nullptr);
  j["unsimplifiedSize"] = p.unsimplified_size;
  return j;
}

Json candidates_to_json(const TheoryCandidates& tc, const Signature& sig) {
  Json arr = Json::array();
  int id = 1;
  for (const auto& c : tc.candidates) {
    arr.push_back({{"id", id++}, {"theory", theory_to_json(c.theory)}, {"provenance", provenance_to_json(c.provenance, sig)}});
  }
  return {{"candidates", arr}};
}

Json model_change_to_json(const ModelChange& c, const Signature& sig) {
  auto worlds = [&](const std::vector<Val>& ws) {
    Json a = Json::array();
    for (Val w : ws) a.push_back(world_json(w, sig));
    return a;
  };
  auto arrows = [&](const std::vector<Arrow>& as) {
    Json a = Json::array();
    for (const auto& x : as) {
      a.push_back({{"action", action_name(x.action, sig)}, {"from", world_json(x.from, sig)}, {"to", world_json(x.to, sig)}});
    }
    return a;
  };
  return {{"base", model_to_json(c.base, sig)},     {"result", model_to_json(c.result, sig)},
          {"worldsAdded", worlds(c.worlds_added)},   {"worldsRemoved", worlds(c.worlds_removed)},
          {"arrowsAdded", arrows(c.arrows_added)},   {"arrowsRemoved", arrows(c.arrows_removed)}};
}

Json modularity_to_json(const ModularityReport& r, const Signature& sig) {
  Json laws = Json::array();
  for (const auto& f : r.implicit_laws) laws.push_back(f.to_string(sig));
  return {{"modular", r.modular}, {"implicitLaws", laws}, {"finalLaw", r.final_law.to_string(sig)}};
}

Json postulate_to_json(const PostulateResult& r) {
  return {{"postulate", r.postulate},
          {"verdict", verdict_name(r.verdict)},
          {"witness", r.witness ? Json(*r.witness) : Json(nullptr)}};
}

Json report_to_json(const PostulateReport& r) {
  Json arr = Json::array();
  for (const auto& x : r.results) arr.push_back(postulate_to_json(x));
  return {{"candidates", r.candidates}, {"postulates", arr}};
}

Json law_diff(const ActionTheory& before, const ActionTheory& after) {
  const Signature& sig = after.sig();
  std::vector<Law> removed;
  std::vector<Law> added;
  for (const auto& l : before.laws()) {
    if (!after.contains(l)) removed.push_back(l);
  }
  for (const auto& l : after.laws()) {
    if (!before.contains(l)) added.push_back(l);
  }
  Json modified = Json::array();
  std::vector<bool> used(added.size(), false);
  Json only_removed = Json::array();
  for (const auto& r : removed) {
    bool paired = false;
    for (std::size_t i = 0; i < added.size() && !paired; ++i) {
      if (used[i] || added[i].kind != r.kind || added[i].action != r.action) continue;
      used[i] = true;
      paired = true;
      modified.push_back({{"shape", kind_name(r.kind)}, {"from", render_law(r, sig)}, {"to", render_law(added[i], sig)}});
    }
    if (!paired) only_removed.push_back(render_law(r, sig));
  }
  Json only_added = Json::array();
  for (std::size_t i = 0; i < added.size(); ++i) {
    if (!used[i]) only_added.push_back(render_law(added[i], sig));
  }
  return {{"added", only_added}, {"removed", only_removed}, {"modified", modified}};
}

}  // namespace atc
