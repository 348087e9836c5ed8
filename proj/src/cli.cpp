#include "atc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "atc/json_io.hpp"
#include "atc/service.hpp"

namespace atc {

namespace fs = std::filesystem;

namespace {

class Failure : public std::runtime_error {
 public:
  Failure(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  [[nodiscard]] int code() const { return code_; }

 private:
  int code_;
};

ParseResult load(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Failure(kUsage, "cannot read '" + file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_theory_with_warnings(ss.str());
  } catch (const ParseError& e) {
    throw Failure(kUsage, file + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  } catch (const UnsupportedQuery& e) {
    throw Failure(kUnsupported, file + ": " + e.what());
  } catch (const Error& e) {
    throw Failure(kUsage, file + ": " + e.what());
  }
}

template <typename F>
auto parse_arg(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw Failure(kUsage, "law:" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  } catch (const UnsupportedQuery& e) {
    throw Failure(kUnsupported, std::string("unsupported query shape: ") + e.what());
  } catch (const Error& e) {
    throw Failure(kUsage, e.what());
  }
}

void write_text(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path().empty() ? fs::path(".") : p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure(kNegative, "cannot write '" + p.string() + "'");
  out << content;
}

std::string world_list(const std::vector<Val>& ws, const Signature& sig) {
  std::string s;
  for (Val w : ws) s += (s.empty() ? "" : ", ") + valuation_to_string(w, sig);
  return s.empty() ? "-" : s;
}

std::string arrow_list(const std::vector<Arrow>& as, const Signature& sig) {
  std::string s;
  for (const auto& a : as) {
    s += (s.empty() ? "" : "; ") + valuation_to_string(a.from, sig) + " -" + sig.actions()[a.action] + "-> " +
         valuation_to_string(a.to, sig);
  }
  return s.empty() ? "-" : s;
}

void print_model(std::ostream& out, const KripkeModel& m, const Signature& sig) {
  out << "worlds (" << m.worlds().size() << "):\n";
  for (Val w : m.worlds()) out << "  " << valuation_to_string(w, sig) << "\n";
  out << "arrows (" << m.arrows().size() << "):\n";
  for (const auto& a : m.arrows()) {
    out << "  " << valuation_to_string(a.from, sig) << " -" << sig.actions()[a.action] << "-> "
        << valuation_to_string(a.to, sig) << "\n";
  }
}

void print_change(std::ostream& out, const ModelChange& c, const Signature& sig) {
  out << "  worlds added:   " << world_list(c.worlds_added, sig) << "\n"
      << "  worlds removed: " << world_list(c.worlds_removed, sig) << "\n"
      << "  arrows added:   " << arrow_list(c.arrows_added, sig) << "\n"
      << "  arrows removed: " << arrow_list(c.arrows_removed, sig) << "\n";
}

std::string provenance_line(const Provenance& p, const Signature& sig) {
  std::string s = algorithm_name(p.algorithm);
  if (p.context) s += "; excluded context " + context_to_string(*p.context, sig);
  if (p.pi_prime) s += "; pi' " + term_to_string(*p.pi_prime, sig);
  if (p.admitted) s += "; admitted " + valuation_to_string(*p.admitted, sig);
  if (!p.kernels.empty()) {
    s += "; kernels";
    for (const auto& k : p.kernels) {
      std::string ks;
      for (const auto& l : k.laws) ks += (ks.empty() ? "" : ", ") + render_law(l, sig);
      s += " {" + ks + "}";
    }
  }
  return s;
}

int cmd_check(const std::string& file, std::ostream& out, std::ostream& err) {
  const ParseResult pr = load(file);
  const auto& t = pr.theory;
  for (const auto& w : pr.warnings) err << "warning: " << w << "\n";
  out << "ok: theory " << t.name() << " with " << t.statics().size() << " static, " << t.effects().size()
      << " effect, " << t.execs().size() << " executability laws\n";
  return kOk;
}

int cmd_modular(const std::string& file, bool json, std::ostream& out) {
  const ActionTheory t = load(file).theory;
  const ModularityReport r = is_modular(t);
  if (json) {
    out << modularity_to_json(r, t.sig()).dump(2) << "\n";
  } else {
    out << (r.modular ? "modular" : "not modular") << "\n";
    for (std::size_t i = 0; i < r.implicit_laws.size(); ++i) {
      out << "implicit law (round " << i + 1 << "): " << r.implicit_laws[i].to_string(t.sig()) << "\n";
    }
    if (!r.modular) out << "surviving worlds: " << r.final_law.to_string(t.sig()) << "\n";
  }
  return r.modular ? kOk : kNegative;
}

int cmd_entail(const std::string& file, const std::string& query, std::ostream& out) {
  const ActionTheory t = load(file).theory;
  const Query q = parse_arg([&] { return parse_query(query, t.sig()); });
  const bool yes = parse_arg([&] { return entails(t, q); });
  out << (yes ? "entailed" : "not entailed") << "\n";
  return yes ? kOk : kNegative;
}

int cmd_contract(const std::string& file, const std::string& law_text, bool semantic, const std::string& out_dir,
                 bool json, std::ostream& out, std::ostream& err) {
  const ActionTheory t = load(file).theory;
  const Signature& sig = t.sig();
  const Law law = parse_arg([&] { return parse_law(law_text, sig); });
  if (semantic) {
    const ModularityReport mr = is_modular(t);
    if (!mr.modular) {
      err << "theory is not modular; semantic contraction needs its canonical model (see `atc modular`)\n";
      return kNegative;
    }
    const ModelSet ms{canonical_frame(t)};
    const ChangeOutcome oc = contract_model_set(ms, law, sig);
    if (json) {
      Json arr = Json::array();
      for (std::size_t i = 0; i < oc.results.size(); ++i) {
        Json ch = Json::array();
        for (const auto& c : oc.changes[i]) ch.push_back(model_change_to_json(c, sig));
        arr.push_back({{"id", i + 1}, {"models", model_set_to_json(oc.results[i], sig)}, {"changes", ch}});
      }
      out << Json{{"results", arr}, {"reason", oc.reason}}.dump(2) << "\n";
    } else {
      out << oc.results.size() << " result model set(s)\n";
      if (oc.results.empty()) out << "reason: " << oc.reason << "\n";
      for (std::size_t i = 0; i < oc.results.size(); ++i) {
        out << "result " << i + 1 << ":\n";
        for (const auto& c : oc.changes[i]) print_change(out, c, sig);
      }
    }
    if (!out_dir.empty()) {
      for (std::size_t i = 0; i < oc.results.size(); ++i) {
        write_text(fs::path(out_dir) / (t.name() + "_model" + std::to_string(i + 1) + ".json"),
                   model_set_to_json(oc.results[i], sig).dump(2) + "\n");
      }
    }
    return oc.results.empty() ? kNegative : kOk;
  }

  const TheoryCandidates tc = parse_arg([&] { return contract(t, law); });
  if (json) {
    out << candidates_to_json(tc, sig).dump(2) << "\n";
  } else {
    out << tc.candidates.size() << " candidate theor" << (tc.candidates.size() == 1 ? "y" : "ies") << "\n";
    out << std::left << std::setw(4) << "id" << std::setw(6) << "laws" << "provenance\n";
    for (std::size_t i = 0; i < tc.candidates.size(); ++i) {
      const auto& c = tc.candidates[i];
      out << std::left << std::setw(4) << i + 1 << std::setw(6) << c.theory.size()
          << provenance_line(c.provenance, sig) << "\n";
    }
  }
  if (!out_dir.empty()) {
    for (std::size_t i = 0; i < tc.candidates.size(); ++i) {
      const fs::path p = fs::path(out_dir) / (t.name() + "_c" + std::to_string(i + 1) + ".atc");
      write_text(p, render_theory(tc.candidates[i].theory));
      if (!json) out << "wrote " << p.string() << "\n";
    }
  }
  return kOk;
}

int cmd_revise(const std::string& file, const std::string& law_text, const std::string& out_dir, bool json,
               std::ostream& out, std::ostream& err) {
  const ActionTheory t = load(file).theory;
  const Signature& sig = t.sig();
  const Law law = parse_arg([&] { return parse_law(law_text, sig); });
  const ModelSet ms = default_model_set(t);
  if (ms.empty()) {
    err << "theory is inconsistent; nothing to revise\n";
    return kNegative;
  }
  ChangeOutcome oc;
  try {
    oc = revise_model_set(ms, law, sig);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kNegative;
  }
  std::vector<ActionTheory> induced;
  for (const auto& r : oc.results) induced.push_back(theory_from_model_set(r, sig, t.name()));
  if (json) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < oc.results.size(); ++i) {
      Json ch = Json::array();
      for (const auto& c : oc.changes[i]) ch.push_back(model_change_to_json(c, sig));
      arr.push_back({{"id", i + 1},
                     {"models", model_set_to_json(oc.results[i], sig)},
                     {"changes", ch},
                     {"theory", theory_to_json(induced[i])}});
    }
    out << Json{{"results", arr}, {"reason", oc.reason}}.dump(2) << "\n";
  } else {
    out << oc.results.size() << " revised model set(s)\n";
    if (oc.results.empty()) out << "reason: " << oc.reason << "\n";
    for (std::size_t i = 0; i < oc.results.size(); ++i) {
      out << "result " << i + 1 << ":\n";
      if (oc.changes[i].empty()) out << "  expansion: models satisfying the law kept\n";
      for (const auto& c : oc.changes[i]) print_change(out, c, sig);
      out << "induced theory:\n" << render_theory(induced[i]);
    }
  }
  if (!out_dir.empty()) {
    for (std::size_t i = 0; i < induced.size(); ++i) {
      write_text(fs::path(out_dir) / (t.name() + "_r" + std::to_string(i + 1) + ".atc"), render_theory(induced[i]));
    }
  }
  return oc.results.empty() ? kNegative : kOk;
}

int cmd_canonical(const std::string& file, bool dot, bool json, std::ostream& out, std::ostream& err) {
  const ActionTheory t = load(file).theory;
  const KripkeModel m = canonical_frame(t);
  const bool model = is_model_of(m, t);
  if (!model) err << "note: the canonical frame is not a model of the theory (theory not modular)\n";
  if (dot) {
    out << to_dot(m, t.sig());
  } else if (json) {
    out << model_to_json(m, t.sig()).dump(2) << "\n";
  } else {
    print_model(out, m, t.sig());
  }
  return model ? kOk : kNegative;
}

int cmd_postulates(const std::string& file, const std::string& law_text, bool json, std::ostream& out) {
  const ActionTheory t = load(file).theory;
  const Law law = parse_arg([&] { return parse_law(law_text, t.sig()); });
  const PostulateReport r = parse_arg([&] { return check_postulates(t, law); });
  if (json) {
    out << report_to_json(r).dump(2) << "\n";
  } else {
    out << r.candidates << " candidate(s)\n";
    for (const auto& p : r.results) {
      out << std::left << std::setw(26) << p.postulate << verdict_name(p.verdict);
      if (p.witness) out << "  (" << *p.witness << ")";
      out << "\n";
    }
  }
  return r.all_hold() ? kOk : kNegative;
}

int cmd_serve(int port, const std::string& data, std::ostream& out) {
  Service svc(data);
  out << "serving on http://0.0.0.0:" << port << " with data in " << data << std::endl;
  return svc.listen("0.0.0.0", port) ? kOk : kNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Action theory change workbench", "atc"};
  app.require_subcommand(1);
  std::string file, law, out_dir, data;
  bool semantic = false, dot = false, json = false;
  int port = 0;

  auto* check = app.add_subcommand("check", "Parse a theory file and report well-formedness");
  check->add_option("FILE", file, "theory file")->required();

  auto* modular = app.add_subcommand("modular", "Decide modularity and report implicit static laws");
  modular->add_option("FILE", file, "theory file")->required();
  modular->add_flag("--json", json, "JSON output");

  auto* entail = app.add_subcommand("entail", "Decide whether the theory entails a law or ';'-separated laws");
  entail->add_option("FILE", file, "theory file")->required();
  entail->add_option("LAW", law, "law or conjunction of laws")->required();

  auto* contract_cmd = app.add_subcommand("contract", "Contract a law from the theory");
  contract_cmd->add_option("FILE", file, "theory file")->required();
  contract_cmd->add_option("LAW", law, "law to contract")->required();
  contract_cmd->add_flag("--semantic", semantic, "contract on the canonical model instead of the theory");
  contract_cmd->add_option("--out", out_dir, "directory for candidate files");
  contract_cmd->add_flag("--json", json, "JSON output");

  auto* revise = app.add_subcommand("revise", "Revise the theory's models by a law and induce theories");
  revise->add_option("FILE", file, "theory file")->required();
  revise->add_option("LAW", law, "law to revise by")->required();
  revise->add_option("--out", out_dir, "directory for induced theory files");
  revise->add_flag("--json", json, "JSON output");

  auto* canonical = app.add_subcommand("canonical", "Print the canonical frame");
  canonical->add_option("FILE", file, "theory file")->required();
  auto* dot_flag = canonical->add_flag("--dot", dot, "Graphviz output");
  canonical->add_flag("--json", json, "JSON output")->excludes(dot_flag);

  auto* postulates = app.add_subcommand("postulates", "Check the contraction postulates on one instance");
  postulates->add_option("FILE", file, "theory file")->required();
  postulates->add_option("LAW", law, "law to contract")->required();
  postulates->add_flag("--json", json, "JSON output");

  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--port", port, "port (default $ATC_PORT or 8080)");
  serve->add_option("--data", data, "data directory (default $ATC_DATA or ./atc-data)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(file, out, err);
    if (*modular) return cmd_modular(file, json, out);
    if (*entail) return cmd_entail(file, law, out);
    if (*contract_cmd) return cmd_contract(file, law, semantic, out_dir, json, out, err);
    if (*revise) return cmd_revise(file, law, out_dir, json, out, err);
    if (*canonical) return cmd_canonical(file, dot, json, out, err);
    if (*postulates) return cmd_postulates(file, law, json, out);
    if (*serve) {
      if (port == 0) {
        const char* env = std::getenv("ATC_PORT");
        port = env ? std::atoi(env) : 8080;
      }
      if (data.empty()) {
        const char* env = std::getenv("ATC_DATA");
        data = env ? env : "./atc-data";
      }
      return cmd_serve(port, data, out);
    }
  } catch (const Failure& f) {
    err << "error: " << f.what() << "\n";
    return f.code();
  } catch (const UnsupportedQuery& e) {
    err << "error: unsupported query shape: " << e.what() << "\n";
    return kUnsupported;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}

}  // namespace atc
