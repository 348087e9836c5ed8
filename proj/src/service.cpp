#include "atc/service.hpp"

#include <httplib.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace atc {

namespace fs = std::filesystem;

namespace detail {

struct StoredTheory {
  std::string id;
  ActionTheory theory;
  ModularityReport report;
};

struct Pending {
  std::string kind;
  std::string law;
  std::vector<ActionTheory> theories;
  // Per candidate: the changed model it corresponds to, when one is known.
  std::vector<std::optional<KripkeModel>> models;
  Json candidates;
};

struct Step {
  std::string kind;
  std::string law;
  int selected = 0;
  std::string timestamp;
  ActionTheory before;
  std::optional<KripkeModel> model_before;
  Pending offered;
};

struct SessionState {
  ActionTheory current;
  // Model reached by the selected changes; empty until the first selection
  // that has a corresponding model, in which case the biggest model is shown.
  std::optional<KripkeModel> model;
  std::vector<Step> history;
  std::optional<Pending> pending;
};

struct Session {
  std::string id;
  std::string theory_id;
  std::mutex write_mu;  // one writer at a time
  Json events = Json::array();

  [[nodiscard]] std::shared_ptr<const SessionState> snapshot() const {
    std::lock_guard lk(snap_mu_);
    return state_;
  }
  void publish(std::shared_ptr<const SessionState> s) {
    std::lock_guard lk(snap_mu_);
    state_ = std::move(s);
  }

 private:
  mutable std::mutex snap_mu_;
  std::shared_ptr<const SessionState> state_;
};

}  // namespace detail

using detail::Pending;
using detail::Session;
using detail::SessionState;
using detail::Step;
using detail::StoredTheory;

namespace {

struct HttpError {
  int status;
  std::string message;
};

Response error_response(int status, const std::string& msg) { return {status, Json{{"error", msg}}}; }

std::string now_iso() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path.substr(0, path.find('?'))) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string require_string(const Json& body, const char* key) {
  if (!body.is_object() || !body.contains(key) || !body[key].is_string()) {
    throw HttpError{400, std::string("missing string field '") + key + "'"};
  }
  return body[key].get<std::string>();
}

Law parse_request_law(const std::string& text, const Signature& sig) {
  try {
    return parse_law(text, sig);
  } catch (const ParseError& e) {
    throw HttpError{400, std::string(e.what()) + " (line " + std::to_string(e.line()) + ", column " +
                             std::to_string(e.column()) + ")"};
  } catch (const UnsupportedQuery& e) {
    throw HttpError{422, e.what()};
  } catch (const Error& e) {
    throw HttpError{400, e.what()};
  }
}

Json model_graph(const KripkeModel& m, const Signature& sig, bool canonical) {
  Json g = model_to_json(m, sig);
  g["canonical"] = canonical;
  return g;
}

Json theory_graph(const ActionTheory& t) {
  const BiggestModel b = biggest_model(t);
  return model_graph(b.model, t.sig(), b.eliminated.empty());
}

// The model the session currently stands for: the tracked model, else the
// canonical model when the theory is modular.
std::optional<KripkeModel> session_model(const SessionState& s) {
  if (s.model) return s.model;
  const BiggestModel b = biggest_model(s.current);
  if (b.eliminated.empty()) return b.model;
  return std::nullopt;
}

Pending offer_contraction(const SessionState& s, const std::string& law_text) {
  const ActionTheory& current = s.current;
  const Law law = parse_request_law(law_text, current.sig());
  TheoryCandidates tc;
  try {
    tc = contract(current, law);
  } catch (const Error& e) {
    throw HttpError{422, e.what()};
  }
  std::vector<KripkeModel> changed;
  const auto base = session_model(s);
  if (base && is_model_of(*base, current)) changed = contract_model(*base, law, {*base}, current.sig());
  Pending p{"contract", law_text, {}, {}, Json::array()};
  int id = 1;
  for (const auto& c : tc.candidates) {
    // Pair the candidate with the unique minimal changed model satisfying it.
    std::optional<KripkeModel> match;
    int matches = 0;
    for (const auto& m : changed) {
      if (is_model_of(m, c.theory)) {
        match = m;
        ++matches;
      }
    }
    if (matches != 1) match.reset();
    p.theories.push_back(c.theory);
    p.models.push_back(match);
    p.candidates.push_back({{"id", id++},
                            {"theory", theory_to_json(c.theory)},
                            {"text", render_theory(c.theory)},
                            {"diff", law_diff(current, c.theory)},
                            {"modelGraph", match ? model_graph(*match, current.sig(), false) : theory_graph(c.theory)},
                            {"provenance", provenance_to_json(c.provenance, current.sig())}});
  }
  return p;
}

Pending offer_revision(const SessionState& s, const std::string& law_text) {
  const ActionTheory& current = s.current;
  const Law law = parse_request_law(law_text, current.sig());
  const Signature& sig = current.sig();
  const ModelSet ms = s.model ? ModelSet{*s.model} : default_model_set(current);
  if (ms.empty()) throw HttpError{422, "cannot revise an inconsistent theory"};
  ChangeOutcome out;
  try {
    out = revise_model_set(ms, law, sig);
  } catch (const Error& e) {
    throw HttpError{422, e.what()};
  }
  if (out.results.empty()) throw HttpError{422, out.reason};
  Pending p{"revise", law_text, {}, {}, Json::array()};
  for (std::size_t i = 0; i < out.results.size(); ++i) {
    const ModelSet& r = out.results[i];
    ActionTheory induced = theory_from_model_set(r, sig, current.name());
    Json changes = Json::array();
    for (const auto& c : out.changes[i]) {
      Json cj = model_change_to_json(c, sig);
      cj.erase("base");
      cj.erase("result");
      changes.push_back(cj);
    }
    p.candidates.push_back({{"id", static_cast<int>(i) + 1},
                            {"theory", theory_to_json(induced)},
                            {"text", render_theory(induced)},
                            {"diff", law_diff(current, induced)},
                            {"modelGraph", model_graph(*r.begin(), sig, false)},
                            {"models", model_set_to_json(r, sig)},
                            {"provenance", {{"algorithm", "revision"}, {"changes", changes}}}});
    p.theories.push_back(std::move(induced));
    p.models.push_back(r.size() == 1 ? std::optional<KripkeModel>(*r.begin()) : std::nullopt);
  }
  return p;
}

std::shared_ptr<const SessionState> apply_event(const SessionState& s, const Json& ev) {
  auto next = std::make_shared<SessionState>(s);
  const std::string type = ev.at("type").get<std::string>();
  if (type == "request") {
    const std::string kind = ev.at("kind").get<std::string>();
    const std::string law = ev.at("law").get<std::string>();
    next->pending = kind == "contract" ? offer_contraction(s, law) : offer_revision(s, law);
  } else if (type == "select") {
    if (!s.pending) throw HttpError{409, "no pending candidates"};
    const Json& cid = ev.at("candidateId");
    if (!cid.is_number_integer()) throw HttpError{400, "candidateId must be an integer"};
    const int id = cid.get<int>();
    if (id < 1 || id > static_cast<int>(s.pending->theories.size())) throw HttpError{409, "stale candidate id"};
    Step step{s.pending->kind, s.pending->law, id, ev.value("at", std::string()), s.current, s.model, *s.pending};
    next->current = s.pending->theories[id - 1];
    next->model = s.pending->models[id - 1];
    next->history.push_back(std::move(step));
    next->pending.reset();
  } else if (type == "undo") {
    if (s.history.empty()) throw HttpError{409, "nothing to undo"};
    const Step& last = s.history.back();
    next->current = last.before;
    next->model = last.model_before;
    next->pending = last.offered;
    next->history.pop_back();
  } else {
    throw HttpError{400, "unknown event type '" + type + "'"};
  }
  return next;
}

Json state_json(const Session& sess, const SessionState& s) {
  Json history = Json::array();
  for (const auto& st : s.history) {
    history.push_back({{"request", {{"kind", st.kind}, {"law", st.law}}},
                       {"candidates", st.offered.candidates.size()},
                       {"selected", st.selected},
                       {"timestamp", st.timestamp}});
  }
  const ModularityReport mr = is_modular(s.current);
  return {{"id", sess.id},
          {"theoryId", sess.theory_id},
          {"current", theory_to_json(s.current)},
          {"currentText", render_theory(s.current)},
          {"modularity", modularity_to_json(mr, s.current.sig())},
          {"history", history},
          {"pending", s.pending ? Json{{"kind", s.pending->kind}, {"law", s.pending->law},
                                       {"candidates", s.pending->candidates}}
                                : Json(nullptr)}};
}

int numeric_suffix(const std::string& id) {
  try {
    return std::stoi(id.substr(1));
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

struct Service::Server {
  httplib::Server http;
};

Service::Service(fs::path data_dir) : data_dir_(std::move(data_dir)), server_(std::make_unique<Server>()) {
  if (!data_dir_.empty()) load();
}

Service::~Service() = default;

void Service::load() {
  const fs::path tdir = data_dir_ / "theories";
  if (fs::exists(tdir)) {
    for (const auto& e : fs::directory_iterator(tdir)) {
      if (e.path().extension() != ".json") continue;
      const Json j = Json::parse(read_file(e.path()));
      auto st = std::make_shared<StoredTheory>();
      st->id = j.at("id").get<std::string>();
      st->theory = theory_from_json(j.at("theory"));
      st->report = is_modular(st->theory);
      next_theory_ = std::max(next_theory_, numeric_suffix(st->id) + 1);
      theories_[st->id] = std::move(st);
    }
  }
  const fs::path sdir = data_dir_ / "sessions";
  if (fs::exists(sdir)) {
    for (const auto& e : fs::directory_iterator(sdir)) {
      if (e.path().extension() != ".json") continue;
      const Json j = Json::parse(read_file(e.path()));
      auto sess = std::make_shared<Session>();
      sess->id = j.at("id").get<std::string>();
      sess->theory_id = j.at("theoryId").get<std::string>();
      auto th = theories_.find(sess->theory_id);
      if (th == theories_.end()) throw Error("session " + sess->id + " refers to a missing theory");
      std::shared_ptr<const SessionState> st = std::make_shared<SessionState>(SessionState{th->second->theory, {}, {}, {}});
      try {
        for (const auto& ev : j.at("events")) st = apply_event(*st, ev);
      } catch (const HttpError& err) {
        throw Error("session " + sess->id + " does not replay: " + err.message);
      }
      sess->events = j.at("events");
      sess->publish(st);
      next_session_ = std::max(next_session_, numeric_suffix(sess->id) + 1);
      sessions_[sess->id] = std::move(sess);
    }
  }
}

void Service::persist_session(const Session& s, const Json& events) const {
  if (data_dir_.empty()) return;
  const Json j = {{"id", s.id}, {"theoryId", s.theory_id}, {"events", events}};
  write_file_atomic(data_dir_ / "sessions" / (s.id + ".json"), j.dump(2));
}

std::shared_ptr<Session> Service::find_session(const std::string& id) {
  std::lock_guard lk(registry_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw HttpError{404, "unknown session '" + id + "'"};
  return it->second;
}

std::shared_ptr<const StoredTheory> Service::find_theory(const std::string& id) {
  std::lock_guard lk(registry_mu_);
  auto it = theories_.find(id);
  if (it == theories_.end()) throw HttpError{404, "unknown theory '" + id + "'"};
  return it->second;
}

Response Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  try {
    Json j = Json::object();
    if (!body.empty()) {
      try {
        j = Json::parse(body);
      } catch (const Json::parse_error& e) {
        return error_response(400, std::string("malformed JSON body: ") + e.what());
      }
    }
    const auto parts = split_path(path);
    if (parts.size() < 2 || parts[0] != "api") return error_response(404, "no such endpoint");
    const bool get = method == "GET";
    const bool post = method == "POST";
    if (parts[1] == "theories") {
      if (parts.size() == 2 && post) return create_theory(j);
      if (parts.size() == 3 && get) return get_theory(parts[2]);
    } else if (parts[1] == "sessions") {
      if (parts.size() == 2 && post) return create_session(j);
      if (parts.size() == 3 && get) return get_session(parts[2]);
      if (parts.size() == 4) {
        const std::string& op = parts[3];
        if (post && (op == "contract" || op == "revise")) return request_change(parts[2], op, j);
        if (post && op == "select") return select(parts[2], j);
        if (post && op == "undo") return undo(parts[2]);
        if (get && op == "model") return get_model(parts[2]);
      }
    }
    return error_response(404, "no such endpoint");
  } catch (const HttpError& e) {
    return error_response(e.status, e.message);
  } catch (const Error& e) {
    return error_response(422, e.what());
  } catch (const Json::exception& e) {
    return error_response(400, e.what());
  }
}

Response Service::create_theory(const Json& body) {
  const std::string text = require_string(body, "text");
  ParseResult pr;
  try {
    pr = parse_theory_with_warnings(text);
  } catch (const ParseError& e) {
    return {400, Json{{"error", e.what()}, {"line", e.line()}, {"column", e.column()}}};
  } catch (const Error& e) {
    return error_response(400, e.what());
  }
  auto st = std::make_shared<StoredTheory>();
  st->theory = pr.theory;
  st->report = is_modular(st->theory);
  {
    std::lock_guard lk(registry_mu_);
    st->id = "t" + std::to_string(next_theory_++);
    if (!data_dir_.empty()) {
      const Json file = {{"id", st->id}, {"theory", theory_to_json(st->theory)}};
      write_file_atomic(data_dir_ / "theories" / (st->id + ".json"), file.dump(2));
    }
    theories_[st->id] = st;
  }
  Json out = modularity_to_json(st->report, st->theory.sig());
  out["id"] = st->id;
  out["warnings"] = pr.warnings;
  return {201, out};
}

Response Service::get_theory(const std::string& id) {
  const auto st = find_theory(id);
  return {200, Json{{"id", st->id},
                    {"theory", theory_to_json(st->theory)},
                    {"text", render_theory(st->theory)},
                    {"modularity", modularity_to_json(st->report, st->theory.sig())}}};
}

Response Service::create_session(const Json& body) {
  const auto st = find_theory(require_string(body, "theoryId"));
  auto sess = std::make_shared<Session>();
  sess->theory_id = st->id;
  sess->publish(std::make_shared<SessionState>(SessionState{st->theory, {}, {}, {}}));
  {
    std::lock_guard lk(registry_mu_);
    sess->id = "s" + std::to_string(next_session_++);
    persist_session(*sess, sess->events);
    sessions_[sess->id] = sess;
  }
  return {201, state_json(*sess, *sess->snapshot())};
}

Response Service::get_session(const std::string& id) {
  const auto sess = find_session(id);
  return {200, state_json(*sess, *sess->snapshot())};
}

namespace {

// Applies one event under the session's writer lock: persist first, then
// publish, so the file on disk never lags behind what clients observed.
template <typename Persist>
std::shared_ptr<const SessionState> commit(Session& sess, Json ev, Persist persist) {
  std::lock_guard lk(sess.write_mu);
  ev["at"] = now_iso();
  auto next = apply_event(*sess.snapshot(), ev);
  Json events = sess.events;
  events.push_back(ev);
  persist(events);
  sess.events = std::move(events);
  sess.publish(next);
  return next;
}

}  // namespace

Response Service::request_change(const std::string& id, const std::string& kind, const Json& body) {
  const auto sess = find_session(id);
  const std::string law = require_string(body, "law");
  const auto st = commit(*sess, Json{{"type", "request"}, {"kind", kind}, {"law", law}},
                         [&](const Json& evs) { persist_session(*sess, evs); });
  return {200, Json{{"kind", kind}, {"law", law}, {"candidates", st->pending->candidates}}};
}

Response Service::select(const std::string& id, const Json& body) {
  const auto sess = find_session(id);
  if (!body.is_object() || !body.contains("candidateId")) throw HttpError{400, "missing field 'candidateId'"};
  const auto st = commit(*sess, Json{{"type", "select"}, {"candidateId", body["candidateId"]}},
                         [&](const Json& evs) { persist_session(*sess, evs); });
  return {200, state_json(*sess, *st)};
}

Response Service::undo(const std::string& id) {
  const auto sess = find_session(id);
  const auto st = commit(*sess, Json{{"type", "undo"}}, [&](const Json& evs) { persist_session(*sess, evs); });
  return {200, state_json(*sess, *st)};
}

Response Service::get_model(const std::string& id) {
  const auto sess = find_session(id);
  const auto st = sess->snapshot();
  const Signature& sig = st->current.sig();
  if (st->model) {
    Json out = model_to_json(*st->model, sig);
    out["canonical"] = false;
    out["source"] = "change";
    out["dot"] = to_dot(*st->model, sig);
    return {200, out};
  }
  const BiggestModel b = biggest_model(st->current);
  Json out = model_to_json(b.model, sig);
  out["canonical"] = b.eliminated.empty();
  out["source"] = b.eliminated.empty() ? "canonical" : "biggest";
  out["dot"] = to_dot(b.model, sig);
  return {200, out};
}

bool Service::listen(const std::string& host, int port) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  server_->http.Get(".*", route);
  server_->http.Post(".*", route);
  server_->http.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  return server_->http.listen(host, port);
}

void Service::stop() { server_->http.stop(); }

bool Service::running() const { return server_->http.is_running(); }

}  // namespace atc
