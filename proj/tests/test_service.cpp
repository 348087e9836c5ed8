#include <doctest.h>
#include <httplib.h>

#include <filesystem>
#include <thread>
#include <unistd.h>

#include "atc/service.hpp"
#include "support.hpp"

using namespace atc;
namespace fs = std::filesystem;

namespace {

Response post(Service& s, const std::string& path, const Json& body) { return s.handle("POST", path, body.dump()); }

std::string new_theory(Service& s, const std::string& name) {
  const Response r = post(s, "/api/theories", {{"text", testing::slurp(testing::data_path(name))}});
  REQUIRE(r.status == 201);
  return r.body["id"].get<std::string>();
}

std::string new_session(Service& s, const std::string& theory_id) {
  const Response r = post(s, "/api/sessions", {{"theoryId", theory_id}});
  REQUIRE(r.status == 201);
  return r.body["id"].get<std::string>();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path d = fs::path(ATC_BINARY_DIR) / "test-sessions" / (tag + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

ActionTheory current(Service& s, const std::string& sid) {
  const Response r = s.handle("GET", "/api/sessions/" + sid, "");
  REQUIRE(r.status == 200);
  return theory_from_json(r.body["current"]);
}

}  // namespace

TEST_CASE("theory registration reports modularity") {
  Service s;
  const Response ok = post(s, "/api/theories", {{"text", testing::slurp(testing::data_path("coffee"))}});
  CHECK(ok.status == 201);
  CHECK(ok.body["modular"] == true);
  CHECK(ok.body["implicitLaws"].empty());

  const Response broken = post(s, "/api/theories", {{"text", testing::slurp(testing::data_path("coffee_broken"))}});
  CHECK(broken.status == 201);
  CHECK(broken.body["modular"] == false);
  REQUIRE_FALSE(broken.body["implicitLaws"].empty());
  const ActionTheory b = testing::load("coffee_broken");
  CHECK(equivalent_cpl(parse_formula(broken.body["implicitLaws"][0].get<std::string>(), b.sig()),
                       parse_formula("token", b.sig()), b.sig()));

  const Response got = s.handle("GET", "/api/theories/" + ok.body["id"].get<std::string>(), "");
  CHECK(got.status == 200);
  CHECK(theory_from_json(got.body["theory"]).same_laws(testing::load("coffee")));
}

TEST_CASE("error statuses") {
  Service s;
  CHECK(s.handle("POST", "/api/theories", "{not json").status == 400);
  CHECK(post(s, "/api/theories", {{"txt", "x"}}).status == 400);
  const Response bad = post(s, "/api/theories", {{"text", "theory x\natoms p\nactions a\nstatic p &\n"}});
  CHECK(bad.status == 400);
  CHECK(bad.body.contains("line"));
  CHECK(s.handle("GET", "/api/theories/t99", "").status == 404);
  CHECK(post(s, "/api/sessions", {{"theoryId", "t99"}}).status == 404);
  CHECK(s.handle("GET", "/api/sessions/s42", "").status == 404);
  CHECK(s.handle("GET", "/nowhere", "").status == 404);
  CHECK(s.handle("DELETE", "/api/theories", "").status == 404);

  const std::string sid = new_session(s, new_theory(s, "coffee"));
  CHECK(post(s, "/api/sessions/" + sid + "/select", {{"candidateId", 1}}).status == 409);
  CHECK(post(s, "/api/sessions/" + sid + "/undo", Json::object()).status == 409);
  CHECK(post(s, "/api/sessions/" + sid + "/contract", {{"law", "exec token => <sell>"}}).status == 400);
  CHECK(post(s, "/api/sessions/" + sid + "/contract", {{"law", "exec token =>"}}).status == 400);
  CHECK(post(s, "/api/sessions/" + sid + "/contract", Json::object()).status == 400);
  CHECK(post(s, "/api/sessions/" + sid + "/contract", {{"law", "effect token => [buy] hot [buy] hot"}}).status == 422);

  REQUIRE(post(s, "/api/sessions/" + sid + "/contract", {{"law", "exec token => <buy>"}}).status == 200);
  CHECK(post(s, "/api/sessions/" + sid + "/select", {{"candidateId", 4}}).status == 409);
  CHECK(post(s, "/api/sessions/" + sid + "/select", {{"candidateId", "1"}}).status == 400);
  CHECK(post(s, "/api/sessions/" + sid + "/select", Json::object()).status == 400);

  const std::string inc = new_session(
      s, post(s, "/api/theories", {{"text", "theory bad\natoms p\nactions a\nstatic p\nstatic ~p\n"}}).body["id"]);
  CHECK(post(s, "/api/sessions/" + inc + "/revise", {{"law", "static p"}}).status == 422);
}

TEST_CASE("contract, select and inspect the coffee session") {
  Service s;
  const std::string sid = new_session(s, new_theory(s, "coffee"));
  const ActionTheory t = testing::load("coffee");
  const Response r = post(s, "/api/sessions/" + sid + "/contract", {{"law", "exec token => <buy>"}});
  REQUIRE(r.status == 200);
  const Json& cands = r.body["candidates"];
  REQUIRE(cands.size() == 3);
  for (const auto& c : cands) {
    CHECK(c.contains("theory"));
    CHECK(c.contains("modelGraph"));
    CHECK(c["provenance"]["algorithm"] == "executability");
    REQUIRE(c["diff"]["modified"].size() == 1);
    CHECK(c["diff"]["modified"][0]["shape"] == "exec");
  }
  const Json pending = s.handle("GET", "/api/sessions/" + sid, "").body["pending"];
  CHECK(pending["candidates"].size() == 3);

  const Response sel = post(s, "/api/sessions/" + sid + "/select", {{"candidateId", 2}});
  REQUIRE(sel.status == 200);
  CHECK(sel.body["pending"].is_null());
  CHECK(sel.body["history"].size() == 1);
  CHECK(sel.body["history"][0]["selected"] == 2);
  CHECK(theory_equivalent(current(s, sid), theory_from_json(cands[1]["theory"])));

  // The chosen context loses its buy-arrow; the other token worlds keep theirs.
  const auto cand = contract(t, testing::law(t, "exec token => <buy>")).candidates.at(1);
  REQUIRE(cand.provenance.context.has_value());
  const Val dropped = cand.provenance.context->valuation;
  const Response m = s.handle("GET", "/api/sessions/" + sid + "/model", "");
  REQUIRE(m.status == 200);
  CHECK(m.body["source"] == "change");
  const KripkeModel g = model_from_json(m.body, t.sig());
  CHECK(g.worlds().size() == 6);
  CHECK(g.arrows().size() == 2);
  for (Val w : g.worlds()) {
    const bool token = w & 1u;
    bool has_out = false;
    for (const auto& a : g.arrows()) has_out = has_out || a.from == w;
    CHECK(has_out == (token && w != dropped));
  }
}

TEST_CASE("undo is the inverse of select") {
  Service s;
  const std::string sid = new_session(s, new_theory(s, "coffee"));
  const Json before = s.handle("GET", "/api/sessions/" + sid, "").body;
  const Response offered = post(s, "/api/sessions/" + sid + "/contract", {{"law", "effect token => [buy] hot"}});
  REQUIRE(offered.status == 200);
  const Json after_offer = s.handle("GET", "/api/sessions/" + sid, "").body;
  REQUIRE(post(s, "/api/sessions/" + sid + "/select", {{"candidateId", 3}}).status == 200);
  const Response u = post(s, "/api/sessions/" + sid + "/undo", Json::object());
  REQUIRE(u.status == 200);
  CHECK(u.body["current"] == before["current"]);
  CHECK(u.body["history"].empty());
  CHECK(u.body["pending"] == after_offer["pending"]);
  // The restored candidates can be selected again.
  CHECK(post(s, "/api/sessions/" + sid + "/select", {{"candidateId", 1}}).status == 200);
}

TEST_CASE("revision offers induced theories") {
  Service s;
  const std::string sid = new_session(s, new_theory(s, "coffee_keep_token"));
  const Response r = post(s, "/api/sessions/" + sid + "/revise", {{"law", "static ~(~coffee & hot)"}});
  REQUIRE(r.status == 200);
  REQUIRE(r.body["candidates"].size() == 1);
  const Json& c = r.body["candidates"][0];
  CHECK(c["provenance"]["algorithm"] == "revision");
  CHECK(c["provenance"]["changes"][0]["worldsRemoved"].size() == 2);
  const ActionTheory induced = theory_from_json(c["theory"]);
  CHECK(entails(induced, testing::law(induced, "static ~(~coffee & hot)")));
  REQUIRE(post(s, "/api/sessions/" + sid + "/select", {{"candidateId", 1}}).status == 200);
  CHECK(theory_equivalent(current(s, sid), induced));
}

TEST_CASE("sessions persist and replay") {
  const fs::path dir = fresh_dir("replay");
  std::string sid;
  Json state;
  {
    Service s(dir);
    sid = new_session(s, new_theory(s, "coffee"));
    REQUIRE(post(s, "/api/sessions/" + sid + "/contract", {{"law", "static coffee -> hot"}}).status == 200);
    REQUIRE(post(s, "/api/sessions/" + sid + "/select", {{"candidateId", 2}}).status == 200);
    REQUIRE(post(s, "/api/sessions/" + sid + "/contract", {{"law", "exec token => <buy>"}}).status == 200);
    state = s.handle("GET", "/api/sessions/" + sid, "").body;
    CHECK(fs::exists(dir / "sessions" / (sid + ".json")));
    CHECK_FALSE(fs::exists(dir / "sessions" / (sid + ".json.tmp")));
  }
  Service again(dir);
  const Json replayed = again.handle("GET", "/api/sessions/" + sid, "").body;
  CHECK(replayed["current"] == state["current"]);
  CHECK(replayed["pending"] == state["pending"]);
  CHECK(replayed["history"] == state["history"]);
  // Fresh ids continue after the stored ones.
  const std::string next = new_session(again, new_theory(again, "pa"));
  CHECK(next != sid);
  fs::remove_all(dir);
}

TEST_CASE("concurrent requests on one session are serialized") {
  Service s;
  const std::string sid = new_session(s, new_theory(s, "coffee"));
  std::vector<std::thread> workers;
  std::vector<int> statuses(8, 0);
  for (int i = 0; i < 8; ++i) {
    workers.emplace_back([&, i] {
      const char* law = i % 2 ? "exec token => <buy>" : "effect token => [buy] hot";
      statuses[i] = post(s, "/api/sessions/" + sid + "/contract", {{"law", law}}).status;
    });
  }
  for (auto& w : workers) w.join();
  for (int st : statuses) CHECK(st == 200);
  const Json state = s.handle("GET", "/api/sessions/" + sid, "").body;
  CHECK(state["pending"]["candidates"].size() == 3);
}

TEST_CASE("HTTP front end serves the same routes") {
  Service s;
  const int port = 20000 + static_cast<int>(::getpid() % 20000);
  std::thread server([&] { s.listen("127.0.0.1", port); });
  for (int i = 0; i < 200 && !s.running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  REQUIRE(s.running());
  httplib::Client client("127.0.0.1", port);
  const Json body = {{"text", testing::slurp(testing::data_path("coffee"))}};
  auto res = client.Post("/api/theories", body.dump(), "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  CHECK(Json::parse(res->body)["modular"] == true);
  auto missing = client.Get("/api/sessions/s7");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  s.stop();
  server.join();
}
