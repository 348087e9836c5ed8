#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "atc/json_io.hpp"

namespace atc {

namespace detail {
struct StoredTheory;
struct Session;
}  // namespace detail

struct Response {
  int status = 200;
  Json body;
};

// Session workbench behind the HTTP API. Every session is an append-only
// event log persisted under data_dir/sessions; state is rebuilt by replay.
class Service {
 public:
  // An empty path keeps everything in memory.
  explicit Service(std::filesystem::path data_dir = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  [[nodiscard]] Response handle(const std::string& method, const std::string& path, const std::string& body);

  // Blocks serving HTTP until stop() is called from another thread.
  bool listen(const std::string& host, int port);
  void stop();
  [[nodiscard]] bool running() const;

 private:
  Response create_theory(const Json& body);
  Response get_theory(const std::string& id);
  Response create_session(const Json& body);
  Response get_session(const std::string& id);
  Response request_change(const std::string& id, const std::string& kind, const Json& body);
  Response select(const std::string& id, const Json& body);
  Response undo(const std::string& id);
  Response get_model(const std::string& id);

  std::shared_ptr<detail::Session> find_session(const std::string& id);
  std::shared_ptr<const detail::StoredTheory> find_theory(const std::string& id);
  void persist_session(const detail::Session& s, const Json& events) const;
  void load();

  std::filesystem::path data_dir_;
  std::mutex registry_mu_;
  std::map<std::string, std::shared_ptr<const detail::StoredTheory>> theories_;
  std::map<std::string, std::shared_ptr<detail::Session>> sessions_;
  int next_theory_ = 1;
  int next_session_ = 1;
  struct Server;
  std::unique_ptr<Server> server_;
};

// Writes via a temporary file and rename so readers never see partial files.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace atc
