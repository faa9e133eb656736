#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qhorn/oracle.hpp"
#include "qhorn/verify.hpp"

namespace qhorn {

enum class SessionMode { LearnQhorn1, LearnRp, Verify };
enum class OracleKind { Simulated, Interactive };
enum class SessionStatus { AwaitingAnswer, Running, Done, Failed };

const char* mode_name(SessionMode m);
const char* status_name(SessionStatus s);

/// Thrown for lookups of ids that do not exist.
class NotFound : public Error {
 public:
  using Error::Error;
};

struct SessionRequest {
  SessionMode mode = SessionMode::LearnRp;
  OracleKind oracle = OracleKind::Interactive;
  int n = 0;
  std::vector<std::string> propositions;
  int theta_cap = 3;
  std::optional<QhornQuery> target;    ///< simulated learning
  std::optional<QhornQuery> query;     ///< query under verification
  std::optional<QhornQuery> intended;  ///< simulated verification answers

  static SessionRequest from_json(const json& j);
  json to_json() const;
};

/// One learning or verification run. All public members are safe to call
/// from several threads; mutations are serialized.
class Session {
 public:
  Session(std::string id, SessionRequest request);
  ~Session();

  const std::string& id() const { return id_; }
  const SessionRequest& request() const { return request_; }

  /// Launches the learner or verifier. Simulated sessions finish here.
  void start();
  void submit_answer(bool answer);
  void rollback(std::size_t to);

  SessionStatus status() const;
  std::vector<TranscriptEntry> transcript() const;
  /// {"status":...} while not done, the learned query or report once done.
  json result() const;
  json state() const;
  json transcript_json() const;

 private:
  void run_job(MembershipOracle& oracle);
  json pending_json(const PendingQuestion& p) const;

  std::string id_;
  SessionRequest request_;
  mutable std::mutex mu_;  // serializes transitions
  mutable std::mutex result_mu_;
  std::optional<json> result_;
  std::optional<std::string> error_;
  std::vector<TranscriptEntry> simulated_transcript_;
  std::unique_ptr<InteractiveDriver> driver_;
};

/// Owns all sessions and their JSON-lines event logs under `data_dir`.
/// Existing logs are replayed on construction.
class SessionManager {
 public:
  explicit SessionManager(std::optional<std::filesystem::path> data_dir = std::nullopt);

  json create(const json& request);
  json answer(const std::string& id, bool answer);
  json rollback(const std::string& id, std::size_t to);
  json state(const std::string& id) const;
  json transcript(const std::string& id) const;
  json result(const std::string& id) const;
  std::vector<std::string> ids() const;

 private:
  std::shared_ptr<Session> get(const std::string& id) const;
  std::shared_ptr<std::mutex> op_mutex(const std::string& id);
  void append_event(const std::string& id, const json& event) const;
  void load();

  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  // Keeps each session's log in the order its transitions were applied.
  std::map<std::string, std::shared_ptr<std::mutex>> op_mu_;
  std::size_t next_id_ = 1;
};

/// Data directory from QHORN_DATA, else `fallback`.
std::filesystem::path resolve_data_dir(const std::string& fallback);

}  // namespace qhorn
