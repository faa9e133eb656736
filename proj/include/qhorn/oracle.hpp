#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qhorn/query.hpp"
#include "qhorn/query_json.hpp"

namespace qhorn {

enum class Phase { HeadClassification, BodySearch, Existential, Prune, Verification };

const char* phase_name(Phase p);
Phase parse_phase(const std::string& name);

class MembershipOracle {
 public:
  virtual ~MembershipOracle() = default;
  virtual Label ask(const QuestionObject& question, Phase phase) = 0;
};

/// Thrown from ask() when the answering side has gone away.
class OracleClosed : public Error {
 public:
  OracleClosed() : Error("oracle closed") {}
};

/// Answers every question by evaluating a hidden target query.
class SimulatedOracle final : public MembershipOracle {
 public:
  explicit SimulatedOracle(QhornQuery target) : target_(std::move(target)) {}
  Label ask(const QuestionObject& question, Phase) override { return evaluate(target_, question); }
  const QhornQuery& target() const { return target_; }

 private:
  QhornQuery target_;
};

struct TranscriptEntry {
  std::size_t index = 0;
  QuestionObject question{1};
  Label label = Label::NonAnswer;
  Phase phase = Phase::Verification;
};

json transcript_entry_to_json(const TranscriptEntry& e);
TranscriptEntry transcript_entry_from_json(const json& j);

struct OracleStats {
  std::size_t questions = 0;
  std::size_t total_tuples = 0;
  std::size_t max_tuples = 0;

  friend bool operator==(const OracleStats&, const OracleStats&) = default;
};

OracleStats stats_of(const std::vector<TranscriptEntry>& transcript);
json stats_to_json(const OracleStats& s);

/// Delegates to another oracle, recording statistics and a transcript.
class CountingOracle final : public MembershipOracle {
 public:
  explicit CountingOracle(MembershipOracle& inner) : inner_(inner) {}

  Label ask(const QuestionObject& question, Phase phase) override;

  const OracleStats& stats() const { return stats_; }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

 private:
  MembershipOracle& inner_;
  OracleStats stats_;
  std::vector<TranscriptEntry> transcript_;
};

/// Transcript indices whose recorded label differs from what `q` says.
/// Empty for any transcript produced by a simulated oracle for a query
/// equivalent to `q`.
std::vector<std::size_t> replay_disagreements(const std::vector<TranscriptEntry>& transcript, const QhornQuery& q);

struct PendingQuestion {
  std::size_t index = 0;
  QuestionObject question{1};
  Phase phase = Phase::Verification;
};

/// Hands questions from a learner thread to a human (or any external answer
/// source). ask() publishes the question and blocks until submit() or close().
/// Entries from `replay` are answered without blocking for as long as the
/// learner asks exactly the recorded questions in order.
class InteractiveBridge final : public MembershipOracle {
 public:
  explicit InteractiveBridge(std::vector<TranscriptEntry> replay = {});

  Label ask(const QuestionObject& question, Phase phase) override;

  /// Answers the pending question. Throws Error when nothing is pending.
  void submit(Label label);
  /// Wakes a blocked ask() with OracleClosed; later asks fail immediately.
  void close();
  /// Called by the driver once the learner returns.
  void mark_finished();
  /// Blocks until a question is pending, the learner finished, or the
  /// bridge is closed.
  void wait_until_idle();

  std::optional<PendingQuestion> pending() const;
  std::vector<TranscriptEntry> transcript() const;
  bool finished() const;

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::vector<TranscriptEntry> replay_;
  std::vector<TranscriptEntry> transcript_;
  std::optional<PendingQuestion> pending_;
  std::optional<Label> answer_;
  bool closed_ = false;
  bool finished_ = false;
};

/// Runs a learning or verification job against an InteractiveBridge on a
/// worker thread, and restarts it on rollback.
class InteractiveDriver {
 public:
  using Job = std::function<void(MembershipOracle&)>;

  explicit InteractiveDriver(Job job);
  ~InteractiveDriver();
  InteractiveDriver(const InteractiveDriver&) = delete;
  InteractiveDriver& operator=(const InteractiveDriver&) = delete;

  /// Starts (or restarts) the job, replaying `replay`, and waits until the
  /// first unanswered question or completion.
  void start(std::vector<TranscriptEntry> replay = {});
  void submit(Label label);
  /// Discards transcript entries with index >= `to` and restarts the job.
  void rollback(std::size_t to);
  void stop();

  std::optional<PendingQuestion> pending() const;
  std::vector<TranscriptEntry> transcript() const;
  bool finished() const;
  /// Message of the exception the job ended with, if any.
  std::optional<std::string> error() const;

 private:
  Job job_;
  std::unique_ptr<InteractiveBridge> bridge_;
  std::thread worker_;
  mutable std::mutex error_mu_;
  std::optional<std::string> error_;
};

}  // namespace qhorn
