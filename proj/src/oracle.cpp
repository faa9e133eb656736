#include "qhorn/oracle.hpp"

#include <algorithm>

namespace qhorn {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::HeadClassification: return "head-classification";
    case Phase::BodySearch: return "body-search";
    case Phase::Existential: return "existential";
    case Phase::Prune: return "prune";
    case Phase::Verification: return "verification";
  }
  return "unknown";
}

Phase parse_phase(const std::string& name) {
  for (Phase p : {Phase::HeadClassification, Phase::BodySearch, Phase::Existential, Phase::Prune,
                  Phase::Verification}) {
    if (name == phase_name(p)) return p;
  }
  throw Error("unknown phase '" + name + "'");
}

json transcript_entry_to_json(const TranscriptEntry& e) {
  return {{"i", e.index},
          {"tuples", e.question.bitstrings()},
          {"label", label_name(e.label)},
          {"phase", phase_name(e.phase)}};
}

TranscriptEntry transcript_entry_from_json(const json& j) {
  TranscriptEntry e;
  e.index = j.at("i").get<std::size_t>();
  e.question = question_from_json(j.at("tuples"));
  const std::string label = j.at("label").get<std::string>();
  if (label != "answer" && label != "non-answer") throw Error("unknown label '" + label + "'");
  e.label = to_label(label == "answer");
  e.phase = parse_phase(j.at("phase").get<std::string>());
  return e;
}

OracleStats stats_of(const std::vector<TranscriptEntry>& transcript) {
  OracleStats s;
  for (const auto& e : transcript) {
    ++s.questions;
    s.total_tuples += e.question.size();
    s.max_tuples = std::max(s.max_tuples, e.question.size());
  }
  return s;
}

json stats_to_json(const OracleStats& s) {
  return {{"questions", s.questions}, {"total_tuples", s.total_tuples}, {"max_tuples", s.max_tuples}};
}

Label CountingOracle::ask(const QuestionObject& question, Phase phase) {
  const Label label = inner_.ask(question, phase);
  ++stats_.questions;
  stats_.total_tuples += question.size();
  stats_.max_tuples = std::max(stats_.max_tuples, question.size());
  transcript_.push_back({transcript_.size(), question, label, phase});
  return label;
}

std::vector<std::size_t> replay_disagreements(const std::vector<TranscriptEntry>& transcript, const QhornQuery& q) {
  std::vector<std::size_t> out;
  for (const auto& e : transcript) {
    if (evaluate(q, e.question) != e.label) out.push_back(e.index);
  }
  return out;
}

InteractiveBridge::InteractiveBridge(std::vector<TranscriptEntry> replay) : replay_(std::move(replay)) {}

Label InteractiveBridge::ask(const QuestionObject& question, Phase phase) {
  std::unique_lock lock(mu_);
  if (closed_) throw OracleClosed();
  const std::size_t index = transcript_.size();
  if (index < replay_.size()) {
    if (replay_[index].question == question) {
      const Label label = replay_[index].label;
      transcript_.push_back({index, question, label, phase});
      return label;
    }
    // The learner diverged from the recording; the rest of it is stale.
    replay_.resize(index);
  }
  pending_ = PendingQuestion{index, question, phase};
  answer_.reset();
  cv_.notify_all();
  cv_.wait(lock, [&] { return answer_.has_value() || closed_; });
  if (closed_) {
    pending_.reset();
    throw OracleClosed();
  }
  const Label label = *answer_;
  answer_.reset();
  pending_.reset();
  transcript_.push_back({index, question, label, phase});
  return label;
}

void InteractiveBridge::submit(Label label) {
  std::lock_guard lock(mu_);
  if (!pending_ || answer_ || closed_) throw Error("no pending question");
  answer_ = label;
  cv_.notify_all();
}

void InteractiveBridge::close() {
  std::lock_guard lock(mu_);
  closed_ = true;
  cv_.notify_all();
}

void InteractiveBridge::mark_finished() {
  std::lock_guard lock(mu_);
  finished_ = true;
  cv_.notify_all();
}

void InteractiveBridge::wait_until_idle() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return (pending_.has_value() && !answer_.has_value()) || finished_ || closed_; });
}

std::optional<PendingQuestion> InteractiveBridge::pending() const {
  std::lock_guard lock(mu_);
  if (answer_) return std::nullopt;
  return pending_;
}

std::vector<TranscriptEntry> InteractiveBridge::transcript() const {
  std::lock_guard lock(mu_);
  return transcript_;
}

bool InteractiveBridge::finished() const {
  std::lock_guard lock(mu_);
  return finished_;
}

InteractiveDriver::InteractiveDriver(Job job) : job_(std::move(job)) {}

InteractiveDriver::~InteractiveDriver() { stop(); }

void InteractiveDriver::start(std::vector<TranscriptEntry> replay) {
  stop();
  {
    std::lock_guard lock(error_mu_);
    error_.reset();
  }
  bridge_ = std::make_unique<InteractiveBridge>(std::move(replay));
  InteractiveBridge* bridge = bridge_.get();
  worker_ = std::thread([this, bridge] {
    try {
      job_(*bridge);
    } catch (const OracleClosed&) {
      // Abandoned or rolled back; the next run reports its own outcome.
    } catch (const std::exception& e) {
      std::lock_guard lock(error_mu_);
      error_ = e.what();
    }
    bridge->mark_finished();
  });
  bridge->wait_until_idle();
}

void InteractiveDriver::submit(Label label) {
  if (!bridge_) throw Error("interactive run not started");
  bridge_->submit(label);
  // Idle again once the learner has consumed the answer and either posed
  // the next question or returned.
  bridge_->wait_until_idle();
}

void InteractiveDriver::rollback(std::size_t to) {
  if (!bridge_) throw Error("interactive run not started");
  std::vector<TranscriptEntry> kept = bridge_->transcript();
  if (to > kept.size()) throw Error("rollback index beyond transcript");
  kept.resize(to);
  start(std::move(kept));
}

void InteractiveDriver::stop() {
  if (bridge_) bridge_->close();
  if (worker_.joinable()) worker_.join();
}

std::optional<PendingQuestion> InteractiveDriver::pending() const {
  return bridge_ ? bridge_->pending() : std::nullopt;
}

std::vector<TranscriptEntry> InteractiveDriver::transcript() const {
  return bridge_ ? bridge_->transcript() : std::vector<TranscriptEntry>{};
}

bool InteractiveDriver::finished() const { return bridge_ && bridge_->finished(); }

std::optional<std::string> InteractiveDriver::error() const {
  std::lock_guard lock(error_mu_);
  return error_;
}

}  // namespace qhorn
