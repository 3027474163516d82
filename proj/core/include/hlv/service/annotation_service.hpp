#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlv/annotation/record.hpp"

namespace hlv::service {

inline constexpr std::size_t kGoldPerSession = 3;

class ServiceError : public std::runtime_error {
 public:
  enum class Kind { BadRequest, NotFound, Conflict };
  ServiceError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct PoolImage {
  std::string id;
  std::string png;  // encoded bytes
};

struct GoldImage {
  std::string id;
  std::size_t digit = 0;
  std::string png;
};

struct Session {
  std::string token;
  std::string annotator_id;
  std::vector<std::string> tasks;  // real and gold ids in presentation order
  std::set<std::size_t> gold_positions;
  std::set<std::string> submitted;
  bool failed_gold = false;

  std::size_t completed() const { return submitted.size(); }
  bool open() const { return submitted.size() < tasks.size(); }
};

struct Task {
  std::string image_id;
  std::string png;
  std::size_t index = 0;  // 0-based position in the session
  std::size_t total = 0;
};

struct Acknowledgment {
  bool accepted = false;
  bool gold_failed = false;
};

/// Serves annotation sessions over a fixed image pool. Every session and
/// judgment is appended to a JSONL log, which is replayed on construction.
/// Thread-safe: mutations are serialized, reads take a shared lock.
class AnnotationService {
 public:
  AnnotationService(std::vector<PoolImage> pool, std::vector<GoldImage> gold, std::filesystem::path log_path,
                    std::uint64_t seed);

  /// Least-annotated pool images first (ties by pool order), with the gold tasks
  /// at positions drawn from a generator seeded by (seed, session number).
  const Session& create_session(const std::string& annotator_id, std::size_t workload);

  /// Next task not yet submitted, or nothing when the session is complete.
  std::optional<Task> next(const std::string& token) const;

  Acknowledgment submit(const std::string& token, const std::string& image_id,
                        const std::array<annotation::Judgment, kNumDigits>& judgments,
                        const std::string& client_timestamp = {});

  /// Non-gold judgments in submission order; annotators who failed a gold
  /// check are flagged excluded, or left out when `exclude_failed`.
  std::string export_jsonl(bool exclude_failed = false) const;

  std::size_t session_count() const;
  std::size_t judgment_count() const;
  std::size_t pool_size() const { return pool_.size(); }
  Session session(const std::string& token) const;

  static bool passes_gold(std::size_t digit, const std::array<annotation::Judgment, kNumDigits>& judgments);

 private:
  struct StoredJudgment {
    std::string token;
    std::string image_id;
    std::array<annotation::Judgment, kNumDigits> judgments{};
  };

  void replay();
  void append(const std::string& line);
  Session& open_session(const std::string& annotator_id, std::size_t workload);
  Acknowledgment apply_judgment(const StoredJudgment& j);
  const Session& find(const std::string& token) const;

  std::vector<PoolImage> pool_;
  std::map<std::string, std::size_t> pool_index_;
  std::vector<GoldImage> gold_;
  std::map<std::string, std::size_t> gold_index_;
  std::filesystem::path log_path_;
  std::uint64_t seed_;

  mutable std::shared_mutex mutex_;
  std::map<std::string, Session> sessions_;
  std::vector<std::string> session_order_;
  std::vector<std::size_t> assigned_;  // per pool image
  std::set<std::string> failed_annotators_;
  std::vector<StoredJudgment> judgments_;
};

/// Instruction text for the annotation screen (no worked examples).
std::string instructions_json();

}  // namespace hlv::service
