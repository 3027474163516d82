#include "hlv/service/annotation_service.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "hlv/common/io.hpp"
#include "hlv/common/rng.hpp"

namespace hlv::service {

using nlohmann::ordered_json;
using annotation::Judgment;

namespace {

ordered_json judgments_json(const std::array<Judgment, kNumDigits>& judgments) {
  ordered_json j = ordered_json::object();
  for (std::size_t d = 0; d < kNumDigits; ++d) j[std::to_string(d)] = annotation::to_string(judgments[d]);
  return j;
}

std::array<Judgment, kNumDigits> parse_judgments(const ordered_json& j) {
  std::array<Judgment, kNumDigits> out{};
  for (std::size_t d = 0; d < kNumDigits; ++d) out[d] = annotation::parse_judgment(j.at(std::to_string(d)).get<std::string>());
  return out;
}

}  // namespace

AnnotationService::AnnotationService(std::vector<PoolImage> pool, std::vector<GoldImage> gold,
                                     std::filesystem::path log_path, std::uint64_t seed)
    : pool_(std::move(pool)), gold_(std::move(gold)), log_path_(std::move(log_path)), seed_(seed) {
  if (gold_.size() < kGoldPerSession) {
    throw std::invalid_argument("annotation service needs at least " + std::to_string(kGoldPerSession) + " gold images");
  }
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    if (!pool_index_.emplace(pool_[i].id, i).second) throw std::invalid_argument("duplicate pool image id " + pool_[i].id);
  }
  for (std::size_t i = 0; i < gold_.size(); ++i) {
    if (gold_[i].digit >= kNumDigits) throw std::invalid_argument("gold image " + gold_[i].id + " has no digit class");
    if (pool_index_.count(gold_[i].id) || !gold_index_.emplace(gold_[i].id, i).second) {
      throw std::invalid_argument("gold image id " + gold_[i].id + " is not unique");
    }
  }
  assigned_.assign(pool_.size(), 0);
  replay();
}

void AnnotationService::replay() {
  if (log_path_.empty() || !std::filesystem::exists(log_path_)) return;
  std::ifstream in(log_path_);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = ordered_json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "session") {
        auto& s = open_session(j.at("annotator_id").get<std::string>(), j.at("workload").get<std::size_t>());
        if (s.token != j.at("token").get<std::string>()) throw std::runtime_error("session token does not replay");
      } else if (type == "judgment") {
        apply_judgment({j.at("token").get<std::string>(), j.at("image_id").get<std::string>(),
                        parse_judgments(j.at("judgments"))});
      } else {
        throw std::runtime_error("unknown event type " + type);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("annotation log " + log_path_.string() + " line " + std::to_string(line_no) + ": " +
                               e.what());
    }
  }
}

void AnnotationService::append(const std::string& line) {
  if (log_path_.empty()) return;
  if (log_path_.has_parent_path()) std::filesystem::create_directories(log_path_.parent_path());
  std::ofstream out(log_path_, std::ios::app | std::ios::binary);
  out << line << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot append to " + log_path_.string());
}

Session& AnnotationService::open_session(const std::string& annotator_id, std::size_t workload) {
  if (annotator_id.empty()) throw ServiceError(ServiceError::Kind::BadRequest, "annotator_id is required");
  if (workload < kGoldPerSession + 1) {
    throw ServiceError(ServiceError::Kind::BadRequest, "workload must be at least " + std::to_string(kGoldPerSession + 1));
  }
  if (workload > pool_.size()) {
    throw ServiceError(ServiceError::Kind::BadRequest,
                       "workload exceeds the image pool (" + std::to_string(pool_.size()) + ")");
  }
  for (const auto& [token, s] : sessions_) {
    if (s.annotator_id == annotator_id && s.open()) {
      throw ServiceError(ServiceError::Kind::Conflict, "annotator " + annotator_id + " already has an open session");
    }
  }

  const std::size_t number = session_order_.size();
  Rng rng(derive_seed({seed_, number, 0x5e55}));
  std::vector<std::size_t> order(pool_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return assigned_[a] < assigned_[b]; });

  Session s;
  s.annotator_id = annotator_id;
  s.token = sha256_hex("session:" + std::to_string(seed_) + ":" + std::to_string(number) + ":" + annotator_id).substr(0, 32);
  const std::size_t total = workload + kGoldPerSession;
  std::vector<std::size_t> positions(total);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(positions));
  s.gold_positions.insert(positions.begin(), positions.begin() + kGoldPerSession);

  std::vector<std::size_t> gold_pick(gold_.size());
  std::iota(gold_pick.begin(), gold_pick.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(gold_pick));
  std::size_t next_real = 0, next_gold = 0;
  for (std::size_t p = 0; p < total; ++p) {
    if (s.gold_positions.count(p)) {
      s.tasks.push_back(gold_[gold_pick[next_gold++]].id);
    } else {
      const std::size_t idx = order[next_real++];
      ++assigned_[idx];
      s.tasks.push_back(pool_[idx].id);
    }
  }
  session_order_.push_back(s.token);
  return sessions_[s.token] = std::move(s);
}

const Session& AnnotationService::create_session(const std::string& annotator_id, std::size_t workload) {
  std::unique_lock lock(mutex_);
  Session& s = open_session(annotator_id, workload);
  ordered_json j{{"type", "session"}, {"token", s.token}, {"annotator_id", annotator_id}, {"workload", workload}};
  append(j.dump());
  return s;
}

const Session& AnnotationService::find(const std::string& token) const {
  const auto it = sessions_.find(token);
  if (it == sessions_.end()) throw ServiceError(ServiceError::Kind::NotFound, "unknown session");
  return it->second;
}

Session AnnotationService::session(const std::string& token) const {
  std::shared_lock lock(mutex_);
  return find(token);
}

std::optional<Task> AnnotationService::next(const std::string& token) const {
  std::shared_lock lock(mutex_);
  const Session& s = find(token);
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const auto& id = s.tasks[i];
    if (s.submitted.count(id)) continue;
    const auto g = gold_index_.find(id);
    const std::string& png = g != gold_index_.end() ? gold_[g->second].png : pool_[pool_index_.at(id)].png;
    return Task{id, png, i, s.tasks.size()};
  }
  return std::nullopt;
}

bool AnnotationService::passes_gold(std::size_t digit, const std::array<Judgment, kNumDigits>& judgments) {
  for (std::size_t d = 0; d < kNumDigits; ++d) {
    if (judgments[d] != (d == digit ? Judgment::Yes : Judgment::No)) return false;
  }
  return true;
}

Acknowledgment AnnotationService::apply_judgment(const StoredJudgment& j) {
  const auto it = sessions_.find(j.token);
  if (it == sessions_.end()) throw ServiceError(ServiceError::Kind::NotFound, "unknown session");
  Session& s = it->second;
  if (std::find(s.tasks.begin(), s.tasks.end(), j.image_id) == s.tasks.end()) {
    throw ServiceError(ServiceError::Kind::BadRequest, "image " + j.image_id + " is not part of this session");
  }
  if (s.submitted.count(j.image_id)) {
    throw ServiceError(ServiceError::Kind::Conflict, "image " + j.image_id + " was already submitted");
  }
  s.submitted.insert(j.image_id);
  judgments_.push_back(j);
  Acknowledgment ack{true, false};
  const auto g = gold_index_.find(j.image_id);
  if (g != gold_index_.end() && !passes_gold(gold_[g->second].digit, j.judgments)) {
    s.failed_gold = true;
    failed_annotators_.insert(s.annotator_id);
  }
  ack.gold_failed = s.failed_gold;
  return ack;
}

Acknowledgment AnnotationService::submit(const std::string& token, const std::string& image_id,
                                         const std::array<Judgment, kNumDigits>& judgments,
                                         const std::string& client_timestamp) {
  std::unique_lock lock(mutex_);
  const auto ack = apply_judgment({token, image_id, judgments});
  ordered_json j{{"type", "judgment"}, {"token", token}, {"image_id", image_id},
                 {"judgments", judgments_json(judgments)}, {"client_timestamp", client_timestamp}};
  append(j.dump());
  return ack;
}

std::string AnnotationService::export_jsonl(bool exclude_failed) const {
  std::shared_lock lock(mutex_);
  std::string out;
  for (const auto& j : judgments_) {
    if (gold_index_.count(j.image_id)) continue;
    const Session& s = sessions_.at(j.token);
    const bool excluded = failed_annotators_.count(s.annotator_id) > 0;
    if (excluded && exclude_failed) continue;
    annotation::AnnotationRecord rec{j.image_id, s.annotator_id, j.judgments, excluded};
    out += annotation::to_json_line(rec);
    out += '\n';
  }
  return out;
}

std::size_t AnnotationService::session_count() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

std::size_t AnnotationService::judgment_count() const {
  std::shared_lock lock(mutex_);
  return judgments_.size();
}

std::string instructions_json() {
  ordered_json j;
  j["title"] = "Which digits could this image show?";
  j["steps"] = {
      "You will see one handwritten digit image at a time.",
      "For every digit from 0 to 9, answer Yes if the image shows that digit, No if it does not, or Unsure if you "
      "cannot decide.",
      "Every digit needs an answer before you can continue.",
      "Some images are attention checks."};
  j["choices"] = {"yes", "no", "unsure"};
  return j.dump(2);
}

}  // namespace hlv::service
