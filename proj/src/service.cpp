#include "pathword/service.hpp"

#include <cctype>

#include "pathword/error.hpp"

namespace pathword {
namespace {

constexpr std::string_view kEnrollments = "enrollments";
constexpr std::string_view kChallenges = "challenges";
constexpr std::string_view kDiagrams = "diagrams";
constexpr int kMaxDiagramAttempts = 8;

std::string sealing_context(std::string_view user, std::string_view label) {
  std::string ad = "pathword-enrollment-v1";
  ad += '\0';
  ad += user;
  ad += '\0';
  ad += label;
  return ad;
}

void require_identifier(std::string_view what, std::string_view value) {
  if (!is_valid_identifier(value)) {
    throw Error(ErrorCode::kInvalidIdentifier,
                std::string(what) + " must be 1-64 characters from [A-Za-z0-9._@-]");
  }
}

}  // namespace

std::string_view to_string(VerifyOutcome outcome) {
  switch (outcome) {
    case VerifyOutcome::kAccepted: return "accepted";
    case VerifyOutcome::kRejected: return "rejected";
    case VerifyOutcome::kExpired: return "expired";
    case VerifyOutcome::kUnknownChallenge: return "unknown-challenge";
    case VerifyOutcome::kReplayed: return "replayed";
  }
  return "unknown";
}

std::string canonicalize_password(std::string_view submitted) {
  std::string out;
  out.reserve(submitted.size());
  for (char c : submitted) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u)) continue;
    out.push_back(static_cast<char>(std::tolower(u)));
  }
  return out;
}

bool is_valid_identifier(std::string_view s) {
  if (s.empty() || s.size() > 64) return false;
  for (char c : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' ||
                    c == '@' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::int64_t to_unix_millis(Timestamp t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

Timestamp from_unix_millis(std::int64_t ms) {
  return Timestamp(std::chrono::duration_cast<Timestamp::duration>(std::chrono::milliseconds(ms)));
}

nlohmann::json grid_params_to_json(const GridParams& params) {
  return {{"alphabet", alphabet_to_json(params.alphabet)},
          {"rows", params.rows},
          {"cols", params.cols}};
}

GridParams grid_params_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kSchema, "grid_params must be an object");
  try {
    return {alphabet_from_json(j.at("alphabet")), j.at("rows").get<int>(), j.at("cols").get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("bad grid_params: ") + e.what());
  }
}

AuthService::AuthService(ServiceConfig config)
    : config_(std::move(config)), store_(config_.store_dir) {
  if (config_.challenge_ttl <= std::chrono::milliseconds::zero()) {
    throw Error(ErrorCode::kDomain, "challenge TTL must be positive");
  }
  load();
}

std::string AuthService::enrollment_key(std::string_view user, std::string_view label) {
  return to_hex(user) + "_" + to_hex(label);
}

nlohmann::json AuthService::encode_enrollment(const EnrollmentRecord& record) const {
  const std::string sealed = config_.master_key.seal(path_to_json(record.path).dump(),
                                                     sealing_context(record.user, record.label));
  return {{"user", record.user},
          {"label", record.label},
          {"grid_params", grid_params_to_json(record.grid_params)},
          {"path_sealed", to_hex(sealed)},
          {"created_at", to_unix_millis(record.created_at)}};
}

EnrollmentRecord AuthService::decode_enrollment(const nlohmann::json& doc) const {
  try {
    const auto user = doc.at("user").get<std::string>();
    const auto label = doc.at("label").get<std::string>();
    const std::string plain = config_.master_key.open(
        from_hex(doc.at("path_sealed").get<std::string>()), sealing_context(user, label));
    return {user, label, path_from_json(nlohmann::json::parse(plain)),
            grid_params_from_json(doc.at("grid_params")),
            from_unix_millis(doc.at("created_at").get<std::int64_t>())};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kStorage, std::string("corrupt enrollment: ") + e.what());
  }
}

nlohmann::json AuthService::encode_challenge(const Challenge& challenge) {
  return {{"id", challenge.id},
          {"user", challenge.user},
          {"label", challenge.label},
          {"diagram", diagram_to_json(challenge.diagram)},
          {"issued_at", to_unix_millis(challenge.issued_at)},
          {"expires_at", to_unix_millis(challenge.expires_at)},
          {"consumed", challenge.consumed}};
}

Challenge AuthService::decode_challenge(const nlohmann::json& doc) {
  try {
    return {doc.at("id").get<std::string>(),
            doc.at("user").get<std::string>(),
            doc.at("label").get<std::string>(),
            diagram_from_json(doc.at("diagram")),
            from_unix_millis(doc.at("issued_at").get<std::int64_t>()),
            from_unix_millis(doc.at("expires_at").get<std::int64_t>()),
            doc.at("consumed").get<bool>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kStorage, std::string("corrupt challenge: ") + e.what());
  }
}

void AuthService::load() {
  for (const auto& key : store_.keys(kEnrollments)) {
    if (auto doc = store_.get(kEnrollments, key)) {
      EnrollmentRecord record = decode_enrollment(*doc);
      Key k{record.user, record.label};
      enrollments_.emplace(std::move(k), std::move(record));
    }
  }
  for (const auto& key : store_.keys(kChallenges)) {
    auto doc = store_.get(kChallenges, key);
    if (!doc) continue;
    Challenge challenge = decode_challenge(*doc);
    // Left behind by a revoke interrupted between its deletes.
    if (!enrollments_.contains({challenge.user, challenge.label})) {
      store_.remove(kChallenges, key);
      continue;
    }
    challenges_.emplace(challenge.id, std::move(challenge));
  }
}

EnrollmentRecord AuthService::enroll(std::string_view user, std::string_view label,
                                     const Path& path, const GridParams& grid_params) {
  require_identifier("user", user);
  require_identifier("label", label);
  if (path.dims() != grid_params.dims()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "path is for " + std::to_string(path.dims().rows) + "x" +
                    std::to_string(path.dims().cols) + " but grid_params are " +
                    std::to_string(grid_params.rows) + "x" + std::to_string(grid_params.cols));
  }
  if (grid_params.dims().cell_count() < grid_params.alphabet.size()) {
    throw Error(ErrorCode::kGridTooSmall, "grid_params cannot cover the alphabet");
  }
  if (grid_params.dims().cell_count() > kMaxCells) {
    throw Error(ErrorCode::kMalformedGrid, "grid_params too large");
  }

  std::lock_guard lock(mutex_);
  Key k{std::string(user), std::string(label)};
  if (enrollments_.contains(k)) {
    throw Error(ErrorCode::kDuplicateEnrollment,
                "'" + k.first + "' already has a pathword labelled '" + k.second + "'");
  }
  EnrollmentRecord record{k.first, k.second, path, grid_params, config_.clock()};
  store_.put(kEnrollments, enrollment_key(user, label), encode_enrollment(record));
  enrollments_.emplace(std::move(k), record);
  return record;
}

Challenge AuthService::issue_challenge(std::string_view user, std::string_view label) {
  std::lock_guard lock(mutex_);
  const auto it = enrollments_.find(Key{std::string(user), std::string(label)});
  if (it == enrollments_.end()) {
    throw Error(ErrorCode::kUnknownEnrollment,
                "no pathword '" + std::string(label) + "' for '" + std::string(user) + "'");
  }
  const GridParams& params = it->second.grid_params;
  const Timestamp now = config_.clock();

  for (int attempt = 0; attempt < kMaxDiagramAttempts; ++attempt) {
    Diagram diagram(generate_diagram(params.alphabet, params.rows, params.cols).grid(), now);
    if (store_.contains(kDiagrams, diagram.id())) continue;

    Challenge challenge{random_token(), std::string(user), std::string(label), std::move(diagram),
                        now, now + config_.challenge_ttl, false};
    store_.put(kDiagrams, challenge.diagram.id(), nlohmann::json::object());
    store_.put(kChallenges, challenge.id, encode_challenge(challenge));
    challenges_.emplace(challenge.id, challenge);
    return challenge;
  }
  throw Error(ErrorCode::kCrypto, "random source keeps producing previously issued diagrams");
}

VerifyOutcome AuthService::verify(std::string_view challenge_id, std::string_view submitted_password) {
  std::lock_guard lock(mutex_);
  const auto it = challenges_.find(challenge_id);
  if (it == challenges_.end()) return VerifyOutcome::kUnknownChallenge;
  Challenge& challenge = it->second;
  if (challenge.consumed) return VerifyOutcome::kReplayed;

  const auto enrollment = enrollments_.find(Key{challenge.user, challenge.label});
  if (enrollment == enrollments_.end()) return VerifyOutcome::kUnknownChallenge;

  Challenge consumed = challenge;
  consumed.consumed = true;
  store_.put(kChallenges, consumed.id, encode_challenge(consumed));
  challenge.consumed = true;

  if (config_.clock() >= challenge.expires_at) return VerifyOutcome::kExpired;

  const std::string expected =
      canonicalize_password(derive(enrollment->second.path, challenge.diagram).text);
  return constant_time_equals(expected, canonicalize_password(submitted_password))
             ? VerifyOutcome::kAccepted
             : VerifyOutcome::kRejected;
}

void AuthService::revoke(std::string_view user, std::string_view label) {
  std::lock_guard lock(mutex_);
  const auto it = enrollments_.find(Key{std::string(user), std::string(label)});
  if (it == enrollments_.end()) {
    throw Error(ErrorCode::kUnknownEnrollment,
                "no pathword '" + std::string(label) + "' for '" + std::string(user) + "'");
  }
  // Challenges first: a crash part way leaves the enrollment revocable again.
  for (auto c = challenges_.begin(); c != challenges_.end();) {
    if (c->second.user == user && c->second.label == label) {
      store_.remove(kChallenges, c->first);
      c = challenges_.erase(c);
    } else {
      ++c;
    }
  }
  store_.remove(kEnrollments, enrollment_key(user, label));
  enrollments_.erase(it);
}

std::optional<EnrollmentRecord> AuthService::find_enrollment(std::string_view user,
                                                             std::string_view label) const {
  std::lock_guard lock(mutex_);
  const auto it = enrollments_.find(Key{std::string(user), std::string(label)});
  if (it == enrollments_.end()) return std::nullopt;
  return it->second;
}

std::optional<Challenge> AuthService::find_challenge(std::string_view challenge_id) const {
  std::lock_guard lock(mutex_);
  const auto it = challenges_.find(challenge_id);
  if (it == challenges_.end()) return std::nullopt;
  return it->second;
}

std::size_t AuthService::enrollment_count() const {
  std::lock_guard lock(mutex_);
  return enrollments_.size();
}

std::size_t AuthService::challenge_count() const {
  std::lock_guard lock(mutex_);
  return challenges_.size();
}

}  // namespace pathword
