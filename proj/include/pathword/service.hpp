#ifndef PATHWORD_SERVICE_HPP_
#define PATHWORD_SERVICE_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "pathword/diagram.hpp"
#include "pathword/path.hpp"
#include "pathword/secure.hpp"
#include "pathword/store.hpp"

namespace pathword {

struct GridParams {
  Alphabet alphabet;
  int rows = 0;
  int cols = 0;

  Dims dims() const noexcept { return {rows, cols}; }

  // 10x10 over the 100 two-digit letters.
  static GridParams standard() { return {Alphabet::digit_pairs(), 10, 10}; }
};

struct EnrollmentRecord {
  std::string user;
  std::string label;
  Path path;
  GridParams grid_params;
  Timestamp created_at;
};

struct Challenge {
  std::string id;
  std::string user;
  std::string label;
  Diagram diagram;
  Timestamp issued_at;
  Timestamp expires_at;
  bool consumed = false;
};

enum class VerifyOutcome { kAccepted, kRejected, kExpired, kUnknownChallenge, kReplayed };

std::string_view to_string(VerifyOutcome outcome);

using Clock = std::function<Timestamp()>;

inline constexpr std::chrono::seconds kDefaultChallengeTtl{120};
inline constexpr int kDefaultPathLength = 10;

struct ServiceConfig {
  std::filesystem::path store_dir;
  MasterKey master_key;
  std::chrono::milliseconds challenge_ttl = kDefaultChallengeTtl;
  Clock clock = [] { return std::chrono::system_clock::now(); };
};

// Lowercase, all whitespace removed.
std::string canonicalize_password(std::string_view submitted);

// user and label: 1..64 characters from [A-Za-z0-9._@-].
bool is_valid_identifier(std::string_view s);

// Challenge-response authentication over freshly generated diagrams.
//
// Every mutation is written to the DocumentStore before the in-memory view
// changes, so a restarted service sees exactly the committed state. One
// mutex serialises all operations; verify-and-consume is therefore atomic
// and two racing verifies on one challenge accept at most once.
class AuthService {
 public:
  // Loads every committed enrollment and challenge from config.store_dir.
  // Throws Error(kCrypto) when stored paths do not open with the key.
  explicit AuthService(ServiceConfig config);

  AuthService(const AuthService&) = delete;
  AuthService& operator=(const AuthService&) = delete;

  // Throws Error(kInvalidIdentifier), Error(kDuplicateEnrollment),
  // Error(kDimensionMismatch) when path dims differ from grid_params, or
  // Error(kGridTooSmall) when the grid cannot cover the alphabet.
  EnrollmentRecord enroll(std::string_view user, std::string_view label,
                          const Path& path, const GridParams& grid_params);

  // Fresh unseeded diagram, persisted with the configured TTL. A diagram id
  // seen before is discarded and regenerated.
  // Throws Error(kUnknownEnrollment).
  Challenge issue_challenge(std::string_view user, std::string_view label);

  // Consumes the challenge on every outcome except kUnknownChallenge.
  VerifyOutcome verify(std::string_view challenge_id, std::string_view submitted_password);

  // Removes the enrollment and all of its challenges.
  // Throws Error(kUnknownEnrollment).
  void revoke(std::string_view user, std::string_view label);

  std::optional<EnrollmentRecord> find_enrollment(std::string_view user,
                                                  std::string_view label) const;
  std::optional<Challenge> find_challenge(std::string_view challenge_id) const;
  std::size_t enrollment_count() const;
  std::size_t challenge_count() const;

  std::chrono::milliseconds challenge_ttl() const noexcept { return config_.challenge_ttl; }

 private:
  using Key = std::pair<std::string, std::string>;

  static std::string enrollment_key(std::string_view user, std::string_view label);
  nlohmann::json encode_enrollment(const EnrollmentRecord& record) const;
  EnrollmentRecord decode_enrollment(const nlohmann::json& doc) const;
  static nlohmann::json encode_challenge(const Challenge& challenge);
  static Challenge decode_challenge(const nlohmann::json& doc);
  void load();

  ServiceConfig config_;
  DocumentStore store_;
  mutable std::mutex mutex_;
  std::map<Key, EnrollmentRecord> enrollments_;
  std::map<std::string, Challenge, std::less<>> challenges_;
};

std::int64_t to_unix_millis(Timestamp t);
Timestamp from_unix_millis(std::int64_t ms);

// Wire forms shared by the HTTP API and the CLI client.
nlohmann::json grid_params_to_json(const GridParams& params);
GridParams grid_params_from_json(const nlohmann::json& j);

}  // namespace pathword

#endif  // PATHWORD_SERVICE_HPP_
