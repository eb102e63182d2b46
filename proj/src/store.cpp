#include "pathword/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include "pathword/error.hpp"
#include "pathword/secure.hpp"

namespace pathword {
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kTempMarker = ".tmp-";
constexpr std::string_view kSuffix = ".json";

[[noreturn]] void storage_error(const std::string& what, const fs::path& where) {
  throw Error(ErrorCode::kStorage, what + " " + where.string() + ": " + std::strerror(errno));
}

void fsync_path(const fs::path& p, int flags) {
  const int fd = ::open(p.c_str(), flags);
  if (fd < 0) storage_error("cannot open for sync", p);
  const int rc = ::fsync(fd);
  ::close(fd);
  if (rc != 0) storage_error("fsync failed on", p);
}

void check_name(std::string_view name) {
  if (name.empty() || name.front() == '.') {
    throw Error(ErrorCode::kStorage, "invalid document name '" + std::string(name) + "'");
  }
  for (char c : name) {
    const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || c == '.' || c == '_' || c == '-';
    if (!ok) throw Error(ErrorCode::kStorage, "invalid document name '" + std::string(name) + "'");
  }
}

}  // namespace

void atomic_write_file(const fs::path& target, std::string_view content) {
  const fs::path temp = target.string() + std::string(kTempMarker) + random_token(8);
  const int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0600);
  if (fd < 0) storage_error("cannot create", temp);

  std::size_t written = 0;
  while (written < content.size()) {
    const ssize_t n = ::write(fd, content.data() + written, content.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      ::unlink(temp.c_str());
      storage_error("write failed on", temp);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    ::close(fd);
    ::unlink(temp.c_str());
    storage_error("fsync failed on", temp);
  }
  ::close(fd);

  if (::rename(temp.c_str(), target.c_str()) != 0) {
    ::unlink(temp.c_str());
    storage_error("rename failed onto", target);
  }
  fsync_path(target.parent_path().empty() ? fs::path(".") : target.parent_path(),
             O_RDONLY | O_DIRECTORY | O_CLOEXEC);
}

DocumentStore::DocumentStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw Error(ErrorCode::kStorage, "cannot create store " + root_.string() + ": " + ec.message());

  // Interrupted writes leave temp files behind; they were never committed.
  std::vector<fs::path> leftovers;
  for (const auto& entry : fs::recursive_directory_iterator(root_)) {
    if (entry.is_regular_file() &&
        entry.path().filename().string().find(kTempMarker) != std::string::npos) {
      leftovers.push_back(entry.path());
    }
  }
  for (const auto& p : leftovers) fs::remove(p, ec);
}

fs::path DocumentStore::file_for(std::string_view collection, std::string_view key) const {
  check_name(collection);
  check_name(key);
  return root_ / std::string(collection) / (std::string(key) + std::string(kSuffix));
}

void DocumentStore::put(std::string_view collection, std::string_view key,
                        const nlohmann::json& doc) {
  const fs::path file = file_for(collection, key);
  std::error_code ec;
  fs::create_directories(file.parent_path(), ec);
  if (ec) throw Error(ErrorCode::kStorage, "cannot create " + file.parent_path().string());
  atomic_write_file(file, doc.dump(2) + "\n");
}

std::optional<nlohmann::json> DocumentStore::get(std::string_view collection,
                                                 std::string_view key) const {
  const fs::path file = file_for(collection, key);
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kStorage, "corrupt document " + file.string() + ": " + e.what());
  }
}

bool DocumentStore::contains(std::string_view collection, std::string_view key) const {
  std::error_code ec;
  return fs::exists(file_for(collection, key), ec);
}

bool DocumentStore::remove(std::string_view collection, std::string_view key) {
  const fs::path file = file_for(collection, key);
  std::error_code ec;
  const bool removed = fs::remove(file, ec);
  if (ec) throw Error(ErrorCode::kStorage, "cannot remove " + file.string() + ": " + ec.message());
  if (removed) fsync_path(file.parent_path(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  return removed;
}

std::vector<std::string> DocumentStore::keys(std::string_view collection) const {
  check_name(collection);
  std::vector<std::string> out;
  const fs::path dir = root_ / std::string(collection);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.find(kTempMarker) != std::string::npos) continue;
    if (name.size() <= kSuffix.size() || !name.ends_with(kSuffix)) continue;
    out.push_back(name.substr(0, name.size() - kSuffix.size()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pathword
