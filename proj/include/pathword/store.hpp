#ifndef PATHWORD_STORE_HPP_
#define PATHWORD_STORE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pathword {

// Writes `content` to a sibling temp file, fsyncs it, renames it over
// `target` and fsyncs the directory. Readers see either the old or the new
// file, never a partial one. Throws Error(kStorage).
void atomic_write_file(const std::filesystem::path& target, std::string_view content);

// A directory of JSON documents grouped in collections (subdirectories).
// Keys must be filename-safe ([0-9a-z._-]); callers hex-encode anything else.
// Only files named <key>.json are documents; leftovers from interrupted
// writes are ignored on load and swept by open().
class DocumentStore {
 public:
  explicit DocumentStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  void put(std::string_view collection, std::string_view key,
           const nlohmann::json& doc);
  std::optional<nlohmann::json> get(std::string_view collection,
                                    std::string_view key) const;
  bool contains(std::string_view collection, std::string_view key) const;
  // Returns false when the document did not exist.
  bool remove(std::string_view collection, std::string_view key);
  std::vector<std::string> keys(std::string_view collection) const;

 private:
  std::filesystem::path file_for(std::string_view collection,
                                 std::string_view key) const;

  std::filesystem::path root_;
};

}  // namespace pathword

#endif  // PATHWORD_STORE_HPP_
