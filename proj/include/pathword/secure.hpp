#ifndef PATHWORD_SECURE_HPP_
#define PATHWORD_SECURE_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pathword {

// Compares two strings in time independent of where they differ and of
// their lengths: both sides are hashed (BLAKE2b-256) and the digests are
// compared with sodium_memcmp.
bool constant_time_equals(std::string_view a, std::string_view b);

std::string to_hex(std::string_view bytes);
// Throws Error(kSchema) on odd length or non-hex characters.
std::string from_hex(std::string_view hex);

// Random bytes from the OS CSPRNG, hex encoded.
std::string random_token(std::size_t bytes = 32);

// Lowercase hex BLAKE2b-256.
std::string digest_hex(std::string_view data);

// 256-bit key for encrypting enrolled paths at rest. Wiped on destruction.
class MasterKey {
 public:
  static constexpr std::size_t kSize = 32;
  static constexpr const char* kEnvVar = "PATHWORD_MASTER_KEY";

  // 64 hex characters. Throws Error(kCrypto).
  static MasterKey from_hex(std::string_view hex);
  // Reads kEnvVar. Throws Error(kCrypto) when unset or malformed.
  static MasterKey from_env();
  static MasterKey generate();

  MasterKey(const MasterKey& other);
  MasterKey& operator=(const MasterKey& other);
  ~MasterKey();

  std::string hex() const;

  // XChaCha20-Poly1305; associated data binds the ciphertext to its owner.
  // Output: 24-byte nonce || ciphertext.
  std::string seal(std::string_view plaintext, std::string_view associated) const;
  // Throws Error(kCrypto) when authentication fails.
  std::string open(std::string_view sealed, std::string_view associated) const;

 private:
  MasterKey() = default;
  std::array<unsigned char, kSize> bytes_{};
};

}  // namespace pathword

#endif  // PATHWORD_SECURE_HPP_
