#include "pathword/secure.hpp"

#include <cstdlib>

#include <sodium.h>

#include "pathword/error.hpp"
#include "pathword/random.hpp"

namespace pathword {
namespace {

const unsigned char* bytes_of(std::string_view s) {
  return reinterpret_cast<const unsigned char*>(s.data());
}

}  // namespace

bool constant_time_equals(std::string_view a, std::string_view b) {
  ensure_crypto_initialized();
  unsigned char ha[crypto_generichash_BYTES];
  unsigned char hb[crypto_generichash_BYTES];
  crypto_generichash(ha, sizeof ha, bytes_of(a), a.size(), nullptr, 0);
  crypto_generichash(hb, sizeof hb, bytes_of(b), b.size(), nullptr, 0);
  return sodium_memcmp(ha, hb, sizeof ha) == 0;
}

std::string to_hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

std::string from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw Error(ErrorCode::kSchema, "hex string of odd length");
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = nibble(hex[i]);
    const int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::kSchema, "invalid hex character");
    out.push_back(static_cast<char>((hi << 4) | lo));
  }
  return out;
}

std::string random_token(std::size_t bytes) {
  ensure_crypto_initialized();
  std::string raw(bytes, '\0');
  randombytes_buf(raw.data(), raw.size());
  return to_hex(raw);
}

std::string digest_hex(std::string_view data) {
  ensure_crypto_initialized();
  unsigned char out[crypto_generichash_BYTES];
  crypto_generichash(out, sizeof out, bytes_of(data), data.size(), nullptr, 0);
  return to_hex(std::string_view(reinterpret_cast<const char*>(out), sizeof out));
}

MasterKey MasterKey::from_hex(std::string_view hex) {
  if (hex.size() != kSize * 2) {
    throw Error(ErrorCode::kCrypto, "master key must be 64 hex characters");
  }
  std::string raw;
  try {
    raw = pathword::from_hex(hex);
  } catch (const Error&) {
    throw Error(ErrorCode::kCrypto, "master key is not valid hex");
  }
  MasterKey key;
  std::copy(raw.begin(), raw.end(), key.bytes_.begin());
  sodium_memzero(raw.data(), raw.size());
  return key;
}

MasterKey MasterKey::from_env() {
  const char* value = std::getenv(kEnvVar);
  if (value == nullptr || *value == '\0') {
    throw Error(ErrorCode::kCrypto, std::string(kEnvVar) + " is not set");
  }
  return from_hex(value);
}

MasterKey MasterKey::generate() {
  ensure_crypto_initialized();
  MasterKey key;
  crypto_aead_xchacha20poly1305_ietf_keygen(key.bytes_.data());
  return key;
}

MasterKey::MasterKey(const MasterKey& other) : bytes_(other.bytes_) {}

MasterKey& MasterKey::operator=(const MasterKey& other) {
  bytes_ = other.bytes_;
  return *this;
}

MasterKey::~MasterKey() { sodium_memzero(bytes_.data(), bytes_.size()); }

std::string MasterKey::hex() const {
  return to_hex(std::string_view(reinterpret_cast<const char*>(bytes_.data()), bytes_.size()));
}

std::string MasterKey::seal(std::string_view plaintext, std::string_view associated) const {
  ensure_crypto_initialized();
  constexpr std::size_t kNonce = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;
  std::string out(kNonce + plaintext.size() + crypto_aead_xchacha20poly1305_ietf_ABYTES, '\0');
  auto* buf = reinterpret_cast<unsigned char*>(out.data());
  randombytes_buf(buf, kNonce);
  unsigned long long written = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(buf + kNonce, &written, bytes_of(plaintext),
                                             plaintext.size(), bytes_of(associated),
                                             associated.size(), nullptr, buf, bytes_.data());
  out.resize(kNonce + written);
  return out;
}

std::string MasterKey::open(std::string_view sealed, std::string_view associated) const {
  ensure_crypto_initialized();
  constexpr std::size_t kNonce = crypto_aead_xchacha20poly1305_ietf_NPUBBYTES;
  constexpr std::size_t kTag = crypto_aead_xchacha20poly1305_ietf_ABYTES;
  if (sealed.size() < kNonce + kTag) throw Error(ErrorCode::kCrypto, "sealed value too short");
  std::string out(sealed.size() - kNonce - kTag, '\0');
  unsigned long long written = 0;
  const int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(
      reinterpret_cast<unsigned char*>(out.data()), &written, nullptr,
      bytes_of(sealed) + kNonce, sealed.size() - kNonce, bytes_of(associated),
      associated.size(), bytes_of(sealed), bytes_.data());
  if (rc != 0) throw Error(ErrorCode::kCrypto, "sealed value failed authentication");
  out.resize(written);
  return out;
}

}  // namespace pathword
