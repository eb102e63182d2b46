#include "pathword/random.hpp"

#include <cstring>
#include <limits>
#include <string_view>

#include <sodium.h>

#include "pathword/error.hpp"

namespace pathword {
namespace {

std::uint64_t load_le64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

void ensure_crypto_initialized() {
  static const int status = sodium_init();
  if (status < 0) throw Error(ErrorCode::kCrypto, "libsodium initialisation failed");
}

SystemRandom::SystemRandom() { ensure_crypto_initialized(); }

std::uint64_t SystemRandom::next_u64() {
  unsigned char buf[8];
  randombytes_buf(buf, sizeof buf);
  return load_le64(buf);
}

SeededRandom::SeededRandom(std::uint64_t seed) {
  ensure_crypto_initialized();
  constexpr std::string_view kDomain = "pathword-seed-v1";
  unsigned char message[kDomain.size() + 8];
  std::memcpy(message, kDomain.data(), kDomain.size());
  for (int i = 0; i < 8; ++i) {
    message[kDomain.size() + i] = static_cast<unsigned char>(seed >> (8 * i));
  }
  crypto_generichash(key_.data(), key_.size(), message, sizeof message, nullptr, 0);
}

SeededRandom::~SeededRandom() {
  sodium_memzero(key_.data(), key_.size());
  sodium_memzero(block_.data(), block_.size());
}

void SeededRandom::refill() {
  static constexpr unsigned char kZeros[64] = {};
  static constexpr unsigned char kNonce[crypto_stream_chacha20_ietf_NONCEBYTES] = {};
  crypto_stream_chacha20_ietf_xor_ic(block_.data(), kZeros, sizeof kZeros, kNonce,
                                     counter_++, key_.data());
  offset_ = 0;
}

std::uint64_t SeededRandom::next_u64() {
  if (offset_ + 8 > block_.size()) refill();
  const std::uint64_t v = load_le64(block_.data() + offset_);
  offset_ += 8;
  return v;
}

std::uint64_t uniform_below(RandomSource& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kDomain, "uniform_below: bound must be positive");
  // Values below 2^64 mod bound would over-represent small results.
  const std::uint64_t threshold = (std::numeric_limits<std::uint64_t>::max() - bound + 1) % bound;
  while (true) {
    const std::uint64_t x = rng.next_u64();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace pathword
