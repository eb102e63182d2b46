#ifndef PATHWORD_RANDOM_HPP_
#define PATHWORD_RANDOM_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace pathword {

// Source of uniformly distributed 64-bit words.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual std::uint64_t next_u64() = 0;
};

// Operating-system CSPRNG (getrandom / arc4random via libsodium).
class SystemRandom final : public RandomSource {
 public:
  SystemRandom();
  std::uint64_t next_u64() override;
};

// Deterministic stream for reproducible grids and paths.
//
// Algorithm "pathword-chacha20-v1":
//   key   = unkeyed BLAKE2b-256 of "pathword-seed-v1" || seed as 8
//           little-endian bytes
//   nonce = 12 zero bytes
//   block i (64 bytes) = ChaCha20-IETF keystream with initial counter i
//   words are consumed as consecutive little-endian uint64 values.
// The output depends only on the seed, so golden tests are portable across
// platforms and standard library implementations.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed);
  ~SeededRandom() override;

  SeededRandom(const SeededRandom&) = delete;
  SeededRandom& operator=(const SeededRandom&) = delete;

  std::uint64_t next_u64() override;

 private:
  void refill();

  std::array<unsigned char, 32> key_{};
  std::array<unsigned char, 64> block_{};
  std::uint32_t counter_ = 0;
  std::size_t offset_ = 64;
};

// Unbiased integer in [0, bound) by rejection sampling; bound must be > 0.
std::uint64_t uniform_below(RandomSource& rng, std::uint64_t bound);

// Fisher-Yates, iterating from the back.
template <typename T>
void shuffle(std::span<T> items, RandomSource& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

// Calls sodium_init() once; safe from any thread.
void ensure_crypto_initialized();

}  // namespace pathword

#endif  // PATHWORD_RANDOM_HPP_
