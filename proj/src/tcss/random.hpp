#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

namespace tcss {

// Source of uniformly random bytes. Instances are stateful and must not be
// shared between threads without external synchronization.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint64_t next_u64();
  // Uniform in [0, bound) by rejection sampling. bound must be >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);
};

// Operating-system CSPRNG (libsodium randombytes).
class SystemRandom final : public RandomSource {
 public:
  SystemRandom();
  void fill(std::span<std::uint8_t> out) override;
};

// Deterministic ChaCha20 keystream keyed by SHA-256(seed). Identical seeds
// give identical byte streams on every platform.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::string_view seed);
  explicit SeededRandom(std::span<const std::uint8_t, 32> key);

  void fill(std::span<std::uint8_t> out) override;

  // Independent child stream; advances this stream by 32 bytes.
  SeededRandom fork();

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::array<std::uint8_t, 64> block_{};
  std::uint64_t counter_ = 0;
  std::size_t used_ = 64;
};

// Seeded stream when a seed is given, system CSPRNG otherwise.
std::unique_ptr<RandomSource> make_random(std::optional<std::string_view> seed);

}  // namespace tcss
