#include "tcss/random.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>

#include "tcss/error.hpp"

namespace tcss {
namespace {

void ensure_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw Error(Errc::InvalidArgument, "libsodium initialisation failed");
}

}  // namespace

std::uint64_t RandomSource::next_u64() {
  std::array<std::uint8_t, 8> buf{};
  fill(buf);
  std::uint64_t v = 0;
  for (auto b : buf) v = (v << 8) | b;
  return v;
}

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::InvalidArgument, "uniform_below(0)");
  if (bound == 1) return 0;
  // Largest multiple of bound that fits in 2^64; draws above it are rejected.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v <= limit) return v % bound;
  }
}

SystemRandom::SystemRandom() { ensure_sodium(); }

void SystemRandom::fill(std::span<std::uint8_t> out) { randombytes_buf(out.data(), out.size()); }

SeededRandom::SeededRandom(std::string_view seed) {
  ensure_sodium();
  crypto_hash_sha256(key_.data(), reinterpret_cast<const unsigned char*>(seed.data()), seed.size());
}

SeededRandom::SeededRandom(std::span<const std::uint8_t, 32> key) {
  ensure_sodium();
  std::copy(key.begin(), key.end(), key_.begin());
}

void SeededRandom::refill() {
  static constexpr std::array<std::uint8_t, 64> zeros{};
  static constexpr std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
  crypto_stream_chacha20_xor_ic(block_.data(), zeros.data(), zeros.size(), nonce.data(), counter_++,
                                key_.data());
  used_ = 0;
}

void SeededRandom::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) refill();
    const std::size_t n = std::min(out.size() - pos, block_.size() - used_);
    std::memcpy(out.data() + pos, block_.data() + used_, n);
    used_ += n;
    pos += n;
  }
}

SeededRandom SeededRandom::fork() {
  std::array<std::uint8_t, 32> child{};
  fill(child);
  return SeededRandom(std::span<const std::uint8_t, 32>(child));
}

std::unique_ptr<RandomSource> make_random(std::optional<std::string_view> seed) {
  if (seed) return std::make_unique<SeededRandom>(*seed);
  return std::make_unique<SystemRandom>();
}

}  // namespace tcss
