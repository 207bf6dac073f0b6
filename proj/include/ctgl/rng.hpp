#pragma once

#include <cstdint>
#include <random>

namespace ctgl {

// Seeded uniform stream. Identical (seed, stream_id) pairs reproduce the
// same variates on every platform; replicas use their index as stream_id.
// Not thread-safe: one stream per thread of execution.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

} // namespace ctgl
