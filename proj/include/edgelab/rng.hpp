#pragma once

#include <cstdint>
#include <random>

namespace edgelab {

/// One reproducible random substream.
///
/// A root seed expands into numbered independent substreams; the pair
/// (root_seed, stream_id) fully determines the sequence. Monte Carlo workers
/// each own a stream keyed by their replicate block id.
class RandomStream {
 public:
  using engine_type = std::mt19937_64;

  RandomStream(std::uint64_t root_seed, std::uint64_t stream_id);

  [[nodiscard]] std::uint64_t root_seed() const noexcept { return root_seed_; }
  [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_id_; }

  engine_type& engine() noexcept { return engine_; }

  /// Standard normal variate.
  double normal() { return normal_(engine_); }

  /// Uniform on [0, 1).
  double uniform() { return std::generate_canonical<double, 53>(engine_); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  /// Square root of a chi-squared variate with `dof` degrees of freedom.
  double chi(double dof);

 private:
  std::uint64_t root_seed_;
  std::uint64_t stream_id_;
  engine_type engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace edgelab
