#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "edgelab/rng.hpp"

namespace edgelab::exp::detail {

/// Values of `stats` statistics on each of `replications` replicates, stored
/// replicate-major. Replicate r belongs to block r / block_size and draws from
/// substream stream_base + block.
struct ReplicateTable {
  std::size_t replications = 0;
  std::size_t stats = 0;
  std::vector<double> raw;
  std::vector<double> standardized;
  std::vector<std::uint64_t> streams;

  [[nodiscard]] double raw_at(std::size_t r, std::size_t k) const { return raw[r * stats + k]; }
  [[nodiscard]] double std_at(std::size_t r, std::size_t k) const { return standardized[r * stats + k]; }
  [[nodiscard]] std::vector<double> raw_column(std::size_t k) const;
  [[nodiscard]] std::vector<double> std_column(std::size_t k) const;
};

/// Fills raw[0..stats) and standardized[0..stats) for one replicate.
using ReplicateFn = std::function<void(RandomStream& rng, std::size_t replicate, std::span<double> raw, std::span<double> standardized)>;

struct ReplicatePlan {
  std::size_t replications = 0;
  std::size_t stats = 1;
  std::uint64_t seed = 0;
  std::uint64_t stream_base = 0;
  std::size_t block_size = 64;
  std::size_t workers = 1;
};

/// Runs every block exactly once on up to `workers` threads. Output does not
/// depend on the worker count. The first exception thrown by a block is rethrown.
ReplicateTable run_replicates(const ReplicatePlan& plan, const ReplicateFn& fn);

}  // namespace edgelab::exp::detail
