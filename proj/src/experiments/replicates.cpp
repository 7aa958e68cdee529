#include "replicates.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace edgelab::exp::detail {

std::vector<double> ReplicateTable::raw_column(std::size_t k) const {
  std::vector<double> out(replications);
  for (std::size_t r = 0; r < replications; ++r) out[r] = raw_at(r, k);
  return out;
}

std::vector<double> ReplicateTable::std_column(std::size_t k) const {
  std::vector<double> out(replications);
  for (std::size_t r = 0; r < replications; ++r) out[r] = std_at(r, k);
  return out;
}

ReplicateTable run_replicates(const ReplicatePlan& plan, const ReplicateFn& fn) {
  ReplicateTable table;
  table.replications = plan.replications;
  table.stats = plan.stats;
  table.raw.assign(plan.replications * plan.stats, 0.0);
  table.standardized.assign(plan.replications * plan.stats, 0.0);
  table.streams.assign(plan.replications, 0);

  const std::size_t block_size = std::max<std::size_t>(1, plan.block_size);
  const std::size_t blocks = (plan.replications + block_size - 1) / block_size;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      try {
        RandomStream rng(plan.seed, plan.stream_base + b);
        const std::size_t end = std::min(plan.replications, (b + 1) * block_size);
        for (std::size_t r = b * block_size; r < end; ++r) {
          std::span<double> raw(table.raw.data() + r * plan.stats, plan.stats);
          std::span<double> standardized(table.standardized.data() + r * plan.stats, plan.stats);
          fn(rng, r, raw, standardized);
          table.streams[r] = rng.stream_id();
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = blocks;
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(plan.workers, 1, std::max<std::size_t>(1, blocks));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

}  // namespace edgelab::exp::detail
