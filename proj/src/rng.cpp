#include "edgelab/rng.hpp"

#include <cmath>

namespace edgelab {

namespace {

std::seed_seq make_seed_seq(std::uint64_t root, std::uint64_t stream) {
  // Distinct tag word keeps (root, stream) from aliasing a plain two-word seed.
  return std::seed_seq{static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
                       static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                       0x65646765u};
}

}  // namespace

RandomStream::RandomStream(std::uint64_t root_seed, std::uint64_t stream_id)
    : root_seed_(root_seed), stream_id_(stream_id) {
  auto seq = make_seed_seq(root_seed, stream_id);
  engine_.seed(seq);
}

double RandomStream::chi(double dof) {
  if (dof <= 0.0) return 0.0;
  std::gamma_distribution<double> gamma(0.5 * dof, 2.0);
  return std::sqrt(gamma(engine_));
}

}  // namespace edgelab
