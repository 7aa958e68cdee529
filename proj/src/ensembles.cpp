#include "edgelab/ensembles.hpp"

#include <cmath>
#include <numbers>

#include "edgelab/error.hpp"

namespace edgelab {

namespace {

constexpr double kVarianceTol = 1e-12;

bool close(double a, double b) { return std::fabs(a - b) <= kVarianceTol * std::max(1.0, std::fabs(b)); }

}  // namespace

AtomDistribution AtomDistribution::gaussian_real(double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance)) throw ParameterError("gaussian_real: variance must be positive");
  return {AtomKind::gaussian_real, variance};
}

AtomDistribution AtomDistribution::gaussian_complex() { return {AtomKind::gaussian_complex, 1.0}; }

AtomDistribution AtomDistribution::three_point_matched(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("three_point_matched: scale must be positive");
  return {AtomKind::three_point_matched, scale};
}

AtomDistribution AtomDistribution::rademacher(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("rademacher: scale must be positive");
  return {AtomKind::rademacher, scale};
}

double AtomDistribution::sample_component(RandomStream& rng) const {
  switch (kind_) {
    case AtomKind::gaussian_real:
      return std::sqrt(parameter_) * rng.normal();
    case AtomKind::gaussian_complex:
      return std::numbers::sqrt2 * 0.5 * rng.normal();
    case AtomKind::three_point_matched: {
      const auto face = rng.uniform_int(0, 5);
      if (face == 0) return -parameter_ * std::numbers::sqrt3;
      if (face == 5) return parameter_ * std::numbers::sqrt3;
      return 0.0;
    }
    case AtomKind::rademacher:
      return (rng.engine()() >> 63) != 0 ? parameter_ : -parameter_;
  }
  return 0.0;
}

AtomMoments atom_moments(const AtomDistribution& dist) {
  switch (dist.kind()) {
    case AtomKind::gaussian_real: {
      const double v = dist.parameter();
      return {0.0, v, 0.0, 3.0 * v * v};
    }
    case AtomKind::gaussian_complex:
      return {0.0, 0.5, 0.0, 0.75};
    case AtomKind::three_point_matched: {
      // Finite sum over the support {-a, 0, a}; the atom at 0 contributes nothing.
      // a^2 is carried as 3 scale^2 so that no square root is squared back.
      const double a = dist.parameter() * std::numbers::sqrt3;
      const double a_sq = 3.0 * dist.parameter() * dist.parameter();
      constexpr double w_tail = 1.0 / 6.0;
      AtomMoments m;
      for (const double sign : {-1.0, 1.0}) {
        m.m1 += w_tail * sign * a;
        m.m2 += w_tail * a_sq;
        m.m3 += w_tail * sign * a * a_sq;
        m.m4 += w_tail * a_sq * a_sq;
      }
      return m;
    }
    case AtomKind::rademacher: {
      const double s2 = dist.parameter() * dist.parameter();
      return {0.0, s2, 0.0, s2 * s2};
    }
  }
  return {};
}

int beta_of(SymmetryClass symmetry) noexcept { return symmetry == SymmetryClass::hermitian ? 2 : 1; }

EnsembleSpec::EnsembleSpec(SymmetryClass symmetry, AtomDistribution off_diagonal, AtomDistribution diagonal,
                           std::string name)
    : symmetry_(symmetry), off_diagonal_(off_diagonal), diagonal_(diagonal), name_(std::move(name)) {
  if (diagonal_.is_complex()) throw ParameterError("diagonal atom must be real");
  const AtomMoments off = atom_moments(off_diagonal_);
  const AtomMoments dia = atom_moments(diagonal_);
  if (off.m1 != 0.0 || dia.m1 != 0.0) throw ParameterError("atoms must have mean zero");
  if (symmetry_ == SymmetryClass::hermitian) {
    if (!close(2.0 * off.m2, 1.0)) throw ParameterError("Hermitian off-diagonal entries need total variance 1");
    if (!close(dia.m2, 1.0)) throw ParameterError("Hermitian diagonal entries need variance 1");
  } else {
    if (off_diagonal_.is_complex()) throw ParameterError("symmetric ensembles need a real off-diagonal atom");
    if (!close(off.m2, 1.0)) throw ParameterError("symmetric off-diagonal entries need variance 1");
    if (!close(dia.m2, 2.0)) throw ParameterError("symmetric diagonal entries need variance 2");
  }
}

EnsembleSpec EnsembleSpec::gue() {
  return {SymmetryClass::hermitian, AtomDistribution::gaussian_complex(), AtomDistribution::gaussian_real(1.0),
          "gue"};
}

EnsembleSpec EnsembleSpec::goe() {
  return {SymmetryClass::symmetric, AtomDistribution::gaussian_real(1.0), AtomDistribution::gaussian_real(2.0),
          "goe"};
}

EnsembleSpec EnsembleSpec::matched_three_point() {
  return {SymmetryClass::hermitian, AtomDistribution::three_point_matched(1.0 / std::numbers::sqrt2),
          AtomDistribution::three_point_matched(1.0), "matched"};
}

EnsembleSpec EnsembleSpec::rademacher() {
  return {SymmetryClass::hermitian, AtomDistribution::rademacher(1.0 / std::numbers::sqrt2),
          AtomDistribution::rademacher(1.0), "rademacher"};
}

EnsembleSpec EnsembleSpec::by_name(const std::string& name) {
  if (name == "gue") return gue();
  if (name == "goe") return goe();
  if (name == "matched") return matched_three_point();
  if (name == "rademacher") return rademacher();
  throw ParameterError("unknown ensemble: " + name);
}

WignerSample sample_dense(const EnsembleSpec& spec, std::size_t n, RandomStream& rng) {
  if (n == 0) throw SizeError("sample_dense: n must be positive");
  WignerSample out{n, std::vector<std::complex<double>>(n * n), spec};
  const bool hermitian = spec.symmetry() == SymmetryClass::hermitian;
  const AtomDistribution& off = spec.off_diagonal();
  const AtomDistribution& dia = spec.diagonal();
  for (std::size_t i = 0; i < n; ++i) {
    out.entries[i * n + i] = {dia.sample_component(rng), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = off.sample_component(rng);
      const double im = hermitian ? off.sample_component(rng) : 0.0;
      out.entries[i * n + j] = {re, im};
      out.entries[j * n + i] = {re, -im};
    }
  }
  return out;
}

TridiagonalMatrix sample_beta_hermite(double beta, std::size_t n, RandomStream& rng) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be positive");
  if (n == 0) throw SizeError("sample_beta_hermite: n must be positive");
  const double diag_sd = std::sqrt(2.0 / beta);
  const double off_scale = 1.0 / std::sqrt(beta);
  std::vector<double> diag(n);
  std::vector<double> off(n - 1);
  for (std::size_t k = 0; k < n; ++k) diag[k] = diag_sd * rng.normal();
  for (std::size_t k = 0; k + 1 < n; ++k) off[k] = off_scale * rng.chi(beta * static_cast<double>(n - 1 - k));
  return {std::move(diag), std::move(off), Scale::mn};
}

TridiagonalMatrix sample_tridiagonal_gaussian(int beta, std::size_t n, RandomStream& rng) {
  if (beta != 1 && beta != 2) throw ParameterError("sample_tridiagonal_gaussian: beta must be 1 or 2");
  return sample_beta_hermite(static_cast<double>(beta), n, rng);
}

bool matches_gue_to_order(const EnsembleSpec& spec, int k) {
  if (k < 2 || k > 4) throw ParameterError("matches_gue_to_order: k must be 2, 3 or 4");
  if (spec.symmetry() != SymmetryClass::hermitian) return false;  // imaginary part degenerate at 0
  const AtomMoments target = atom_moments(AtomDistribution::gaussian_complex());
  const AtomMoments off = atom_moments(spec.off_diagonal());
  const double want[4] = {target.m1, target.m2, target.m3, target.m4};
  const double have[4] = {off.m1, off.m2, off.m3, off.m4};
  for (int m = 0; m < k; ++m) {
    if (!close(have[m], want[m])) return false;
  }
  const AtomMoments dia = atom_moments(spec.diagonal());
  return close(dia.m1, 0.0) && close(dia.m2, 1.0);
}

WignerSample principal_submatrix(const WignerSample& sample) {
  if (sample.n < 2) throw SizeError("principal_submatrix: need n >= 2");
  const std::size_t m = sample.n - 1;
  WignerSample out{m, std::vector<std::complex<double>>(m * m), sample.spec};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.entries[i * m + j] = sample.entries[i * sample.n + j];
  }
  return out;
}

}  // namespace edgelab
