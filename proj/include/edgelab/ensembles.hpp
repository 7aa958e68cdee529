#pragma once

// Wigner-type random matrix samplers.
//
// Entries are drawn at the raw M_n scale: off-diagonal entries have total
// variance one, diagonal entries variance one (Hermitian) or two (real
// symmetric). Callers rescale spectra through TridiagonalMatrix scale tags.

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "edgelab/rng.hpp"
#include "edgelab/tridiagonal.hpp"

namespace edgelab {

/// First four raw moments of a real (component) law.
struct AtomMoments {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;

  friend bool operator==(const AtomMoments&, const AtomMoments&) = default;
};

enum class AtomKind { gaussian_real, gaussian_complex, three_point_matched, rademacher };

/// Law of a single matrix entry.
///
/// Real laws describe one real component. gaussian_complex is the complex
/// standard Gaussian with independent N(0, 1/2) real and imaginary parts;
/// its moments are reported per component.
class AtomDistribution {
 public:
  static AtomDistribution gaussian_real(double variance);
  static AtomDistribution gaussian_complex();
  /// Values {-scale*sqrt(3), 0, +scale*sqrt(3)} with probabilities {1/6, 2/3, 1/6}.
  static AtomDistribution three_point_matched(double scale);
  /// Values {-scale, +scale} with equal probability.
  static AtomDistribution rademacher(double scale = 1.0);

  [[nodiscard]] AtomKind kind() const noexcept { return kind_; }
  [[nodiscard]] double parameter() const noexcept { return parameter_; }
  [[nodiscard]] bool is_complex() const noexcept { return kind_ == AtomKind::gaussian_complex; }

  /// Draw one real component.
  double sample_component(RandomStream& rng) const;

  friend bool operator==(const AtomDistribution&, const AtomDistribution&) = default;

 private:
  AtomDistribution(AtomKind kind, double parameter) : kind_(kind), parameter_(parameter) {}

  AtomKind kind_;
  double parameter_;  // variance for gaussian_real, scale otherwise
};

/// Exact first four moments per real component.
AtomMoments atom_moments(const AtomDistribution& dist);

enum class SymmetryClass { hermitian, symmetric };

/// Dyson index: 2 for Hermitian, 1 for real symmetric.
int beta_of(SymmetryClass symmetry) noexcept;

/// Complete description of a Wigner ensemble.
///
/// Hermitian off-diagonal entries are X + iY with X, Y drawn independently
/// from the component law; real symmetric entries use one component.
class EnsembleSpec {
 public:
  /// Validates the normalization and throws ParameterError on violation:
  /// Hermitian needs total off-diagonal variance 1 and diagonal variance 1,
  /// symmetric needs off-diagonal variance 1 and diagonal variance 2.
  EnsembleSpec(SymmetryClass symmetry, AtomDistribution off_diagonal, AtomDistribution diagonal, std::string name);

  static EnsembleSpec gue();
  static EnsembleSpec goe();
  /// Hermitian, three-point components of scale 1/sqrt(2), three-point diagonal.
  static EnsembleSpec matched_three_point();
  /// Hermitian, +-1/sqrt(2) components, +-1 diagonal. Matches GUE to order 3 only.
  static EnsembleSpec rademacher();

  /// Lookup by name: gue, goe, matched, rademacher.
  static EnsembleSpec by_name(const std::string& name);

  [[nodiscard]] SymmetryClass symmetry() const noexcept { return symmetry_; }
  [[nodiscard]] int beta() const noexcept { return beta_of(symmetry_); }
  [[nodiscard]] const AtomDistribution& off_diagonal() const noexcept { return off_diagonal_; }
  [[nodiscard]] const AtomDistribution& diagonal() const noexcept { return diagonal_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

 private:
  SymmetryClass symmetry_;
  AtomDistribution off_diagonal_;
  AtomDistribution diagonal_;
  std::string name_;
};

/// Dense Hermitian (or real symmetric) sample at the raw M_n scale, row-major.
struct WignerSample {
  std::size_t n = 0;
  std::vector<std::complex<double>> entries;
  EnsembleSpec spec;

  [[nodiscard]] const std::complex<double>& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

/// Upper-triangular entries i.i.d. from the off-diagonal law, diagonal from the
/// diagonal law, lower triangle by conjugate symmetry. Throws SizeError for n == 0.
WignerSample sample_dense(const EnsembleSpec& spec, std::size_t n, RandomStream& rng);

/// Tridiagonal model whose spectrum has the law of the dense Gaussian ensemble
/// (GOE for beta = 1, GUE for beta = 2) at the M_n scale. Throws ParameterError
/// for other beta.
TridiagonalMatrix sample_tridiagonal_gaussian(int beta, std::size_t n, RandomStream& rng);

/// Gaussian beta-ensemble tridiagonal model for any beta > 0, with eigenvalue
/// density proportional to |Delta|^beta exp(-beta/4 sum x^2). beta = 1, 2 coincide
/// with the GOE and GUE at the M_n scale; beta = 4 gives the symplectic ensemble.
TridiagonalMatrix sample_beta_hermite(double beta, std::size_t n, RandomStream& rng);

/// Whether the spec's atoms match GUE: off-diagonal components to order k,
/// diagonal to order 2. Requires k in {2, 3, 4}.
bool matches_gue_to_order(const EnsembleSpec& spec, int k);

/// Top-left (n-1) x (n-1) block. Throws SizeError for n < 2.
WignerSample principal_submatrix(const WignerSample& sample);

}  // namespace edgelab
