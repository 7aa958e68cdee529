#include "edgelab/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "edgelab/error.hpp"

namespace edgelab {

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag, Scale scale)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)), scale_(scale) {
  if (diag_.empty()) throw ParameterError("tridiagonal matrix must be nonempty");
  if (offdiag_.size() + 1 != diag_.size()) throw ParameterError("tridiagonal matrix: |offdiag| must equal |diag| - 1");
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(diag_.begin(), diag_.end(), finite) || !std::all_of(offdiag_.begin(), offdiag_.end(), finite)) {
    throw NumericError("tridiagonal matrix has non-finite entries");
  }
}

double TridiagonalMatrix::trace() const noexcept {
  double s = 0.0;
  for (const double d : diag_) s += d;
  return s;
}

namespace {

double row_abs_offdiag(std::span<const double> e, std::size_t k) {
  double r = 0.0;
  if (k > 0) r += std::fabs(e[k - 1]);
  if (k < e.size()) r += std::fabs(e[k]);
  return r;
}

}  // namespace

Interval gershgorin_bounds(const TridiagonalMatrix& t) {
  const auto d = t.diag();
  const auto e = t.offdiag();
  Interval b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double r = row_abs_offdiag(e, k);
    b.lo = std::min(b.lo, d[k] - r);
    b.hi = std::max(b.hi, d[k] + r);
  }
  return b;
}

double bisection_tolerance(const TridiagonalMatrix& t) {
  const Interval b = gershgorin_bounds(t);
  const double radius = std::max(std::fabs(b.lo), std::fabs(b.hi));
  return 1e-12 * std::max(1.0, radius);
}

// --- Householder -----------------------------------------------------------

TridiagonalMatrix householder_tridiagonalize(std::span<const std::complex<double>> dense, std::size_t n,
                                             const kernels::KernelTable& kernels) {
  if (n == 0 || dense.size() != n * n) throw SizeError("householder_tridiagonalize: expected a nonempty n x n matrix");
  for (const auto& z : dense) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NumericError("householder_tridiagonalize: non-finite entry");
  }

  using Packed = kernels::PackedHermitianView;
  std::vector<double> a_re(n * (n + 1) / 2);
  std::vector<double> a_im(a_re.size());
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t base = Packed::offset(n, j) - j;
    a_re[base + j] = dense[j * n + j].real();
    for (std::size_t i = j + 1; i < n; ++i) {
      a_re[base + i] = dense[i * n + j].real();
      a_im[base + i] = dense[i * n + j].imag();
    }
  }

  // Pending reflector (u, w) from the previous step, current reflector v, product p.
  std::vector<double> u_re(n), u_im(n), w_re(n), w_im(n), v_re(n), v_im(n), p_re(n), p_im(n);
  std::vector<double> diag(n);
  std::vector<double> off(n > 0 ? n - 1 : 0);
  const Packed packed{a_re.data(), a_im.data(), n};

  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t base = Packed::offset(n, k) - k;
    // Bring column k up to date with the pending update.
    {
      const double cw_re = w_re[k], cw_im = -w_im[k];
      const double cu_re = u_re[k], cu_im = -u_im[k];
      diag[k] = a_re[base + k] - 2.0 * (u_re[k] * cw_re - u_im[k] * cw_im);
      for (std::size_t i = k + 1; i < n; ++i) {
        a_re[base + i] -= (u_re[i] * cw_re - u_im[i] * cw_im) + (w_re[i] * cu_re - w_im[i] * cu_im);
        a_im[base + i] -= (u_re[i] * cw_im + u_im[i] * cw_re) + (w_re[i] * cu_im + w_im[i] * cu_re);
      }
    }

    // Reflector H = I - tau v v^H mapping x = A[k+1:, k] onto a multiple of e_1.
    double norm_sq = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm_sq += a_re[base + i] * a_re[base + i] + a_im[base + i] * a_im[base + i];
    const double norm = std::sqrt(norm_sq);
    off[k] = norm;

    std::fill(v_re.begin(), v_re.end(), 0.0);
    std::fill(v_im.begin(), v_im.end(), 0.0);
    std::fill(p_re.begin(), p_re.end(), 0.0);
    std::fill(p_im.begin(), p_im.end(), 0.0);
    double tau = 0.0;
    if (norm > 0.0) {
      const double alpha_re = a_re[base + k + 1];
      const double alpha_im = a_im[base + k + 1];
      const double alpha_abs = std::hypot(alpha_re, alpha_im);
      const double ph_re = alpha_abs > 0.0 ? alpha_re / alpha_abs : 1.0;
      const double ph_im = alpha_abs > 0.0 ? alpha_im / alpha_abs : 0.0;
      for (std::size_t i = k + 2; i < n; ++i) {
        v_re[i] = a_re[base + i];
        v_im[i] = a_im[base + i];
      }
      v_re[k + 1] = ph_re * (alpha_abs + norm);
      v_im[k + 1] = ph_im * (alpha_abs + norm);
      tau = 1.0 / (norm * (norm + alpha_abs));
    }

    // One pass: finish the pending update on the trailing block, accumulate p = A22 v.
    kernels.hermitian_sweep({packed, k + 1, u_re.data(), u_im.data(), w_re.data(), w_im.data(), v_re.data(),
                             v_im.data(), p_re.data(), p_im.data()});

    // w = tau p - (tau^2 / 2) (v^H p) v; v^H p is real for Hermitian A22.
    double vhp = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vhp += v_re[i] * p_re[i] + v_im[i] * p_im[i];
    const double kfac = 0.5 * tau * tau * vhp;
    for (std::size_t i = 0; i < n; ++i) {
      if (i <= k) {
        u_re[i] = u_im[i] = w_re[i] = w_im[i] = 0.0;
        continue;
      }
      u_re[i] = v_re[i];
      u_im[i] = v_im[i];
      w_re[i] = tau * p_re[i] - kfac * v_re[i];
      w_im[i] = tau * p_im[i] - kfac * v_im[i];
    }
  }

  {
    const std::size_t last = n - 1;
    const std::size_t base = Packed::offset(n, last) - last;
    diag[last] = a_re[base + last] - 2.0 * (u_re[last] * w_re[last] + u_im[last] * w_im[last]);
  }
  return {std::move(diag), std::move(off), Scale::mn};
}

TridiagonalMatrix householder_tridiagonalize(const WignerSample& sample) {
  return householder_tridiagonalize(sample.entries, sample.n);
}

// --- Sturm counts ----------------------------------------------------------

SturmCounter::SturmCounter(const TridiagonalMatrix& t, const kernels::KernelTable& kernels)
    : kernels_(&kernels), diag_(t.diag().begin(), t.diag().end()), offdiag_sq_(t.offdiag().size()) {
  const auto e = t.offdiag();
  double norm_inf = 0.0;
  for (std::size_t k = 0; k < diag_.size(); ++k) {
    norm_inf = std::max(norm_inf, std::fabs(diag_[k]) + row_abs_offdiag(e, k));
  }
  for (std::size_t k = 0; k < e.size(); ++k) offdiag_sq_[k] = e[k] * e[k];
  pivmin_ = std::max(std::numeric_limits<double>::epsilon() * norm_inf, std::numeric_limits<double>::min());
  tol_ = bisection_tolerance(t);
  const Interval g = gershgorin_bounds(t);
  bounds_ = {g.lo - tol_, g.hi + tol_};
}

std::size_t SturmCounter::count_below(double y) const {
  int c = 0;
  kernels_->sturm_count(view(), std::span<const double>(&y, 1), std::span<int>(&c, 1));
  return static_cast<std::size_t>(c);
}

void SturmCounter::count_below(std::span<const double> shifts, std::span<int> out) const {
  if (out.size() < shifts.size()) throw SizeError("count_below: output span too short");
  kernels_->sturm_count(view(), shifts, out.first(shifts.size()));
}

double SturmCounter::kth_eigenvalue(std::size_t i) const {
  const std::size_t n = diag_.size();
  if (i < 1 || i > n) throw IndexError("kth_eigenvalue: index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
  constexpr std::size_t kProbes = 16;
  std::array<double, kProbes> probes{};
  std::array<int, kProbes> counts{};
  double lo = bounds_.lo;
  double hi = bounds_.hi;
  const int target = static_cast<int>(i);
  for (int iter = 0; iter < 64 && hi - lo > tol_; ++iter) {
    const double step = (hi - lo) / static_cast<double>(kProbes + 1);
    for (std::size_t p = 0; p < kProbes; ++p) probes[p] = lo + step * static_cast<double>(p + 1);
    kernels_->sturm_count(view(), probes, counts);
    std::size_t first = kProbes;
    for (std::size_t p = 0; p < kProbes; ++p) {
      if (counts[p] >= target) {
        first = p;
        break;
      }
    }
    const double new_lo = first == 0 ? lo : probes[first - 1];
    const double new_hi = first == kProbes ? hi : probes[first];
    lo = new_lo;
    hi = new_hi;
  }
  return hi;
}

std::vector<double> SturmCounter::all_eigenvalues() const {
  const std::size_t n = diag_.size();
  std::vector<double> out(n);
  constexpr std::size_t kLanes = 16;
  std::array<double, kLanes> lo{}, hi{}, mid{};
  std::array<int, kLanes> counts{};
  // Every lane halves the same initial bracket the same number of times, so the
  // results sit on one dyadic grid and stay ordered.
  int iterations = 0;
  for (double width = bounds_.hi - bounds_.lo; width > tol_ && iterations < 80; width *= 0.5) ++iterations;

  for (std::size_t first = 0; first < n; first += kLanes) {
    const std::size_t lanes = std::min(kLanes, n - first);
    lo.fill(bounds_.lo);
    hi.fill(bounds_.hi);
    for (int iter = 0; iter < iterations; ++iter) {
      for (std::size_t l = 0; l < lanes; ++l) mid[l] = 0.5 * (lo[l] + hi[l]);
      kernels_->sturm_count(view(), std::span<const double>(mid.data(), lanes), std::span<int>(counts.data(), lanes));
      for (std::size_t l = 0; l < lanes; ++l) {
        if (counts[l] >= static_cast<int>(first + l + 1)) {
          hi[l] = mid[l];
        } else {
          lo[l] = mid[l];
        }
      }
    }
    for (std::size_t l = 0; l < lanes; ++l) out[first + l] = hi[l];
  }
  return out;
}

std::size_t count_below(const TridiagonalMatrix& t, double y) { return SturmCounter(t).count_below(y); }

std::size_t counting_function(const TridiagonalMatrix& t, double y) { return t.size() - count_below(t, y); }

double kth_eigenvalue(const TridiagonalMatrix& t, std::size_t i) { return SturmCounter(t).kth_eigenvalue(i); }

std::vector<double> all_eigenvalues(const TridiagonalMatrix& t) { return SturmCounter(t).all_eigenvalues(); }

namespace {

TridiagonalMatrix multiply(const TridiagonalMatrix& t, double factor, Scale tag) {
  std::vector<double> d(t.diag().begin(), t.diag().end());
  std::vector<double> e(t.offdiag().begin(), t.offdiag().end());
  for (double& x : d) x *= factor;
  for (double& x : e) x *= factor;
  return {std::move(d), std::move(e), tag};
}

}  // namespace

TridiagonalMatrix scaled(const TridiagonalMatrix& t, double factor) { return multiply(t, factor, t.scale()); }

TridiagonalMatrix rescale(const TridiagonalMatrix& t, Scale target) {
  if (t.scale() == target) return t;
  const double root_n = std::sqrt(static_cast<double>(t.size()));
  return target == Scale::wn ? multiply(t, 1.0 / root_n, target) : multiply(t, root_n, target);
}

}  // namespace edgelab
