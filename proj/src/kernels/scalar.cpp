#include <cmath>

#include "edgelab/kernels.hpp"

namespace edgelab::kernels::detail {

void sturm_count_scalar(const SturmView& t, std::span<const double> shifts, std::span<int> counts) {
  const std::size_t n = t.diag.size();
  const double* d = t.diag.data();
  const double* e2 = t.offdiag_sq.data();
  const double pivmin = t.pivmin;
  for (std::size_t s = 0; s < shifts.size(); ++s) {
    const double y = shifts[s];
    int count = 0;
    double q = d[0] - y;
    if (std::fabs(q) < pivmin) q = pivmin;
    if (q < 0.0) ++count;
    for (std::size_t k = 1; k < n; ++k) {
      const double shifted = d[k] - y;
      const double ratio = e2[k - 1] / q;
      q = shifted - ratio;
      if (std::fabs(q) < pivmin) q = pivmin;
      if (q < 0.0) ++count;
    }
    counts[s] = count;
  }
}

void hermitian_sweep_scalar(const SweepArgs& args) {
  const std::size_t n = args.a.n;
  double* a_re = args.a.re;
  double* a_im = args.a.im;
  const double* u_re = args.u_re;
  const double* u_im = args.u_im;
  const double* w_re = args.w_re;
  const double* w_im = args.w_im;
  const double* v_re = args.v_re;
  const double* v_im = args.v_im;
  double* p_re = args.p_re;
  double* p_im = args.p_im;

  for (std::size_t j = args.first; j < n; ++j) {
    const std::size_t base = PackedHermitianView::offset(n, j) - j;
    // conj(w_j) and conj(u_j)
    const double cw_re = w_re[j], cw_im = -w_im[j];
    const double cu_re = u_re[j], cu_im = -u_im[j];
    const double vj_re = v_re[j], vj_im = v_im[j];

    // Diagonal: a_jj -= 2 Re(u_j conj(w_j)), stays real.
    double ajj = a_re[base + j] - 2.0 * (u_re[j] * cw_re - u_im[j] * cw_im);
    a_re[base + j] = ajj;
    a_im[base + j] = 0.0;
    double s_re = ajj * vj_re;
    double s_im = ajj * vj_im;

    for (std::size_t i = j + 1; i < n; ++i) {
      const std::size_t idx = base + i;
      // a_ij -= u_i conj(w_j) + w_i conj(u_j)
      const double upd_re = (u_re[i] * cw_re - u_im[i] * cw_im) + (w_re[i] * cu_re - w_im[i] * cu_im);
      const double upd_im = (u_re[i] * cw_im + u_im[i] * cw_re) + (w_re[i] * cu_im + w_im[i] * cu_re);
      const double ar = a_re[idx] - upd_re;
      const double ai = a_im[idx] - upd_im;
      a_re[idx] = ar;
      a_im[idx] = ai;
      // p_i += a_ij v_j
      p_re[i] += ar * vj_re - ai * vj_im;
      p_im[i] += ar * vj_im + ai * vj_re;
      // p_j += conj(a_ij) v_i
      s_re += ar * v_re[i] + ai * v_im[i];
      s_im += ar * v_im[i] - ai * v_re[i];
    }
    p_re[j] += s_re;
    p_im[j] += s_im;
  }
}

}  // namespace edgelab::kernels::detail
