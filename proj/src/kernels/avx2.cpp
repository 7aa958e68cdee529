#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "edgelab/kernels.hpp"

#define EDGELAB_AVX2 __attribute__((target("avx2,fma")))

namespace edgelab::kernels::detail {

namespace {

// Horizontal sum of the four lanes.
EDGELAB_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Guarded pivot: |q| < pivmin -> +pivmin. Same ordering as the scalar path.
EDGELAB_AVX2 inline __m256d guard(__m256d q, __m256d pivmin, __m256d abs_mask) {
  const __m256d small = _mm256_cmp_pd(_mm256_and_pd(q, abs_mask), pivmin, _CMP_LT_OQ);
  return _mm256_blendv_pd(q, pivmin, small);
}

EDGELAB_AVX2 inline __m256d negatives(__m256d q, __m256d zero, __m256d one) {
  return _mm256_and_pd(_mm256_cmp_pd(q, zero, _CMP_LT_OQ), one);
}

EDGELAB_AVX2 inline void store_counts(__m256d c, int* out) {
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, c);
  for (int l = 0; l < 4; ++l) out[l] = static_cast<int>(tmp[l]);
}

}  // namespace

EDGELAB_AVX2 void sturm_count_avx2(const SturmView& t, std::span<const double> shifts, std::span<int> counts) {
  const std::size_t n = t.diag.size();
  const double* d = t.diag.data();
  const double* e2 = t.offdiag_sq.data();
  const __m256d pivmin = _mm256_set1_pd(t.pivmin);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);

  std::size_t s = 0;
  // Four independent chains per pass hide the division latency.
  for (; s + 16 <= shifts.size(); s += 16) {
    const __m256d y0 = _mm256_loadu_pd(shifts.data() + s);
    const __m256d y1 = _mm256_loadu_pd(shifts.data() + s + 4);
    const __m256d y2 = _mm256_loadu_pd(shifts.data() + s + 8);
    const __m256d y3 = _mm256_loadu_pd(shifts.data() + s + 12);
    const __m256d d0 = _mm256_set1_pd(d[0]);
    __m256d q0 = guard(_mm256_sub_pd(d0, y0), pivmin, abs_mask);
    __m256d q1 = guard(_mm256_sub_pd(d0, y1), pivmin, abs_mask);
    __m256d q2 = guard(_mm256_sub_pd(d0, y2), pivmin, abs_mask);
    __m256d q3 = guard(_mm256_sub_pd(d0, y3), pivmin, abs_mask);
    __m256d c0 = negatives(q0, zero, one);
    __m256d c1 = negatives(q1, zero, one);
    __m256d c2 = negatives(q2, zero, one);
    __m256d c3 = negatives(q3, zero, one);
    for (std::size_t k = 1; k < n; ++k) {
      const __m256d dk = _mm256_set1_pd(d[k]);
      const __m256d ek = _mm256_set1_pd(e2[k - 1]);
      q0 = guard(_mm256_sub_pd(_mm256_sub_pd(dk, y0), _mm256_div_pd(ek, q0)), pivmin, abs_mask);
      q1 = guard(_mm256_sub_pd(_mm256_sub_pd(dk, y1), _mm256_div_pd(ek, q1)), pivmin, abs_mask);
      q2 = guard(_mm256_sub_pd(_mm256_sub_pd(dk, y2), _mm256_div_pd(ek, q2)), pivmin, abs_mask);
      q3 = guard(_mm256_sub_pd(_mm256_sub_pd(dk, y3), _mm256_div_pd(ek, q3)), pivmin, abs_mask);
      c0 = _mm256_add_pd(c0, negatives(q0, zero, one));
      c1 = _mm256_add_pd(c1, negatives(q1, zero, one));
      c2 = _mm256_add_pd(c2, negatives(q2, zero, one));
      c3 = _mm256_add_pd(c3, negatives(q3, zero, one));
    }
    store_counts(c0, counts.data() + s);
    store_counts(c1, counts.data() + s + 4);
    store_counts(c2, counts.data() + s + 8);
    store_counts(c3, counts.data() + s + 12);
  }
  for (; s + 4 <= shifts.size(); s += 4) {
    const __m256d y = _mm256_loadu_pd(shifts.data() + s);
    __m256d q = guard(_mm256_sub_pd(_mm256_set1_pd(d[0]), y), pivmin, abs_mask);
    __m256d c = negatives(q, zero, one);
    for (std::size_t k = 1; k < n; ++k) {
      const __m256d shifted = _mm256_sub_pd(_mm256_set1_pd(d[k]), y);
      q = guard(_mm256_sub_pd(shifted, _mm256_div_pd(_mm256_set1_pd(e2[k - 1]), q)), pivmin, abs_mask);
      c = _mm256_add_pd(c, negatives(q, zero, one));
    }
    store_counts(c, counts.data() + s);
  }
  if (s < shifts.size()) {
    sturm_count_scalar(t, shifts.subspan(s), counts.subspan(s));
  }
}

EDGELAB_AVX2 void hermitian_sweep_avx2(const SweepArgs& args) {
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
    const double cw_re = w_re[j], cw_im = -w_im[j];
    const double cu_re = u_re[j], cu_im = -u_im[j];
    const double vj_re = v_re[j], vj_im = v_im[j];

    const double ajj = a_re[base + j] - 2.0 * (u_re[j] * cw_re - u_im[j] * cw_im);
    a_re[base + j] = ajj;
    a_im[base + j] = 0.0;

    const __m256d bcw_re = _mm256_set1_pd(cw_re), bcw_im = _mm256_set1_pd(cw_im);
    const __m256d bcu_re = _mm256_set1_pd(cu_re), bcu_im = _mm256_set1_pd(cu_im);
    const __m256d bvj_re = _mm256_set1_pd(vj_re), bvj_im = _mm256_set1_pd(vj_im);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();

    std::size_t i = j + 1;
    for (; i + 4 <= n; i += 4) {
      double* pa_re = a_re + base + i;
      double* pa_im = a_im + base + i;
      const __m256d ur = _mm256_loadu_pd(u_re + i), ui = _mm256_loadu_pd(u_im + i);
      const __m256d wr = _mm256_loadu_pd(w_re + i), wi = _mm256_loadu_pd(w_im + i);
      __m256d ar = _mm256_loadu_pd(pa_re);
      __m256d ai = _mm256_loadu_pd(pa_im);
      ar = _mm256_fnmadd_pd(ur, bcw_re, ar);
      ar = _mm256_fmadd_pd(ui, bcw_im, ar);
      ar = _mm256_fnmadd_pd(wr, bcu_re, ar);
      ar = _mm256_fmadd_pd(wi, bcu_im, ar);
      ai = _mm256_fnmadd_pd(ur, bcw_im, ai);
      ai = _mm256_fnmadd_pd(ui, bcw_re, ai);
      ai = _mm256_fnmadd_pd(wr, bcu_im, ai);
      ai = _mm256_fnmadd_pd(wi, bcu_re, ai);
      _mm256_storeu_pd(pa_re, ar);
      _mm256_storeu_pd(pa_im, ai);

      __m256d pr = _mm256_loadu_pd(p_re + i);
      __m256d pi = _mm256_loadu_pd(p_im + i);
      pr = _mm256_fmadd_pd(ar, bvj_re, pr);
      pr = _mm256_fnmadd_pd(ai, bvj_im, pr);
      pi = _mm256_fmadd_pd(ar, bvj_im, pi);
      pi = _mm256_fmadd_pd(ai, bvj_re, pi);
      _mm256_storeu_pd(p_re + i, pr);
      _mm256_storeu_pd(p_im + i, pi);

      const __m256d vr = _mm256_loadu_pd(v_re + i), vi = _mm256_loadu_pd(v_im + i);
      acc_re = _mm256_fmadd_pd(ar, vr, acc_re);
      acc_re = _mm256_fmadd_pd(ai, vi, acc_re);
      acc_im = _mm256_fmadd_pd(ar, vi, acc_im);
      acc_im = _mm256_fnmadd_pd(ai, vr, acc_im);
    }
    double s_re = ajj * vj_re + hsum(acc_re);
    double s_im = ajj * vj_im + hsum(acc_im);
    for (; i < n; ++i) {
      const std::size_t idx = base + i;
      const double upd_re = (u_re[i] * cw_re - u_im[i] * cw_im) + (w_re[i] * cu_re - w_im[i] * cu_im);
      const double upd_im = (u_re[i] * cw_im + u_im[i] * cw_re) + (w_re[i] * cu_im + w_im[i] * cu_re);
      const double ar = a_re[idx] - upd_re;
      const double ai = a_im[idx] - upd_im;
      a_re[idx] = ar;
      a_im[idx] = ai;
      p_re[i] += ar * vj_re - ai * vj_im;
      p_im[i] += ar * vj_im + ai * vj_re;
      s_re += ar * v_re[i] + ai * v_im[i];
      s_im += ar * v_im[i] - ai * v_re[i];
    }
    p_re[j] += s_re;
    p_im[j] += s_im;
  }
}

}  // namespace edgelab::kernels::detail

#endif
