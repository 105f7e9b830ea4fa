#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstddef>

// Multiply and add stay separate so that every lane rounds exactly like the
// scalar kernels; only the dot-product accumulation order differs.
namespace bsvem::kernels::detail {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void aypx_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vaddq_f64(vmulq_f64(va, vld1q_f64(y + i)), vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] = alpha * y[i] + x[i];
}

void ewmul_neon(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void csr_spmv_neon(const int* row_ptr, const int* cols, const double* vals,
                   int nrows, const double* x, double* y) {
  for (int r = 0; r < nrows; ++r) {
    const int begin = row_ptr[r];
    const int end = row_ptr[r + 1];
    float64x2_t acc = vdupq_n_f64(0.0);
    int k = begin;
    for (; k + 2 <= end; k += 2) {
      const float64x2_t xv = {x[cols[k]], x[cols[k + 1]]};
      acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(vals + k), xv));
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; k < end; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

}  // namespace bsvem::kernels::detail

#endif
