#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>

// Multiply and add stay separate so that every lane rounds exactly like the
// scalar kernels; only the dot-product accumulation order differs.
namespace bsvem::kernels::detail {

__attribute__((target("avx2"))) double dot_avx2(const double* a,
                                                const double* b,
                                                std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                           _mm256_loadu_pd(b + i)));
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

__attribute__((target("avx2"))) void axpy_avx2(double alpha, const double* x,
                                               double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t =
        _mm256_add_pd(_mm256_loadu_pd(y + i),
                      _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, t);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

__attribute__((target("avx2"))) void aypx_avx2(double alpha, const double* x,
                                               double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t =
        _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(y + i)),
                      _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, t);
  }
  for (; i < n; ++i) y[i] = alpha * y[i] + x[i];
}

__attribute__((target("avx2"))) void ewmul_avx2(const double* a,
                                                const double* b, double* out,
                                                std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

__attribute__((target("avx2"))) void csr_spmv_avx2(const int* row_ptr,
                                                   const int* cols,
                                                   const double* vals,
                                                   int nrows, const double* x,
                                                   double* y) {
  for (int r = 0; r < nrows; ++r) {
    const int begin = row_ptr[r];
    const int end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    int k = begin;
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(vals + k), xv));
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; k < end; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

}  // namespace bsvem::kernels::detail

#endif
