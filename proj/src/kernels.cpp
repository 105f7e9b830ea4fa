#include "bsvem/kernels.hpp"

#include "bsvem/exceptions.hpp"

namespace bsvem::kernels {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void aypx_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * y[i] + x[i];
}

void ewmul_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void csr_spmv_scalar(const int* row_ptr, const int* cols, const double* vals,
                     int nrows, const double* x, double* y) {
  for (int r = 0; r < nrows; ++r) {
    double s = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

// Defined in kernels_avx2.cpp / kernels_neon.cpp when the target supports them.
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void aypx_avx2(double alpha, const double* x, double* y, std::size_t n);
void ewmul_avx2(const double* a, const double* b, double* out, std::size_t n);
void csr_spmv_avx2(const int* row_ptr, const int* cols, const double* vals,
                   int nrows, const double* x, double* y);

double dot_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
void aypx_neon(double alpha, const double* x, double* y, std::size_t n);
void ewmul_neon(const double* a, const double* b, double* out, std::size_t n);
void csr_spmv_neon(const int* row_ptr, const int* cols, const double* vals,
                   int nrows, const double* x, double* y);

struct Table {
  Isa isa;
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*aypx)(double, const double*, double*, std::size_t);
  void (*ewmul)(const double*, const double*, double*, std::size_t);
  void (*spmv)(const int*, const int*, const double*, int, const double*, double*);
};

const Table kScalarTable = {Isa::scalar, dot_scalar,  axpy_scalar,
                            aypx_scalar, ewmul_scalar, csr_spmv_scalar};

#if defined(__x86_64__) || defined(_M_X64)
const Table kAvx2Table = {Isa::avx2,  dot_avx2,   axpy_avx2,
                          aypx_avx2, ewmul_avx2, csr_spmv_avx2};
#endif
#if defined(__aarch64__)
const Table kNeonTable = {Isa::neon,  dot_neon,   axpy_neon,
                          aypx_neon, ewmul_neon, csr_spmv_neon};
#endif

const Table* best_table() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return &kAvx2Table;
#endif
#if defined(__aarch64__)
  return &kNeonTable;
#endif
  return &kScalarTable;
}

const Table*& active_table() {
  static const Table* table = best_table();
  return table;
}

}  // namespace detail

std::string isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

Isa active_isa() { return detail::active_table()->isa; }

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

void force_isa(Isa isa) {
  if (!isa_supported(isa))
    throw InvalidArgumentError("instruction set " + isa_name(isa) +
                               " is not supported on this machine");
  switch (isa) {
    case Isa::scalar:
      detail::active_table() = &detail::kScalarTable;
      return;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      detail::active_table() = &detail::kAvx2Table;
#endif
      return;
    case Isa::neon:
#if defined(__aarch64__)
      detail::active_table() = &detail::kNeonTable;
#endif
      return;
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  return detail::active_table()->dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  detail::active_table()->axpy(alpha, x, y, n);
}

void aypx(double alpha, const double* x, double* y, std::size_t n) {
  detail::active_table()->aypx(alpha, x, y, n);
}

void ewmul(const double* a, const double* b, double* out, std::size_t n) {
  detail::active_table()->ewmul(a, b, out, n);
}

void csr_spmv(const int* row_ptr, const int* cols, const double* vals,
              int nrows, const double* x, double* y) {
  detail::active_table()->spmv(row_ptr, cols, vals, nrows, x, y);
}

}  // namespace bsvem::kernels
