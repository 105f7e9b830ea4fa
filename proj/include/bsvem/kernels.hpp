#pragma once

#include <cstddef>
#include <string>

namespace bsvem::kernels {

/// Instruction sets the vector kernels can run on. The best supported one is
/// selected at startup; force_isa narrows the choice for tests.
enum class Isa { scalar, avx2, neon };

/// Name of an instruction set ("scalar", "avx2", "neon").
std::string isa_name(Isa isa);

/// Instruction set the kernels currently dispatch to.
Isa active_isa();

/// True when the running CPU supports the given instruction set.
bool isa_supported(Isa isa);

/// Switches dispatch to the given instruction set.
/// Throws InvalidArgumentError when the CPU does not support it.
void force_isa(Isa isa);

/// Dot product of two length-n vectors.
double dot(const double* a, const double* b, std::size_t n);

/// y += alpha * x.
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// y = alpha * y + x.
void aypx(double alpha, const double* x, double* y, std::size_t n);

/// out[i] = a[i] * b[i].
void ewmul(const double* a, const double* b, double* out, std::size_t n);

/// y = A x for a CSR matrix with nrows rows.
void csr_spmv(const int* row_ptr, const int* cols, const double* vals,
              int nrows, const double* x, double* y);

}  // namespace bsvem::kernels
