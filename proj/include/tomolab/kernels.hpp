#pragma once

#include <complex>
#include <cstddef>

namespace tomolab::kernels {

// Hot-loop array arithmetic behind the tomography and design code.
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The backend is picked once at startup from CPUID;
// TOMOLAB_SIMD=scalar|avx2|auto overrides, and set_backend() switches at
// runtime (the equivalence tests exercise both paths on the same data).

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name();
bool backend_supported(Backend b);
// Returns false (and leaves the backend unchanged) if unsupported on this host.
bool set_backend(Backend b);
// Re-detect: AVX2 where available unless TOMOLAB_SIMD says otherwise.
void reset_backend();

double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);

// Conjugate-linear in the first argument: sum_i conj(a_i) * b_i.
std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n);

// out[i] = sum_j w[j] * rows[j*len + i]. Rows with w[j] == 0 are skipped;
// multinomial frequency vectors are mostly zero for large outcome counts.
void weighted_sum_rows(const double* rows, const double* w, std::size_t n_rows,
                       std::size_t len, double* out);

}  // namespace tomolab::kernels
