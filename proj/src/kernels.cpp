#include "tomolab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace tomolab::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_sq(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

void weighted_sum_rows(const double* rows, const double* w, std::size_t n_rows,
                       std::size_t len, double* out) {
  std::memset(out, 0, len * sizeof(double));
  for (std::size_t j = 0; j < n_rows; ++j) {
    if (w[j] == 0.0) continue;
    axpy(w[j], rows + j * len, out, len);
  }
}

}  // namespace scalar

#ifdef TOMOLAB_HAVE_AVX2
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n);
void weighted_sum_rows(const double* rows, const double* w, std::size_t n_rows,
                       std::size_t len, double* out);
}  // namespace avx2
#endif

namespace {

struct Dispatch {
  Backend backend;
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*sum_sq)(const double*, std::size_t);
  double (*sum_sq_diff)(const double*, const double*, std::size_t);
  std::complex<double> (*cdot)(const std::complex<double>*, const std::complex<double>*,
                               std::size_t);
  void (*weighted_sum_rows)(const double*, const double*, std::size_t, std::size_t, double*);
};

constexpr Dispatch kScalar = {Backend::scalar, scalar::dot,         scalar::axpy,
                              scalar::sum_sq,  scalar::sum_sq_diff, scalar::cdot,
                              scalar::weighted_sum_rows};

#ifdef TOMOLAB_HAVE_AVX2
constexpr Dispatch kAvx2 = {Backend::avx2,  avx2::dot,         avx2::axpy,
                            avx2::sum_sq,   avx2::sum_sq_diff, avx2::cdot,
                            avx2::weighted_sum_rows};
#endif

bool host_has_avx2() {
#if defined(TOMOLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Dispatch* detect() {
  Backend want = host_has_avx2() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("TOMOLAB_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) want = Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && host_has_avx2()) want = Backend::avx2;
  }
#ifdef TOMOLAB_HAVE_AVX2
  if (want == Backend::avx2) return &kAvx2;
#endif
  return &kScalar;
}

const Dispatch* g_active = detect();

}  // namespace

Backend active_backend() { return g_active->backend; }

const char* backend_name() {
  return g_active->backend == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend b) {
  return b == Backend::scalar || (b == Backend::avx2 && host_has_avx2());
}

bool set_backend(Backend b) {
  if (!backend_supported(b)) return false;
#ifdef TOMOLAB_HAVE_AVX2
  if (b == Backend::avx2) {
    g_active = &kAvx2;
    return true;
  }
#endif
  g_active = &kScalar;
  return b == Backend::scalar;
}

void reset_backend() { g_active = detect(); }

double dot(const double* a, const double* b, std::size_t n) { return g_active->dot(a, b, n); }

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  g_active->axpy(alpha, x, y, n);
}

double sum_sq(const double* a, std::size_t n) { return g_active->sum_sq(a, n); }

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  return g_active->sum_sq_diff(a, b, n);
}

std::complex<double> cdot(const std::complex<double>* a, const std::complex<double>* b,
                          std::size_t n) {
  return g_active->cdot(a, b, n);
}

void weighted_sum_rows(const double* rows, const double* w, std::size_t n_rows,
                       std::size_t len, double* out) {
  g_active->weighted_sum_rows(rows, w, n_rows, len, out);
}

}  // namespace tomolab::kernels
