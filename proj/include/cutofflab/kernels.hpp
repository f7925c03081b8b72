#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Data-parallel inner loops shared by the distance/condition evaluators.
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The public entry points dispatch at runtime on CPU
// capability; the CUTOFFLAB_SIMD environment variable ("scalar", "avx2",
// "auto") overrides detection. Both variants are exposed for equivalence
// tests in kernels::scalar / kernels::avx2.
//
// Reductions reassociate additions, so backends agree to rounding noise
// (~1e-14 relative), not bit-for-bit. The vector exp saturates to 0 below
// -708.4 and is intended for arguments <= ~709.

namespace cutofflab::kernels {

enum class Backend { Scalar, Avx2 };

Backend active_backend();
const char* backend_name(Backend b);
bool avx2_available();

// sum_i |v[i]|
double sum_abs(const double* v, std::size_t n);
// sum_i |a[i] - b[i]|
double sum_abs_diff(const double* a, const double* b, std::size_t n);
// sum_i a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);
// sum_i w[i] * v[i]^2
double weighted_ssq(const double* w, const double* v, std::size_t n);
// out[r] = scale[r] * dot(m.row(r), v); scale == nullptr means no scaling.
// m is row-major with `rows` rows of length `cols`.
void scaled_matvec(const double* m, std::size_t rows, std::size_t cols,
                   const double* v, const double* scale, double* out);
// y[i] = a[i] * exp(-s * r[i])
void exp_scale(const double* a, const double* r, std::size_t n, double s, double* y);
// sum_i w[i] * r[i]^2 * exp(-s * r[i])
double rate2_exp_sum(const double* w, const double* r, std::size_t n, double s);
// sum_i w[i] * (exp(-s1*r[i]) - exp(-s2*r[i]))^2
double sq_diff_exp_sum(const double* w, const double* r, std::size_t n,
                       double s1, double s2);

namespace scalar {
double sum_abs(const double* v, std::size_t n);
double sum_abs_diff(const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double weighted_ssq(const double* w, const double* v, std::size_t n);
void scaled_matvec(const double* m, std::size_t rows, std::size_t cols,
                   const double* v, const double* scale, double* out);
void exp_scale(const double* a, const double* r, std::size_t n, double s, double* y);
double rate2_exp_sum(const double* w, const double* r, std::size_t n, double s);
double sq_diff_exp_sum(const double* w, const double* r, std::size_t n,
                       double s1, double s2);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define CUTOFFLAB_HAVE_AVX2_KERNELS 1
// Callers must check avx2_available() before using these directly.
namespace avx2 {
double sum_abs(const double* v, std::size_t n);
double sum_abs_diff(const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double weighted_ssq(const double* w, const double* v, std::size_t n);
void scaled_matvec(const double* m, std::size_t rows, std::size_t cols,
                   const double* v, const double* scale, double* out);
void exp_scale(const double* a, const double* r, std::size_t n, double s, double* y);
double rate2_exp_sum(const double* w, const double* r, std::size_t n, double s);
double sq_diff_exp_sum(const double* w, const double* r, std::size_t n,
                       double s1, double s2);
}  // namespace avx2
#endif

}  // namespace cutofflab::kernels
