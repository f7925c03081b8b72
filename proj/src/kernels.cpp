#include "cutofflab/kernels.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "cutofflab/types.hpp"

namespace cutofflab {

const char* to_string(TimeConvention c) {
    return c == TimeConvention::Continuous ? "continuous" : "discrete";
}

TimeConvention time_convention_from_string(const std::string& s) {
    if (s == "continuous") return TimeConvention::Continuous;
    if (s == "discrete") return TimeConvention::Discrete;
    throw ParameterError("unknown time convention: " + s);
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace cutofflab

namespace cutofflab::kernels {

namespace scalar {

double sum_abs(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(v[i]);
    return s;
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]);
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_ssq(const double* w, const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i] * v[i];
    return s;
}

void scaled_matvec(const double* m, std::size_t rows, std::size_t cols,
                   const double* v, const double* scale, double* out) {
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = m + r * cols;
        double s = 0.0;
        for (std::size_t i = 0; i < cols; ++i) s += row[i] * v[i];
        out[r] = scale ? scale[r] * s : s;
    }
}

void exp_scale(const double* a, const double* r, std::size_t n, double s, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * std::exp(-s * r[i]);
}

double rate2_exp_sum(const double* w, const double* r, std::size_t n, double s) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        total += w[i] * r[i] * r[i] * std::exp(-s * r[i]);
    return total;
}

double sq_diff_exp_sum(const double* w, const double* r, std::size_t n,
                       double s1, double s2) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = std::exp(-s1 * r[i]) - std::exp(-s2 * r[i]);
        total += w[i] * d * d;
    }
    return total;
}

}  // namespace scalar

namespace {

Backend detect_backend() {
#ifdef CUTOFFLAB_HAVE_AVX2_KERNELS
    if (const char* env = std::getenv("CUTOFFLAB_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
        if (std::strcmp(env, "avx2") == 0)
            return avx2_available() ? Backend::Avx2 : Backend::Scalar;
    }
    if (avx2_available()) return Backend::Avx2;
#else
    if (const char* env = std::getenv("CUTOFFLAB_SIMD")) (void)env;
#endif
    return Backend::Scalar;
}

}  // namespace

bool avx2_available() {
#ifdef CUTOFFLAB_HAVE_AVX2_KERNELS
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() {
    static const Backend b = detect_backend();
    return b;
}

const char* backend_name(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

#ifdef CUTOFFLAB_HAVE_AVX2_KERNELS
#define CUTOFFLAB_DISPATCH(fn, ...)                                       \
    do {                                                                  \
        if (active_backend() == Backend::Avx2) return avx2::fn(__VA_ARGS__); \
        return scalar::fn(__VA_ARGS__);                                   \
    } while (0)
#else
#define CUTOFFLAB_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double sum_abs(const double* v, std::size_t n) { CUTOFFLAB_DISPATCH(sum_abs, v, n); }

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
    CUTOFFLAB_DISPATCH(sum_abs_diff, a, b, n);
}

double dot(const double* a, const double* b, std::size_t n) {
    CUTOFFLAB_DISPATCH(dot, a, b, n);
}

double weighted_ssq(const double* w, const double* v, std::size_t n) {
    CUTOFFLAB_DISPATCH(weighted_ssq, w, v, n);
}

void scaled_matvec(const double* m, std::size_t rows, std::size_t cols,
                   const double* v, const double* scale, double* out) {
    CUTOFFLAB_DISPATCH(scaled_matvec, m, rows, cols, v, scale, out);
}

void exp_scale(const double* a, const double* r, std::size_t n, double s, double* y) {
    CUTOFFLAB_DISPATCH(exp_scale, a, r, n, s, y);
}

double rate2_exp_sum(const double* w, const double* r, std::size_t n, double s) {
    CUTOFFLAB_DISPATCH(rate2_exp_sum, w, r, n, s);
}

double sq_diff_exp_sum(const double* w, const double* r, std::size_t n,
                       double s1, double s2) {
    CUTOFFLAB_DISPATCH(sq_diff_exp_sum, w, r, n, s1, s2);
}

#undef CUTOFFLAB_DISPATCH

}  // namespace cutofflab::kernels
