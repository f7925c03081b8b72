// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma; callers go through
// the runtime dispatch in kernels.cpp (or check avx2_available() when calling
// the namespace directly in tests).

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "cutofflab/kernels.hpp"

namespace cutofflab::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline __m256d abs_pd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

// Vector e^x, cephes-style: split x = n*ln2 + r, evaluate the exp rational
// on r in [-ln2/2, ln2/2], scale by 2^n through the exponent bits.
// Below -708.4 the result saturates to 0 (std::exp still returns denormals
// there); above ~709.4 the argument is clamped. Relative error ~1 ulp on the
// supported range.
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d hi_cut = _mm256_set1_pd(709.43);
    const __m256d lo_cut = _mm256_set1_pd(-708.39641853226408);

    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

    __m256d xc = _mm256_min_pd(x, hi_cut);
    __m256d nf = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(nf, ln2_hi, xc);
    r = _mm256_fnmadd_pd(nf, ln2_lo, r);
    __m256d r2 = _mm256_mul_pd(r, r);

    __m256d p = _mm256_fmadd_pd(p0, r2, p1);
    p = _mm256_fmadd_pd(p, r2, p2);
    p = _mm256_mul_pd(p, r);
    __m256d q = _mm256_fmadd_pd(q0, r2, q1);
    q = _mm256_fmadd_pd(q, r2, q2);
    q = _mm256_fmadd_pd(q, r2, q3);

    __m256d frac = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    __m256d res = _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_add_pd(frac, frac));

    __m128i n32 = _mm256_cvtpd_epi32(nf);
    __m256i n64 = _mm256_cvtepi32_epi64(n32);
    __m256i pow2 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    res = _mm256_mul_pd(res, _mm256_castsi256_pd(pow2));

    // x < lo_cut -> 0; NaN compares false and keeps the propagated NaN
    __m256d below = _mm256_cmp_pd(x, lo_cut, _CMP_LT_OQ);
    return _mm256_andnot_pd(below, res);
}

}  // namespace

double sum_abs(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, abs_pd(_mm256_loadu_pd(v + i)));
    double s = hsum(acc);
    for (; i < n; ++i) s += std::fabs(v[i]);
    return s;
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, abs_pd(d));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_ssq(const double* w, const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vv = _mm256_loadu_pd(v + i);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), vv), vv, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * v[i] * v[i];
    return s;
}

void scaled_matvec(const double* m, std::size_t rows, std::size_t cols,
                   const double* v, const double* scale, double* out) {
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = m + r * cols;
        __m256d acc = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= cols; i += 4)
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + i), _mm256_loadu_pd(v + i), acc);
        double s = hsum(acc);
        for (; i < cols; ++i) s += row[i] * v[i];
        out[r] = scale ? scale[r] * s : s;
    }
}

void exp_scale(const double* a, const double* r, std::size_t n, double s, double* y) {
    const __m256d ms = _mm256_set1_pd(-s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d e = exp_pd(_mm256_mul_pd(ms, _mm256_loadu_pd(r + i)));
        _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), e));
    }
    for (; i < n; ++i) y[i] = a[i] * std::exp(-s * r[i]);
}

double rate2_exp_sum(const double* w, const double* r, std::size_t n, double s) {
    const __m256d ms = _mm256_set1_pd(-s);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d rv = _mm256_loadu_pd(r + i);
        __m256d e = exp_pd(_mm256_mul_pd(ms, rv));
        __m256d wr2 = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(rv, rv));
        acc = _mm256_fmadd_pd(wr2, e, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += w[i] * r[i] * r[i] * std::exp(-s * r[i]);
    return total;
}

double sq_diff_exp_sum(const double* w, const double* r, std::size_t n,
                       double s1, double s2) {
    const __m256d ms1 = _mm256_set1_pd(-s1);
    const __m256d ms2 = _mm256_set1_pd(-s2);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d rv = _mm256_loadu_pd(r + i);
        __m256d d = _mm256_sub_pd(exp_pd(_mm256_mul_pd(ms1, rv)),
                                  exp_pd(_mm256_mul_pd(ms2, rv)));
        acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), d), d, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        double d = std::exp(-s1 * r[i]) - std::exp(-s2 * r[i]);
        total += w[i] * d * d;
    }
    return total;
}

}  // namespace cutofflab::kernels::avx2
