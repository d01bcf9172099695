// AVX2+FMA kernel variants. Built without -mavx2 so the binary stays runnable
// on baseline x86-64; each function carries a target attribute and is only
// reachable through the dispatcher after a CPU capability check.

#include "kgiqa/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define KGIQA_X86 1
#include <immintrin.h>
#else
#define KGIQA_X86 0
#endif

namespace kgiqa::kernels::avx2 {

#if KGIQA_X86

#define KGIQA_AVX2 __attribute__((target("avx2,fma")))

namespace {

KGIQA_AVX2 inline float hsum(__m256 v) {
    __m128 lo = _mm256_castps256_ps128(v);
    __m128 hi = _mm256_extractf128_ps(v, 1);
    lo = _mm_add_ps(lo, hi);
    __m128 sh = _mm_movehdup_ps(lo);
    lo = _mm_add_ps(lo, sh);
    sh = _mm_movehl_ps(sh, lo);
    lo = _mm_add_ss(lo, sh);
    return _mm_cvtss_f32(lo);
}

KGIQA_AVX2 inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    lo = _mm_add_sd(lo, sh);
    return _mm_cvtsd_f64(lo);
}

}  // namespace

// ------------------------------- float ------------------------------------

KGIQA_AVX2 void matmul_nn_f32(const float* a, const float* b, float* c, std::size_t m,
                              std::size_t k, std::size_t n, bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        float* crow = c + i * n;
        if (!accumulate) {
            std::size_t j = 0;
            const __m256 z = _mm256_setzero_ps();
            for (; j + 8 <= n; j += 8) _mm256_storeu_ps(crow + j, z);
            for (; j < n; ++j) crow[j] = 0.0f;
        }
        for (std::size_t p = 0; p < k; ++p) {
            const __m256 av = _mm256_set1_ps(a[i * k + p]);
            const float* brow = b + p * n;
            std::size_t j = 0;
            for (; j + 8 <= n; j += 8) {
                __m256 cv = _mm256_loadu_ps(crow + j);
                cv = _mm256_fmadd_ps(av, _mm256_loadu_ps(brow + j), cv);
                _mm256_storeu_ps(crow + j, cv);
            }
            const float avs = a[i * k + p];
            for (; j < n; ++j) crow[j] += avs * brow[j];
        }
    }
}

KGIQA_AVX2 void matmul_nt_f32(const float* a, const float* b, float* c, std::size_t m,
                              std::size_t k, std::size_t n, bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        const float* arow = a + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const float* brow = b + j * k;
            __m256 acc = _mm256_setzero_ps();
            std::size_t p = 0;
            for (; p + 8 <= k; p += 8)
                acc = _mm256_fmadd_ps(_mm256_loadu_ps(arow + p), _mm256_loadu_ps(brow + p), acc);
            float s = hsum(acc);
            for (; p < k; ++p) s += arow[p] * brow[p];
            if (accumulate)
                c[i * n + j] += s;
            else
                c[i * n + j] = s;
        }
    }
}

KGIQA_AVX2 void matmul_tn_f32(const float* a, const float* b, float* c, std::size_t m,
                              std::size_t k, std::size_t n, bool accumulate) {
    if (!accumulate) {
        std::size_t i = 0;
        const __m256 z = _mm256_setzero_ps();
        for (; i + 8 <= m * n; i += 8) _mm256_storeu_ps(c + i, z);
        for (; i < m * n; ++i) c[i] = 0.0f;
    }
    for (std::size_t p = 0; p < k; ++p) {
        const float* arow = a + p * m;
        const float* brow = b + p * n;
        for (std::size_t i = 0; i < m; ++i) {
            const __m256 av = _mm256_set1_ps(arow[i]);
            float* crow = c + i * n;
            std::size_t j = 0;
            for (; j + 8 <= n; j += 8) {
                __m256 cv = _mm256_loadu_ps(crow + j);
                cv = _mm256_fmadd_ps(av, _mm256_loadu_ps(brow + j), cv);
                _mm256_storeu_ps(crow + j, cv);
            }
            for (; j < n; ++j) crow[j] += arow[i] * brow[j];
        }
    }
}

KGIQA_AVX2 float dot_f32(const float* x, const float* y, std::size_t n) {
    __m256 acc = _mm256_setzero_ps();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        acc = _mm256_fmadd_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i), acc);
    float s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

KGIQA_AVX2 void axpy_f32(float alpha, const float* x, float* y, std::size_t n) {
    const __m256 av = _mm256_set1_ps(alpha);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 yv = _mm256_loadu_ps(y + i);
        yv = _mm256_fmadd_ps(av, _mm256_loadu_ps(x + i), yv);
        _mm256_storeu_ps(y + i, yv);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

KGIQA_AVX2 void scale_f32(float alpha, float* x, std::size_t n) {
    const __m256 av = _mm256_set1_ps(alpha);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(x + i, _mm256_mul_ps(av, _mm256_loadu_ps(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

KGIQA_AVX2 float reduce_max_f32(const float* x, std::size_t n) {
    float m = x[0];
    std::size_t i = 0;
    if (n >= 8) {
        __m256 mv = _mm256_loadu_ps(x);
        for (i = 8; i + 8 <= n; i += 8) mv = _mm256_max_ps(mv, _mm256_loadu_ps(x + i));
        alignas(32) float lanes[8];
        _mm256_store_ps(lanes, mv);
        m = lanes[0];
        for (int l = 1; l < 8; ++l)
            if (lanes[l] > m) m = lanes[l];
    }
    for (; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

KGIQA_AVX2 float reduce_sum_f32(const float* x, std::size_t n) {
    __m256 acc = _mm256_setzero_ps();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) acc = _mm256_add_ps(acc, _mm256_loadu_ps(x + i));
    float s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

// ------------------------------- double -----------------------------------

KGIQA_AVX2 void matmul_nn_f64(const double* a, const double* b, double* c, std::size_t m,
                              std::size_t k, std::size_t n, bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        if (!accumulate) {
            std::size_t j = 0;
            const __m256d z = _mm256_setzero_pd();
            for (; j + 4 <= n; j += 4) _mm256_storeu_pd(crow + j, z);
            for (; j < n; ++j) crow[j] = 0.0;
        }
        for (std::size_t p = 0; p < k; ++p) {
            const __m256d av = _mm256_set1_pd(a[i * k + p]);
            const double* brow = b + p * n;
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d cv = _mm256_loadu_pd(crow + j);
                cv = _mm256_fmadd_pd(av, _mm256_loadu_pd(brow + j), cv);
                _mm256_storeu_pd(crow + j, cv);
            }
            const double avs = a[i * k + p];
            for (; j < n; ++j) crow[j] += avs * brow[j];
        }
    }
}

KGIQA_AVX2 void matmul_nt_f64(const double* a, const double* b, double* c, std::size_t m,
                              std::size_t k, std::size_t n, bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const double* brow = b + j * k;
            __m256d acc = _mm256_setzero_pd();
            std::size_t p = 0;
            for (; p + 4 <= k; p += 4)
                acc = _mm256_fmadd_pd(_mm256_loadu_pd(arow + p), _mm256_loadu_pd(brow + p), acc);
            double s = hsum(acc);
            for (; p < k; ++p) s += arow[p] * brow[p];
            if (accumulate)
                c[i * n + j] += s;
            else
                c[i * n + j] = s;
        }
    }
}

KGIQA_AVX2 void matmul_tn_f64(const double* a, const double* b, double* c, std::size_t m,
                              std::size_t k, std::size_t n, bool accumulate) {
    if (!accumulate) {
        for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
    }
    for (std::size_t p = 0; p < k; ++p) {
        const double* arow = a + p * m;
        const double* brow = b + p * n;
        for (std::size_t i = 0; i < m; ++i) {
            const __m256d av = _mm256_set1_pd(arow[i]);
            double* crow = c + i * n;
            std::size_t j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d cv = _mm256_loadu_pd(crow + j);
                cv = _mm256_fmadd_pd(av, _mm256_loadu_pd(brow + j), cv);
                _mm256_storeu_pd(crow + j, cv);
            }
            for (; j < n; ++j) crow[j] += arow[i] * brow[j];
        }
    }
}

KGIQA_AVX2 double dot_f64(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

KGIQA_AVX2 void axpy_f64(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

KGIQA_AVX2 void scale_f64(double alpha, double* x, std::size_t n) {
    const __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

KGIQA_AVX2 double reduce_max_f64(const double* x, std::size_t n) {
    double m = x[0];
    std::size_t i = 0;
    if (n >= 4) {
        __m256d mv = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4) mv = _mm256_max_pd(mv, _mm256_loadu_pd(x + i));
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, mv);
        m = lanes[0];
        for (int l = 1; l < 4; ++l)
            if (lanes[l] > m) m = lanes[l];
    }
    for (; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

KGIQA_AVX2 double reduce_sum_f64(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

#undef KGIQA_AVX2

#endif  // KGIQA_X86

bool available() {
#if KGIQA_X86
    return CpuCaps::get().avx2 && CpuCaps::get().fma;
#else
    return false;
#endif
}

template <typename T>
Backend<T> make_backend();

#if KGIQA_X86
template <>
Backend<float> make_backend<float>() {
    return {matmul_nn_f32, matmul_nt_f32, matmul_tn_f32, dot_f32,
            axpy_f32,      scale_f32,     reduce_max_f32, reduce_sum_f32,
            "avx2"};
}

template <>
Backend<double> make_backend<double>() {
    return {matmul_nn_f64, matmul_nt_f64, matmul_tn_f64, dot_f64,
            axpy_f64,      scale_f64,     reduce_max_f64, reduce_sum_f64,
            "avx2"};
}
#else
template <>
Backend<float> make_backend<float>() {
    return {};
}
template <>
Backend<double> make_backend<double>() {
    return {};
}
#endif

}  // namespace kgiqa::kernels::avx2
