#pragma once

#include <cstddef>

// Dense numeric kernels used by the tensor engine and the TransE trainer.
// Scalar reference implementations live in kernels::scalar and define the
// semantics; the AVX2 variants are equivalence-tested against them and
// selected at runtime via CPU detection. All matrices are row-major.

namespace kgiqa::kernels {

struct CpuCaps {
    bool avx2 = false;
    bool fma = false;
    static const CpuCaps& get();
};

// ---------------------------------------------------------------------------
// Scalar reference kernels
// ---------------------------------------------------------------------------

namespace scalar {

// C[m x n] (+)= A[m x k] * B[k x n]
template <typename T>
void matmul_nn(const T* a, const T* b, T* c, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        T* crow = c + i * n;
        if (!accumulate) {
            for (std::size_t j = 0; j < n; ++j) crow[j] = T(0);
        }
        for (std::size_t p = 0; p < k; ++p) {
            const T av = a[i * k + p];
            const T* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

// C[m x n] (+)= A[m x k] * B[n x k]^T
template <typename T>
void matmul_nt(const T* a, const T* b, T* c, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate) {
    for (std::size_t i = 0; i < m; ++i) {
        const T* arow = a + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            const T* brow = b + j * k;
            T acc = T(0);
            for (std::size_t p = 0; p < k; ++p) acc += arow[p] * brow[p];
            if (accumulate)
                c[i * n + j] += acc;
            else
                c[i * n + j] = acc;
        }
    }
}

// C[m x n] (+)= A[k x m]^T * B[k x n]
template <typename T>
void matmul_tn(const T* a, const T* b, T* c, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate) {
    if (!accumulate) {
        for (std::size_t i = 0; i < m * n; ++i) c[i] = T(0);
    }
    for (std::size_t p = 0; p < k; ++p) {
        const T* arow = a + p * m;
        const T* brow = b + p * n;
        for (std::size_t i = 0; i < m; ++i) {
            const T av = arow[i];
            T* crow = c + i * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

template <typename T>
T dot(const T* x, const T* y, std::size_t n) {
    T acc = T(0);
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

// y += alpha * x
template <typename T>
void axpy(T alpha, const T* x, T* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
void scale(T alpha, T* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

template <typename T>
T reduce_max(const T* x, std::size_t n) {
    T m = x[0];
    for (std::size_t i = 1; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

template <typename T>
T reduce_sum(const T* x, std::size_t n) {
    T acc = T(0);
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

}  // namespace scalar

// ---------------------------------------------------------------------------
// Runtime dispatch
// ---------------------------------------------------------------------------

template <typename T>
struct Backend {
    void (*matmul_nn)(const T*, const T*, T*, std::size_t, std::size_t, std::size_t, bool);
    void (*matmul_nt)(const T*, const T*, T*, std::size_t, std::size_t, std::size_t, bool);
    void (*matmul_tn)(const T*, const T*, T*, std::size_t, std::size_t, std::size_t, bool);
    T (*dot)(const T*, const T*, std::size_t);
    void (*axpy)(T, const T*, T*, std::size_t);
    void (*scale)(T, T*, std::size_t);
    T (*reduce_max)(const T*, std::size_t);
    T (*reduce_sum)(const T*, std::size_t);
    const char* name;
};

// Active backend for T; AVX2 when the CPU supports it, scalar otherwise.
template <typename T>
const Backend<T>& backend();

// Pin the scalar backend regardless of CPU caps (equivalence tests).
void force_scalar(bool on);
bool scalar_forced();

const char* backend_name();

// ---------------------------------------------------------------------------
// Dispatched entry points
// ---------------------------------------------------------------------------

template <typename T>
inline void matmul_nn(const T* a, const T* b, T* c, std::size_t m, std::size_t k, std::size_t n,
                      bool accumulate = false) {
    backend<T>().matmul_nn(a, b, c, m, k, n, accumulate);
}

template <typename T>
inline void matmul_nt(const T* a, const T* b, T* c, std::size_t m, std::size_t k, std::size_t n,
                      bool accumulate = false) {
    backend<T>().matmul_nt(a, b, c, m, k, n, accumulate);
}

template <typename T>
inline void matmul_tn(const T* a, const T* b, T* c, std::size_t m, std::size_t k, std::size_t n,
                      bool accumulate = false) {
    backend<T>().matmul_tn(a, b, c, m, k, n, accumulate);
}

template <typename T>
inline T dot(const T* x, const T* y, std::size_t n) {
    return backend<T>().dot(x, y, n);
}

template <typename T>
inline void axpy(T alpha, const T* x, T* y, std::size_t n) {
    backend<T>().axpy(alpha, x, y, n);
}

template <typename T>
inline void scale(T alpha, T* x, std::size_t n) {
    backend<T>().scale(alpha, x, n);
}

template <typename T>
inline T reduce_max(const T* x, std::size_t n) {
    return backend<T>().reduce_max(x, n);
}

template <typename T>
inline T reduce_sum(const T* x, std::size_t n) {
    return backend<T>().reduce_sum(x, n);
}

}  // namespace kgiqa::kernels
