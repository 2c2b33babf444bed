#pragma once

// Dense arithmetic kernels. Every kernel has a portable scalar reference and,
// where the CPU supports it, an AVX2+FMA variant chosen once at startup.
// All gemm kernels accumulate into C (C += ...); callers zero C first when
// they want a plain product.

#include <cstddef>
#include <string_view>
#include <type_traits>

namespace skd::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    // C[M,N] += A[M,K] * B[K,N]
    void (*gemm_nn)(std::size_t M, std::size_t N, std::size_t K, const float* A, std::size_t lda,
                    const float* B, std::size_t ldb, float* C, std::size_t ldc);
    // C[M,N] += A[K,M]^T * B[K,N]
    void (*gemm_tn)(std::size_t M, std::size_t N, std::size_t K, const float* A, std::size_t lda,
                    const float* B, std::size_t ldb, float* C, std::size_t ldc);
    // C[M,N] += A[M,K] * B[N,K]^T
    void (*gemm_nt)(std::size_t M, std::size_t N, std::size_t K, const float* A, std::size_t lda,
                    const float* B, std::size_t ldb, float* C, std::size_t ldc);
    float (*dot)(const float* x, const float* y, std::size_t n);
    // y += a * x
    void (*axpy)(float a, const float* x, float* y, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

// Selected once: AVX2 when available, unless SKD_ISA=scalar is set in the
// environment.
const KernelTable& kernels() noexcept;

// Generic reference kernels, also used directly for double precision.
namespace ref {

template <class T>
void gemm_nn(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda, const T* B,
             std::size_t ldb, T* C, std::size_t ldc) {
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t k = 0; k < K; ++k) {
            const T a = A[i * lda + k];
            const T* b = B + k * ldb;
            T* c = C + i * ldc;
            for (std::size_t j = 0; j < N; ++j) c[j] += a * b[j];
        }
}

template <class T>
void gemm_tn(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda, const T* B,
             std::size_t ldb, T* C, std::size_t ldc) {
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < M; ++i) {
            const T a = A[k * lda + i];
            const T* b = B + k * ldb;
            T* c = C + i * ldc;
            for (std::size_t j = 0; j < N; ++j) c[j] += a * b[j];
        }
}

template <class T>
void gemm_nt(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda, const T* B,
             std::size_t ldb, T* C, std::size_t ldc) {
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            T s = T(0);
            for (std::size_t k = 0; k < K; ++k) s += A[i * lda + k] * B[j * ldb + k];
            C[i * ldc + j] += s;
        }
}

template <class T>
T dot(const T* x, const T* y, std::size_t n) {
    T s = T(0);
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

template <class T>
void axpy(T a, const T* x, T* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace ref

// Type-generic entry points: float goes through the dispatched table,
// anything else through the reference kernels.
template <class T>
inline void gemm_nn(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda, const T* B,
                    std::size_t ldb, T* C, std::size_t ldc) {
    if constexpr (std::is_same_v<T, float>)
        kernels().gemm_nn(M, N, K, A, lda, B, ldb, C, ldc);
    else
        ref::gemm_nn(M, N, K, A, lda, B, ldb, C, ldc);
}

template <class T>
inline void gemm_tn(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda, const T* B,
                    std::size_t ldb, T* C, std::size_t ldc) {
    if constexpr (std::is_same_v<T, float>)
        kernels().gemm_tn(M, N, K, A, lda, B, ldb, C, ldc);
    else
        ref::gemm_tn(M, N, K, A, lda, B, ldb, C, ldc);
}

template <class T>
inline void gemm_nt(std::size_t M, std::size_t N, std::size_t K, const T* A, std::size_t lda, const T* B,
                    std::size_t ldb, T* C, std::size_t ldc) {
    if constexpr (std::is_same_v<T, float>)
        kernels().gemm_nt(M, N, K, A, lda, B, ldb, C, ldc);
    else
        ref::gemm_nt(M, N, K, A, lda, B, ldb, C, ldc);
}

template <class T>
inline T dot(const T* x, const T* y, std::size_t n) {
    if constexpr (std::is_same_v<T, float>)
        return kernels().dot(x, y, n);
    else
        return ref::dot(x, y, n);
}

template <class T>
inline void axpy(T a, const T* x, T* y, std::size_t n) {
    if constexpr (std::is_same_v<T, float>)
        kernels().axpy(a, x, y, n);
    else
        ref::axpy(a, x, y, n);
}

}  // namespace skd::simd
