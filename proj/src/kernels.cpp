#include "kgiqa/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace kgiqa::kernels {

namespace avx2 {
bool available();
template <typename T>
Backend<T> make_backend();
}  // namespace avx2

const CpuCaps& CpuCaps::get() {
    static const CpuCaps caps = [] {
        CpuCaps c;
#if defined(__x86_64__) || defined(_M_X64)
        c.avx2 = __builtin_cpu_supports("avx2");
        c.fma = __builtin_cpu_supports("fma");
#endif
        return c;
    }();
    return caps;
}

namespace {

std::atomic<bool> g_force_scalar{false};

template <typename T>
Backend<T> make_scalar_backend() {
    return {scalar::matmul_nn<T>, scalar::matmul_nt<T>, scalar::matmul_tn<T>,
            scalar::dot<T>,       scalar::axpy<T>,      scalar::scale<T>,
            scalar::reduce_max<T>, scalar::reduce_sum<T>, "scalar"};
}

bool env_force_scalar() {
    const char* v = std::getenv("KGIQA_FORCE_SCALAR");
    return v != nullptr && v[0] != '\0' && v[0] != '0';
}

}  // namespace

void force_scalar(bool on) { g_force_scalar.store(on); }

bool scalar_forced() { return g_force_scalar.load() || env_force_scalar(); }

template <typename T>
const Backend<T>& backend() {
    static const Backend<T> scalar_b = make_scalar_backend<T>();
    static const Backend<T> simd_b =
        avx2::available() ? avx2::make_backend<T>() : make_scalar_backend<T>();
    return scalar_forced() ? scalar_b : simd_b;
}

template const Backend<float>& backend<float>();
template const Backend<double>& backend<double>();

const char* backend_name() { return backend<float>().name; }

}  // namespace kgiqa::kernels
