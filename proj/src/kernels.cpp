#include "interdict/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace interdict::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(INTERDICT_HAVE_AVX2_BUILD) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect_backend() { return cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

namespace detail {

const Ops& ops_for(Backend b) {
  static const Ops scalar_ops{&scalar::dot, &scalar::axpy, &scalar::scale, &scalar::sum};
#if defined(INTERDICT_HAVE_AVX2_BUILD)
  static const Ops avx2_ops{&avx2::dot, &avx2::axpy, &avx2::scale, &avx2::sum};
  if (b == Backend::avx2) return avx2_ops;
#endif
  (void)b;
  return scalar_ops;
}

}  // namespace detail

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2: return cpu_has_avx2();
  }
  return false;
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw std::invalid_argument("kernel backend not supported on this CPU");
  g_backend.store(b, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return detail::ops_for(active_backend()).dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  detail::ops_for(active_backend()).axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x) {
  detail::ops_for(active_backend()).scale(alpha, x.data(), x.size());
}

double sum(std::span<const double> x) {
  return detail::ops_for(active_backend()).sum(x.data(), x.size());
}

}  // namespace interdict::kernels
