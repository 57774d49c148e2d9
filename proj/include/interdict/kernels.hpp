#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Dense vector kernels backing the GNN math and the simplex tableau updates.
// A scalar reference implementation always exists; wider variants are picked
// at runtime from CPU capabilities. All variants must agree within floating
// point reassociation error (see tests/test_kernels.cpp).

namespace interdict::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_supported(Backend b);
std::string_view backend_name(Backend b);

/// Forces a backend, mainly for tests and benchmarking.
/// Throws std::invalid_argument if the CPU does not support it.
void set_backend(Backend b);

/// dot(a, b) = sum_i a[i] * b[i]; spans must have equal length.
double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x; spans must have equal length.
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// x *= alpha
void scale(double alpha, std::span<double> x);

/// sum of all elements
double sum(std::span<const double> x);

namespace detail {

struct Ops {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
};

const Ops& ops_for(Backend b);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double sum(const double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define INTERDICT_HAVE_AVX2_BUILD 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double sum(const double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace detail

}  // namespace interdict::kernels
