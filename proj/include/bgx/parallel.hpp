#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <omp.h>

namespace bgx {

// Kernels that loop over independent items take an execution policy. The serial
// path is the reference; both paths write per-item results and reduce them in the
// same fixed order, so they agree bit for bit.
enum class Exec { serial, parallel };

// Thread cap: BGX_THREADS if set to a positive integer, else the OpenMP default.
int thread_cap();

template <class F>
void for_each_index(Exec ex, std::size_t count, F&& f) {
    if (ex == Exec::serial || count < 2) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_cap())
    for (long long i = 0; i < n; ++i) f(static_cast<std::size_t>(i));
}

// Pairwise (cascade) summation; order depends only on the length.
double pairwise_sum(const double* v, std::size_t n);
std::complex<double> pairwise_sum(const std::complex<double>* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }
inline std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
    return pairwise_sum(v.data(), v.size());
}

}  // namespace bgx
