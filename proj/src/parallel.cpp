#include "bgx/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bgx {

int thread_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("BGX_THREADS")) {
            try {
                const int v = std::stoi(env);
                if (v > 0) return v;
            } catch (...) {
            }
        }
        return omp_get_max_threads();
    }();
    return cap;
}

namespace {

template <class T>
T cascade(const T* v, std::size_t n) {
    if (n <= 8) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return cascade(v, h) + cascade(v + h, n - h);
}

}  // namespace

double pairwise_sum(const double* v, std::size_t n) { return cascade(v, n); }

std::complex<double> pairwise_sum(const std::complex<double>* v, std::size_t n) {
    return cascade(v, n);
}

}  // namespace bgx
