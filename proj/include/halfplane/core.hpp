#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace halfplane {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Bad input or configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature or iteration failed to converge (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data violates a structural precondition: truncation, support, compatibility.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

// HALFPLANE_THREADS wins over the requested count; 0 means "leave the runtime default".
inline int configure_threads(int requested = 0) {
    int n = requested;
    if (const char* env = std::getenv("HALFPLANE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) n = v;
    }
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline double sqr(double x) { return x * x; }

inline double l2(const cvec& v) {
    double s = 0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline double max_abs(const cvec& v) {
    double m = 0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace halfplane
