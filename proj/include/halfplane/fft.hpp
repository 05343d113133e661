#pragma once

// Thin FFTW wrappers. Plans are cached per shape and executed with the new-array
// interface, so every call site can pass its own buffer.

#include "core.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace halfplane::fft {

namespace detail {

using Key = std::tuple<int, int, int, int, int, int>;  // kind, n1, n2, howmany, stride/dist, sign

inline std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

struct PlanCache {
    std::map<Key, fftw_plan> plans;
    ~PlanCache() {
        for (auto& [k, p] : plans) fftw_destroy_plan(p);
    }
};

inline PlanCache& cache() {
    static PlanCache c;
    return c;
}

inline fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

}  // namespace detail

// In-place batch of 1D complex transforms: `howmany` signals of length n,
// element stride `stride`, consecutive signals `dist` apart. sign = FFTW_FORWARD (e^{-i}) or FFTW_BACKWARD.
// Unnormalised in both directions.
inline void dft_many(cplx* data, int n, int howmany, int stride, int dist, int sign) {
    fftw_plan p;
    {
        std::lock_guard<std::mutex> lk(detail::plan_mutex());
        detail::Key key{1, n, howmany, stride, dist, sign};
        auto& plans = detail::cache().plans;
        auto it = plans.find(key);
        if (it == plans.end()) {
            cvec tmp(static_cast<size_t>(std::max(1, (howmany - 1) * dist + (n - 1) * stride + 1)));
            int nn[1] = {n};
            p = fftw_plan_many_dft(1, nn, howmany, detail::as_fftw(tmp.data()), nullptr, stride, dist,
                                   detail::as_fftw(tmp.data()), nullptr, stride, dist, sign,
                                   detail::kFlags);
            plans.emplace(key, p);
        } else {
            p = it->second;
        }
    }
    fftw_execute_dft(p, detail::as_fftw(data), detail::as_fftw(data));
}

inline void dft(cvec& v, int sign) { dft_many(v.data(), static_cast<int>(v.size()), 1, 1, 0, sign); }

// In-place 2D complex transform of a row-major n1 x n2 array.
inline void dft2(cplx* data, int n1, int n2, int sign) {
    fftw_plan p;
    {
        std::lock_guard<std::mutex> lk(detail::plan_mutex());
        detail::Key key{2, n1, n2, 1, 0, sign};
        auto& plans = detail::cache().plans;
        auto it = plans.find(key);
        if (it == plans.end()) {
            cvec tmp(static_cast<size_t>(n1) * n2);
            p = fftw_plan_dft_2d(n1, n2, detail::as_fftw(tmp.data()), detail::as_fftw(tmp.data()), sign,
                                 detail::kFlags);
            plans.emplace(key, p);
        } else {
            p = it->second;
        }
    }
    fftw_execute_dft(p, detail::as_fftw(data), detail::as_fftw(data));
}

// In-place 2D DST-I (RODFT00) on both real and imaginary parts of a row-major m1 x m2
// complex array. Unnormalised: applying it twice multiplies by 4 (m1+1)(m2+1).
inline void dst1_2d(cplx* data, int m1, int m2) {
    fftw_plan p;
    {
        std::lock_guard<std::mutex> lk(detail::plan_mutex());
        detail::Key key{3, m1, m2, 2, 2, 0};
        auto& plans = detail::cache().plans;
        auto it = plans.find(key);
        if (it == plans.end()) {
            std::vector<double> tmp(static_cast<size_t>(2) * m1 * m2);
            int nn[2] = {m1, m2};
            fftw_r2r_kind kinds[2] = {FFTW_RODFT00, FFTW_RODFT00};
            p = fftw_plan_many_r2r(2, nn, 2, tmp.data(), nullptr, 2, 1, tmp.data(), nullptr, 2, 1, kinds,
                                   detail::kFlags);
            plans.emplace(key, p);
        } else {
            p = it->second;
        }
    }
    double* d = reinterpret_cast<double*>(data);
    fftw_execute_r2r(p, d, d);
}

// 1D DST-I of a complex vector of length n (real and imaginary parts separately).
inline void dst1(cplx* data, int n) {
    fftw_plan p;
    {
        std::lock_guard<std::mutex> lk(detail::plan_mutex());
        detail::Key key{4, n, 1, 2, 2, 0};
        auto& plans = detail::cache().plans;
        auto it = plans.find(key);
        if (it == plans.end()) {
            std::vector<double> tmp(static_cast<size_t>(2) * n);
            int nn[1] = {n};
            fftw_r2r_kind kinds[1] = {FFTW_RODFT00};
            p = fftw_plan_many_r2r(1, nn, 2, tmp.data(), nullptr, 2, 1, tmp.data(), nullptr, 2, 1, kinds,
                                   detail::kFlags);
            plans.emplace(key, p);
        } else {
            p = it->second;
        }
    }
    double* d = reinterpret_cast<double*>(data);
    fftw_execute_r2r(p, d, d);
}

}  // namespace halfplane::fft
