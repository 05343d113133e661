#pragma once

#include <halfplane.hpp>

#include <gtest/gtest.h>

namespace hp_test {

using namespace halfplane;

inline double rel_l2(const cvec& a, const cvec& b) {
    double num = 0, den = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        num += std::norm(a[k] - b[k]);
        den += std::norm(b[k]);
    }
    return std::sqrt(num / den);
}

inline double rel_l2(const HalfPlaneField& a, const HalfPlaneField& b) { return rel_l2(a.values, b.values); }

inline HalfPlaneField gaussian_plane(const Grid2D& g, DomainTag tag = DomainTag::whole_plane) {
    return sample_field(g, tag, [](double a, double b) { return cplx(std::exp(-a * a - b * b), 0); });
}

inline double riemann_l2(const HalfPlaneField& f) {
    double s = 0;
    for (auto& v : f.values) s += std::norm(v);
    return std::sqrt(s * f.grid.gx1.dx * f.grid.gx2.dx);
}

}  // namespace hp_test
