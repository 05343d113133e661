#pragma once

// Text formats, locale independent (to_chars/from_chars):
//   HPF1 n1 n2 x1_0 dx1 x2_0 dx2 domain_tag   then n1*n2 lines "re im", j1 outer
//   BTR1 n1 nt x1_0 dx1 T                      then n1*nt lines "re im", j1 outer
// Spectral fields reuse HPF1 with tag "spectral" and the k-grids in place of x-grids.

#include "fields.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>

namespace halfplane::io {

inline std::string fmt(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace detail {

class Tokens {
public:
    explicit Tokens(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("cannot open '" + path + "'");
        text_.assign(std::istreambuf_iterator<char>(in), {});
        path_ = path;
    }
    std::string word() {
        skip();
        size_t b = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (b == pos_) throw ConfigError(path_ + ": unexpected end of file");
        return text_.substr(b, pos_ - b);
    }
    double number() {
        skip();
        double v = 0;
        auto r = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (r.ec != std::errc()) throw ConfigError(path_ + ": malformed number");
        pos_ = r.ptr - text_.data();
        return v;
    }
    int integer() {
        double v = number();
        if (v != std::floor(v) || v < 0) throw ConfigError(path_ + ": expected a count");
        return static_cast<int>(v);
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    std::string text_, path_;
    size_t pos_ = 0;
};

inline void write_values(std::ostream& os, const cvec& v) {
    for (const auto& z : v) os << fmt(z.real()) << ' ' << fmt(z.imag()) << '\n';
}

inline cvec read_values(Tokens& tk, size_t n) {
    cvec v(n);
    for (auto& z : v) {
        double re = tk.number();
        double im = tk.number();
        z = {re, im};
    }
    return v;
}

}  // namespace detail

inline void write_hpf(const std::string& path, const Grid2D& g, const cvec& values, DomainTag tag) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write '" + path + "'");
    os << "HPF1 " << g.gx1.n << ' ' << g.gx2.n << ' ' << fmt(g.gx1.x0) << ' ' << fmt(g.gx1.dx) << ' '
       << fmt(g.gx2.x0) << ' ' << fmt(g.gx2.dx) << ' ' << to_string(tag) << '\n';
    detail::write_values(os, values);
}

inline void write_hpf(const std::string& path, const HalfPlaneField& f) {
    write_hpf(path, f.grid, f.values, f.tag);
}

struct RawHpf {
    Grid2D grid;
    cvec values;
    DomainTag tag;
};

inline RawHpf read_hpf_raw(const std::string& path) {
    detail::Tokens tk(path);
    if (tk.word() != "HPF1") throw ConfigError(path + ": not an HPF1 file");
    int n1 = tk.integer(), n2 = tk.integer();
    double a = tk.number(), da = tk.number(), b = tk.number(), db = tk.number();
    DomainTag tag = domain_tag_from(tk.word());
    Grid2D g{Grid1D(n1, a, da), Grid1D(n2, b, db)};
    return {g, detail::read_values(tk, static_cast<size_t>(n1) * n2), tag};
}

inline HalfPlaneField read_hpf(const std::string& path, double truncation_tol = kDefaultTruncationTol) {
    RawHpf r = read_hpf_raw(path);
    if (r.tag == DomainTag::spectral) throw ConfigError(path + ": spectral file where a field was expected");
    return HalfPlaneField(r.grid, std::move(r.values), r.tag, truncation_tol);
}

inline void write_btr(const std::string& path, const BoundaryTrace& g) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write '" + path + "'");
    os << "BTR1 " << g.gx1.n << ' ' << g.gt.n << ' ' << fmt(g.gx1.x0) << ' ' << fmt(g.gx1.dx) << ' '
       << fmt(g.T()) << '\n';
    detail::write_values(os, g.values);
}

inline BoundaryTrace read_btr(const std::string& path, double truncation_tol = kDefaultTruncationTol) {
    detail::Tokens tk(path);
    if (tk.word() != "BTR1") throw ConfigError(path + ": not a BTR1 file");
    int n1 = tk.integer(), nt = tk.integer();
    double a = tk.number(), da = tk.number(), T = tk.number();
    if (nt < 2 || !(T > 0)) throw ConfigError(path + ": bad time axis");
    Grid1D gx1(n1, a, da), gt(nt, 0.0, T / (nt - 1));
    return BoundaryTrace(gx1, gt, detail::read_values(tk, static_cast<size_t>(n1) * nt), truncation_tol);
}

}  // namespace halfplane::io
