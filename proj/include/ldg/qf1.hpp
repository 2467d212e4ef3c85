#pragma once

// QF1 binary persistence for Q-tensor fields.
//
// Layout (all little-endian):
//   magic   4 bytes "QFLD"
//   version u32 = 1
//   ndim    u32 (2 or 3)
//   dims    u32 x ndim (nx, ny[, nz])
//   spacing f64
//   origin  f64 x ndim
//   epsilon f64
//   a, b, c f64
//   payload 5 x f64 per node, x-fastest order.
//
// The reader validates the magic/version and spot-checks that stored
// coefficient vectors reconstruct symmetric traceless tensors.

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldg/grid.hpp"

namespace ldg {

struct Qf1Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

static_assert(std::endian::native == std::endian::little,
              "QF1 writer assumes a little-endian host");

inline void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

inline void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

inline std::uint32_t take_u32(std::istream& is, const std::string& what) {
    std::uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw Qf1Error("QF1: truncated while reading " + what);
    return v;
}

inline double take_f64(std::istream& is, const std::string& what) {
    double v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw Qf1Error("QF1: truncated while reading " + what);
    return v;
}

}  // namespace detail

inline void write_qf1(std::ostream& os, const FieldQ& f) {
    const GridSpec& g = f.grid;
    const std::uint32_t ndim = g.ndim() == 2 ? 2u : 3u;
    os.write("QFLD", 4);
    detail::put_u32(os, 1u);
    detail::put_u32(os, ndim);
    detail::put_u32(os, static_cast<std::uint32_t>(g.nx));
    detail::put_u32(os, static_cast<std::uint32_t>(g.ny));
    if (ndim == 3) detail::put_u32(os, static_cast<std::uint32_t>(g.nz));
    detail::put_f64(os, g.h);
    detail::put_f64(os, g.origin.x);
    detail::put_f64(os, g.origin.y);
    if (ndim == 3) detail::put_f64(os, g.origin.z);
    detail::put_f64(os, f.epsilon);
    detail::put_f64(os, f.mp.a);
    detail::put_f64(os, f.mp.b);
    detail::put_f64(os, f.mp.c);
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!os) throw Qf1Error("QF1: write failed");
}

inline void write_qf1(const std::string& path, const FieldQ& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Qf1Error("QF1: cannot open for writing: " + path);
    write_qf1(os, f);
}

inline FieldQ read_qf1(std::istream& is) {
    char magic[4] = {};
    if (!is.read(magic, 4) || std::memcmp(magic, "QFLD", 4) != 0)
        throw Qf1Error("QF1: bad magic");
    const std::uint32_t version = detail::take_u32(is, "version");
    if (version != 1) throw Qf1Error("QF1: unsupported version");
    const std::uint32_t ndim = detail::take_u32(is, "ndim");
    if (ndim != 2 && ndim != 3) throw Qf1Error("QF1: ndim must be 2 or 3");

    GridSpec g{};
    g.nx = static_cast<int>(detail::take_u32(is, "nx"));
    g.ny = static_cast<int>(detail::take_u32(is, "ny"));
    g.nz = ndim == 3 ? static_cast<int>(detail::take_u32(is, "nz")) : 1;
    if (g.nx < 2 || g.ny < 2 || (ndim == 3 && g.nz < 2))
        throw Qf1Error("QF1: degenerate dims");
    g.h = detail::take_f64(is, "spacing");
    if (!(g.h > 0)) throw Qf1Error("QF1: spacing must be positive");
    g.origin.x = detail::take_f64(is, "origin.x");
    g.origin.y = detail::take_f64(is, "origin.y");
    g.origin.z = ndim == 3 ? detail::take_f64(is, "origin.z") : 0.0;
    const double epsilon = detail::take_f64(is, "epsilon");
    const double a = detail::take_f64(is, "a");
    const double b = detail::take_f64(is, "b");
    const double c = detail::take_f64(is, "c");

    FieldQ f = FieldQ::make(g, MaterialParams::make(a, b, c), epsilon);
    if (!is.read(reinterpret_cast<char*>(f.values.data()),
                 static_cast<std::streamsize>(f.values.size() * sizeof(double))))
        throw Qf1Error("QF1: truncated payload");
    char extra = 0;
    if (is.read(&extra, 1)) throw Qf1Error("QF1: trailing bytes after payload");

    // Spot-check: stored coefficients must describe finite S0 tensors.
    const std::size_t n = f.grid.num_nodes();
    const std::size_t stride = n > 64 ? n / 64 : 1;
    for (std::size_t i = 0; i < n; i += stride) {
        const QTensor q = f.at(i);
        Mat3 m = q.to_matrix();
        for (int r = 0; r < 3; ++r)
            for (int cc = 0; cc < 3; ++cc)
                if (!std::isfinite(m(r, cc)))
                    throw Qf1Error("QF1: non-finite payload sample");
        // from_matrix rejects non-symmetric / non-traceless inputs
        (void)from_matrix(m);
    }
    return f;
}

inline FieldQ read_qf1(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Qf1Error("QF1: cannot open for reading: " + path);
    return read_qf1(is);
}

}  // namespace ldg
