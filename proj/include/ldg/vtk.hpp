#pragma once
// Legacy VTK structured-points export of the scalar diagnostics bulk f(Q)
// and |grad Q|, for external viewers (ParaView, VisIt). ASCII, deterministic.

#include <iomanip>
#include <ostream>
#include <stdexcept>

#include <ldg/field_ops.hpp>

namespace ldg {

inline void write_vtk(std::ostream& os, const FieldQ& f, const std::string& title) {
    if (title.find('\n') != std::string::npos)
        throw std::invalid_argument("write_vtk: title must be a single line");
    const GridSpec& g = f.grid;
    os << "# vtk DataFile Version 3.0\n";
    os << (title.empty() ? "ldg field diagnostics" : title) << "\n";
    os << "ASCII\n";
    os << "DATASET STRUCTURED_POINTS\n";
    os << "DIMENSIONS " << g.nx << ' ' << g.ny << ' ' << g.nz << "\n";
    os << "ORIGIN " << g.origin.x << ' ' << g.origin.y << ' ' << g.origin.z << "\n";
    os << "SPACING " << g.h << ' ' << g.h << ' ' << g.h << "\n";
    os << "POINT_DATA " << g.num_nodes() << "\n";
    os << std::setprecision(9);

    os << "SCALARS bulk double 1\nLOOKUP_TABLE default\n";
    for (std::size_t n = 0; n < g.num_nodes(); ++n) os << bulk_at(f, n) << "\n";

    os << "SCALARS grad_norm double 1\nLOOKUP_TABLE default\n";
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                os << std::sqrt(gradient_at(f, i, j, k).norm2()) << "\n";
}

}  // namespace ldg
