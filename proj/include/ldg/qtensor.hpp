// Algebra of the five-dimensional space of traceless symmetric 3x3 tensors,
// the quartic bulk potential and its gradient, and the uniaxial vacuum states.
#pragma once

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ldg {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        if (n == 0) throw std::invalid_argument("Vec3: cannot normalize zero vector");
        return {x / n, y / n, z / n};
    }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
};

// Row-major symmetric-capable 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int i, int j) { return m[3 * i + j]; }
    double operator()(int i, int j) const { return m[3 * i + j]; }

    static Mat3 zero() { return {}; }
    static Mat3 identity() {
        Mat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }
    static Mat3 outer(const Vec3& a, const Vec3& b) {
        Mat3 r;
        const double av[3] = {a.x, a.y, a.z}, bv[3] = {b.x, b.y, b.z};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = av[i] * bv[j];
        return r;
    }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }
    Mat3 matmul(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
    double trace() const { return m[0] + m[4] + m[8]; }
    // Frobenius inner product A:B.
    double contract(const Mat3& o) const {
        double s = 0;
        for (int i = 0; i < 9; ++i) s += m[i] * o.m[i];
        return s;
    }
    double norm() const { return std::sqrt(contract(*this)); }
};

// Orthonormal basis of S0 under A:B; two diagonal and three off-diagonal
// generators, each normalized so E_k : E_k = 1.
inline const std::array<Mat3, 5>& s0_basis() {
    static const std::array<Mat3, 5> basis = [] {
        std::array<Mat3, 5> b{};
        const double s2 = 1.0 / std::sqrt(2.0), s6 = 1.0 / std::sqrt(6.0);
        b[0](0, 0) = s2;
        b[0](1, 1) = -s2;
        b[1](0, 0) = s6;
        b[1](1, 1) = s6;
        b[1](2, 2) = -2.0 * s6;
        b[2](0, 1) = b[2](1, 0) = s2;
        b[3](0, 2) = b[3](2, 0) = s2;
        b[4](1, 2) = b[4](2, 1) = s2;
        return b;
    }();
    return basis;
}

struct DegenerateTensor : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A point of S0 stored as five coordinates in the fixed orthonormal basis,
// so |Q|^2 = sum c_k^2 and tr Q^2 = Q:Q hold exactly.
struct QTensor {
    std::array<double, 5> c{};

    QTensor() = default;
    explicit QTensor(const std::array<double, 5>& coords) : c(coords) {}

    QTensor operator+(const QTensor& o) const {
        QTensor r;
        for (int k = 0; k < 5; ++k) r.c[k] = c[k] + o.c[k];
        return r;
    }
    QTensor operator-(const QTensor& o) const {
        QTensor r;
        for (int k = 0; k < 5; ++k) r.c[k] = c[k] - o.c[k];
        return r;
    }
    QTensor operator*(double s) const {
        QTensor r;
        for (int k = 0; k < 5; ++k) r.c[k] = c[k] * s;
        return r;
    }
    double dot(const QTensor& o) const {
        double s = 0;
        for (int k = 0; k < 5; ++k) s += c[k] * o.c[k];
        return s;
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }

    Mat3 to_matrix() const {
        const auto& b = s0_basis();
        Mat3 r;
        for (int k = 0; k < 5; ++k)
            for (int i = 0; i < 9; ++i) r.m[i] += c[k] * b[k].m[i];
        return r;
    }
};

// Coordinates of a symmetric traceless matrix in the fixed basis. Rejects
// input violating symmetry or tracelessness beyond tol.
inline QTensor from_matrix(const Mat3& M, double tol = 1e-10) {
    double asym = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) asym = std::max(asym, std::abs(M(i, j) - M(j, i)));
    if (asym > tol)
        throw std::invalid_argument("from_matrix: non-symmetric input, |M-M^T| = " +
                                    std::to_string(asym));
    if (std::abs(M.trace()) > tol)
        throw std::invalid_argument("from_matrix: non-traceless input, tr M = " +
                                    std::to_string(M.trace()));
    QTensor q;
    const auto& b = s0_basis();
    for (int k = 0; k < 5; ++k) q.c[k] = M.contract(b[k]);
    return q;
}

// s (n x n - I/3) for a unit director n.
inline QTensor uniaxial(const Vec3& n, double s) {
    Vec3 u = n.normalized();
    Mat3 M = (Mat3::outer(u, u) - Mat3::identity() * (1.0 / 3.0)) * s;
    return from_matrix(M, 1e-12);
}

// (tr Q^2, tr Q^3).
inline std::pair<double, double> invariants(const QTensor& q) {
    double tr2 = q.norm2();
    Mat3 M = q.to_matrix();
    double tr3 = M.matmul(M).contract(M);
    return {tr2, tr3};
}

// Jacobi eigenvalue iteration for a symmetric 3x3 matrix. Returns eigenvalues
// in descending order with matching unit eigenvectors.
struct Eigen3 {
    std::array<double, 3> values{};
    std::array<Vec3, 3> vectors{};
};

inline Eigen3 eigen_sym3(const Mat3& M_in) {
    Mat3 A = M_in;
    Mat3 V = Mat3::identity();
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) off += A(i, j) * A(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(A(p, q)) < 1e-300) continue;
                double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double cth = 1.0 / std::sqrt(t * t + 1.0), sth = t * cth;
                for (int k = 0; k < 3; ++k) {
                    double akp = A(k, p), akq = A(k, q);
                    A(k, p) = cth * akp - sth * akq;
                    A(k, q) = sth * akp + cth * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = cth * apk - sth * aqk;
                    A(q, k) = sth * apk + cth * aqk;
                    double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = cth * vkp - sth * vkq;
                    V(k, q) = sth * vkp + cth * vkq;
                }
            }
    }
    Eigen3 e;
    std::array<int, 3> order = {0, 1, 2};
    std::array<double, 3> lam = {A(0, 0), A(1, 1), A(2, 2)};
    // descending sort of three values
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (lam[order[j]] > lam[order[i]]) std::swap(order[i], order[j]);
    for (int i = 0; i < 3; ++i) {
        e.values[i] = lam[order[i]];
        e.vectors[i] = Vec3{V(0, order[i]), V(1, order[i]), V(2, order[i])};
    }
    return e;
}

// Material coefficients of the quartic bulk potential, with the additive
// constant chosen so that min f = 0, the preferred uniaxial amplitude s_*,
// and the core threshold used by the defect diagnostics.
struct MaterialParams {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    double k = 0.0;
    double s_star = 0.0;
    double eta_core = 0.0;

    static MaterialParams make(double a, double b, double c);
};

inline double s_star_of(double a, double b, double c) {
    if (c <= 0) throw std::invalid_argument("MaterialParams: c must be positive");
    return (b + std::sqrt(b * b + 24.0 * a * c)) / (4.0 * c);
}

// k = (a/3) s_*^2 + (2b/27) s_*^3 - (c/9) s_*^4, from the uniaxial reduction
// f(s) = k - (a/3) s^2 - (2b/27) s^3 + (c/9) s^4 minimized at s = s_*.
inline double additive_k(double a, double b, double c) {
    double s = s_star_of(a, b, c);
    return a * s * s / 3.0 + 2.0 * b * s * s * s / 27.0 - c * s * s * s * s / 9.0;
}

// f(Q) = k - (a/2) tr Q^2 - (b/3) tr Q^3 + (c/4)(tr Q^2)^2.
inline double bulk_potential(const QTensor& q, const MaterialParams& mp) {
    auto [t2, t3] = invariants(q);
    return mp.k - 0.5 * mp.a * t2 - mp.b * t3 / 3.0 + 0.25 * mp.c * t2 * t2;
}

// Gradient of f within S0: -aQ - b Q^2 + (b/3)|Q|^2 I + c |Q|^2 Q. The
// (b/3)|Q|^2 I term is exactly the trace correction of Q^2, so the result
// stays in S0.
inline QTensor bulk_gradient(const QTensor& q, const MaterialParams& mp) {
    Mat3 M = q.to_matrix();
    double t2 = q.norm2();
    Mat3 G = M * (-mp.a) - M.matmul(M) * mp.b + Mat3::identity() * (mp.b * t2 / 3.0) +
             M * (mp.c * t2);
    return from_matrix(G, 1e-9);
}

// Nearest-point projection onto the vacuum manifold: keep the leading
// eigenframe, reset the amplitude to s_*. Ill-defined when the two largest
// eigenvalues (nearly) coincide.
inline QTensor project_vacuum(const QTensor& q, const MaterialParams& mp,
                              double gap_tol_scale = 1e-8) {
    Eigen3 e = eigen_sym3(q.to_matrix());
    double gap = e.values[0] - e.values[1];
    double gap_tol = gap_tol_scale * (1.0 + q.norm());
    if (gap <= gap_tol)
        throw DegenerateTensor("project_vacuum: leading eigenvalue gap " +
                               std::to_string(gap) + " below tolerance");
    return uniaxial(e.vectors[0], mp.s_star);
}

inline MaterialParams MaterialParams::make(double a, double b, double c) {
    MaterialParams mp;
    mp.a = a;
    mp.b = b;
    mp.c = c;
    mp.s_star = s_star_of(a, b, c);
    mp.k = additive_k(a, b, c);
    // f at the oblate midpoint between two vacuum branches, halved.
    QTensor mid = uniaxial(Vec3{0, 0, 1}, -0.5 * mp.s_star);
    mp.eta_core = (mp.s_star > 0) ? 0.5 * bulk_potential(mid, mp) : 0.0;
    return mp;
}

// Gaussian sample in S0 coordinates; used by tests and perturbation audits.
template <class Rng>
QTensor random_qtensor(Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    QTensor q;
    for (int k = 0; k < 5; ++k) q.c[k] = g(rng);
    return q;
}

}  // namespace ldg
