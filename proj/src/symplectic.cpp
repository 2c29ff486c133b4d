#include "skgeo/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace skgeo::symplectic {

RealMatrix canonical_form(int m) {
    RealMatrix omega = RealMatrix::Zero(2 * m, 2 * m);
    omega.topRightCorner(m, m) = RealMatrix::Identity(m, m);
    omega.bottomLeftCorner(m, m) = -RealMatrix::Identity(m, m);
    return omega;
}

SymplecticFrame SymplecticFrame::canonical(int m, Tolerances tol) {
    if (m <= 0) throw DimensionError("frame requires m >= 1");
    return SymplecticFrame(m, canonical_form(m), tol);
}

SymplecticFrame SymplecticFrame::from_form(RealMatrix omega, Tolerances tol) {
    if (omega.rows() != omega.cols() || omega.rows() % 2 != 0 || omega.rows() == 0)
        throw DimensionError("symplectic form must be square of even dimension");
    const int m = static_cast<int>(omega.rows()) / 2;
    const double scale = omega.cwiseAbs().maxCoeff();
    if (scale == 0.0) throw DegeneracyError("symplectic form is zero", 0.0);
    const double antisym = (omega + omega.transpose()).cwiseAbs().maxCoeff();
    if (antisym > tol.antisymmetry * std::max(1.0, scale))
        throw Error("form is not antisymmetric (residual " + std::to_string(antisym) + ")");
    const double det = (omega / scale).determinant();
    if (std::abs(det) <= tol.nondegeneracy)
        throw DegeneracyError("symplectic form is degenerate", std::abs(det));
    return SymplecticFrame(m, std::move(omega), tol);
}

double SymplecticFrame::canonical_residual() const {
    return (omega_ - canonical_form(m_)).cwiseAbs().maxCoeff();
}

Complex inner(const ComplexVector& v, const ComplexVector& w, const SymplecticFrame& frame) {
    if (v.size() != frame.dim() || w.size() != frame.dim())
        throw DimensionError("inner product expects vectors of length " +
                             std::to_string(frame.dim()));
    return v.transpose() * frame.omega().cast<Complex>() * w;
}

MembershipResult is_symplectic(const RealMatrix& s, const SymplecticFrame& frame, double tol) {
    if (s.rows() != frame.dim() || s.cols() != frame.dim())
        throw DimensionError("matrix shape does not match frame dimension " +
                             std::to_string(frame.dim()));
    const double residual =
        (s.transpose() * frame.omega() * s - frame.omega()).cwiseAbs().maxCoeff();
    return {residual < tol, residual};
}

SymplecticMatrix::SymplecticMatrix(RealMatrix s, SymplecticFrame frame)
    : s_(std::move(s)), frame_(std::move(frame)) {
    const auto check = is_symplectic(s_, frame_, frame_.tolerances().membership);
    residual_ = check.residual;
    if (!check.ok)
        throw Error("matrix is not symplectic: S^T Omega S residual " +
                    std::to_string(check.residual));
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    // S^{-1} = Omega^{-1} S^T Omega, exact on the group; cheaper and more
    // stable than a generic inverse.
    const RealMatrix& omega = frame_.omega();
    RealMatrix inv = omega.partialPivLu().solve(s_.transpose() * omega);
    return SymplecticMatrix(std::move(inv), frame_);
}

KineticMatrix::KineticMatrix(ComplexMatrix n, std::vector<Complex> point)
    : n_(std::move(n)), point_(std::move(point)) {
    if (n_.rows() != n_.cols() || n_.rows() == 0)
        throw DimensionError("kinetic matrix must be square");
    symmetry_residual_ = (n_ - n_.transpose()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(n_.imag());
    im_eigenvalues_ = es.eigenvalues();
}

KineticMatrix KineticMatrix::raw(ComplexMatrix n, std::vector<Complex> point) {
    return KineticMatrix(std::move(n), std::move(point));
}

KineticMatrix KineticMatrix::checked(ComplexMatrix n, std::vector<Complex> point,
                                     double sym_tol) {
    KineticMatrix k(std::move(n), std::move(point));
    if (k.symmetry_residual() > sym_tol)
        throw Error("kinetic matrix is not symmetric: residual " +
                    std::to_string(k.symmetry_residual()));
    return k;
}

KineticMatrix act_on_kinetic(const SymplecticMatrix& s, const KineticMatrix& n) {
    const int m = n.m();
    if (s.frame().m() != m)
        throw DimensionError("symplectic matrix dimension does not match kinetic matrix");
    if (!s.frame().is_canonical())
        throw Error("fractional-linear action requires the canonical frame");

    const ComplexMatrix a = s.block_a().cast<Complex>();
    const ComplexMatrix b = s.block_b().cast<Complex>();
    const ComplexMatrix c = s.block_c().cast<Complex>();
    const ComplexMatrix d = s.block_d().cast<Complex>();

    const ComplexMatrix denom = a + b * n.matrix();
    Eigen::JacobiSVD<ComplexMatrix> svd(denom);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin == 0.0 || smax / smin > s.frame().tolerances().condition_limit)
        throw DegeneracyError(
            "A + B N is numerically singular (smallest singular value " +
                std::to_string(smin) + "); the transformed frame is degenerate here",
            smin);

    // N~ = (C + D N)(A + B N)^{-1}, computed via the transposed solve.
    const ComplexMatrix numer = c + d * n.matrix();
    ComplexMatrix result =
        denom.transpose().partialPivLu().solve(numer.transpose()).transpose();
    return KineticMatrix::raw(std::move(result), n.point());
}

Canonicalization canonicalize(const SymplecticFrame& frame) {
    const int m = frame.m();
    const int d = frame.dim();
    const RealMatrix& omega = frame.omega();
    const double scale = omega.cwiseAbs().maxCoeff();

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) basis.push_back(RealMatrix::Identity(d, d).col(k));

    std::vector<Eigen::VectorXd> e_vecs, f_vecs;
    for (int step = 0; step < m; ++step) {
        // Largest remaining pairing as pivot.
        double best = -1.0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j) {
                const double p = std::abs(basis[i].dot(omega * basis[j]));
                if (p > best) {
                    best = p;
                    bi = i;
                    bj = j;
                }
            }
        if (best <= frame.tolerances().nondegeneracy * scale)
            throw DegeneracyError("form is degenerate on the remaining subspace", best);

        Eigen::VectorXd u = basis[bi];
        Eigen::VectorXd w = basis[bj];
        double p = u.dot(omega * w);
        if (p < 0.0) {
            std::swap(u, w);
            p = -p;
        }
        const double root = std::sqrt(p);
        u /= root;
        w /= root;
        e_vecs.push_back(u);
        f_vecs.push_back(w);

        std::vector<Eigen::VectorXd> rest;
        rest.reserve(basis.size() - 2);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (k == bi || k == bj) continue;
            Eigen::VectorXd x = basis[k];
            x -= (u.dot(omega * x)) * w;
            x += (w.dot(omega * x)) * u;
            rest.push_back(std::move(x));
        }
        basis = std::move(rest);
    }

    RealMatrix darboux(d, d);
    for (int k = 0; k < m; ++k) {
        darboux.col(k) = e_vecs[static_cast<std::size_t>(k)];
        darboux.col(m + k) = f_vecs[static_cast<std::size_t>(k)];
    }
    // darboux^T Omega darboux = Omega_can, so T = darboux^{-1} satisfies
    // T^T Omega_can T = Omega.
    RealMatrix t = darboux.partialPivLu().inverse();
    const RealMatrix omega_can = canonical_form(m);
    const double residual = (t.transpose() * omega_can * t - omega).cwiseAbs().maxCoeff();
    return {std::move(t), SymplecticFrame::canonical(m, frame.tolerances()), residual};
}

}  // namespace skgeo::symplectic
