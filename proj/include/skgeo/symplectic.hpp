#pragma once

// Real symplectic linear algebra: the bilinear form Omega, Sp(2m,R)
// membership, the invariant inner product <v,w> = v^T Omega w, the
// fractional-linear action N -> (C + D N)(A + B N)^{-1} on kinetic matrices,
// and Darboux canonicalization of a general nondegenerate antisymmetric form.
//
// All types are immutable after construction and all operations are pure.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skgeo/errors.hpp"

namespace skgeo::symplectic {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Numerical thresholds, configurable per frame.
struct Tolerances {
    double antisymmetry = 1e-12;     // |Omega + Omega^T| bound
    double nondegeneracy = 1e-12;    // |det(Omega/scale)| lower bound
    double membership = 1e-10;       // construction-time S^T Omega S residual
    double operation = 1e-9;         // derived-quantity symmetry checks
    double condition_limit = 1e12;   // hard singularity threshold
};

/// Dimension 2m together with a real nondegenerate antisymmetric form.
class SymplecticFrame {
public:
    static SymplecticFrame canonical(int m, Tolerances tol = {});

    /// Validates antisymmetry and nondegeneracy of the given 2m x 2m form.
    static SymplecticFrame from_form(RealMatrix omega, Tolerances tol = {});

    int m() const noexcept { return m_; }
    int dim() const noexcept { return 2 * m_; }
    const RealMatrix& omega() const noexcept { return omega_; }
    const Tolerances& tolerances() const noexcept { return tol_; }

    /// Max-entry distance from the canonical form [[0,1],[-1,0]].
    double canonical_residual() const;
    bool is_canonical() const { return canonical_residual() <= tol_.membership; }

private:
    SymplecticFrame(int m, RealMatrix omega, Tolerances tol)
        : m_(m), omega_(std::move(omega)), tol_(tol) {}

    int m_;
    RealMatrix omega_;
    Tolerances tol_;
};

/// The canonical form [[0,1],[-1,0]] in dimension 2m.
RealMatrix canonical_form(int m);

/// Invariant inner product <v,w> = v^T Omega w (no conjugation).
Complex inner(const ComplexVector& v, const ComplexVector& w, const SymplecticFrame& frame);

struct MembershipResult {
    bool ok;
    double residual;  // max |S^T Omega S - Omega|
};

/// Test S^T Omega S = Omega; the residual is always reported.
MembershipResult is_symplectic(const RealMatrix& s, const SymplecticFrame& frame, double tol);

/// An element of Sp(2m,R); membership is validated at construction against
/// the frame's membership tolerance.
class SymplecticMatrix {
public:
    SymplecticMatrix(RealMatrix s, SymplecticFrame frame);

    const RealMatrix& matrix() const noexcept { return s_; }
    const SymplecticFrame& frame() const noexcept { return frame_; }
    double membership_residual() const noexcept { return residual_; }

    // The four m x m sub-blocks [[A,B],[C,D]].
    RealMatrix block_a() const { return s_.topLeftCorner(frame_.m(), frame_.m()); }
    RealMatrix block_b() const { return s_.topRightCorner(frame_.m(), frame_.m()); }
    RealMatrix block_c() const { return s_.bottomLeftCorner(frame_.m(), frame_.m()); }
    RealMatrix block_d() const { return s_.bottomRightCorner(frame_.m(), frame_.m()); }

    SymplecticMatrix inverse() const;

private:
    RealMatrix s_;
    SymplecticFrame frame_;
    double residual_;
};

/// Complex symmetric m x m vector-kinetic matrix at an evaluation point,
/// carrying its symmetry residual and the eigenvalues of its imaginary part.
class KineticMatrix {
public:
    /// Stores the matrix and records diagnostics without enforcing them.
    static KineticMatrix raw(ComplexMatrix n, std::vector<Complex> point);

    /// Enforces symmetry within sym_tol (default construction invariant).
    static KineticMatrix checked(ComplexMatrix n, std::vector<Complex> point,
                                 double sym_tol = 1e-10);

    int m() const { return static_cast<int>(n_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return n_; }
    const std::vector<Complex>& point() const noexcept { return point_; }

    double symmetry_residual() const noexcept { return symmetry_residual_; }

    /// Eigenvalues of Im N (ascending).
    const Eigen::VectorXd& im_eigenvalues() const noexcept { return im_eigenvalues_; }
    bool im_negative_definite() const { return im_eigenvalues_.maxCoeff() < 0.0; }

private:
    KineticMatrix(ComplexMatrix n, std::vector<Complex> point);

    ComplexMatrix n_;
    std::vector<Complex> point_;
    double symmetry_residual_;
    Eigen::VectorXd im_eigenvalues_;
};

/// Fractional-linear duality action N -> (C + D N)(A + B N)^{-1}.
/// Requires the canonical frame (the block split has no invariant meaning
/// otherwise) and throws DegeneracyError when A + B N is too ill-conditioned,
/// reporting its smallest singular value.
KineticMatrix act_on_kinetic(const SymplecticMatrix& s, const KineticMatrix& n);

struct Canonicalization {
    RealMatrix transform;             // T with T^T Omega_can T = Omega
    SymplecticFrame canonical_frame;  // target frame, canonical form
    double residual;                  // max |T^T Omega_can T - Omega|
};

/// Darboux/symplectic Gram-Schmidt change of basis bringing Omega to the
/// canonical form.  Pairings map as <v,w>_frame = <T v, T w>_canonical.
Canonicalization canonicalize(const SymplecticFrame& frame);

}  // namespace skgeo::symplectic
