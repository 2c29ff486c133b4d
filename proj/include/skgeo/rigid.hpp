#pragma once

// Rigid special Kaehler geometry.  Two equivalent descriptions are
// implemented: a prepotential F(X) with a holomorphic chart X^A(z)
// (PrepotentialModel), and a holomorphic symplectic section V(z) of length 2n
// (SectionModel).  The Kaehler potential is K = i <V, conj V>; the scalar
// metric is its mixed Hessian, computed symbolically by treating conj z as an
// independent holomorphic variable block.
//
// Models are immutable; all point evaluations are pure.

#include <vector>

#include "skgeo/holo.hpp"
#include "skgeo/symplectic.hpp"

namespace skgeo::rigid {

using holo::Complex;
using holo::ExprPtr;
using symplectic::ComplexMatrix;
using symplectic::ComplexVector;
using symplectic::KineticMatrix;
using symplectic::SymplecticFrame;
using symplectic::SymplecticMatrix;

/// Prepotential description: F in variables X^1..X^n and a chart X^A(z)
/// whose Jacobian e^A_alpha = d_alpha X^A is invertible at the base point.
class PrepotentialModel {
public:
    PrepotentialModel(ExprPtr prepotential, std::vector<ExprPtr> coords,
                      ComplexVector base_point);

    int n() const noexcept { return static_cast<int>(coords_.size()); }
    const ExprPtr& prepotential() const noexcept { return f_; }
    const std::vector<ExprPtr>& coords() const noexcept { return coords_; }
    const ComplexVector& base_point() const noexcept { return base_; }

    /// F_A(X(z)), composed into the z chart.
    const std::vector<ExprPtr>& gradient_in_z() const noexcept { return grad_z_; }

    /// e^A_alpha at a point.
    ComplexMatrix coord_jacobian(const ComplexVector& z) const;

    /// Closed-form K = i (X^A conj(F_A) - F_A conj(X^A)).
    double kahler_direct(const ComplexVector& z) const;

private:
    ExprPtr f_;
    std::vector<ExprPtr> coords_;
    std::vector<ExprPtr> grad_z_;
    ComplexVector base_;
};

/// Section description: V(z) holomorphic with values in a 2n-dimensional
/// symplectic frame.
class SectionModel {
public:
    SectionModel(SymplecticFrame frame, std::vector<ExprPtr> section, ComplexVector base_point);

    int n() const noexcept { return frame_.m(); }
    const SymplecticFrame& frame() const noexcept { return frame_; }
    const std::vector<ExprPtr>& section() const noexcept { return v_; }
    const ComplexVector& base_point() const noexcept { return base_; }

    /// All lower components vanish identically (flagged: K is then constant
    /// zero and the geometry is degenerate).  Canonical-frame reading.
    bool degenerate_lower() const noexcept { return degenerate_lower_; }

    ComplexVector value(const ComplexVector& z) const;
    ComplexVector derivative_value(int alpha, const ComplexVector& z) const;

    /// K(z, conj z) as an expression over 2n variables (z, then conj-z slots).
    const ExprPtr& kahler_expr() const noexcept { return kk_; }
    const ExprPtr& kahler_hessian_expr(int alpha, int beta) const {
        return kk_dd_[static_cast<std::size_t>(alpha)][static_cast<std::size_t>(beta)];
    }

private:
    SymplecticFrame frame_;
    std::vector<ExprPtr> v_;
    ComplexVector base_;
    bool degenerate_lower_;
    ExprPtr kk_;  // i <V(z), conj V(conj z)>
    std::vector<std::vector<ExprPtr>> v_d_;    // d_alpha V components
    std::vector<std::vector<ExprPtr>> kk_dd_;  // d_alpha d_betabar K
};

/// Definition-1 -> Definition-2: V = (X^A(z), F_A(X(z))) over the canonical
/// frame.  The constraint <d_a V, d_b V> = 0 then holds automatically.
SectionModel make_section(const PrepotentialModel& model);

/// K = i <V, conj V>; real by construction.
double kahler(const SectionModel& s, const ComplexVector& z);

/// Scalar metric G_{alpha betabar} = d_alpha d_betabar K (Hermitian n x n).
ComplexMatrix metric(const SectionModel& s, const ComplexVector& z);

/// Vector kinetic matrix N_AB = (d_alpha F_A) e^alpha_B in general
/// coordinates; reduces to F_AB in special coordinates.  The section is
/// brought to the canonical frame first if necessary.
KineticMatrix kinetic(const SectionModel& s, const ComplexVector& z);

/// The antisymmetric pairing matrix <d_alpha V, d_beta V>; its largest entry
/// is the Definition-2 constraint residual (zero for prepotential sections).
ComplexMatrix constraint_matrix(const SectionModel& s, const ComplexVector& z);
double constraint_residual(const SectionModel& s, const ComplexVector& z);

/// Chart transition V -> e^{ic} M V + b.  K changes by a Kaehler
/// transformation only, so the metric is unchanged.
struct ChartTransition {
    double phase;            // c in e^{ic}
    SymplecticMatrix matrix; // M
    ComplexVector shift;     // b
};

SectionModel apply_transition(const SectionModel& s, const ChartTransition& t);

/// Bring a section to the canonical frame (no-op if already canonical).
SectionModel canonicalized(const SectionModel& s);

}  // namespace skgeo::rigid
