#pragma once

// Local (supergravity) special Kaehler geometry for n physical multiplets and
// m = n+1 vectors.  A PrepotentialModel is a degree-2 homogeneous F(X^0..X^n)
// with a holomorphic parametrization Z^I(z); a SectionModel is a holomorphic
// symplectic section v(z) of length 2(n+1) with e^{-K} = -i <v, conj v>.
//
// Positivity domain: operations that need K itself (kahler, metric,
// gauge_fix, covariant_derivative, cone_metric) require e^{-K} > 0 at the
// point and throw DomainError otherwise.  Frame-algebraic operations
// (kinetic, constraint_check, prepotential_exists, reconstruction) only need
// e^{-K} != 0, so they remain usable on diagnostic points just outside the
// domain.
//
// Models are immutable; all point evaluations are pure.

#include <cstdint>
#include <vector>

#include "skgeo/holo.hpp"
#include "skgeo/symplectic.hpp"

namespace skgeo::local {

using holo::Complex;
using holo::ExprPtr;
using symplectic::ComplexMatrix;
using symplectic::ComplexVector;
using symplectic::KineticMatrix;
using symplectic::SymplecticFrame;
using symplectic::SymplecticMatrix;

struct HomogeneityReport {
    double max_relative_residual = 0.0;
    int points_checked = 0;
    bool homogeneous(double tol = 1e-10) const { return max_relative_residual < tol; }
};

/// Euler residual |X^I F_I(X) - 2 F(X)| / max(1, |F|) sampled at random
/// points; zero (to roundoff) iff F is homogeneous of degree 2.
HomogeneityReport check_homogeneity(const ExprPtr& f, int var_count, int points = 24,
                                    std::uint64_t seed = 0x5ca1ab1eull);

/// Degree-2 homogeneous prepotential F(X^0..X^n) with parametrization
/// Z^I(z^1..z^n); homogeneity is enforced at construction.
class PrepotentialModel {
public:
    PrepotentialModel(ExprPtr prepotential, std::vector<ExprPtr> coords,
                      ComplexVector base_point);

    int n() const noexcept { return static_cast<int>(coords_.size()) - 1; }
    const ExprPtr& prepotential() const noexcept { return f_; }
    const std::vector<ExprPtr>& coords() const noexcept { return coords_; }
    const ComplexVector& base_point() const noexcept { return base_; }

    /// F_I(Z(z)) as expressions in z.
    const std::vector<ExprPtr>& gradient_in_z() const noexcept { return grad_z_; }

private:
    ExprPtr f_;
    std::vector<ExprPtr> coords_;
    std::vector<ExprPtr> grad_z_;
    ComplexVector base_;
};

/// Holomorphic symplectic section v(z); e^{-K} = -i <v, conj v> must be
/// positive at the base point.
class SectionModel {
public:
    SectionModel(SymplecticFrame frame, std::vector<ExprPtr> section, ComplexVector base_point);

    int n() const noexcept { return frame_.m() - 1; }
    int vector_count() const noexcept { return frame_.m(); }  // m = n + 1
    const SymplecticFrame& frame() const noexcept { return frame_; }
    const std::vector<ExprPtr>& section() const noexcept { return v_; }
    const ComplexVector& base_point() const noexcept { return base_; }

    ComplexVector value(const ComplexVector& z) const;
    ComplexVector derivative_value(int alpha, const ComplexVector& z) const;

    /// e^{-K}; real by construction, sign tells the positivity verdict.
    double exp_minus_kahler(const ComplexVector& z) const;

    /// d_alpha e^{-K} over e^{-K} data: the holomorphic Kaehler gradient
    /// d_alpha K = -(d_alpha Y)/Y with Y = e^{-K}.  Lenient: needs Y != 0.
    ComplexVector kahler_gradient(const ComplexVector& z) const;

    /// Holomorphic covariant derivative D_alpha v = d_alpha v + (d_alpha K) v.
    /// Lenient: needs Y != 0 only.
    ComplexVector covariant_section_derivative(int alpha, const ComplexVector& z) const;

private:
    SymplecticFrame frame_;
    std::vector<ExprPtr> v_;
    ComplexVector base_;
    ExprPtr y_;                                // e^{-K} over (z, conj z) slots
    std::vector<ExprPtr> y_d_;                 // d_alpha Y
    std::vector<std::vector<ExprPtr>> y_ddb_;  // d_alpha d_betabar Y
    std::vector<std::vector<ExprPtr>> v_d_;    // d_alpha v components

    friend ComplexMatrix metric(const SectionModel&, const ComplexVector&);
};

/// Definition-1 -> Definition-2: v = (Z^I(z), F_I(Z(z))), canonical frame.
SectionModel build_section(const PrepotentialModel& model);

/// Bring a section to the canonical frame via the Darboux change of basis
/// (no-op when already canonical).  K, the metric, and the kinetic matrix are
/// unchanged; operations that split upper/lower components use this
/// automatically.
SectionModel canonicalized(const SectionModel& s);

/// K = -log(-i <v, conj v>); DomainError outside the positivity domain.
double kahler(const SectionModel& s, const ComplexVector& z);

/// g_{alpha betabar} = d_alpha d_betabar K, Hermitian n x n.
ComplexMatrix metric(const SectionModel& s, const ComplexVector& z);

/// Dilatational gauge: V = e^{K/2} v with <V, conj V> = i.
struct GaugeFixed {
    ComplexVector section;  // V at the point
    double kahler;          // K at the point
};
GaugeFixed gauge_fix(const SectionModel& s, const ComplexVector& z);

enum class DerivativeTarget {
    HolomorphicSection,  // weight 1: D_a v = d_a v + (d_a K) v
    GaugeFixedSection,   // weight 1/2: D_a V = d_a V + (1/2)(d_a K) V = e^{K/2} D_a v
};

ComplexVector covariant_derivative(const SectionModel& s, const ComplexVector& z, int alpha,
                                   DerivativeTarget target);

/// Residuals of the two defining constraints: max |<D_a v, D_b v>| (empty,
/// hence zero, for n = 1) and max |<D_a v, v>|.
struct ConstraintResiduals {
    double derivative_pairing;
    double section_pairing;
};
ConstraintResiduals constraint_check(const SectionModel& s, const ComplexVector& z);

/// N = (F_I | D_abar conj F_I) (Z^J | D_abar conj Z^J)^{-1}.  Throws
/// DegeneracyError (with smallest singular value and the positivity verdict)
/// when the denominator is numerically singular.
KineticMatrix kinetic(const SectionModel& s, const ComplexVector& z);

/// A prepotential exists in this frame iff (Z^I | D_alpha Z^I) is invertible.
struct ExistenceResult {
    bool exists;
    double condition_number;
};
ExistenceResult prepotential_exists(const SectionModel& s, const ComplexVector& z,
                                    double condition_limit = 1e10);

/// Degree-2 homogeneity gives F = (1/2) Z^I F_I on the section; the gradient
/// dF/dZ^I at a point is recovered by solving the (Z | d_alpha Z) system.
struct Reconstruction {
    ExprPtr prepotential_on_section;          // (1/2) Z^I F_I in the z chart
    double max_gradient_residual;             // max |dF/dZ^I - F_I| over samples
    std::vector<ComplexVector> gradients;     // solved dF/dZ^I per sample
};
Reconstruction reconstruct_prepotential(const SectionModel& s,
                                        const std::vector<ComplexVector>& samples);

/// Solved dF/dZ^I at one point (the pointwise reconstruction step).
ComplexVector prepotential_gradient(const SectionModel& s, const ComplexVector& z);

/// v -> scale(z) * S * v.  `scale` is the Kaehler rescaling e^{f(z)} given
/// directly as a rational expression (constant f via a constant scale); K
/// shifts by -log|scale|^2 and the metric is unchanged.
SectionModel apply_symplectic(const SectionModel& s, const SymplecticMatrix& rotation,
                              ExprPtr scale = nullptr);

/// Superconformal cone over the section, in real coordinates
/// (r, theta, Re z^1..Re z^n, Im z^1..Im z^n):
///   ds^2 = dr^2 + (r^2/18) [A + dtheta + i(dK dz - dbarK dzbar)]^2
///          + r^2 g_{alpha betabar} dz^alpha dzbar^betabar ,
/// with A = 0 in Zero mode (Sasakian cone) and A cancelling the bracket in
/// Composite mode.
enum class ConnectionMode { Zero, Composite };

struct ConePoint {
    double r;
    double theta;
    ComplexVector z;
    ConnectionMode a_mode = ConnectionMode::Zero;
};

Eigen::MatrixXd cone_metric(const SectionModel& s, const ConePoint& p);

}  // namespace skgeo::local
