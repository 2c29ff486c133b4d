#pragma once

// Electromagnetic duality on pointwise field-strength data: (anti)self-dual
// decomposition, the dual tensor G_{+I} = N_{IJ} F^{+J}, and the symplectic
// rotation of (F^+, G_+) pairs.
//
// Conventions, fixed once for the whole module: spacetime metric
// diag(+1,-1,-1,-1) and Levi-Civita epsilon_{0123} = i.  With an imaginary
// epsilon the Hodge dual squares to +1 on 2-forms, so F^± are honest
// eigenprojections and conj(F^+) = F^- for real F.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "skgeo/errors.hpp"
#include "skgeo/symplectic.hpp"

namespace skgeo::maxwell {

using Complex = std::complex<double>;
using RealTensor = Eigen::Matrix4d;
using ComplexTensor = Eigen::Matrix4cd;

struct DualityConventions {
    static constexpr Complex epsilon0123{0.0, 1.0};
    static constexpr std::array<double, 4> metric{+1.0, -1.0, -1.0, -1.0};
};

/// A set of m real antisymmetric field strengths at a point.
class FieldStrengthSet {
public:
    explicit FieldStrengthSet(std::vector<RealTensor> tensors, double antisym_tol = 1e-14);

    int count() const { return static_cast<int>(tensors_.size()); }
    const std::vector<RealTensor>& tensors() const noexcept { return tensors_; }

private:
    std::vector<RealTensor> tensors_;
};

/// Hodge dual (*F)_{mu nu} = 1/2 eps_{mu nu rho sigma} F^{rho sigma}
/// with indices raised by the fixed metric.
ComplexTensor hodge_dual(const ComplexTensor& f);

struct SelfDualSplit {
    ComplexTensor plus;
    ComplexTensor minus;
};

/// F = F^+ + F^- with *F^± = ±F^±.  Throws on non-antisymmetric input.
SelfDualSplit selfdual_split(const ComplexTensor& f, double antisym_tol = 1e-14);
inline SelfDualSplit selfdual_split(const RealTensor& f, double antisym_tol = 1e-14) {
    return selfdual_split(f.cast<Complex>().eval(), antisym_tol);
}

/// G_{+I} = N_{IJ} F^{+J}, componentwise in (mu, nu).
std::vector<ComplexTensor> compute_g(const symplectic::KineticMatrix& n,
                                     const std::vector<ComplexTensor>& fplus);

/// A (F^+, G_+) pair stacked as a symplectic 2m-vector per tensor component.
struct FieldPair {
    std::vector<ComplexTensor> fplus;
    std::vector<ComplexTensor> gplus;
};

/// Apply the duality rotation blockwise.  If gplus = N fplus on input, then
/// on output gplus = N~ fplus with N~ = act_on_kinetic(s, N).
FieldPair transform_pair(const symplectic::SymplecticMatrix& s, const FieldPair& pair);

}  // namespace skgeo::maxwell
