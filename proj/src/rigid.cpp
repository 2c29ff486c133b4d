#include "skgeo/rigid.hpp"

#include <cmath>
#include <utility>

#include "expr_util.hpp"

namespace skgeo::rigid {

using detail::doubled_point;
using detail::eval_vector;
using holo::Expr;

PrepotentialModel::PrepotentialModel(ExprPtr prepotential, std::vector<ExprPtr> coords,
                                     ComplexVector base_point)
    : f_(std::move(prepotential)), coords_(std::move(coords)), base_(std::move(base_point)) {
    const int n = static_cast<int>(coords_.size());
    if (n == 0) throw DimensionError("model needs at least one multiplet");
    if (f_->arity() > n)
        throw DimensionError("prepotential references more than n special coordinates");
    for (const auto& c : coords_)
        if (c->arity() > n) throw DimensionError("chart function references unknown coordinate");
    if (base_.size() != n) throw DimensionError("base point has wrong length");

    grad_z_.reserve(coords_.size());
    for (int a = 0; a < n; ++a) grad_z_.push_back(holo::substitute(holo::diff(f_, a), coords_));

    const double cond = detail::condition_number(coord_jacobian(base_));
    if (cond > 1e12)
        throw DegeneracyError("coordinate Jacobian is singular at the base point", 1.0 / cond);
}

ComplexMatrix PrepotentialModel::coord_jacobian(const ComplexVector& z) const {
    const int n = this->n();
    std::vector<Complex> point(z.data(), z.data() + z.size());
    ComplexMatrix jac(n, n);
    for (int a = 0; a < n; ++a)
        for (int alpha = 0; alpha < n; ++alpha)
            jac(a, alpha) = holo::eval(holo::diff(coords_[static_cast<std::size_t>(a)], alpha),
                                       point);
    return jac;
}

double PrepotentialModel::kahler_direct(const ComplexVector& z) const {
    std::vector<Complex> point(z.data(), z.data() + z.size());
    Complex pairing(0, 0);  // X^A conj(F_A); K = i (w - conj w) = -2 Im w
    for (int a = 0; a < n(); ++a)
        pairing += holo::eval(coords_[static_cast<std::size_t>(a)], point) *
                   std::conj(holo::eval(grad_z_[static_cast<std::size_t>(a)], point));
    return -2.0 * pairing.imag();
}

SectionModel::SectionModel(SymplecticFrame frame, std::vector<ExprPtr> section,
                           ComplexVector base_point)
    : frame_(std::move(frame)), v_(std::move(section)), base_(std::move(base_point)) {
    const int n = frame_.m();
    if (static_cast<int>(v_.size()) != frame_.dim())
        throw DimensionError("section must have 2n components");
    for (const auto& c : v_)
        if (c->arity() > n) throw DimensionError("section component references unknown coordinate");
    if (base_.size() != n) throw DimensionError("base point has wrong length");

    degenerate_lower_ = frame_.is_canonical();
    for (int a = n; a < 2 * n && degenerate_lower_; ++a)
        degenerate_lower_ = v_[static_cast<std::size_t>(a)]->is_zero();

    kk_ = detail::omega_pairing_doubled(v_, frame_.omega(), n, Complex(0, 1));

    v_d_.resize(static_cast<std::size_t>(n));
    kk_dd_.resize(static_cast<std::size_t>(n));
    for (int alpha = 0; alpha < n; ++alpha) {
        auto& row = v_d_[static_cast<std::size_t>(alpha)];
        row.reserve(v_.size());
        for (const auto& c : v_) row.push_back(holo::diff(c, alpha));
        const ExprPtr dk = holo::diff(kk_, alpha);
        auto& hrow = kk_dd_[static_cast<std::size_t>(alpha)];
        hrow.reserve(static_cast<std::size_t>(n));
        for (int beta = 0; beta < n; ++beta) hrow.push_back(holo::diff(dk, n + beta));
    }
}

ComplexVector SectionModel::value(const ComplexVector& z) const {
    std::vector<Complex> point(z.data(), z.data() + z.size());
    return eval_vector(v_, point);
}

ComplexVector SectionModel::derivative_value(int alpha, const ComplexVector& z) const {
    if (alpha < 0 || alpha >= n()) throw DimensionError("coordinate index out of range");
    std::vector<Complex> point(z.data(), z.data() + z.size());
    return eval_vector(v_d_[static_cast<std::size_t>(alpha)], point);
}

SectionModel make_section(const PrepotentialModel& model) {
    std::vector<ExprPtr> v = model.coords();
    for (const auto& fa : model.gradient_in_z()) v.push_back(fa);
    return SectionModel(SymplecticFrame::canonical(model.n()), std::move(v),
                        model.base_point());
}

double kahler(const SectionModel& s, const ComplexVector& z) {
    const Complex value = holo::eval(s.kahler_expr(), doubled_point(z));
    return detail::real_checked(value, "rigid Kaehler potential");
}

ComplexMatrix metric(const SectionModel& s, const ComplexVector& z) {
    const int n = s.n();
    const auto point = doubled_point(z);
    ComplexMatrix g(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g(a, b) = holo::eval(s.kahler_hessian_expr(a, b), point);
    return g;
}

SectionModel canonicalized(const SectionModel& s) {
    if (s.frame().is_canonical()) return s;
    const auto change = symplectic::canonicalize(s.frame());
    const int d = s.frame().dim();
    std::vector<ExprPtr> rotated;
    rotated.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        ExprPtr acc = Expr::zero();
        for (int b = 0; b < d; ++b) {
            const double coeff = change.transform(a, b);
            if (coeff == 0.0) continue;
            acc = acc + Expr::constant(Complex(coeff, 0)) * s.section()[static_cast<std::size_t>(b)];
        }
        rotated.push_back(std::move(acc));
    }
    return SectionModel(change.canonical_frame, std::move(rotated), s.base_point());
}

KineticMatrix kinetic(const SectionModel& s, const ComplexVector& z) {
    const SectionModel canon = canonicalized(s);
    const int n = canon.n();
    ComplexMatrix jac_x(n, n), jac_f(n, n);
    for (int alpha = 0; alpha < n; ++alpha) {
        const ComplexVector dv = canon.derivative_value(alpha, z);
        jac_x.col(alpha) = dv.head(n);
        jac_f.col(alpha) = dv.tail(n);
    }
    ComplexMatrix n_matrix =
        detail::right_divide(jac_f, jac_x, 1e12, "coordinate Jacobian e^A_alpha");
    std::vector<Complex> point(z.data(), z.data() + z.size());
    return KineticMatrix::raw(std::move(n_matrix), std::move(point));
}

ComplexMatrix constraint_matrix(const SectionModel& s, const ComplexVector& z) {
    const int n = s.n();
    std::vector<ComplexVector> dv;
    dv.reserve(static_cast<std::size_t>(n));
    for (int alpha = 0; alpha < n; ++alpha) dv.push_back(s.derivative_value(alpha, z));
    ComplexMatrix c(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            c(a, b) = symplectic::inner(dv[static_cast<std::size_t>(a)],
                                        dv[static_cast<std::size_t>(b)], s.frame());
    return c;
}

double constraint_residual(const SectionModel& s, const ComplexVector& z) {
    return constraint_matrix(s, z).cwiseAbs().maxCoeff();
}

SectionModel apply_transition(const SectionModel& s, const ChartTransition& t) {
    const int d = s.frame().dim();
    if (t.matrix.matrix().rows() != d)
        throw DimensionError("transition matrix does not match section dimension");
    if (t.shift.size() != d) throw DimensionError("transition shift has wrong length");
    const auto membership =
        symplectic::is_symplectic(t.matrix.matrix(), s.frame(), s.frame().tolerances().membership);
    if (!membership.ok)
        throw Error("transition matrix is not symplectic for this frame (residual " +
                    std::to_string(membership.residual) + ")");

    const Complex phase = std::exp(Complex(0, t.phase));
    std::vector<ExprPtr> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        ExprPtr acc = Expr::constant(t.shift(a));
        for (int b = 0; b < d; ++b) {
            const double coeff = t.matrix.matrix()(a, b);
            if (coeff == 0.0) continue;
            acc = acc + Expr::constant(phase * coeff) * s.section()[static_cast<std::size_t>(b)];
        }
        out.push_back(std::move(acc));
    }
    return SectionModel(s.frame(), std::move(out), s.base_point());
}

}  // namespace skgeo::rigid
