#include "skgeo/local.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "expr_util.hpp"

namespace skgeo::local {

using detail::doubled_point;
using detail::eval_vector;
using holo::Expr;

HomogeneityReport check_homogeneity(const ExprPtr& f, int var_count, int points,
                                    std::uint64_t seed) {
    if (var_count < 1) throw DimensionError("homogeneity check needs at least one variable");
    std::vector<ExprPtr> grad;
    grad.reserve(static_cast<std::size_t>(var_count));
    for (int k = 0; k < var_count; ++k) grad.push_back(holo::diff(f, k));

    std::mt19937_64 gen(seed);
    auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

    HomogeneityReport report;
    int produced = 0;
    int attempts = 0;
    while (produced < points && attempts < 50 * points) {
        ++attempts;
        std::vector<Complex> x(static_cast<std::size_t>(var_count));
        for (auto& c : x) c = std::polar(0.6 + 0.9 * unit(), 6.283185307179586 * unit());
        try {
            Complex euler(0, 0);
            for (int k = 0; k < var_count; ++k)
                euler += x[static_cast<std::size_t>(k)] * holo::eval(grad[static_cast<std::size_t>(k)], x);
            const Complex value = holo::eval(f, x);
            const double residual = std::abs(euler - 2.0 * value) / std::max(1.0, std::abs(value));
            report.max_relative_residual = std::max(report.max_relative_residual, residual);
            ++produced;
        } catch (const EvalError&) {
            continue;  // denominator vanished; resample
        }
    }
    report.points_checked = produced;
    if (produced < points)
        throw DomainError("could not sample enough nonsingular points for the homogeneity check");
    return report;
}

PrepotentialModel::PrepotentialModel(ExprPtr prepotential, std::vector<ExprPtr> coords,
                                     ComplexVector base_point)
    : f_(std::move(prepotential)), coords_(std::move(coords)), base_(std::move(base_point)) {
    if (coords_.size() < 2)
        throw DimensionError("local model needs n+1 >= 2 ambient coordinates");
    const int m = static_cast<int>(coords_.size());
    const int n = m - 1;
    if (f_->arity() > m)
        throw DimensionError("prepotential references more than n+1 ambient coordinates");
    for (const auto& c : coords_)
        if (c->arity() > n) throw DimensionError("parametrization references unknown coordinate");
    if (base_.size() != n) throw DimensionError("base point has wrong length");

    const auto report = check_homogeneity(f_, m);
    if (!report.homogeneous())
        throw Error("prepotential is not homogeneous of degree 2 (Euler residual " +
                    std::to_string(report.max_relative_residual) + ")");

    grad_z_.reserve(coords_.size());
    for (int i = 0; i < m; ++i) grad_z_.push_back(holo::substitute(holo::diff(f_, i), coords_));
}

SectionModel::SectionModel(SymplecticFrame frame, std::vector<ExprPtr> section,
                           ComplexVector base_point)
    : frame_(std::move(frame)), v_(std::move(section)), base_(std::move(base_point)) {
    const int n = this->n();
    if (frame_.m() < 2) throw DimensionError("local section needs frame dimension 2(n+1) >= 4");
    if (static_cast<int>(v_.size()) != frame_.dim())
        throw DimensionError("section must have 2(n+1) components");
    for (const auto& c : v_)
        if (c->arity() > n) throw DimensionError("section component references unknown coordinate");
    if (base_.size() != n) throw DimensionError("base point has wrong length");

    y_ = detail::omega_pairing_doubled(v_, frame_.omega(), n, Complex(0, -1));
    y_d_.reserve(static_cast<std::size_t>(n));
    y_ddb_.resize(static_cast<std::size_t>(n));
    v_d_.resize(static_cast<std::size_t>(n));
    for (int alpha = 0; alpha < n; ++alpha) {
        y_d_.push_back(holo::diff(y_, alpha));
        auto& hrow = y_ddb_[static_cast<std::size_t>(alpha)];
        hrow.reserve(static_cast<std::size_t>(n));
        for (int beta = 0; beta < n; ++beta)
            hrow.push_back(holo::diff(y_d_.back(), n + beta));
        auto& row = v_d_[static_cast<std::size_t>(alpha)];
        row.reserve(v_.size());
        for (const auto& c : v_) row.push_back(holo::diff(c, alpha));
    }

    const double y0 = exp_minus_kahler(base_);
    if (!(y0 > 0.0))
        throw DomainError("base point lies outside the positivity domain (e^{-K} = " +
                          std::to_string(y0) + ")");
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

double SectionModel::exp_minus_kahler(const ComplexVector& z) const {
    if (z.size() != n()) throw DimensionError("point has wrong length");
    return detail::real_checked(holo::eval(y_, doubled_point(z)), "e^{-K}");
}

ComplexVector SectionModel::kahler_gradient(const ComplexVector& z) const {
    const auto point = doubled_point(z);
    const double y = detail::real_checked(holo::eval(y_, point), "e^{-K}");
    if (y == 0.0)
        throw DomainError("e^{-K} vanishes here; the Kaehler gradient is undefined");
    ComplexVector grad(n());
    for (int alpha = 0; alpha < n(); ++alpha)
        grad(alpha) = -holo::eval(y_d_[static_cast<std::size_t>(alpha)], point) / y;
    return grad;
}

ComplexVector SectionModel::covariant_section_derivative(int alpha, const ComplexVector& z) const {
    const ComplexVector dk = kahler_gradient(z);
    return derivative_value(alpha, z) + dk(alpha) * value(z);
}

SectionModel build_section(const PrepotentialModel& model) {
    std::vector<ExprPtr> v = model.coords();
    for (const auto& fi : model.gradient_in_z()) v.push_back(fi);
    return SectionModel(SymplecticFrame::canonical(model.n() + 1), std::move(v),
                        model.base_point());
}

namespace {

double positive_y(const SectionModel& s, const ComplexVector& z) {
    const double y = s.exp_minus_kahler(z);
    if (!(y > 0.0))
        throw DomainError("point outside the positivity domain (e^{-K} = " +
                          std::to_string(y) + ")");
    return y;
}

}  // namespace

double kahler(const SectionModel& s, const ComplexVector& z) {
    return -std::log(positive_y(s, z));
}

ComplexMatrix metric(const SectionModel& s, const ComplexVector& z) {
    const double y = positive_y(s, z);
    const auto point = doubled_point(z);
    const int n = s.n();
    ComplexVector dy(n), dyb(n);
    for (int a = 0; a < n; ++a) {
        dy(a) = holo::eval(s.y_d_[static_cast<std::size_t>(a)], point);
        // K is real: d_betabar Y = conj(d_beta Y) at (z, conj z)
        dyb(a) = std::conj(dy(a));
    }
    ComplexMatrix g(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Complex yab =
                holo::eval(s.y_ddb_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], point);
            g(a, b) = (dy(a) * dyb(b) - y * yab) / (y * y);
        }
    return g;
}

GaugeFixed gauge_fix(const SectionModel& s, const ComplexVector& z) {
    const double y = positive_y(s, z);
    const double k = -std::log(y);
    GaugeFixed out;
    out.kahler = k;
    out.section = std::exp(0.5 * k) * s.value(z);
    const Complex norm = symplectic::inner(out.section, out.section.conjugate(), s.frame());
    if (std::abs(norm - Complex(0, 1)) > 1e-10)
        throw Error("gauge fixing failed: <V, conj V> = " + holo::format_complex(norm, 6));
    return out;
}

ComplexVector covariant_derivative(const SectionModel& s, const ComplexVector& z, int alpha,
                                   DerivativeTarget target) {
    const double y = positive_y(s, z);
    const ComplexVector dv = s.covariant_section_derivative(alpha, z);
    if (target == DerivativeTarget::HolomorphicSection) return dv;
    return std::exp(-0.5 * std::log(y)) * dv;  // e^{K/2} D_alpha v
}

ConstraintResiduals constraint_check(const SectionModel& s, const ComplexVector& z) {
    const int n = s.n();
    std::vector<ComplexVector> dv;
    dv.reserve(static_cast<std::size_t>(n));
    for (int alpha = 0; alpha < n; ++alpha) dv.push_back(s.covariant_section_derivative(alpha, z));
    const ComplexVector v = s.value(z);

    ConstraintResiduals out{0.0, 0.0};
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b)
            out.derivative_pairing =
                std::max(out.derivative_pairing,
                         std::abs(symplectic::inner(dv[static_cast<std::size_t>(a)],
                                                    dv[static_cast<std::size_t>(b)], s.frame())));
        out.section_pairing =
            std::max(out.section_pairing,
                     std::abs(symplectic::inner(dv[static_cast<std::size_t>(a)], v, s.frame())));
    }
    return out;
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

namespace {

// Split a canonical-frame section value into upper (Z^I) and lower (F_I).
struct SplitSection {
    ComplexVector upper;
    ComplexVector lower;
};

SplitSection split(const ComplexVector& full, int m) {
    return {full.head(m), full.tail(m)};
}

}  // namespace

KineticMatrix kinetic(const SectionModel& s, const ComplexVector& z) {
    if (!s.frame().is_canonical()) return kinetic(canonicalized(s), z);
    const int m = s.vector_count();
    const int n = s.n();

    const auto v = split(s.value(z), m);
    ComplexMatrix denom(m, m), numer(m, m);
    denom.col(0) = v.upper;
    numer.col(0) = v.lower;
    for (int alpha = 0; alpha < n; ++alpha) {
        // D_abar of the conjugate section is the conjugate of D_alpha v.
        const auto dbar = split(s.covariant_section_derivative(alpha, z).conjugate(), m);
        denom.col(1 + alpha) = dbar.upper;
        numer.col(1 + alpha) = dbar.lower;
    }

    Eigen::JacobiSVD<ComplexMatrix> svd(denom);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin == 0.0 || smax / smin > s.frame().tolerances().condition_limit) {
        const double y = s.exp_minus_kahler(z);
        std::string verdict;
        if (!(y > 0.0)) {
            verdict = "outside the positivity domain (e^{-K} <= 0)";
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(metric(s, z).real());
            verdict = es.eigenvalues().minCoeff() > 0.0
                          ? "inside the positivity domain (metric positive definite)"
                          : "metric not positive definite here";
        }
        throw DegeneracyError("kinetic-matrix denominator (Z | D_abar conj Z) is singular "
                              "(smallest singular value " +
                                  std::to_string(smin) + "); point is " + verdict,
                              smin);
    }

    ComplexMatrix result =
        denom.transpose().partialPivLu().solve(numer.transpose()).transpose();
    std::vector<Complex> point(z.data(), z.data() + z.size());
    return KineticMatrix::raw(std::move(result), std::move(point));
}

ExistenceResult prepotential_exists(const SectionModel& s, const ComplexVector& z,
                                    double condition_limit) {
    if (!s.frame().is_canonical()) return prepotential_exists(canonicalized(s), z, condition_limit);
    const int m = s.vector_count();
    ComplexMatrix p(m, m);
    p.col(0) = s.value(z).head(m);
    for (int alpha = 0; alpha < s.n(); ++alpha)
        p.col(1 + alpha) = s.covariant_section_derivative(alpha, z).head(m);
    const double cond = detail::condition_number(p);
    return {cond < condition_limit, cond};
}

ComplexVector prepotential_gradient(const SectionModel& s, const ComplexVector& z) {
    if (!s.frame().is_canonical()) return prepotential_gradient(canonicalized(s), z);
    const int m = s.vector_count();
    const int n = s.n();

    const auto existence = prepotential_exists(s, z);
    if (!existence.exists)
        throw DegeneracyError("no prepotential exists in this frame at the sample point "
                              "(condition number " +
                                  std::to_string(existence.condition_number) + ")",
                              existence.condition_number);

    // F = (1/2) Z^I F_I; solve (Z | d_alpha Z)^T q = (2F, d_alpha F) for the
    // ambient gradient q = dF/dZ^I.  All pairings are plain sums, no
    // conjugation.
    const auto v = split(s.value(z), m);
    const Complex f_value = 0.5 * v.upper.cwiseProduct(v.lower).sum();

    ComplexMatrix p(m, m);
    p.col(0) = v.upper;
    ComplexVector rhs(m);
    rhs(0) = 2.0 * f_value;
    for (int alpha = 0; alpha < n; ++alpha) {
        const auto dv = split(s.derivative_value(alpha, z), m);
        p.col(1 + alpha) = dv.upper;
        rhs(1 + alpha) = 0.5 * (dv.upper.cwiseProduct(v.lower).sum() +
                                v.upper.cwiseProduct(dv.lower).sum());
    }
    return p.transpose().partialPivLu().solve(rhs);
}

Reconstruction reconstruct_prepotential(const SectionModel& s,
                                        const std::vector<ComplexVector>& samples) {
    if (!s.frame().is_canonical()) return reconstruct_prepotential(canonicalized(s), samples);
    if (samples.empty()) throw DimensionError("reconstruction needs at least one sample point");
    const int m = s.vector_count();

    Reconstruction out;
    ExprPtr acc = Expr::zero();
    for (int i = 0; i < m; ++i)
        acc = acc + s.section()[static_cast<std::size_t>(i)] *
                        s.section()[static_cast<std::size_t>(i + m)];
    out.prepotential_on_section = Expr::constant(Complex(0.5, 0)) * acc;

    out.max_gradient_residual = 0.0;
    out.gradients.reserve(samples.size());
    for (const auto& z : samples) {
        const ComplexVector q = prepotential_gradient(s, z);
        const ComplexVector lower = s.value(z).tail(m);
        out.max_gradient_residual =
            std::max(out.max_gradient_residual, (q - lower).cwiseAbs().maxCoeff());
        out.gradients.push_back(q);
    }
    return out;
}

SectionModel apply_symplectic(const SectionModel& s, const SymplecticMatrix& rotation,
                              ExprPtr scale) {
    const int d = s.frame().dim();
    if (rotation.matrix().rows() != d)
        throw DimensionError("rotation does not match section dimension");
    const auto membership = symplectic::is_symplectic(rotation.matrix(), s.frame(),
                                                      s.frame().tolerances().membership);
    if (!membership.ok)
        throw Error("matrix is not symplectic for this frame (residual " +
                    std::to_string(membership.residual) + ")");
    if (scale && scale->arity() > s.n())
        throw DimensionError("Kaehler factor references unknown coordinate");

    std::vector<ExprPtr> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        ExprPtr acc = Expr::zero();
        for (int b = 0; b < d; ++b) {
            const double coeff = rotation.matrix()(a, b);
            if (coeff == 0.0) continue;
            acc = acc + Expr::constant(Complex(coeff, 0)) * s.section()[static_cast<std::size_t>(b)];
        }
        if (scale) acc = scale * acc;
        out.push_back(std::move(acc));
    }
    return SectionModel(s.frame(), std::move(out), s.base_point());
}

Eigen::MatrixXd cone_metric(const SectionModel& s, const ConePoint& p) {
    if (!(p.r > 0.0)) throw DomainError("cone radius must be positive");
    const int n = s.n();
    if (p.z.size() != n) throw DimensionError("cone point has wrong length");

    const ComplexMatrix g = metric(s, p.z);  // enforces the positivity domain
    const ComplexVector dk = s.kahler_gradient(p.z);
    const double r2 = p.r * p.r;

    const int d = 2 * n + 2;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
    out(0, 0) = 1.0;  // dr^2; no dr cross-terms by construction

    // scalar block: r^2 (Re g (dx dx + dy dy) + Im g (dx dy - dy dx))
    const Eigen::MatrixXd re = g.real();
    const Eigen::MatrixXd im = g.imag();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            out(2 + a, 2 + b) += r2 * re(a, b);
            out(2 + n + a, 2 + n + b) += r2 * re(a, b);
            out(2 + a, 2 + n + b) += r2 * im(a, b);
            out(2 + n + b, 2 + a) += r2 * im(a, b);
        }

    if (p.a_mode == ConnectionMode::Zero) {
        // one-form dtheta + i(dK dz - dbarK dzbar) = dtheta - 2b dx - 2a dy
        // with d_alpha K = a_alpha + i b_alpha
        Eigen::VectorXd coeff = Eigen::VectorXd::Zero(d);
        coeff(1) = 1.0;
        for (int a = 0; a < n; ++a) {
            coeff(2 + a) = -2.0 * dk(a).imag();
            coeff(2 + n + a) = -2.0 * dk(a).real();
        }
        out += (r2 / 18.0) * coeff * coeff.transpose();
    }
    // Composite mode: the connection cancels the bracket, no middle term.

    return out;
}

}  // namespace skgeo::local
