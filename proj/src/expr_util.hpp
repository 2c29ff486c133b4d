#pragma once

// Internal helpers shared by the rigid and local geometry modules: doubled
// (z, conj z) variable bookkeeping, pairing expressions, and expression
// matrix evaluation.  Not part of the public API.

#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skgeo/holo.hpp"
#include "skgeo/symplectic.hpp"

namespace skgeo::detail {

using holo::Complex;
using holo::Expr;
using holo::ExprPtr;
using symplectic::ComplexMatrix;
using symplectic::ComplexVector;
using symplectic::RealMatrix;

/// Variable remap sending z_k to its conjugate slot k + n.
inline std::vector<int> bar_map(int n) {
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) map[static_cast<std::size_t>(k)] = k + n;
    return map;
}

/// (z, conj z) evaluation point in the doubled variable space.
inline std::vector<Complex> doubled_point(const ComplexVector& z) {
    const auto n = static_cast<std::size_t>(z.size());
    std::vector<Complex> p(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        p[k] = z(static_cast<Eigen::Index>(k));
        p[k + n] = std::conj(z(static_cast<Eigen::Index>(k)));
    }
    return p;
}

/// prefactor * sum_ab Omega_ab v_a(z) conj(v_b)(zbar) as an expression over
/// the doubled variable space; this is the (anti)holomorphic realization of
/// prefactor * <v, conj v>.
inline ExprPtr omega_pairing_doubled(std::span<const ExprPtr> v, const RealMatrix& omega,
                                     int n, Complex prefactor) {
    const auto map = bar_map(n);
    std::vector<ExprPtr> vbar;
    vbar.reserve(v.size());
    for (const auto& component : v) vbar.push_back(holo::conjugated(component, map));
    ExprPtr acc = Expr::zero();
    for (Eigen::Index a = 0; a < omega.rows(); ++a)
        for (Eigen::Index b = 0; b < omega.cols(); ++b) {
            if (omega(a, b) == 0.0) continue;
            acc = acc + Expr::constant(prefactor * omega(a, b)) *
                            v[static_cast<std::size_t>(a)] * vbar[static_cast<std::size_t>(b)];
        }
    return acc;
}

inline ComplexVector eval_vector(std::span<const ExprPtr> v, std::span<const Complex> point) {
    ComplexVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k)
        out(static_cast<Eigen::Index>(k)) = holo::eval(v[k], point);
    return out;
}

/// num * den^{-1} with an SVD condition check; throws DegeneracyError naming
/// the smallest singular value when den is numerically singular.
inline ComplexMatrix right_divide(const ComplexMatrix& num, const ComplexMatrix& den,
                                  double condition_limit, const std::string& what) {
    Eigen::JacobiSVD<ComplexMatrix> svd(den);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin == 0.0 || smax / smin > condition_limit)
        throw DegeneracyError(what + " is numerically singular (smallest singular value " +
                                  std::to_string(smin) + ")",
                              smin);
    return den.transpose().partialPivLu().solve(num.transpose()).transpose();
}

/// Condition number (2-norm) of a square complex matrix.
inline double condition_number(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

/// Real part of a value that must be real up to roundoff.
inline double real_checked(Complex value, const std::string& what) {
    const double scale = std::max(1.0, std::abs(value));
    if (std::abs(value.imag()) > 1e-9 * scale)
        throw Error(what + " evaluated to a non-real value (imaginary part " +
                    std::to_string(value.imag()) + ")");
    return value.real();
}

}  // namespace skgeo::detail
