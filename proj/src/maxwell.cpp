#include "skgeo/maxwell.hpp"

#include <cmath>

namespace skgeo::maxwell {

namespace {

// Sign of the permutation (a,b,c,d) of (0,1,2,3); 0 on repeats.
int perm_sign(int a, int b, int c, int d) {
    const int idx[4] = {a, b, c, d};
    int sign = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) sign = -sign;
        }
    return sign;
}

void require_antisymmetric(const ComplexTensor& f, double tol) {
    const double residual = (f + f.transpose()).cwiseAbs().maxCoeff();
    if (residual > tol)
        throw Error("field strength is not antisymmetric (residual " +
                    std::to_string(residual) + ")");
}

}  // namespace

FieldStrengthSet::FieldStrengthSet(std::vector<RealTensor> tensors, double antisym_tol)
    : tensors_(std::move(tensors)) {
    for (const auto& f : tensors_) require_antisymmetric(f.cast<Complex>(), antisym_tol);
}

ComplexTensor hodge_dual(const ComplexTensor& f) {
    // Raise both indices with the diagonal metric, then contract with epsilon.
    ComplexTensor raised;
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
            raised(r, s) = DualityConventions::metric[static_cast<std::size_t>(r)] *
                           DualityConventions::metric[static_cast<std::size_t>(s)] * f(r, s);
    ComplexTensor dual = ComplexTensor::Zero();
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            Complex acc(0, 0);
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s) {
                    const int sign = perm_sign(mu, nu, r, s);
                    if (sign != 0)
                        acc += DualityConventions::epsilon0123 *
                               static_cast<double>(sign) * raised(r, s);
                }
            dual(mu, nu) = 0.5 * acc;
        }
    return dual;
}

SelfDualSplit selfdual_split(const ComplexTensor& f, double antisym_tol) {
    require_antisymmetric(f, antisym_tol);
    const ComplexTensor dual = hodge_dual(f);
    return {0.5 * (f + dual), 0.5 * (f - dual)};
}

std::vector<ComplexTensor> compute_g(const symplectic::KineticMatrix& n,
                                     const std::vector<ComplexTensor>& fplus) {
    const int m = n.m();
    if (static_cast<int>(fplus.size()) != m)
        throw DimensionError("expected " + std::to_string(m) + " self-dual tensors, got " +
                             std::to_string(fplus.size()));
    std::vector<ComplexTensor> g(static_cast<std::size_t>(m), ComplexTensor::Zero());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            g[static_cast<std::size_t>(i)] += n.matrix()(i, j) * fplus[static_cast<std::size_t>(j)];
    return g;
}

FieldPair transform_pair(const symplectic::SymplecticMatrix& s, const FieldPair& pair) {
    const int m = s.frame().m();
    if (static_cast<int>(pair.fplus.size()) != m || static_cast<int>(pair.gplus.size()) != m)
        throw DimensionError("field pair does not match frame dimension m = " +
                             std::to_string(m));
    if (!s.frame().is_canonical())
        throw Error("field-pair transformation requires the canonical frame");

    const auto a = s.block_a(), b = s.block_b(), c = s.block_c(), d = s.block_d();
    FieldPair out;
    out.fplus.assign(static_cast<std::size_t>(m), ComplexTensor::Zero());
    out.gplus.assign(static_cast<std::size_t>(m), ComplexTensor::Zero());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            out.fplus[static_cast<std::size_t>(i)] +=
                a(i, j) * pair.fplus[static_cast<std::size_t>(j)] +
                b(i, j) * pair.gplus[static_cast<std::size_t>(j)];
            out.gplus[static_cast<std::size_t>(i)] +=
                c(i, j) * pair.fplus[static_cast<std::size_t>(j)] +
                d(i, j) * pair.gplus[static_cast<std::size_t>(j)];
        }
    return out;
}

}  // namespace skgeo::maxwell
