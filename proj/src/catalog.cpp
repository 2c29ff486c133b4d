#include "skgeo/catalog.hpp"

#include <cmath>

namespace skgeo::catalog {

using modelfile::Flavor;
using modelfile::ModelDescription;
using modelfile::ModelKind;
using modelfile::ScanBox;

namespace {

ModelDescription describe(std::string name, Flavor flavor, ModelKind kind,
                          std::vector<std::string> coords, std::vector<std::string> ambient,
                          std::string f, std::vector<std::string> map,
                          std::vector<std::string> section, std::vector<std::string> base,
                          ScanBox box) {
    ModelDescription d;
    d.name = std::move(name);
    d.flavor = flavor;
    d.kind = kind;
    d.coord_names = std::move(coords);
    d.ambient_names = std::move(ambient);
    d.prepotential = std::move(f);
    d.coord_map = std::move(map);
    d.section = std::move(section);
    d.base_point = std::move(base);
    d.scan_box = std::move(box);
    return d;
}

std::vector<Entry> make_entries() {
    std::vector<Entry> out;

    // ---- paper-n1: F = -i X0 X1, Z = (1, z) ------------------------------
    {
        Entry e;
        e.model = describe("paper-n1", Flavor::Local, ModelKind::Prepotential, {"z"},
                           {"X0", "X1"}, "-i*X0*X1", {"1", "z"}, {}, {"1"},
                           ScanBox{{{0.1, 3.0, -2.0, 2.0}}});
        e.description = "n=1 bilinear model: v = (1, z, -iz, -i), e^{-K} = 2(z+zbar), "
                        "N = diag(-iz, -i/z); positivity domain Re z > 0";
        e.origin = "worked-example";
        e.expectations = {
            {"exp_minus_K", "1", {{"4"}}, 1e-12, "e^{-K} = 2(z+zbar) at z=1"},
            {"K", "2+1i", {{"-2.0794415416798359"}}, 1e-12, "-log(2(z+zbar)) = -log 8"},
            {"metric", "1", {{"0.25"}}, 1e-12, "g = (z+zbar)^{-2}"},
            {"metric", "0.5-0.3i", {{"1"}}, 1e-12, "g = (z+zbar)^{-2} = 1 at Re z = 1/2"},
            {"kinetic", "1", {{"-1i", "0"}, {"0", "-1i"}}, 1e-12, "N = diag(-iz, -i/z)"},
            {"kinetic", "2+1i", {{"1-2i", "0"}, {"0", "-0.2-0.4i"}}, 1e-12,
             "N = diag(-iz, -i/z); -i/(2+i) = (-1-2i)/5"},
            {"exists", "1", {{"1"}}, 0.5, "special coordinates: (Z | D Z) invertible"},
            {"constraint", "0.7+0.2i", {{"0"}}, 1e-10, "prepotential section satisfies both"},
        };
        out.push_back(std::move(e));
    }

    // ---- paper-n1-dual: section (1, i, -iz, z), no prepotential ----------
    {
        Entry e;
        e.model = describe("paper-n1-dual", Flavor::Local, ModelKind::Section, {"z"}, {},
                           "", {}, {"1", "i", "-i*z", "z"}, {"1"},
                           ScanBox{{{0.1, 3.0, -2.0, 2.0}}});
        e.description = "duality image of paper-n1: same Kaehler geometry, kinetic matrix "
                        "-iz * identity, and no prepotential in this frame";
        e.origin = "worked-example";
        e.expectations = {
            {"exp_minus_K", "1", {{"4"}}, 1e-12, "same K as paper-n1"},
            {"metric", "1", {{"0.25"}}, 1e-12, "metric is frame-independent"},
            {"kinetic", "2+1i", {{"1-2i", "0"}, {"0", "1-2i"}}, 1e-12, "N = -iz * identity"},
            {"exists", "1", {{"0"}}, 0.5, "(Z | D Z) has rank 1: columns proportional to (1, i)"},
        };
        out.push_back(std::move(e));
    }

    // ---- paper-n1-swapped: same F, parametrization Z = (z, 1) ------------
    {
        Entry e;
        e.model = describe("paper-n1-swapped", Flavor::Local, ModelKind::Prepotential, {"z"},
                           {"X0", "X1"}, "-i*X0*X1", {"z", "1"}, {}, {"1"},
                           ScanBox{{{0.1, 3.0, -2.0, 2.0}}});
        e.description = "bilinear model with the swapped parametrization Z = (z, 1): "
                        "v = (z, 1, -i, -iz), same metric, kinetic matrix swapped";
        e.origin = "worked-example";
        e.expectations = {
            {"exp_minus_K", "1", {{"4"}}, 1e-12, "e^{-K} = 2(z+zbar) again"},
            {"metric", "1", {{"0.25"}}, 1e-12, "same geometry as paper-n1"},
            {"kinetic", "2+1i", {{"-0.2-0.4i", "0"}, {"0", "1-2i"}}, 1e-12,
             "relabelled vectors swap the diagonal of N"},
            {"exists", "1", {{"1"}}, 0.5, "z is still a good coordinate"},
        };
        out.push_back(std::move(e));
    }

    // ---- stu: F = X1 X2 X3 / X0 ------------------------------------------
    {
        Entry e;
        e.model = describe("stu", Flavor::Local, ModelKind::Prepotential,
                           {"z1", "z2", "z3"}, {"X0", "X1", "X2", "X3"}, "X1*X2*X3/X0",
                           {"1", "z1", "z2", "z3"}, {},
                           {"-1i", "-1i", "-1i"},
                           ScanBox{{{-0.8, 0.8, -1.8, -0.3},
                                    {-0.8, 0.8, -1.8, -0.3},
                                    {-0.8, 0.8, -1.8, -0.3}}});
        e.description = "cubic n=3 model: e^{-K} = -8 Im z1 Im z2 Im z3, metric "
                        "diag(1/(4 Im^2 z^a)); domain here: all Im z^a < 0";
        e.origin = "classic";
        e.expectations = {
            {"exp_minus_K", "-1i,-1i,-1i", {{"8"}}, 1e-12, "-8 Im z1 Im z2 Im z3 = 8"},
            {"metric", "-1i,-1i,-1i",
             {{"0.25", "0", "0"}, {"0", "0.25", "0"}, {"0", "0", "0.25"}}, 1e-12,
             "hand derivation: g = diag(-(z^a - zbar^a)^{-2}) = diag(1/(4 Im^2 z^a))"},
            {"kinetic", "-1i,-1i,-1i",
             {{"-1i", "0", "0", "0"},
              {"0", "-1i", "0", "0"},
              {"0", "0", "-1i", "0"},
              {"0", "0", "0", "-1i"}},
             1e-12, "hand evaluation of the section formula at the symmetric point"},
            {"exists", "-1i,-1i,-1i", {{"1"}}, 0.5, "special coordinates"},
            {"constraint", "0.3-0.9i,-0.2-1.1i,0.15-0.7i", {{"0"}}, 1e-10,
             "prepotential section satisfies both"},
        };
        out.push_back(std::move(e));
    }

    // ---- rigid-quadratic: F = tau/2 X^2, tau = 1 + i ----------------------
    {
        Entry e;
        e.model = describe("rigid-quadratic", Flavor::Rigid, ModelKind::Prepotential, {"z"},
                           {"X1"}, "0.5*(1+1i)*X1^2", {"z"}, {}, {"1"},
                           ScanBox{{{-2.0, 2.0, -2.0, 2.0}}});
        e.description = "one multiplet with constant coupling tau = 1+i: K = 2 Im(tau) |z|^2, "
                        "G = 2 Im tau = 2, N = tau";
        e.origin = "classic";
        e.expectations = {
            {"K", "1+1i", {{"4"}}, 1e-12, "K = 2 Im(tau) |z|^2 = 2*1*2"},
            {"metric", "0.4-1.2i", {{"2"}}, 1e-12, "G = 2 Im tau"},
            {"kinetic", "-0.7+0.9i", {{"1+1i"}}, 1e-12, "N = F_AB = tau"},
        };
        out.push_back(std::move(e));
    }

    // ---- rigid-cubic: F = X^3/6 -------------------------------------------
    {
        Entry e;
        e.model = describe("rigid-cubic", Flavor::Rigid, ModelKind::Prepotential, {"z"},
                           {"X1"}, "X1^3/6", {"z"}, {}, {"1i"},
                           ScanBox{{{-1.5, 1.5, 0.2, 2.0}}});
        e.description = "cubic prepotential: K = |z|^2 Im z, G = 2 Im z (positive for "
                        "Im z > 0; rigid signature is reported, not enforced)";
        e.origin = "classic";
        e.expectations = {
            {"K", "1i", {{"1"}}, 1e-12, "K = |z|^2 Im z"},
            {"metric", "1i", {{"2"}}, 1e-12, "G = 2 Im F_XX = 2 Im z"},
            {"kinetic", "1i", {{"1i"}}, 1e-12, "N = F_XX = z"},
        };
        out.push_back(std::move(e));
    }

    // ---- rigid-n2-coupled: two multiplets with off-diagonal coupling ------
    {
        Entry e;
        e.model = describe("rigid-n2-coupled", Flavor::Rigid, ModelKind::Prepotential,
                           {"z1", "z2"}, {"X1", "X2"}, "0.5i*(X1^2 + X2^2) + 0.5*X1*X2",
                           {"z1", "z2"}, {}, {"1", "1i"},
                           ScanBox{{{-2.0, 2.0, -2.0, 2.0}, {-2.0, 2.0, -2.0, 2.0}}});
        e.description = "n=2 quadratic model with constant off-diagonal coupling: "
                        "N = [[i, 1/2], [1/2, i]], G = 2 Im N = 2 * identity";
        e.origin = "classic";
        e.expectations = {
            {"metric", "0.3+0.4i,-1+0.2i", {{"2", "0"}, {"0", "2"}}, 1e-12, "G = 2 Im F_AB"},
            {"kinetic", "0.3+0.4i,-1+0.2i", {{"1i", "0.5"}, {"0.5", "1i"}}, 1e-12,
             "N = F_AB, constant"},
            {"constraint", "0.9-0.3i,0.2+1.1i", {{"0"}}, 1e-12,
             "prepotential sections satisfy the pairing constraint"},
        };
        out.push_back(std::move(e));
    }

    // ---- rigid-quadratic-cubed: general coordinates X = z^3 ----------------
    {
        Entry e;
        e.model = describe("rigid-quadratic-cubed", Flavor::Rigid, ModelKind::Prepotential,
                           {"z"}, {"X1"}, "0.5i*X1^2", {"z^3"}, {}, {"1"},
                           ScanBox{{{0.5, 2.0, -0.6, 0.6}}});
        e.description = "quadratic model in the chart X = z^3 (Jacobian 3z^2, singular at "
                        "z = 0): K = 2|z|^6, G = 18|z|^4, N = i as in special coordinates";
        e.origin = "classic";
        e.expectations = {
            {"K", "1", {{"2"}}, 1e-12, "K = 2 |z^3|^2"},
            {"metric", "1", {{"18"}}, 1e-12, "G = d dbar 2(z zbar)^3 = 18 |z|^4"},
            {"kinetic", "1", {{"1i"}}, 1e-12, "coordinate-independent: N = F_XX = i"},
        };
        out.push_back(std::move(e));
    }

    return out;
}

}  // namespace

const std::vector<Entry>& entries() {
    static const std::vector<Entry> all = make_entries();
    return all;
}

const Entry& get(const std::string& name) {
    for (const auto& e : entries())
        if (e.model.name == name) return e;
    std::string available;
    for (const auto& e : entries()) {
        if (!available.empty()) available += ", ";
        available += e.model.name;
    }
    throw Error("unknown catalog entry '" + name + "'; available: " + available);
}

namespace {

symplectic::ComplexMatrix expected_matrix(const Expectation& x) {
    const auto rows = x.value.size();
    const auto cols = x.value.empty() ? 0 : x.value[0].size();
    symplectic::ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (x.value[r].size() != cols) throw Error("ragged expected-value table");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                holo::parse_complex(x.value[r][c]);
    }
    return m;
}

double compare(const symplectic::ComplexMatrix& got, const symplectic::ComplexMatrix& want) {
    if (got.rows() != want.rows() || got.cols() != want.cols())
        throw DimensionError("expected-value table has wrong shape");
    return (got - want).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<CheckResult> self_test(const Entry& entry) {
    const auto built = modelfile::build(entry.model);
    std::vector<CheckResult> results;

    for (const auto& x : entry.expectations) {
        const auto z = built.parse_point(x.point);
        double residual = 0.0;

        if (x.quantity == "K") {
            const double k = built.is_local() ? local::kahler(*built.local_section, z)
                                              : rigid::kahler(*built.rigid_section, z);
            residual = std::abs(k - expected_matrix(x)(0, 0).real());
        } else if (x.quantity == "exp_minus_K") {
            residual = std::abs(built.local_section->exp_minus_kahler(z) -
                                expected_matrix(x)(0, 0).real());
        } else if (x.quantity == "metric") {
            const auto g = built.is_local() ? local::metric(*built.local_section, z)
                                            : rigid::metric(*built.rigid_section, z);
            residual = compare(g, expected_matrix(x));
        } else if (x.quantity == "kinetic") {
            const auto n = built.is_local() ? local::kinetic(*built.local_section, z)
                                            : rigid::kinetic(*built.rigid_section, z);
            residual = compare(n.matrix(), expected_matrix(x));
        } else if (x.quantity == "exists") {
            const auto result = local::prepotential_exists(*built.local_section, z);
            const bool expected = expected_matrix(x)(0, 0).real() != 0.0;
            residual = result.exists == expected ? 0.0 : 1.0;
        } else if (x.quantity == "constraint") {
            if (built.is_local()) {
                const auto r = local::constraint_check(*built.local_section, z);
                residual = std::max(r.derivative_pairing, r.section_pairing);
            } else {
                residual = rigid::constraint_residual(*built.rigid_section, z);
            }
        } else {
            throw Error("unknown expectation quantity '" + x.quantity + "'");
        }

        results.push_back({entry.model.name, x.quantity, x.point, residual <= x.tolerance,
                           residual, x.tolerance});
    }
    return results;
}

std::vector<CheckResult> self_test_all() {
    std::vector<CheckResult> all;
    for (const auto& e : entries()) {
        auto r = self_test(e);
        all.insert(all.end(), r.begin(), r.end());
    }
    return all;
}

}  // namespace skgeo::catalog
