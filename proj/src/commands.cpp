#include "skgeo/commands.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "skgeo/catalog.hpp"
#include "skgeo/local.hpp"
#include "skgeo/modelfile.hpp"
#include "skgeo/report.hpp"
#include "skgeo/rigid.hpp"

namespace skgeo::cli {

using report::Json;
using report::Report;
using symplectic::ComplexVector;
using symplectic::RealMatrix;

namespace {

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

void emit(const Report& r, const CommonOptions& opts, std::ostream& os) {
    const std::string text = r.render(opts.format);
    if (!opts.out.empty()) {
        std::ofstream f(opts.out);
        if (!f) throw Error("cannot write report to '" + opts.out + "'");
        f << text;
    } else {
        os << text;
    }
}

Json tolerance_block(const CommonOptions& opts) {
    Json t;
    t["construction_residual"] = 1e-10;
    t["operation"] = opts.tol;
    t["existence_condition_limit"] = 1e10;
    t["singularity_condition_limit"] = 1e12;
    return t;
}

Json model_block(const modelfile::BuiltModel& built) {
    Json m;
    m["name"] = built.description.name;
    m["flavor"] = modelfile::to_string(built.description.flavor);
    m["kind"] = modelfile::to_string(built.description.kind);
    m["digest"] = modelfile::digest(built.description);
    return m;
}

modelfile::BuiltModel load_model(const std::string& path) {
    return modelfile::build(modelfile::parse_file(path));
}

RealMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open matrix file '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) {
            double v = 0.0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || p != tok.data() + tok.size())
                throw ParseError("invalid matrix entry '" + tok + "' (line " +
                                     std::to_string(lineno) + ")",
                                 lineno);
            row.push_back(v);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix file is empty");
    const std::size_t cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) throw ParseError("matrix rows have inconsistent lengths");
    RealMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return m;
}

double min_metric_eigenvalue(const Eigen::MatrixXcd& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
    return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

Json analyze_point(const modelfile::BuiltModel& built, const ComplexVector& z,
                   const CommonOptions& opts) {
    Json rec;
    rec["point"] = report::point_string(z);
    if (built.is_local()) {
        const auto& s = *built.local_section;
        const double y = s.exp_minus_kahler(z);
        if (!(y > 0.0)) {
            rec["status"] = "domain-error";
            rec["message"] = "outside the positivity domain: e^{-K} = " + std::to_string(y);
            return rec;
        }
        rec["status"] = "ok";
        rec["exp_minus_K"] = y;
        rec["K"] = -std::log(y);
        const auto g = local::metric(s, z);
        rec["metric"] = report::complex_matrix(g);
        rec["metric_min_eigenvalue"] = min_metric_eigenvalue(g);
        const auto n = local::kinetic(s, z);
        rec["kinetic"] = report::complex_matrix(n.matrix());
        rec["kinetic_symmetry_residual"] = n.symmetry_residual();
        rec["kinetic_symmetric"] = n.symmetry_residual() <= opts.tol;
        rec["kinetic_im_max_eigenvalue"] = n.im_eigenvalues().maxCoeff();
        rec["kinetic_im_negative_definite"] = n.im_negative_definite();
        const auto c = local::constraint_check(s, z);
        rec["constraint_derivative_pairing"] = c.derivative_pairing;
        rec["constraint_section_pairing"] = c.section_pairing;
        const auto e = local::prepotential_exists(s, z);
        rec["prepotential_exists"] = e.exists;
        rec["existence_condition_number"] = e.condition_number;
    } else {
        const auto& s = *built.rigid_section;
        rec["status"] = "ok";
        rec["K"] = rigid::kahler(s, z);
        const auto g = rigid::metric(s, z);
        rec["metric"] = report::complex_matrix(g);
        rec["metric_min_eigenvalue"] = min_metric_eigenvalue(g);
        const auto n = rigid::kinetic(s, z);
        rec["kinetic"] = report::complex_matrix(n.matrix());
        rec["kinetic_symmetry_residual"] = n.symmetry_residual();
        rec["kinetic_symmetric"] = n.symmetry_residual() <= opts.tol;
        rec["kinetic_im_max_eigenvalue"] = n.im_eigenvalues().maxCoeff();
        rec["constraint_residual"] = rigid::constraint_residual(s, z);
    }
    return rec;
}

}  // namespace

int cmd_analyze(const std::string& model_path, const std::vector<std::string>& at_points,
                const CommonOptions& opts, std::ostream& os) {
    try {
        const auto built = load_model(model_path);

        std::vector<ComplexVector> points;
        if (at_points.empty()) {
            points.push_back(built.base_point());
        } else {
            for (const auto& text : at_points) points.push_back(built.parse_point(text));
        }

        Report r;
        r.doc["command"] = "analyze";
        r.doc["model"] = model_block(built);
        r.doc["tolerances"] = tolerance_block(opts);
        Json notes = Json::array();
        if (built.is_local())
            notes.push_back("Hodge integrality: not verified (global condition)");
        if (built.rigid_section && built.rigid_section->degenerate_lower())
            notes.push_back("section has identically vanishing lower components (degenerate)");
        r.doc["notes"] = std::move(notes);

        int ok_count = 0;
        bool any_domain = false;
        Json records = Json::array();
        for (const auto& z : points) {
            try {
                Json rec = analyze_point(built, z, opts);
                if (rec["status"] == "ok") ++ok_count;
                if (rec["status"] == "domain-error") any_domain = true;
                records.push_back(std::move(rec));
            } catch (const DomainError& e) {
                any_domain = true;
                records.push_back({{"point", report::point_string(z)},
                                   {"status", "domain-error"},
                                   {"message", e.what()}});
            } catch (const DegeneracyError& e) {
                records.push_back({{"point", report::point_string(z)},
                                   {"status", "degenerate"},
                                   {"message", e.what()}});
            } catch (const EvalError& e) {
                records.push_back({{"point", report::point_string(z)},
                                   {"status", "degenerate"},
                                   {"message", e.what()}});
            }
        }
        r.doc["points"] = std::move(records);
        emit(r, opts, os);
        if (ok_count > 0) return 0;
        return any_domain ? 2 : 3;
    } catch (...) {
        os << "error: " << [] {
            try {
                throw;
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
        }() << "\n";
        return exit_code_for_current_exception();
    }
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

int cmd_transform(const std::string& model_path, const std::string& matrix_path,
                  const std::string& kahler_factor, const std::string& out_model_path,
                  const CommonOptions& opts, std::ostream& os) {
    try {
        const auto built = load_model(model_path);
        const RealMatrix s_raw = parse_matrix_file(matrix_path);

        const auto& frame = built.is_local() ? built.local_section->frame()
                                             : built.rigid_section->frame();
        if (s_raw.rows() != frame.dim() || s_raw.cols() != frame.dim())
            throw DimensionError("matrix is " + std::to_string(s_raw.rows()) + "x" +
                                 std::to_string(s_raw.cols()) + ", frame needs " +
                                 std::to_string(frame.dim()) + "x" +
                                 std::to_string(frame.dim()));

        const auto membership =
            symplectic::is_symplectic(s_raw, frame, frame.tolerances().membership);
        if (!membership.ok) {
            Report r;
            r.doc["command"] = "transform";
            r.doc["model"] = model_block(built);
            r.doc["error"] = "matrix is not symplectic";
            r.doc["membership_residual"] = membership.residual;
            r.doc["membership_tolerance"] = frame.tolerances().membership;
            emit(r, opts, os);
            return 2;
        }
        const symplectic::SymplecticMatrix rotation(s_raw, frame);

        holo::ExprPtr scale;
        if (!kahler_factor.empty()) {
            if (!built.is_local())
                throw ParseError("a Kaehler factor only applies to local models");
            scale = holo::parse(kahler_factor, built.description.coord_names);
        }

        const ComplexVector base = built.base_point();
        modelfile::ModelDescription out_desc = built.description;
        out_desc.name = built.description.name + "-transformed";
        out_desc.kind = modelfile::ModelKind::Section;
        out_desc.prepotential.clear();
        out_desc.coord_map.clear();
        out_desc.ambient_names.clear();
        out_desc.section.clear();

        Report r;
        r.doc["command"] = "transform";
        r.doc["model"] = model_block(built);
        r.doc["tolerances"] = tolerance_block(opts);
        r.doc["membership_residual"] = membership.residual;

        double metric_residual = 0.0;
        if (built.is_local()) {
            const auto& section = *built.local_section;
            const auto moved = local::apply_symplectic(section, rotation, scale);
            for (const auto& component : moved.section())
                out_desc.section.push_back(
                    holo::to_string(component, built.description.coord_names));

            const auto n_old = local::kinetic(section, base);
            const auto n_direct = local::kinetic(moved, base);
            const auto n_fl = symplectic::act_on_kinetic(rotation, n_old);
            r.doc["kinetic_old"] = report::complex_matrix(n_old.matrix());
            r.doc["kinetic_new_direct"] = report::complex_matrix(n_direct.matrix());
            r.doc["kinetic_new_fractional_linear"] = report::complex_matrix(n_fl.matrix());
            const double agree =
                (n_direct.matrix() - n_fl.matrix()).cwiseAbs().maxCoeff();
            r.doc["kinetic_route_agreement"] = agree;
            r.doc["kinetic_routes_agree"] = agree <= opts.tol;
            metric_residual =
                (local::metric(moved, base) - local::metric(section, base)).cwiseAbs().maxCoeff();
        } else {
            const auto& section = *built.rigid_section;
            const rigid::ChartTransition t{0.0, rotation,
                                           ComplexVector::Zero(frame.dim())};
            const auto moved = rigid::apply_transition(section, t);
            for (const auto& component : moved.section())
                out_desc.section.push_back(
                    holo::to_string(component, built.description.coord_names));

            const auto n_old = rigid::kinetic(section, base);
            const auto n_direct = rigid::kinetic(moved, base);
            const auto n_fl = symplectic::act_on_kinetic(rotation, n_old);
            r.doc["kinetic_old"] = report::complex_matrix(n_old.matrix());
            r.doc["kinetic_new_direct"] = report::complex_matrix(n_direct.matrix());
            r.doc["kinetic_new_fractional_linear"] = report::complex_matrix(n_fl.matrix());
            const double agree =
                (n_direct.matrix() - n_fl.matrix()).cwiseAbs().maxCoeff();
            r.doc["kinetic_route_agreement"] = agree;
            r.doc["kinetic_routes_agree"] = agree <= opts.tol;
            metric_residual =
                (rigid::metric(moved, base) - rigid::metric(section, base)).cwiseAbs().maxCoeff();
        }
        r.doc["metric_invariance_residual"] = metric_residual;
        r.doc["metric_invariant"] = metric_residual <= opts.tol;

        // validate and write the transformed model
        const auto rebuilt = modelfile::build(out_desc);
        r.doc["output_model"] = model_block(rebuilt);
        if (out_model_path.empty()) throw ParseError("transform needs an output model path");
        std::ofstream f(out_model_path);
        if (!f) throw Error("cannot write model to '" + out_model_path + "'");
        f << modelfile::serialize(out_desc);
        r.doc["output_path"] = out_model_path;

        emit(r, opts, os);
        return 0;
    } catch (...) {
        os << "error: " << [] {
            try {
                throw;
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
        }() << "\n";
        return exit_code_for_current_exception();
    }
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

namespace {

modelfile::ScanBox resolve_box(const modelfile::BuiltModel& built,
                               const std::string& box_override) {
    if (!box_override.empty()) {
        modelfile::ScanBox box;
        std::istringstream in(box_override);
        std::string part;
        while (std::getline(in, part, ';')) {
            std::istringstream ps(part);
            std::array<double, 4> range{};
            if (!(ps >> range[0] >> range[1] >> range[2] >> range[3]))
                throw ParseError("box needs 4 numbers per coordinate: "
                                 "'re_lo re_hi im_lo im_hi[; ...]'");
            if (range[0] > range[1] || range[2] > range[3])
                throw ParseError("empty box range");
            box.ranges.push_back(range);
        }
        if (static_cast<int>(box.ranges.size()) != built.coord_count())
            throw DimensionError("box covers " + std::to_string(box.ranges.size()) +
                                 " coordinates, model has " +
                                 std::to_string(built.coord_count()));
        return box;
    }
    if (built.description.scan_box) return *built.description.scan_box;
    throw ParseError("no scan box: pass --box or add [scan_box] to the model file");
}

enum class Outcome { Pass, DomainFail, MetricFail, KineticFail, Degenerate };

Outcome evaluate_scan_point(const modelfile::BuiltModel& built, const ComplexVector& z) {
    try {
        if (built.is_local()) {
            const auto& s = *built.local_section;
            if (!(s.exp_minus_kahler(z) > 0.0)) return Outcome::DomainFail;
            if (min_metric_eigenvalue(local::metric(s, z)) <= 0.0) return Outcome::MetricFail;
            if (!local::kinetic(s, z).im_negative_definite()) return Outcome::KineticFail;
        } else {
            const auto& s = *built.rigid_section;
            if (min_metric_eigenvalue(rigid::metric(s, z)) <= 0.0) return Outcome::MetricFail;
            if (!rigid::kinetic(s, z).im_negative_definite()) return Outcome::KineticFail;
        }
        return Outcome::Pass;
    } catch (const DomainError&) {
        return Outcome::DomainFail;
    } catch (const DegeneracyError&) {
        return Outcome::Degenerate;
    } catch (const EvalError&) {
        return Outcome::Degenerate;
    } catch (const Error&) {
        return Outcome::Degenerate;
    }
}

struct Bounds {
    bool any = false;
    std::vector<std::array<double, 4>> ranges;  // re_min re_max im_min im_max

    void absorb(const ComplexVector& z) {
        if (!any) {
            ranges.assign(static_cast<std::size_t>(z.size()),
                          {std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity()});
            any = true;
        }
        for (Eigen::Index k = 0; k < z.size(); ++k) {
            auto& r = ranges[static_cast<std::size_t>(k)];
            r[0] = std::min(r[0], z(k).real());
            r[1] = std::max(r[1], z(k).real());
            r[2] = std::min(r[2], z(k).imag());
            r[3] = std::max(r[3], z(k).imag());
        }
    }

    Json to_json() const {
        if (!any) return nullptr;
        Json out = Json::array();
        for (const auto& r : ranges) out.push_back(Json::array({r[0], r[1], r[2], r[3]}));
        return out;
    }
};

}  // namespace

int cmd_scan(const std::string& model_path, const std::string& box_override, int samples,
             std::uint64_t seed, const CommonOptions& opts, std::ostream& os) {
    try {
        const auto built = load_model(model_path);
        const auto box = resolve_box(built, box_override);
        if (samples <= 0) throw ParseError("samples must be positive");
        const int n = built.coord_count();

        // deterministic 53-bit uniforms from the seed
        std::mt19937_64 gen(seed);
        auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
        std::vector<ComplexVector> points;
        points.reserve(static_cast<std::size_t>(samples));
        for (int t = 0; t < samples; ++t) {
            ComplexVector z(n);
            for (int k = 0; k < n; ++k) {
                const auto& r = box.ranges[static_cast<std::size_t>(k)];
                const double re = r[0] + (r[1] - r[0]) * unit();
                const double im = r[2] + (r[3] - r[2]) * unit();
                z(k) = holo::Complex(re, im);
            }
            points.push_back(std::move(z));
        }
        // canonical emission order, independent of evaluation order
        std::sort(points.begin(), points.end(),
                  [](const ComplexVector& a, const ComplexVector& b) {
                      for (Eigen::Index k = 0; k < a.size(); ++k) {
                          if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
                          if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
                      }
                      return false;
                  });

        // evaluate concurrently; results land in preallocated slots
        std::vector<Outcome> outcomes(points.size(), Outcome::Degenerate);
        const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = cursor.fetch_add(1);
                    if (i >= points.size()) break;
                    outcomes[i] = evaluate_scan_point(built, points[i]);
                }
            });
        for (auto& t : pool) t.join();

        std::size_t pass = 0, domain = 0, metric_fail = 0, kinetic_fail = 0, degenerate = 0;
        Bounds passing, failing;
        for (std::size_t i = 0; i < points.size(); ++i) {
            switch (outcomes[i]) {
                case Outcome::Pass:
                    ++pass;
                    passing.absorb(points[i]);
                    break;
                case Outcome::DomainFail:
                    ++domain;
                    failing.absorb(points[i]);
                    break;
                case Outcome::MetricFail:
                    ++metric_fail;
                    failing.absorb(points[i]);
                    break;
                case Outcome::KineticFail:
                    ++kinetic_fail;
                    failing.absorb(points[i]);
                    break;
                case Outcome::Degenerate:
                    ++degenerate;
                    failing.absorb(points[i]);
                    break;
            }
        }

        Report r;
        r.doc["command"] = "scan";
        r.doc["model"] = model_block(built);
        r.doc["tolerances"] = tolerance_block(opts);
        Json box_json = Json::array();
        for (const auto& range : box.ranges)
            box_json.push_back(Json::array({range[0], range[1], range[2], range[3]}));
        r.doc["box"] = std::move(box_json);
        r.doc["samples"] = samples;
        r.doc["seed"] = seed;
        r.doc["counts"] = {{"pass", pass},
                           {"domain_fail", domain},
                           {"metric_not_positive_definite", metric_fail},
                           {"kinetic_im_not_negative_definite", kinetic_fail},
                           {"degenerate", degenerate}};
        r.doc["pass_fraction"] = static_cast<double>(pass) / static_cast<double>(samples);
        r.doc["passing_bounds"] = passing.to_json();
        r.doc["failing_bounds"] = failing.to_json();
        emit(r, opts, os);
        return 0;
    } catch (...) {
        os << "error: " << [] {
            try {
                throw;
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
        }() << "\n";
        return exit_code_for_current_exception();
    }
}

// ---------------------------------------------------------------------------
// cone
// ---------------------------------------------------------------------------

int cmd_cone(const std::string& model_path, double r, double theta, const std::string& at,
             const std::string& a_mode, const CommonOptions& opts, std::ostream& os) {
    try {
        const auto built = load_model(model_path);
        if (!built.is_local())
            throw DomainError("the superconformal cone is defined for local models only");
        const auto& section = *built.local_section;

        local::ConePoint p;
        p.r = r;
        p.theta = theta;
        p.z = at.empty() ? built.base_point() : built.parse_point(at);
        if (a_mode == "zero")
            p.a_mode = local::ConnectionMode::Zero;
        else if (a_mode == "composite")
            p.a_mode = local::ConnectionMode::Composite;
        else
            throw ParseError("a-mode must be 'zero' or 'composite', got '" + a_mode + "'");

        const Eigen::MatrixXd g = local::cone_metric(section, p);
        const int n = section.n();

        Report rep;
        rep.doc["command"] = "cone";
        rep.doc["model"] = model_block(built);
        rep.doc["tolerances"] = tolerance_block(opts);
        rep.doc["r"] = p.r;
        rep.doc["theta"] = p.theta;
        rep.doc["z"] = report::point_string(p.z);
        rep.doc["a_mode"] = a_mode;
        rep.doc["coordinates"] = "r, theta, Re z^a, Im z^a";
        rep.doc["metric"] = report::real_matrix(g);

        Json blocks;
        blocks["g_rr"] = g(0, 0);
        blocks["max_dr_cross_term"] = g.row(0).tail(g.cols() - 1).cwiseAbs().maxCoeff();
        blocks["theta_theta"] = g(1, 1);
        blocks["scalar_block"] =
            report::real_matrix(g.bottomRightCorner(2 * n, 2 * n));
        rep.doc["blocks"] = std::move(blocks);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
        Json eigs = Json::array();
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
            eigs.push_back(es.eigenvalues()(k));
        rep.doc["eigenvalues"] = std::move(eigs);
        rep.doc["positive_definite"] = es.eigenvalues().minCoeff() > 0.0;

        emit(rep, opts, os);
        return 0;
    } catch (...) {
        os << "error: " << [] {
            try {
                throw;
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
        }() << "\n";
        return exit_code_for_current_exception();
    }
}

// ---------------------------------------------------------------------------
// catalog and selfcheck
// ---------------------------------------------------------------------------

int cmd_catalog_list(const CommonOptions& opts, std::ostream& os) {
    Report r;
    r.doc["command"] = "catalog list";
    Json list = Json::array();
    for (const auto& e : catalog::entries()) {
        Json item;
        item["name"] = e.model.name;
        item["flavor"] = modelfile::to_string(e.model.flavor);
        item["kind"] = modelfile::to_string(e.model.kind);
        item["origin"] = e.origin;
        item["description"] = e.description;
        list.push_back(std::move(item));
    }
    r.doc["entries"] = std::move(list);
    emit(r, opts, os);
    return 0;
}

int cmd_catalog_show(const std::string& name, const CommonOptions& opts, std::ostream& os) {
    try {
        const auto& entry = catalog::get(name);
        Report r;
        r.doc["command"] = "catalog show";
        r.doc["name"] = entry.model.name;
        r.doc["description"] = entry.description;
        r.doc["origin"] = entry.origin;
        r.doc["model_file"] = modelfile::serialize(entry.model);
        Json checks = Json::array();
        for (const auto& c : catalog::self_test(entry)) {
            Json item;
            item["quantity"] = c.quantity;
            item["point"] = c.point;
            item["residual"] = c.residual;
            item["tolerance"] = c.tolerance;
            item["passed"] = c.passed;
            checks.push_back(std::move(item));
        }
        r.doc["expected_value_checks"] = std::move(checks);
        Json expectations = Json::array();
        for (const auto& x : entry.expectations) {
            Json item;
            item["quantity"] = x.quantity;
            item["point"] = x.point;
            item["value"] = x.value;
            item["tolerance"] = x.tolerance;
            item["provenance"] = x.provenance;
            expectations.push_back(std::move(item));
        }
        r.doc["expectations"] = std::move(expectations);
        emit(r, opts, os);
        return 0;
    } catch (...) {
        os << "error: " << [] {
            try {
                throw;
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
        }() << "\n";
        return exit_code_for_current_exception();
    }
}

int cmd_catalog_export(const std::string& name, const CommonOptions& opts, std::ostream& os) {
    try {
        const auto& entry = catalog::get(name);
        const std::string text = modelfile::serialize(entry.model);
        if (!opts.out.empty()) {
            std::ofstream f(opts.out);
            if (!f) throw Error("cannot write model to '" + opts.out + "'");
            f << text;
        } else {
            os << text;
        }
        return 0;
    } catch (...) {
        os << "error: " << [] {
            try {
                throw;
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
        }() << "\n";
        return exit_code_for_current_exception();
    }
}

int cmd_selfcheck(const CommonOptions& opts, std::ostream& os) {
    try {
        const auto results = catalog::self_test_all();
        Report r;
        r.doc["command"] = "selfcheck";
        std::size_t passed = 0;
        Json checks = Json::array();
        for (const auto& c : results) {
            Json item;
            item["entry"] = c.entry;
            item["quantity"] = c.quantity;
            item["point"] = c.point;
            item["residual"] = c.residual;
            item["tolerance"] = c.tolerance;
            item["passed"] = c.passed;
            checks.push_back(std::move(item));
            if (c.passed) ++passed;
        }
        r.doc["checks"] = std::move(checks);
        r.doc["total"] = results.size();
        r.doc["passed"] = passed;
        r.doc["failed"] = results.size() - passed;
        r.doc["all_passed"] = passed == results.size();
        emit(r, opts, os);
        return passed == results.size() ? 0 : 2;
    } catch (...) {
        os << "error: " << [] {
            try {
                throw;
            } catch (const std::exception& e) {
                return std::string(e.what());
            }
        }() << "\n";
        return exit_code_for_current_exception();
    }
}

int exit_code_for_current_exception() {
    try {
        throw;
    } catch (const ParseError&) {
        return 1;
    } catch (const DegeneracyError&) {
        return 3;
    } catch (const EvalError&) {
        return 3;
    } catch (const DomainError&) {
        return 2;
    } catch (const DimensionError&) {
        return 2;
    } catch (const Error&) {
        return 2;
    } catch (const std::exception&) {
        return 1;
    }
}

}  // namespace skgeo::cli
