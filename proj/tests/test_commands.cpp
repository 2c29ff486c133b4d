#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "skgeo/catalog.hpp"
#include "skgeo/commands.hpp"
#include "skgeo/modelfile.hpp"

using namespace skgeo;
using cli::CommonOptions;
using nlohmann::json;

namespace {

struct TempDir {
    std::filesystem::path dir;

    TempDir() {
        dir = std::filesystem::temp_directory_path() /
              ("skgeo_cmd_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir, ec);
    }

    std::string write(const std::string& name, const std::string& content) const {
        const auto path = dir / name;
        std::ofstream f(path);
        f << content;
        return path.string();
    }

    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string catalog_model_text(const std::string& name) {
    return modelfile::serialize(catalog::get(name).model);
}

struct RunResult {
    int code;
    std::string text;
    json doc;  // parsed when format == structured
};

RunResult run_analyze(const std::string& path, const std::vector<std::string>& at,
                      const std::string& format = "structured") {
    std::ostringstream os;
    CommonOptions opts;
    opts.format = format;
    const int code = cli::cmd_analyze(path, at, opts, os);
    RunResult r{code, os.str(), {}};
    if (format == "structured" && code != 1) r.doc = json::parse(r.text);
    return r;
}

const std::string kExampleRotation = "1 0 0 0\n0 0 0 -1\n0 0 1 0\n0 1 0 0\n";

}  // namespace

TEST_CASE("analyze reports the worked-example values") {
    TempDir tmp;
    const auto path = tmp.write("paper-n1.skm", catalog_model_text("paper-n1"));

    const auto r = run_analyze(path, {"1"});
    REQUIRE(r.code == 0);
    const auto& pt = r.doc["points"][0];
    CHECK(pt["status"] == "ok");
    CHECK(std::abs(pt["K"].get<double>() + std::log(4.0)) < 1e-12);
    CHECK(std::abs(pt["exp_minus_K"].get<double>() - 4.0) < 1e-12);
    CHECK(pt["metric"][0][0] == "0.25+0i");
    CHECK(pt["kinetic"][0][0] == "0-1i");
    CHECK(pt["kinetic"][1][1] == "0-1i");
    CHECK(pt["prepotential_exists"] == true);
    CHECK(pt["kinetic_im_negative_definite"] == true);
    CHECK(r.doc["notes"][0].get<std::string>().find("not verified (global condition)") !=
          std::string::npos);

    // outside the domain: per-point status, exit code 2 when nothing succeeds
    const auto bad = run_analyze(path, {"-1"});
    CHECK(bad.code == 2);
    CHECK(bad.doc["points"][0]["status"] == "domain-error");

    // partial reports are allowed
    const auto mixed = run_analyze(path, {"1", "-1"});
    CHECK(mixed.code == 0);
    CHECK(mixed.doc["points"][0]["status"] == "ok");
    CHECK(mixed.doc["points"][1]["status"] == "domain-error");

    // missing file is a usage/parse failure
    std::ostringstream os;
    CHECK(cli::cmd_analyze(tmp.path("absent.skm"), {}, CommonOptions{}, os) == 2);
}

TEST_CASE("analyze handles the degenerate real locus of stu") {
    TempDir tmp;
    const auto path = tmp.write("stu.skm", catalog_model_text("stu"));
    const auto r = run_analyze(path, {"1,1,1"});
    CHECK(r.code == 2);
    CHECK(r.doc["points"][0]["status"] == "domain-error");

    const auto ok = run_analyze(path, {"-1i,-1i,-1i"});
    CHECK(ok.code == 0);
    CHECK(std::abs(ok.doc["points"][0]["exp_minus_K"].get<double>() - 8.0) < 1e-12);
}

TEST_CASE("analyze works for rigid models") {
    TempDir tmp;
    const auto path = tmp.write("rq.skm", catalog_model_text("rigid-quadratic"));
    const auto r = run_analyze(path, {"1+1i"});
    REQUIRE(r.code == 0);
    const auto& pt = r.doc["points"][0];
    CHECK(std::abs(pt["K"].get<double>() - 4.0) < 1e-12);
    CHECK(pt["metric"][0][0] == "2+0i");
    CHECK(pt["kinetic"][0][0] == "1+1i");
    CHECK(pt["constraint_residual"].get<double>() < 1e-12);
}

TEST_CASE("transform produces the dual model and checks both kinetic routes") {
    TempDir tmp;
    const auto model = tmp.write("paper-n1.skm", catalog_model_text("paper-n1"));
    const auto rotation = tmp.write("s.mat", kExampleRotation);
    const auto out_model = tmp.path("dual.skm");

    std::ostringstream os;
    CommonOptions opts;
    opts.format = "structured";
    const int code = cli::cmd_transform(model, rotation, "", out_model, opts, os);
    REQUIRE(code == 0);
    const auto doc = json::parse(os.str());
    CHECK(doc["kinetic_old"][0][0] == "0-1i");
    CHECK(doc["kinetic_new_direct"][0][0] == "0-1i");
    CHECK(doc["kinetic_new_direct"][1][1] == "0-1i");
    CHECK(doc["kinetic_route_agreement"].get<double>() < 1e-10);
    CHECK(doc["kinetic_routes_agree"] == true);
    CHECK(doc["metric_invariance_residual"].get<double>() < 1e-9);
    CHECK(doc["metric_invariant"] == true);

    // the written model is the dual frame: same K and metric, no prepotential
    const auto dual = run_analyze(out_model, {"1"});
    REQUIRE(dual.code == 0);
    CHECK(dual.doc["model"]["kind"] == "section");
    CHECK(std::abs(dual.doc["points"][0]["K"].get<double>() + std::log(4.0)) < 1e-12);
    CHECK(dual.doc["points"][0]["metric"][0][0] == "0.25+0i");
    CHECK(dual.doc["points"][0]["prepotential_exists"] == false);

    // a constant Kaehler factor shifts K but not the metric
    std::ostringstream os2;
    const int code2 =
        cli::cmd_transform(model, rotation, "2", tmp.path("dual2.skm"), opts, os2);
    REQUIRE(code2 == 0);
    const auto scaled = run_analyze(tmp.path("dual2.skm"), {"1"});
    CHECK(std::abs(scaled.doc["points"][0]["K"].get<double>() -
                   (-std::log(4.0) - 2.0 * std::log(2.0))) < 1e-12);
    CHECK(scaled.doc["points"][0]["metric"][0][0] == "0.25+0i");
}

TEST_CASE("transform handles rigid models and rejects a Kaehler factor there") {
    TempDir tmp;
    const auto model = tmp.write("rq.skm", catalog_model_text("rigid-quadratic"));
    // n = 1: the electric-magnetic flip (A=0, B=1, C=-1, D=0)
    const auto flip = tmp.write("flip.mat", "0 1\n-1 0\n");

    std::ostringstream os;
    CommonOptions opts;
    opts.format = "structured";
    REQUIRE(cli::cmd_transform(model, flip, "", tmp.path("out.skm"), opts, os) == 0);
    const auto doc = json::parse(os.str());
    // N = tau = 1+i maps to -1/N = -0.5+0.5i
    CHECK(doc["kinetic_old"][0][0] == "1+1i");
    CHECK(doc["kinetic_new_direct"][0][0] == "-0.5+0.5i");
    CHECK(doc["kinetic_routes_agree"] == true);
    CHECK(doc["metric_invariant"] == true);

    const auto moved = run_analyze(tmp.path("out.skm"), {"0.3-0.8i"});
    REQUIRE(moved.code == 0);
    CHECK(moved.doc["points"][0]["metric"][0][0] == "2+0i");

    // rigid transitions carry no Kaehler factor
    std::ostringstream os2;
    CHECK(cli::cmd_transform(model, flip, "2", tmp.path("x.skm"), opts, os2) == 1);
}

TEST_CASE("transform rejects non-symplectic matrices with the residual") {
    TempDir tmp;
    const auto model = tmp.write("paper-n1.skm", catalog_model_text("paper-n1"));
    const auto bad = tmp.write("bad.mat", "1 0 0 0\n0 0 0 -2\n0 0 1 0\n0 1 0 0\n");

    std::ostringstream os;
    CommonOptions opts;
    opts.format = "structured";
    const int code = cli::cmd_transform(model, bad, "", tmp.path("x.skm"), opts, os);
    CHECK(code == 2);
    const auto doc = json::parse(os.str());
    CHECK(doc["error"] == "matrix is not symplectic");
    CHECK(doc["membership_residual"].get<double>() > 0.5);
}

TEST_CASE("scan matches the positivity domain of the worked example") {
    TempDir tmp;
    const auto model = tmp.write("paper-n1.skm", catalog_model_text("paper-n1"));
    CommonOptions opts;
    opts.format = "structured";

    std::ostringstream os1;
    REQUIRE(cli::cmd_scan(model, "0.1 3 -2 2", 2000, 7, opts, os1) == 0);
    const auto right = json::parse(os1.str());
    CHECK(right["pass_fraction"].get<double>() == 1.0);
    CHECK(right["counts"]["pass"].get<int>() == 2000);

    std::ostringstream os2;
    REQUIRE(cli::cmd_scan(model, "-3 -0.1 -2 2", 2000, 7, opts, os2) == 0);
    const auto left = json::parse(os2.str());
    CHECK(left["pass_fraction"].get<double>() == 0.0);
    CHECK(left["counts"]["domain_fail"].get<int>() == 2000);

    std::ostringstream os3;
    REQUIRE(cli::cmd_scan(model, "-1 1 -1 1", 4000, 7, opts, os3) == 0);
    const auto mixed = json::parse(os3.str());
    const double frac = mixed["pass_fraction"].get<double>();
    CHECK(frac > 0.3);
    CHECK(frac < 0.7);
    // boundary estimate: passing points all have Re z > 0
    CHECK(mixed["passing_bounds"][0][0].get<double>() > 0.0);
    CHECK(mixed["failing_bounds"][0][1].get<double>() <= 0.0);

    // deterministic under a fixed seed, byte for byte, in both formats
    std::ostringstream os4;
    REQUIRE(cli::cmd_scan(model, "-1 1 -1 1", 4000, 7, opts, os4) == 0);
    CHECK(os3.str() == os4.str());
    CommonOptions table;
    std::ostringstream os5, os6;
    REQUIRE(cli::cmd_scan(model, "-1 1 -1 1", 500, 9, table, os5) == 0);
    REQUIRE(cli::cmd_scan(model, "-1 1 -1 1", 500, 9, table, os6) == 0);
    CHECK(os5.str() == os6.str());

    std::ostringstream os7;
    CHECK(cli::cmd_scan(model, "2 1 0 0", 10, 1, opts, os7) == 1);  // empty box
}

TEST_CASE("scan flags indefinite regions of rigid models") {
    // The cubic model has G = 2 Im z and N = z, and rigidly G = 2 Im N: the
    // metric test fails in the lower half-plane and the Im N < 0 test in the
    // upper, so the scan reports both failure categories and no passes.
    TempDir tmp;
    const auto model = tmp.write("rc.skm", catalog_model_text("rigid-cubic"));
    CommonOptions opts;
    opts.format = "structured";

    std::ostringstream os;
    REQUIRE(cli::cmd_scan(model, "-1 1 -2 2", 2000, 5, opts, os) == 0);
    const auto doc = json::parse(os.str());
    CHECK(doc["pass_fraction"].get<double>() == 0.0);
    const int metric_fail = doc["counts"]["metric_not_positive_definite"].get<int>();
    const int kinetic_fail = doc["counts"]["kinetic_im_not_negative_definite"].get<int>();
    CHECK(metric_fail > 500);
    CHECK(kinetic_fail > 500);
    CHECK(metric_fail + kinetic_fail == 2000);
}

TEST_CASE("cone command") {
    TempDir tmp;
    const auto model = tmp.write("paper-n1.skm", catalog_model_text("paper-n1"));
    CommonOptions opts;
    opts.format = "structured";

    std::ostringstream os;
    REQUIRE(cli::cmd_cone(model, 1.0, 0.0, "1", "zero", opts, os) == 0);
    const auto doc = json::parse(os.str());
    CHECK(doc["blocks"]["g_rr"].get<double>() == 1.0);
    CHECK(doc["blocks"]["max_dr_cross_term"].get<double>() == 0.0);
    CHECK(std::abs(doc["blocks"]["theta_theta"].get<double>() - 1.0 / 18.0) < 1e-15);
    CHECK(doc["positive_definite"] == true);

    // composite mode drops the angular block
    std::ostringstream os2;
    REQUIRE(cli::cmd_cone(model, 1.0, 0.0, "1", "composite", opts, os2) == 0);
    const auto comp = json::parse(os2.str());
    CHECK(comp["blocks"]["theta_theta"].get<double>() == 0.0);
    CHECK(comp["positive_definite"] == false);

    // homothety: non-radial entries scale by r^2
    std::ostringstream os3;
    REQUIRE(cli::cmd_cone(model, 2.0, 0.0, "1", "zero", opts, os3) == 0);
    const auto big = json::parse(os3.str());
    CHECK(std::abs(big["blocks"]["theta_theta"].get<double>() - 4.0 / 18.0) < 1e-15);
    CHECK(big["blocks"]["g_rr"].get<double>() == 1.0);

    // rigid models have no cone
    const auto rigid_path = tmp.write("rq.skm", catalog_model_text("rigid-quadratic"));
    std::ostringstream os4;
    CHECK(cli::cmd_cone(rigid_path, 1.0, 0.0, "", "zero", opts, os4) == 2);

    std::ostringstream os5;
    CHECK(cli::cmd_cone(model, -1.0, 0.0, "1", "zero", opts, os5) == 2);
}

TEST_CASE("catalog commands and selfcheck") {
    CommonOptions opts;
    opts.format = "structured";

    std::ostringstream os;
    REQUIRE(cli::cmd_catalog_list(opts, os) == 0);
    const auto list = json::parse(os.str());
    CHECK(list["entries"].size() >= 8);

    std::ostringstream os2;
    REQUIRE(cli::cmd_catalog_show("paper-n1-dual", opts, os2) == 0);
    const auto show = json::parse(os2.str());
    for (const auto& check : show["expected_value_checks"]) CHECK(check["passed"] == true);

    std::ostringstream os3;
    CHECK(cli::cmd_catalog_show("missing", opts, os3) == 2);

    // export then rebuild
    TempDir tmp;
    CommonOptions exp_opts;
    exp_opts.out = tmp.path("stu.skm");
    std::ostringstream os4;
    REQUIRE(cli::cmd_catalog_export("stu", exp_opts, os4) == 0);
    CHECK_NOTHROW(modelfile::build(modelfile::parse_file(tmp.path("stu.skm"))));

    std::ostringstream os5;
    REQUIRE(cli::cmd_selfcheck(opts, os5) == 0);
    const auto self = json::parse(os5.str());
    CHECK(self["all_passed"] == true);
    CHECK(self["failed"].get<int>() == 0);
}

TEST_CASE("reports are byte-identical across runs") {
    TempDir tmp;
    const auto model = tmp.write("paper-n1.skm", catalog_model_text("paper-n1"));
    for (const std::string format : {"table", "structured"}) {
        const auto a = run_analyze(model, {"1", "2+1i"}, format);
        const auto b = run_analyze(model, {"1", "2+1i"}, format);
        CHECK(a.text == b.text);
        CHECK(!a.text.empty());
    }
}
