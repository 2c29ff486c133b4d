// skgeo: analyze, transform, and scan special Kaehler models from the
// command line.  See README.md for the model-file format and examples.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skgeo/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"special Kaehler geometry toolkit"};
    app.require_subcommand(1);

    skgeo::cli::CommonOptions common;
    std::string model, matrix, factor, out_model, box, at_point, a_mode = "zero", name;
    std::vector<std::string> at_points;
    int samples = 1000;
    std::uint64_t seed = 12345;
    double radius = 1.0, theta = 0.0;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", common.format, "report format: table|structured")
            ->check(CLI::IsMember({"table", "structured"}));
        cmd->add_option("--out", common.out, "write the report to this file");
        cmd->add_option("--tol", common.tol, "operation tolerance for report verdicts");
    };

    auto* analyze = app.add_subcommand(
        "analyze", "Kaehler potential, metric, kinetic matrix, constraints, existence");
    analyze->add_option("model", model, "model file")->required();
    analyze->add_option("--at", at_points,
                        "evaluation point (comma-separated complex coordinates); "
                        "repeatable; defaults to the base point");
    add_common(analyze);

    auto* transform = app.add_subcommand(
        "transform", "apply a symplectic duality rotation and write the new model");
    transform->add_option("model", model, "model file")->required();
    transform->add_option("--matrix", matrix, "whitespace-separated real 2m x 2m matrix file")
        ->required();
    transform->add_option("--factor", factor,
                          "Kaehler rescaling e^{f(z)} as a rational expression (local only)");
    transform->add_option("--out-model", out_model, "path for the transformed model file")
        ->required();
    add_common(transform);

    auto* scan = app.add_subcommand(
        "scan", "sample a coordinate box for metric positivity and Im N negativity");
    scan->add_option("model", model, "model file")->required();
    scan->add_option("--box", box,
                     "per-coordinate ranges 're_lo re_hi im_lo im_hi', ';'-separated; "
                     "defaults to the model's [scan_box]");
    scan->add_option("--samples", samples, "number of sample points");
    scan->add_option("--seed", seed, "RNG seed (reports are deterministic per seed)");
    add_common(scan);

    auto* cone = app.add_subcommand("cone", "superconformal cone metric at a point");
    cone->add_option("model", model, "model file (local flavor)")->required();
    cone->add_option("--r", radius, "cone radius (default 1)");
    cone->add_option("--theta", theta, "angular coordinate (default 0)");
    cone->add_option("--at", at_point, "scalar point; defaults to the base point");
    cone->add_option("--a-mode", a_mode, "connection mode: zero|composite");
    add_common(cone);

    auto* catalog = app.add_subcommand("catalog", "built-in example models");
    catalog->require_subcommand(1);
    auto* cat_list = catalog->add_subcommand("list", "list catalog entries");
    add_common(cat_list);
    auto* cat_show = catalog->add_subcommand("show", "entry details and expected values");
    cat_show->add_option("name", name, "entry name")->required();
    add_common(cat_show);
    auto* cat_export = catalog->add_subcommand("export", "write an entry as a model file");
    cat_export->add_option("name", name, "entry name")->required();
    add_common(cat_export);

    auto* selfcheck =
        app.add_subcommand("selfcheck", "recompute every catalog expected-values table");
    add_common(selfcheck);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    using namespace skgeo::cli;
    if (analyze->parsed()) return cmd_analyze(model, at_points, common, std::cout);
    if (transform->parsed())
        return cmd_transform(model, matrix, factor, out_model, common, std::cout);
    if (scan->parsed()) return cmd_scan(model, box, samples, seed, common, std::cout);
    if (cone->parsed()) return cmd_cone(model, radius, theta, at_point, a_mode, common, std::cout);
    if (catalog->parsed()) {
        if (cat_list->parsed()) return cmd_catalog_list(common, std::cout);
        if (cat_show->parsed()) return cmd_catalog_show(name, common, std::cout);
        if (cat_export->parsed()) return cmd_catalog_export(name, common, std::cout);
    }
    if (selfcheck->parsed()) return cmd_selfcheck(common, std::cout);
    return 1;
}
