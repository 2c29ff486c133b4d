#pragma once

// Command layer behind the CLI.  Each command takes already-parsed options,
// writes its report to the given stream, and returns the process exit code:
//   0 success, 1 usage/parse error, 2 domain/precondition failure,
//   3 numerical degeneracy.
// The thin CLI in tools/ maps argv onto these entry points; tests drive them
// in-process.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace skgeo::cli {

struct CommonOptions {
    std::string format = "table";  // table | structured
    std::string out;               // write the report here instead of the stream
    double tol = 1e-9;             // operation tolerance used for report verdicts
};

int cmd_analyze(const std::string& model_path, const std::vector<std::string>& at_points,
                const CommonOptions& opts, std::ostream& os);

int cmd_transform(const std::string& model_path, const std::string& matrix_path,
                  const std::string& kahler_factor, const std::string& out_model_path,
                  const CommonOptions& opts, std::ostream& os);

int cmd_scan(const std::string& model_path, const std::string& box_override, int samples,
             std::uint64_t seed, const CommonOptions& opts, std::ostream& os);

int cmd_cone(const std::string& model_path, double r, double theta, const std::string& at,
             const std::string& a_mode, const CommonOptions& opts, std::ostream& os);

int cmd_catalog_list(const CommonOptions& opts, std::ostream& os);
int cmd_catalog_show(const std::string& name, const CommonOptions& opts, std::ostream& os);
int cmd_catalog_export(const std::string& name, const CommonOptions& opts, std::ostream& os);

int cmd_selfcheck(const CommonOptions& opts, std::ostream& os);

/// Shared exception-to-exit-code mapping.
int exit_code_for_current_exception();

}  // namespace skgeo::cli
