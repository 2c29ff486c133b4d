#pragma once

// Reports: every command assembles one structured document (ordered JSON) and
// renders it either as an indented human-readable table or as JSON.  Reports
// contain no timestamps or addresses, so a fixed model, flags, and seed give
// byte-identical output.  Complex numbers are serialized as "a+bi" strings
// with 17 significant digits; every report carries the tolerance context its
// verdicts were certified with.

#include <string>

#include <json.hpp>

#include <Eigen/Dense>

#include "skgeo/holo.hpp"

namespace skgeo::report {

using Json = nlohmann::ordered_json;

/// Complex matrix as an array of arrays of "a+bi" strings.
Json complex_matrix(const Eigen::MatrixXcd& m);

/// Real matrix as an array of arrays of numbers.
Json real_matrix(const Eigen::MatrixXd& m);

/// Complex vector as an array of "a+bi" strings.
Json complex_vector(const Eigen::VectorXcd& v);

/// "a+bi" scalar.
std::string complex_scalar(holo::Complex z);

/// Point formatted as comma-separated "a+bi" coordinates.
std::string point_string(const Eigen::VectorXcd& z);

struct Report {
    Json doc;

    std::string to_table() const;
    std::string to_json() const;
    std::string render(const std::string& format) const;  // "table" | "structured"
};

}  // namespace skgeo::report
