#include "skgeo/report.hpp"

#include <sstream>

#include "skgeo/errors.hpp"

namespace skgeo::report {

Json complex_matrix(const Eigen::MatrixXcd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(holo::format_complex(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json real_matrix(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json complex_vector(const Eigen::VectorXcd& v) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(holo::format_complex(v(k)));
    return out;
}

std::string complex_scalar(holo::Complex z) { return holo::format_complex(z); }

std::string point_string(const Eigen::VectorXcd& z) {
    std::string out;
    for (Eigen::Index k = 0; k < z.size(); ++k) {
        if (k) out += ",";
        out += holo::format_complex(z(k));
    }
    return out;
}

namespace {

bool is_scalar_array(const Json& j) {
    if (!j.is_array()) return false;
    for (const auto& item : j)
        if (item.is_object() || item.is_array()) return false;
    return true;
}

std::string scalar_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void render_node(const Json& node, std::ostream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            if (value.is_object() || (value.is_array() && !is_scalar_array(value))) {
                out << pad << key << ":\n";
                render_node(value, out, indent + 1);
            } else if (is_scalar_array(value)) {
                out << pad << key << ": [";
                bool first = true;
                for (const auto& item : value) {
                    if (!first) out << ", ";
                    out << scalar_text(item);
                    first = false;
                }
                out << "]\n";
            } else {
                out << pad << key << ": " << scalar_text(value) << "\n";
            }
        }
    } else if (node.is_array()) {
        for (const auto& item : node) {
            if (is_scalar_array(item)) {
                out << pad << "[";
                bool first = true;
                for (const auto& x : item) {
                    if (!first) out << ", ";
                    out << scalar_text(x);
                    first = false;
                }
                out << "]\n";
            } else if (item.is_object() || item.is_array()) {
                out << pad << "-\n";
                render_node(item, out, indent + 1);
            } else {
                out << pad << scalar_text(item) << "\n";
            }
        }
    } else {
        out << pad << scalar_text(node) << "\n";
    }
}

}  // namespace

std::string Report::to_table() const {
    std::ostringstream out;
    render_node(doc, out, 0);
    return out.str();
}

std::string Report::to_json() const { return doc.dump(2) + "\n"; }

std::string Report::render(const std::string& format) const {
    if (format == "table") return to_table();
    if (format == "structured") return to_json();
    throw ParseError("unknown format '" + format + "' (expected table or structured)");
}

}  // namespace skgeo::report
