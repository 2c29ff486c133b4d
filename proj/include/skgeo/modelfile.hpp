#pragma once

// Model files: a line-oriented structured text format describing one rigid or
// local model, either by prepotential + parametrization or by an explicit
// symplectic section.  The format is diff-friendly and hand-editable:
//
//   # comment
//   [model]
//   name = paper-n1
//   flavor = local              # rigid | local
//   kind = prepotential         # prepotential | section
//
//   [variables]
//   coords = z                  # scalar coordinates z^alpha
//   ambient = X0 X1             # ambient coordinates (prepotential kind)
//
//   [prepotential]
//   f = "-i*X0*X1"
//   X0 = "1"                    # parametrization, one entry per ambient name
//   X1 = "z"
//
//   [section]                   # section kind instead of [prepotential]
//   v0 = "1"
//   ...
//
//   [symplectic]                # optional, canonical when omitted
//   row0 = 0 0 1 0
//   ...
//
//   [base_point]
//   z = "1+0i"
//
//   [scan_box]                  # optional: re_lo re_hi im_lo im_hi per coord
//   z = 0.1 3 -2 2
//
// Expression values may be double-quoted; quoting is optional on input and
// always emitted on output.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skgeo/errors.hpp"
#include "skgeo/local.hpp"
#include "skgeo/rigid.hpp"

namespace skgeo::modelfile {

enum class Flavor { Rigid, Local };
enum class ModelKind { Prepotential, Section };

std::string to_string(Flavor f);
std::string to_string(ModelKind k);

struct ScanBox {
    // per coordinate: {re_lo, re_hi, im_lo, im_hi}
    std::vector<std::array<double, 4>> ranges;
};

struct ModelDescription {
    std::string name;
    Flavor flavor = Flavor::Local;
    ModelKind kind = ModelKind::Prepotential;
    std::vector<std::string> coord_names;    // z^1..z^n
    std::vector<std::string> ambient_names;  // X^0..X^n (local) or X^1..X^n (rigid)
    std::string prepotential;                // kind == Prepotential
    std::vector<std::string> coord_map;      // Z^I(z) texts, one per ambient name
    std::vector<std::string> section;        // v texts, kind == Section
    std::optional<std::vector<std::vector<double>>> omega;  // row-major, optional
    std::vector<std::string> base_point;     // complex literals, one per coord
    std::optional<ScanBox> scan_box;
};

/// Parse model text; ParseError messages carry 1-based line numbers.
ModelDescription parse(const std::string& text);
ModelDescription parse_file(const std::string& path);

/// Canonical serialization (parse(serialize(d)) describes the same model).
std::string serialize(const ModelDescription& d);

/// FNV-1a digest of the canonical serialization, for report provenance.
std::string digest(const ModelDescription& d);

/// A description compiled into geometry objects.  The section model is
/// always populated; the prepotential model only for prepotential kind.
struct BuiltModel {
    ModelDescription description;
    std::optional<rigid::PrepotentialModel> rigid_prepotential;
    std::optional<rigid::SectionModel> rigid_section;
    std::optional<local::PrepotentialModel> local_prepotential;
    std::optional<local::SectionModel> local_section;

    bool is_local() const { return description.flavor == Flavor::Local; }
    int coord_count() const { return static_cast<int>(description.coord_names.size()); }
    symplectic::ComplexVector parse_point(const std::string& comma_separated) const;
    symplectic::ComplexVector base_point() const;
};

BuiltModel build(const ModelDescription& d);

}  // namespace skgeo::modelfile
