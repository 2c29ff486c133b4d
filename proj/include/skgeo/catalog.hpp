#pragma once

// Built-in named models with certified expected values.  Each entry carries a
// complete model description (exportable to the model-file format), a short
// note on where every expected number comes from, and a self-test that
// recomputes the table through the toolkit.

#include <string>
#include <vector>

#include "skgeo/modelfile.hpp"

namespace skgeo::catalog {

struct Expectation {
    std::string quantity;  // K | exp_minus_K | metric | kinetic | exists | constraint
    std::string point;     // comma-separated complex coordinates
    std::vector<std::vector<std::string>> value;  // complex literals ("1"/"0" for exists)
    double tolerance;
    std::string provenance;  // where the number comes from
};

struct Entry {
    modelfile::ModelDescription model;
    std::string description;
    std::string origin;  // "worked-example" | "classic"
    std::vector<Expectation> expectations;
};

const std::vector<Entry>& entries();

/// Lookup by name; unknown names raise an Error listing what is available.
const Entry& get(const std::string& name);

struct CheckResult {
    std::string entry;
    std::string quantity;
    std::string point;
    bool passed;
    double residual;
    double tolerance;
};

/// Recompute one entry's expected-values table through the toolkit.
std::vector<CheckResult> self_test(const Entry& entry);

/// Run every entry's table; the catalog is healthy iff all results pass.
std::vector<CheckResult> self_test_all();

}  // namespace skgeo::catalog
