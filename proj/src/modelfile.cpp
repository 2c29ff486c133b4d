#include "skgeo/modelfile.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

namespace skgeo::modelfile {

std::string to_string(Flavor f) { return f == Flavor::Rigid ? "rigid" : "local"; }
std::string to_string(ModelKind k) {
    return k == ModelKind::Prepotential ? "prepotential" : "section";
}

namespace {

std::string trim(std::string s) {
    const auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && issp(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::string current;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            if (!current.empty()) out.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

std::vector<double> split_reals(const std::string& s, std::size_t line) {
    std::vector<double> out;
    for (const auto& tok : split_names(s)) {
        double v = 0.0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size())
            throw ParseError("invalid number '" + tok + "' (line " + std::to_string(line) + ")",
                             line);
        out.push_back(v);
    }
    return out;
}

struct KeyValue {
    std::string value;
    std::size_t line;
    bool used = false;
};

using Section = std::map<std::string, KeyValue>;

[[noreturn]] void fail(const std::string& msg, std::size_t line) {
    throw ParseError(msg + " (line " + std::to_string(line) + ")", line);
}

class Document {
public:
    explicit Document(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        std::string current;
        std::size_t line = 0;
        while (std::getline(in, raw)) {
            ++line;
            // strip comments outside quotes
            bool quoted = false;
            std::string stripped;
            for (char c : raw) {
                if (c == '"') quoted = !quoted;
                if (c == '#' && !quoted) break;
                stripped += c;
            }
            const std::string s = trim(stripped);
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') fail("malformed section header", line);
                current = trim(s.substr(1, s.size() - 2));
                if (current.empty()) fail("empty section name", line);
                sections_[current];  // create
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos) fail("expected key = value", line);
            if (current.empty()) fail("key outside of any [section]", line);
            const std::string key = trim(s.substr(0, eq));
            const std::string value = unquote(trim(s.substr(eq + 1)));
            if (key.empty()) fail("empty key", line);
            auto& section = sections_[current];
            if (section.count(key)) fail("duplicate key '" + key + "'", line);
            section[key] = KeyValue{value, line};
        }
    }

    bool has(const std::string& name) const { return sections_.count(name) != 0; }

    Section& section(const std::string& name) {
        auto it = sections_.find(name);
        if (it == sections_.end()) throw ParseError("missing [" + name + "] section");
        return it->second;
    }

    std::string require(const std::string& section_name, const std::string& key) {
        auto& sec = section(section_name);
        auto it = sec.find(key);
        if (it == sec.end())
            throw ParseError("missing key '" + key + "' in [" + section_name + "]");
        it->second.used = true;
        return it->second.value;
    }

    std::optional<KeyValue> optional(const std::string& section_name, const std::string& key) {
        if (!has(section_name)) return std::nullopt;
        auto& sec = sections_[section_name];
        auto it = sec.find(key);
        if (it == sec.end()) return std::nullopt;
        it->second.used = true;
        return it->second;
    }

    void check_all_used() const {
        for (const auto& [sname, sec] : sections_)
            for (const auto& [key, kv] : sec)
                if (!kv.used) fail("unknown key '" + key + "' in [" + sname + "]", kv.line);
    }

private:
    std::map<std::string, Section> sections_;
};

}  // namespace

ModelDescription parse(const std::string& text) {
    Document doc(text);
    ModelDescription d;

    d.name = doc.require("model", "name");
    const std::string flavor = doc.require("model", "flavor");
    if (flavor == "rigid")
        d.flavor = Flavor::Rigid;
    else if (flavor == "local")
        d.flavor = Flavor::Local;
    else
        throw ParseError("flavor must be 'rigid' or 'local', got '" + flavor + "'");
    const std::string kind = doc.require("model", "kind");
    if (kind == "prepotential")
        d.kind = ModelKind::Prepotential;
    else if (kind == "section")
        d.kind = ModelKind::Section;
    else
        throw ParseError("kind must be 'prepotential' or 'section', got '" + kind + "'");

    d.coord_names = split_names(doc.require("variables", "coords"));
    if (d.coord_names.empty()) throw ParseError("coords must list at least one variable");
    if (auto ambient = doc.optional("variables", "ambient"))
        d.ambient_names = split_names(ambient->value);

    if (d.kind == ModelKind::Prepotential) {
        if (d.ambient_names.empty())
            throw ParseError("prepotential models need an 'ambient' variable list");
        d.prepotential = doc.require("prepotential", "f");
        for (const auto& x : d.ambient_names) d.coord_map.push_back(doc.require("prepotential", x));
        if (doc.has("section")) throw ParseError("[section] not allowed for prepotential kind");
        if (doc.has("symplectic"))
            throw ParseError("[symplectic] can only accompany an explicit section");
    } else {
        const int n = static_cast<int>(d.coord_names.size());
        const int dim = d.flavor == Flavor::Rigid ? 2 * n : 2 * (n + 1);
        for (int k = 0; k < dim; ++k)
            d.section.push_back(doc.require("section", "v" + std::to_string(k)));
        if (doc.has("symplectic")) {
            std::vector<std::vector<double>> omega;
            for (int r = 0; r < dim; ++r) {
                auto row = doc.optional("symplectic", "row" + std::to_string(r));
                if (!row) throw ParseError("missing row" + std::to_string(r) + " in [symplectic]");
                auto vals = split_reals(row->value, row->line);
                if (static_cast<int>(vals.size()) != dim)
                    fail("row" + std::to_string(r) + " must have " + std::to_string(dim) +
                             " entries",
                         row->line);
                omega.push_back(std::move(vals));
            }
            d.omega = std::move(omega);
        }
        if (doc.has("prepotential"))
            throw ParseError("[prepotential] not allowed for section kind");
    }

    for (const auto& coord : d.coord_names) d.base_point.push_back(doc.require("base_point", coord));

    if (doc.has("scan_box")) {
        ScanBox box;
        for (const auto& coord : d.coord_names) {
            auto kv = doc.optional("scan_box", coord);
            if (!kv) throw ParseError("scan_box must cover every coordinate ('" + coord + "')");
            auto vals = split_reals(kv->value, kv->line);
            if (vals.size() != 4)
                fail("scan_box entries need 4 numbers: re_lo re_hi im_lo im_hi", kv->line);
            if (vals[0] > vals[1] || vals[2] > vals[3]) fail("empty scan box range", kv->line);
            box.ranges.push_back({vals[0], vals[1], vals[2], vals[3]});
        }
        d.scan_box = std::move(box);
    }

    doc.check_all_used();
    return d;
}

ModelDescription parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

namespace {

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (k) out += " ";
        out += names[k];
    }
    return out;
}

}  // namespace

std::string serialize(const ModelDescription& d) {
    std::ostringstream out;
    out << "[model]\n";
    out << "name = " << d.name << "\n";
    out << "flavor = " << to_string(d.flavor) << "\n";
    out << "kind = " << to_string(d.kind) << "\n\n";

    out << "[variables]\n";
    out << "coords = " << join_names(d.coord_names) << "\n";
    if (!d.ambient_names.empty()) out << "ambient = " << join_names(d.ambient_names) << "\n";
    out << "\n";

    if (d.kind == ModelKind::Prepotential) {
        out << "[prepotential]\n";
        out << "f = " << quote(d.prepotential) << "\n";
        for (std::size_t k = 0; k < d.ambient_names.size(); ++k)
            out << d.ambient_names[k] << " = " << quote(d.coord_map[k]) << "\n";
        out << "\n";
    } else {
        out << "[section]\n";
        for (std::size_t k = 0; k < d.section.size(); ++k)
            out << "v" << k << " = " << quote(d.section[k]) << "\n";
        out << "\n";
        if (d.omega) {
            out << "[symplectic]\n";
            for (std::size_t r = 0; r < d.omega->size(); ++r) {
                out << "row" << r << " =";
                for (double x : (*d.omega)[r]) out << " " << holo::format_double(x);
                out << "\n";
            }
            out << "\n";
        }
    }

    out << "[base_point]\n";
    for (std::size_t k = 0; k < d.coord_names.size(); ++k)
        out << d.coord_names[k] << " = " << quote(d.base_point[k]) << "\n";

    if (d.scan_box) {
        out << "\n[scan_box]\n";
        for (std::size_t k = 0; k < d.coord_names.size(); ++k) {
            const auto& r = d.scan_box->ranges[k];
            out << d.coord_names[k] << " = " << holo::format_double(r[0]) << " "
                << holo::format_double(r[1]) << " " << holo::format_double(r[2]) << " "
                << holo::format_double(r[3]) << "\n";
        }
    }
    return out.str();
}

std::string digest(const ModelDescription& d) {
    const std::string text = serialize(d);
    std::uint64_t hash = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

symplectic::ComplexVector BuiltModel::parse_point(const std::string& comma_separated) const {
    const auto parts = split_names(comma_separated);
    if (static_cast<int>(parts.size()) != coord_count())
        throw DimensionError("expected " + std::to_string(coord_count()) +
                             " comma-separated coordinates, got " +
                             std::to_string(parts.size()));
    symplectic::ComplexVector z(coord_count());
    for (std::size_t k = 0; k < parts.size(); ++k)
        z(static_cast<Eigen::Index>(k)) = holo::parse_complex(parts[k]);
    return z;
}

symplectic::ComplexVector BuiltModel::base_point() const {
    symplectic::ComplexVector z(coord_count());
    for (std::size_t k = 0; k < description.base_point.size(); ++k)
        z(static_cast<Eigen::Index>(k)) = holo::parse_complex(description.base_point[k]);
    return z;
}

BuiltModel build(const ModelDescription& d) {
    BuiltModel out;
    out.description = d;
    const int n = static_cast<int>(d.coord_names.size());

    symplectic::ComplexVector base(n);
    for (int k = 0; k < n; ++k)
        base(k) = holo::parse_complex(d.base_point[static_cast<std::size_t>(k)]);

    const auto frame_for = [&](int m) {
        if (!d.omega) return symplectic::SymplecticFrame::canonical(m);
        const int dim = 2 * m;
        if (static_cast<int>(d.omega->size()) != dim)
            throw DimensionError("symplectic form has wrong dimension");
        symplectic::RealMatrix omega(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                omega(r, c) = (*d.omega)[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        return symplectic::SymplecticFrame::from_form(std::move(omega));
    };

    if (d.kind == ModelKind::Prepotential) {
        const auto expected_ambient =
            d.flavor == Flavor::Rigid ? static_cast<std::size_t>(n)
                                      : static_cast<std::size_t>(n + 1);
        if (d.ambient_names.size() != expected_ambient)
            throw DimensionError("expected " + std::to_string(expected_ambient) +
                                 " ambient coordinates for this flavor");
        const holo::ExprPtr f = holo::parse(d.prepotential, d.ambient_names);
        std::vector<holo::ExprPtr> map;
        map.reserve(d.coord_map.size());
        for (const auto& text : d.coord_map) map.push_back(holo::parse(text, d.coord_names));
        if (d.flavor == Flavor::Rigid) {
            out.rigid_prepotential = rigid::PrepotentialModel(f, map, base);
            out.rigid_section = rigid::make_section(*out.rigid_prepotential);
        } else {
            out.local_prepotential = local::PrepotentialModel(f, map, base);
            out.local_section = local::build_section(*out.local_prepotential);
        }
    } else {
        std::vector<holo::ExprPtr> v;
        v.reserve(d.section.size());
        for (const auto& text : d.section) v.push_back(holo::parse(text, d.coord_names));
        if (d.flavor == Flavor::Rigid) {
            out.rigid_section = rigid::SectionModel(frame_for(n), std::move(v), base);
        } else {
            out.local_section = local::SectionModel(frame_for(n + 1), std::move(v), base);
        }
    }
    return out;
}

}  // namespace skgeo::modelfile
