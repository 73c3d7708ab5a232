#include "mrf/instance.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "mrf/error.hpp"
#include "mrf/indexing.hpp"

namespace mrf {

using nlohmann::json;
using nlohmann::ordered_json;

JointTable Instance::table() const {
    if (const auto* t = std::get_if<JointTable>(&source)) return *t;
    return synthesize_pmf(std::get<PotentialFamily>(source));
}

const PotentialFamily* Instance::family() const {
    return std::get_if<PotentialFamily>(&source);
}

namespace {

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
    fail(ErrorCode::Schema, where + ": " + what);
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        schema_fail(where, std::string("missing field '") + key + "'");
    return obj.at(key);
}

// A probability/potential literal: either a string rational or a number.
struct ParsedValue {
    bool was_string = false;
    Rat exact;
    double approx = 0.0;
};

ParsedValue parse_value(const json& v, const std::string& where) {
    ParsedValue out;
    if (v.is_string()) {
        auto r = parse_rational(v.get<std::string>());
        if (!r) schema_fail(where, "cannot parse '" + v.get<std::string>() + "' as a rational");
        out.was_string = true;
        out.exact = *r;
        out.approx = rat_to_double(out.exact);
        return out;
    }
    if (v.is_number()) {
        out.approx = v.get<double>();
        out.exact = rat_from_double(out.approx);
        return out;
    }
    schema_fail(where, "expected a number or a rational string");
}

std::vector<int> parse_symbol_tuple(const json& arr, const AlphabetSpec& alphabet,
                                    const std::vector<int>& vertices, const std::string& where) {
    if (!arr.is_array() || arr.size() != vertices.size())
        schema_fail(where, "'x' must list one symbol per variable");
    std::vector<int> digits(vertices.size());
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        if (!arr[k].is_string()) schema_fail(where, "symbols must be strings");
        auto idx = alphabet.symbol_index(vertices[k], arr[k].get<std::string>());
        if (!idx)
            schema_fail(where, "unknown symbol '" + arr[k].get<std::string>() +
                                   "' for variable index " + std::to_string(vertices[k] - 1));
        digits[k] = *idx;
    }
    return digits;
}

}  // namespace

Instance parse_instance_json(const json& doc, const ParseOptions& opts) {
    if (!doc.is_object()) schema_fail("instance", "top level must be an object");
    std::string name = doc.contains("name") && doc.at("name").is_string()
                           ? doc.at("name").get<std::string>()
                           : "unnamed";

    const json& vars = require_field(doc, "variables", "instance");
    if (!vars.is_array() || vars.empty()) schema_fail("variables", "must be a nonempty array");
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> symbols;
    for (std::size_t k = 0; k < vars.size(); ++k) {
        const std::string where = "variables[" + std::to_string(k) + "]";
        const json& v = vars[k];
        const json& nm = require_field(v, "name", where);
        const json& al = require_field(v, "alphabet", where);
        if (!nm.is_string()) schema_fail(where, "'name' must be a string");
        if (!al.is_array() || al.empty()) schema_fail(where, "'alphabet' must be nonempty");
        names.push_back(nm.get<std::string>());
        std::vector<std::string> syms;
        for (const json& s : al) {
            if (!s.is_string()) schema_fail(where, "alphabet symbols must be strings");
            syms.push_back(s.get<std::string>());
        }
        symbols.push_back(std::move(syms));
    }
    if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
        schema_fail("variables", "duplicate variable names");
    const int n = static_cast<int>(names.size());
    AlphabetSpec alphabet(symbols);

    const json& edges_json = require_field(doc, "edges", "instance");
    if (!edges_json.is_array()) schema_fail("edges", "must be an array of index pairs");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t k = 0; k < edges_json.size(); ++k) {
        const json& e = edges_json[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            schema_fail("edges[" + std::to_string(k) + "]", "must be a pair of 0-based indices");
        int a = e[0].get<int>(), b = e[1].get<int>();
        if (a < 0 || a >= n || b < 0 || b >= n)
            fail(ErrorCode::DanglingVertex,
                 "edges[" + std::to_string(k) + "] references variable index out of range");
        edges.emplace_back(a + 1, b + 1);
    }
    Graph graph(n, std::move(edges));

    const json& dist = require_field(doc, "distribution", "instance");
    const json& type = require_field(dist, "type", "distribution");
    if (!type.is_string()) schema_fail("distribution", "'type' must be a string");

    std::vector<int> all(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) all[static_cast<std::size_t>(v - 1)] = v;

    std::optional<std::variant<JointTable, PotentialFamily>> source;
    if (type.get<std::string>() == "table") {
        const json& entries = require_field(dist, "entries", "distribution");
        if (!entries.is_array()) schema_fail("distribution.entries", "must be an array");
        std::vector<ParsedValue> values(alphabet.total_configurations());
        std::vector<bool> listed(alphabet.total_configurations(), false);
        bool all_strings = true;
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const std::string where = "distribution.entries[" + std::to_string(k) + "]";
            const json& entry = entries[k];
            std::vector<int> digits =
                parse_symbol_tuple(require_field(entry, "x", where), alphabet, all, where);
            std::size_t idx = alphabet.index_of(digits);
            if (listed[idx]) schema_fail(where, "duplicate configuration");
            listed[idx] = true;
            values[idx] = parse_value(require_field(entry, "p", where), where);
            all_strings = all_strings && values[idx].was_string;
        }
        const bool exact = all_strings || opts.force_exact;
        if (exact) {
            std::vector<Rat> w(values.size());
            for (std::size_t k = 0; k < values.size(); ++k) w[k] = values[k].exact;
            source = JointTable::exact(alphabet, std::move(w));
        } else {
            std::vector<double> w(values.size());
            for (std::size_t k = 0; k < values.size(); ++k) w[k] = values[k].approx;
            source = JointTable::dense(alphabet, std::move(w));
        }
    } else if (type.get<std::string>() == "gibbs") {
        const json& pots = require_field(dist, "potentials", "distribution");
        if (!pots.is_array()) schema_fail("distribution.potentials", "must be an array");
        // First pass decides the mode: exact iff every literal is a string.
        bool all_strings = true;
        for (const json& p : pots) {
            if (!p.is_object() || !p.contains("table")) continue;
            for (const json& cell : p.at("table"))
                if (cell.is_object() && cell.contains("value") && !cell.at("value").is_string())
                    all_strings = false;
        }
        const bool exact = all_strings || opts.force_exact;

        std::map<Clique, PotentialTable> tables;
        for (std::size_t k = 0; k < pots.size(); ++k) {
            const std::string where = "distribution.potentials[" + std::to_string(k) + "]";
            const json& p = pots[k];
            const json& cj = require_field(p, "clique", where);
            if (!cj.is_array() || cj.empty()) schema_fail(where, "'clique' must be nonempty");
            Clique clique;
            for (const json& m : cj) {
                if (!m.is_number_integer()) schema_fail(where, "clique members are 0-based indices");
                int v = m.get<int>();
                if (v < 0 || v >= n)
                    fail(ErrorCode::DanglingVertex, where + ": clique member out of range");
                clique.push_back(v + 1);
            }
            std::sort(clique.begin(), clique.end());
            clique.erase(std::unique(clique.begin(), clique.end()), clique.end());
            if (tables.count(clique)) schema_fail(where, "duplicate clique");

            AlphabetSpec sub = alphabet.restrict_to(clique);
            std::vector<ParsedValue> values(sub.total_configurations());
            for (auto& v : values) {
                v.exact = 1;
                v.approx = 1.0;
            }
            const json& cells = require_field(p, "table", where);
            if (!cells.is_array()) schema_fail(where, "'table' must be an array");
            for (std::size_t c = 0; c < cells.size(); ++c) {
                const std::string cw = where + ".table[" + std::to_string(c) + "]";
                const json& cell = cells[c];
                std::vector<int> digits =
                    parse_symbol_tuple(require_field(cell, "x", cw), alphabet, clique, cw);
                values[sub.index_of(digits)] = parse_value(require_field(cell, "value", cw), cw);
            }
            if (exact) {
                std::vector<Rat> w(values.size());
                for (std::size_t c = 0; c < values.size(); ++c) w[c] = values[c].exact;
                tables.emplace(clique, PotentialTable::exact(std::move(w)));
            } else {
                std::vector<double> w(values.size());
                for (std::size_t c = 0; c < values.size(); ++c) w[c] = values[c].approx;
                tables.emplace(clique, PotentialTable::dense(std::move(w)));
            }
        }
        source = PotentialFamily(graph, alphabet, std::move(tables));
    } else {
        schema_fail("distribution", "unknown type '" + type.get<std::string>() + "'");
    }

    std::optional<Lumping> lumping;
    if (doc.contains("lumping")) {
        const json& lj = doc.at("lumping");
        if (!lj.is_array()) schema_fail("lumping", "must be an array of per-vertex maps");
        std::vector<std::map<std::string, std::string>> maps(static_cast<std::size_t>(n));
        std::vector<bool> given(static_cast<std::size_t>(n), false);
        for (std::size_t k = 0; k < lj.size(); ++k) {
            const std::string where = "lumping[" + std::to_string(k) + "]";
            const json& item = lj[k];
            const json& vj = require_field(item, "vertex", where);
            if (!vj.is_number_integer()) schema_fail(where, "'vertex' must be a 0-based index");
            int v = vj.get<int>();
            if (v < 0 || v >= n)
                fail(ErrorCode::DanglingVertex, where + ": vertex index out of range");
            if (given[static_cast<std::size_t>(v)]) schema_fail(where, "duplicate vertex");
            given[static_cast<std::size_t>(v)] = true;
            const json& mj = require_field(item, "map", where);
            if (!mj.is_object()) schema_fail(where, "'map' must be an object");
            for (auto it = mj.begin(); it != mj.end(); ++it) {
                if (!it.value().is_string()) schema_fail(where, "map targets must be strings");
                maps[static_cast<std::size_t>(v)][it.key()] = it.value().get<std::string>();
            }
        }
        // vertices without an entry keep the identity map
        for (int v = 1; v <= n; ++v) {
            if (given[static_cast<std::size_t>(v - 1)]) continue;
            for (const std::string& s : alphabet.symbols(v))
                maps[static_cast<std::size_t>(v - 1)][s] = s;
        }
        lumping = Lumping::from_symbol_maps(alphabet, maps);
    }

    return Instance{std::move(name), std::move(graph),    std::move(alphabet),
                    std::move(names), std::move(*source), std::move(lumping)};
}

Instance parse_instance(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Schema, "cannot open instance file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
    }
    return parse_instance_json(doc, opts);
}

nlohmann::ordered_json serialize_instance(const Instance& instance) {
    ordered_json doc;
    doc["name"] = instance.name;
    doc["variables"] = ordered_json::array();
    for (int v = 1; v <= instance.alphabet.vertex_count(); ++v) {
        ordered_json var;
        var["name"] = instance.variable_names[static_cast<std::size_t>(v - 1)];
        var["alphabet"] = instance.alphabet.symbols(v);
        doc["variables"].push_back(std::move(var));
    }
    doc["edges"] = ordered_json::array();
    for (auto [a, b] : instance.graph.edges())
        doc["edges"].push_back(ordered_json::array({a - 1, b - 1}));

    ordered_json dist;
    if (const auto* t = std::get_if<JointTable>(&instance.source)) {
        dist["type"] = "table";
        dist["entries"] = ordered_json::array();
        for (std::size_t idx = 0; idx < t->size(); ++idx) {
            if (t->is_zero(idx)) continue;  // unlisted entries default to zero
            ordered_json entry;
            entry["x"] = t->alphabet().labels_at(idx);
            if (t->mode() == Mode::Exact)
                entry["p"] = rat_to_string(t->weight_exact(idx));
            else
                entry["p"] = t->weight_float(idx);
            dist["entries"].push_back(std::move(entry));
        }
    } else {
        const PotentialFamily& f = std::get<PotentialFamily>(instance.source);
        dist["type"] = "gibbs";
        dist["potentials"] = ordered_json::array();
        for (const auto& [clique, table] : f.potentials()) {
            ordered_json pj;
            pj["clique"] = ordered_json::array();
            for (int v : clique) pj["clique"].push_back(v - 1);
            pj["table"] = ordered_json::array();
            AlphabetSpec sub = f.alphabet().restrict_to(clique);
            for (std::size_t idx = 0; idx < sub.total_configurations(); ++idx) {
                ordered_json cell;
                cell["x"] = sub.labels_at(idx);
                if (table.mode() == Mode::Exact)
                    cell["value"] = rat_to_string(table.value_exact(idx));
                else
                    cell["value"] = table.value_as_double(idx);
                pj["table"].push_back(std::move(cell));
            }
            dist["potentials"].push_back(std::move(pj));
        }
    }
    doc["distribution"] = std::move(dist);

    if (instance.lumping) {
        doc["lumping"] = ordered_json::array();
        const Lumping& l = *instance.lumping;
        for (int v = 1; v <= instance.alphabet.vertex_count(); ++v) {
            ordered_json item;
            item["vertex"] = v - 1;
            ordered_json m;
            for (std::size_t x = 0; x < instance.alphabet.cardinality(v); ++x)
                m[instance.alphabet.symbols(v)[x]] =
                    l.codomain().symbols(v)[static_cast<std::size_t>(l.map(v, static_cast<int>(x)))];
            item["map"] = std::move(m);
            doc["lumping"].push_back(std::move(item));
        }
    }
    return doc;
}

}  // namespace mrf
