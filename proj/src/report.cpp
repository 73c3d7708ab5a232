#include "mrf/report.hpp"

#include <sstream>

#include "mrf/error.hpp"
#include "mrf/info.hpp"

namespace mrf {

using nlohmann::ordered_json;

namespace {

ordered_json residuals_json(const std::vector<double>& residuals) {
    ordered_json arr = ordered_json::array();
    for (double r : residuals) arr.push_back(format_real(r));
    return arr;
}

ordered_json edges_json(const Graph& g, const std::vector<std::string>& names) {
    ordered_json arr = ordered_json::array();
    for (auto [a, b] : g.edges())
        arr.push_back(ordered_json::array({names[static_cast<std::size_t>(a - 1)],
                                           names[static_cast<std::size_t>(b - 1)]}));
    return arr;
}

ordered_json clique_json(const Clique& c, const std::vector<std::string>& names) {
    ordered_json arr = ordered_json::array();
    for (int v : c) arr.push_back(names[static_cast<std::size_t>(v - 1)]);
    return arr;
}

ordered_json family_json(const PotentialFamily& f, const std::vector<std::string>& names) {
    ordered_json arr = ordered_json::array();
    for (const auto& [clique, table] : f.potentials()) {
        ordered_json pj;
        pj["clique"] = clique_json(clique, names);
        pj["table"] = ordered_json::array();
        AlphabetSpec sub = f.alphabet().restrict_to(clique);
        for (std::size_t idx = 0; idx < sub.total_configurations(); ++idx) {
            ordered_json cell;
            cell["y"] = sub.labels_at(idx);
            cell["value"] = table.mode() == Mode::Exact
                                ? ordered_json(rat_to_string(table.value_exact(idx)))
                                : ordered_json(format_real(table.value_as_double(idx)));
            pj["table"].push_back(std::move(cell));
        }
        arr.push_back(std::move(pj));
    }
    return arr;
}

}  // namespace

ordered_json analysis_report(const Instance& instance, const AnalysisOptions& opts) {
    const Graph& g = opts.graph_override ? *opts.graph_override : instance.graph;
    const std::vector<std::string>& names = instance.variable_names;
    JointTable t = instance.table();

    ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["instance"] = instance.name;
    if (opts.seed) doc["seed"] = *opts.seed;
    doc["mode"] = t.mode() == Mode::Exact ? "exact" : "float";
    doc["tolerance"] = format_real(opts.tol);
    doc["graph"] = ordered_json{{"vertices", names}, {"edges", edges_json(g, names)}};

    MrfVerdict by_def = is_mrf(t, g, MrfMethod::Definition, opts.tol);
    MrfVerdict by_ent = is_mrf(t, g, MrfMethod::Entropy, opts.tol);
    ordered_json mrf;
    mrf["holds"] = by_def.holds;
    mrf["residuals"] = residuals_json(by_def.residuals);
    mrf["methods_agree"] = by_def.holds == by_ent.holds;
    if (by_def.witness) {
        mrf["witness"] =
            ordered_json{{"vertex", names[static_cast<std::size_t>(by_def.witness->vertex - 1)]},
                         {"configuration", by_def.witness->config}};
    } else {
        mrf["witness"] = nullptr;
    }
    mrf["entropy_bits"] = format_real(entropy(t));
    doc["mrf"] = std::move(mrf);

    if (instance.lumping) {
        const Lumping& lump = *instance.lumping;
        std::optional<PotentialFamily> family;
        if (instance.family()) family = *instance.family();
        LumpOptions lo;
        lo.tol = opts.tol;
        lo.want_minimal_graphs = opts.want_minimal_graphs && g.vertex_count() <= 6;
        LumpabilityReport lr = check_lumpable(t, lump, g, family, lo);

        ordered_json lj;
        lj["is_lumpable"] = lr.is_lumpable;
        lj["certificate"] = certificate_name(lr.certificate);
        if (!lr.note.empty()) lj["note"] = lr.note;
        lj["pushforward_is_mrf_residuals"] = residuals_json(lr.brute.residuals);
        if (lr.lumped) lj["lumped_potentials"] = family_json(*lr.lumped, names);
        if (lr.minimal_graphs) {
            ordered_json mg = ordered_json::array();
            for (const Graph& m : *lr.minimal_graphs) mg.push_back(edges_json(m, names));
            lj["minimal_graphs"] = std::move(mg);
        }
        doc["lumpability"] = std::move(lj);

        InfoReport ir = info_report(t, lump, g, opts.tol);
        ordered_json ij;
        ij["preserving"] = ir.preservation.preserving;
        ij["residual_bits"] = format_real(ir.preservation.residual_bits);
        if (ir.input_is_mrf) {
            ij["necessary_residuals"] = residuals_json(ir.necessary_residuals);
            ij["prop2_residuals"] = residuals_json(ir.prop2_residuals);
            ij["prop2_holds"] = ir.prop2_holds;
        }
        ij["chordal_applicable"] = ir.chordal_applicable;
        if (ir.chordal_applicable) {
            if (ir.sufficient_witness) {
                ordered_json perm = ordered_json::array();
                for (int v : ir.sufficient_witness->permutation)
                    perm.push_back(names[static_cast<std::size_t>(v - 1)]);
                ij["sufficient_witness"] = std::move(perm);
            } else {
                ij["sufficient_witness"] = nullptr;
            }
        }
        doc["information"] = std::move(ij);
    }
    return doc;
}

std::string render_human(const ordered_json& report) {
    std::ostringstream out;
    out << report.at("instance").get<std::string>() << " ["
        << report.at("mode").get<std::string>() << " mode]\n";
    const auto& mrf = report.at("mrf");
    out << "  mrf on declared graph: " << (mrf.at("holds").get<bool>() ? "yes" : "no")
        << "  H(X) = " << mrf.at("entropy_bits").get<std::string>() << " bits\n";
    if (!mrf.at("witness").is_null()) {
        out << "    violated at vertex " << mrf.at("witness").at("vertex").get<std::string>()
            << ", configuration (";
        const auto& cfg = mrf.at("witness").at("configuration");
        for (std::size_t k = 0; k < cfg.size(); ++k)
            out << (k ? "," : "") << cfg[k].get<std::string>();
        out << ")\n";
    }
    if (report.contains("lumpability")) {
        const auto& lj = report.at("lumpability");
        out << "  lumpable: " << (lj.at("is_lumpable").get<bool>() ? "yes" : "no")
            << "  certificate: " << lj.at("certificate").get<std::string>();
        if (lj.contains("note")) out << "  (" << lj.at("note").get<std::string>() << ")";
        out << "\n";
        if (lj.contains("minimal_graphs")) {
            out << "    minimal graph(s) for the lumped field:";
            for (const auto& mg : lj.at("minimal_graphs")) {
                out << " {";
                for (std::size_t k = 0; k < mg.size(); ++k) {
                    out << (k ? "," : "") << "{" << mg[k][0].get<std::string>() << ","
                        << mg[k][1].get<std::string>() << "}";
                }
                out << "}";
            }
            out << "\n";
        }
    }
    if (report.contains("information")) {
        const auto& ij = report.at("information");
        out << "  information-preserving: " << (ij.at("preserving").get<bool>() ? "yes" : "no")
            << "  H(X|Y) = " << ij.at("residual_bits").get<std::string>() << " bits\n";
        if (ij.contains("sufficient_witness") && !ij.at("sufficient_witness").is_null()) {
            out << "    witness ordering:";
            for (const auto& v : ij.at("sufficient_witness"))
                out << " " << v.get<std::string>();
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace mrf
