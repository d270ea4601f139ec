#include "qorbit/report.hpp"

#include <functional>
#include <sstream>

#include "qorbit/cartan.hpp"
#include "qorbit/errors.hpp"

namespace qorbit {

std::string half2_str(int v2) {
    if (v2 % 2 == 0) return std::to_string(v2 / 2);
    return std::to_string(v2) + "/2";
}

std::string quarter4_str(int v4) {
    if (v4 % 4 == 0) return std::to_string(v4 / 4);
    if (v4 % 2 == 0) return std::to_string(v4 / 2) + "/2";
    return std::to_string(v4) + "/4";
}

namespace {

std::string family_letter(const std::string& series_name) {
    return series_name.empty() ? series_name : series_name.substr(0, 1);
}

std::string status_str(bool pass) { return pass ? "pass" : "fail"; }

Json word_str(const GenTable& t, const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const GenId g : w) {
        if (!s.empty()) s += " ";
        const GenIndex& gi = t[g];
        s += "z*(" + half2_str(gi.row2) + "," + half2_str(gi.col2) + ")";
    }
    return s;
}

Json triplets(const LegMatrix& m) {
    Json out = Json::array();
    for (int r = 0; r < m.size(); ++r)
        for (const auto& [c, v] : m.row(r)) out.push_back(Json::array({r, c, v.str()}));
    return out;
}

}  // namespace

Json make_report(const std::string& command, Json spec_echo, std::uint64_t seed) {
    Json j;
    j["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
    j["command"] = command;
    j["spec"] = std::move(spec_echo);
    j["seed"] = seed;
    return j;
}

Json identity_report(const std::vector<IdentityCheck>& checks) {
    Json out = Json::array();
    for (const IdentityCheck& c : checks) {
        Json j;
        j["id"] = c.id;
        j["series"] = family_letter(c.series);
        j["rank"] = c.rank;
        j["r"] = c.r2 == 0 ? Json() : Json(half2_str(c.r2));
        j["status"] = status_str(c.pass);
        j["residual_entry_count"] = c.residual_entry_count;
        j["seed"] = c.used_random ? Json(c.seed) : Json();
        out.push_back(std::move(j));
    }
    return out;
}

Json lemma_report(const LemmaReport& l) {
    Json j;
    j["id"] = l.id;
    j["series"] = family_letter(l.series);
    j["rank"] = l.rank;
    j["r"] = half2_str(l.r2);
    j["truncation"] = l.truncation;
    j["status"] = status_str(l.pass);
    j["residual_entry_count"] = l.residual_entry_count;
    if (!l.detail.empty()) j["detail"] = l.detail;
    return j;
}

Json algebra_report(const QuotientBasis& basis, Json lemmas) {
    Json j;
    j["series"] = to_string(basis.spec().family);
    j["rank"] = basis.spec().rank;
    j["r"] = half2_str(basis.r2());
    j["truncation"] = basis.truncation();
    j["graded_dimensions"] = basis.graded_dimensions();
    j["dimension"] = basis.dimension();
    j["relations"] = {{"total", basis.stats().relations_total},
                      {"distinct", basis.stats().relations_distinct},
                      {"with_linear_part", basis.stats().relations_with_linear_part}};
    j["lemmas"] = std::move(lemmas);
    return j;
}

Json module_report(const ModuleRep& rep, const ModuleRelationReport& rel) {
    Json j;
    j["series"] = to_string(rep.spec().family);
    j["rank"] = rep.spec().rank;
    j["r"] = half2_str(rep.r2());
    j["sigma"] = quarter4_str(rep.sigma4());
    j["dimension"] = rep.dimension();
    j["graded_dimensions"] = rep.graded_dimensions();
    j["weights"] = rep.weights();
    Json rr = Json::array();
    for (const ModuleCheck& c : rel.checks) {
        Json e;
        e["id"] = c.id;
        e["status"] = status_str(c.pass);
        e["residual_entry_count"] = c.residual_entry_count;
        if (!c.detail.empty()) e["detail"] = c.detail;
        rr.push_back(std::move(e));
    }
    j["relation_residuals"] = std::move(rr);
    j["central_value"] = rel.central_value.str();
    return j;
}

Json representation_report(const ModuleRep& rep, const ChevalleyRep& chev,
                           const UhRelationReport& uh) {
    Json lambda, oracle;
    try {
        const std::vector<int> lw2 = lowest_weight2(rep.spec(), rep.r2(), rep.sigma4());
        const RootSystem rs = root_system(rep.spec().family, rep.spec().rank);
        lambda = fundamental_coords(rs, lw2);
        oracle = module_dimension_oracle(rep.spec(), rep.r2(), rep.sigma4());
    } catch (const InvalidArgument&) {
        // Off-lattice sigma forced through: no classical weight to compare to.
    }
    Json j;
    j["lambda"] = std::move(lambda);
    j["sigma"] = quarter4_str(rep.sigma4());
    j["dimension"] = chev.dimension;
    j["oracle_dimension"] = std::move(oracle);
    Json us = Json::array();
    for (const UhCheck& c : uh.checks) {
        Json e;
        e["id"] = c.id;
        e["status"] = status_str(c.pass);
        e["residual_entry_count"] = c.residual_entry_count;
        if (!c.detail.empty()) e["detail"] = c.detail;
        us.push_back(std::move(e));
    }
    j["uh_relation_status"] = std::move(us);
    Json s2 = Json::array();
    for (const RatFunc& s : chev.s_squared) s2.push_back(s.str());
    j["s_squared"] = std::move(s2);
    return j;
}

Json operator_dump(const ModuleRep& rep) {
    Json j;
    j["dims"] = rep.op().dims();
    j["entries"] = triplets(rep.op());
    return j;
}

Json basis_dump(const QuotientBasis& basis) {
    Json out = Json::array();
    for (const auto& words : basis.standard_words()) {
        Json level = Json::array();
        for (const Word& w : words) level.push_back(word_str(basis.table(), w));
        out.push_back(std::move(level));
    }
    return out;
}

std::string to_csv(const Json& report) {
    std::ostringstream os;
    os << "id,series,rank,r,sigma,status,residual_entry_count\n";

    Json es, er, erank, esig;
    if (report.contains("spec") && report["spec"].is_object()) {
        const Json& sp = report["spec"];
        if (sp.contains("series")) es = sp["series"];
        if (sp.contains("rank")) erank = sp["rank"];
        if (sp.contains("r")) er = sp["r"];
        if (sp.contains("sigma")) esig = sp["sigma"];
    }
    auto cell = [](const Json& v) -> std::string {
        if (v.is_null()) return "";
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    auto pick = [&](const Json& obj, const char* key, const Json& fallback) {
        return obj.contains(key) ? cell(obj[key]) : cell(fallback);
    };

    std::function<void(const Json&)> walk = [&](const Json& node) {
        if (node.is_array()) {
            for (const Json& e : node) walk(e);
            return;
        }
        if (!node.is_object()) return;
        if (node.contains("id") && node.contains("status")) {
            os << cell(node["id"]) << "," << pick(node, "series", es) << ","
               << pick(node, "rank", erank) << "," << pick(node, "r", er) << ","
               << pick(node, "sigma", esig) << "," << cell(node["status"]) << ","
               << pick(node, "residual_entry_count", Json()) << "\n";
            return;
        }
        for (const auto& [key, value] : node.items()) {
            (void)key;
            walk(value);
        }
    };
    walk(report);
    return os.str();
}

}  // namespace qorbit
