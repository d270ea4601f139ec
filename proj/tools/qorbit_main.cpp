#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qorbit/cartan.hpp"
#include "qorbit/chevalley.hpp"
#include "qorbit/errors.hpp"
#include "qorbit/identities.hpp"
#include "qorbit/report.hpp"

using namespace qorbit;

namespace {

// "p" or "p/q" scaled by mult; the scaled value must be integral.
int parse_scaled(const std::string& s, int mult, const std::string& what) {
    long p = 0, q = 1;
    std::size_t pos = 0;
    try {
        p = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw CLI::ValidationError(what, "expected an integer or a fraction, got '" + s + "'");
    }
    if (pos != s.size()) {
        if (s[pos] != '/')
            throw CLI::ValidationError(what, "expected an integer or a fraction, got '" + s + "'");
        const std::string tail = s.substr(pos + 1);
        std::size_t qpos = 0;
        try {
            q = std::stol(tail, &qpos);
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "bad denominator in '" + s + "'");
        }
        if (qpos != tail.size() || q <= 0)
            throw CLI::ValidationError(what, "bad denominator in '" + s + "'");
    }
    const long scaled = p * mult;
    if (scaled % q != 0)
        throw CLI::ValidationError(
            what, "'" + s + "' is not on the representable lattice (denominator " +
                      std::to_string(mult) + ")");
    return static_cast<int>(scaled / q);
}

struct Options {
    std::string series;
    int rank = 0;
    std::string r, sigma, only, lemma;
    int deg = -1;
    std::uint64_t seed = kCatalogSeed;
    std::string out, csv;
    bool force = false, dump = false;
};

void write_outputs(const Json& rep, const Options& opt) {
    const std::string text = rep.dump(2) + "\n";
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.out);
        if (!f) throw Error("cannot write '" + opt.out + "'");
        f << text;
    }
    if (!opt.csv.empty()) {
        std::ofstream f(opt.csv);
        if (!f) throw Error("cannot write '" + opt.csv + "'");
        f << to_csv(rep);
    }
}

int finish(Json rep, bool pass, const Options& opt) {
    rep["status"] = pass ? "pass" : "fail";
    write_outputs(rep, opt);
    return pass ? 0 : 1;
}

int run_verify(const Options& opt) {
    const SeriesSpec sp = build_series(series_from_string(opt.series), opt.rank);
    const std::vector<std::string> ids = catalog_ids();
    if (!opt.only.empty() && std::find(ids.begin(), ids.end(), opt.only) == ids.end())
        throw InvalidArgument("unknown catalog id '" + opt.only + "'");

    std::vector<IdentityCheck> checks;
    if (!opt.r.empty()) {
        const CellSplit cell = cell_split(sp, parse_scaled(opt.r, 2, "--r"));
        if (opt.only.empty()) {
            checks = run_catalog(sp, &cell, opt.seed);
        } else {
            checks.push_back(check(opt.only, sp, &cell, opt.seed));
        }
    } else {
        // No threshold given: run threshold-free ids once and the banded ids
        // for every admissible threshold.
        for (const std::string& id : ids) {
            if (!opt.only.empty() && id != opt.only) continue;
            if (!id_needs_cell(id)) {
                checks.push_back(check(id, sp, nullptr, opt.seed));
                continue;
            }
            for (const int r2 : sp.admissible_r2()) {
                const CellSplit cell = cell_split(sp, r2);
                checks.push_back(check(id, sp, &cell, opt.seed));
            }
        }
    }

    bool pass = true;
    for (const IdentityCheck& c : checks) pass = pass && c.pass;

    Json echo;
    echo["series"] = opt.series;
    echo["rank"] = opt.rank;
    if (!opt.r.empty()) echo["r"] = half2_str(parse_scaled(opt.r, 2, "--r"));
    if (!opt.only.empty()) echo["only"] = opt.only;
    Json rep = make_report("verify", std::move(echo), opt.seed);
    rep["checks"] = identity_report(checks);
    return finish(std::move(rep), pass, opt);
}

int run_algebra(const Options& opt) {
    const SeriesSpec sp = build_series(series_from_string(opt.series), opt.rank);
    const int r2 = parse_scaled(opt.r, 2, "--r");
    const CellSplit cell = cell_split(sp, r2);

    std::vector<std::string> ids = lemma_ids();
    if (!opt.lemma.empty()) {
        if (std::find(ids.begin(), ids.end(), opt.lemma) == ids.end())
            throw InvalidArgument("unknown lemma id '" + opt.lemma + "'");
        ids = {opt.lemma};
    }

    const QuotientBasis basis = build_quotient(sp, cell, opt.deg);
    Json lemmas = Json::array();
    bool pass = true;
    for (const std::string& id : ids) {
        try {
            const LemmaReport l = verify_lemma(id, basis);
            pass = pass && l.pass;
            lemmas.push_back(lemma_report(l));
        } catch (const ResourceLimit& e) {
            // The identity needs a deeper truncation than requested; an
            // explicitly named lemma propagates instead.
            if (!opt.lemma.empty()) throw;
            Json j;
            j["id"] = id;
            j["truncation"] = opt.deg;
            j["status"] = "skipped";
            j["detail"] = e.what();
            lemmas.push_back(std::move(j));
        }
    }

    Json echo;
    echo["series"] = opt.series;
    echo["rank"] = opt.rank;
    echo["r"] = half2_str(r2);
    echo["degree"] = opt.deg;
    Json rep = make_report("algebra", std::move(echo), opt.seed);
    const Json body = algebra_report(basis, std::move(lemmas));
    for (const auto& [k, v] : body.items()) rep[k] = v;
    if (opt.dump) rep["dump"] = basis_dump(basis);
    return finish(std::move(rep), pass, opt);
}

int run_module(const Options& opt) {
    const SeriesSpec sp = build_series(series_from_string(opt.series), opt.rank);
    const int r2 = parse_scaled(opt.r, 2, "--r");
    const CellSplit cell = cell_split(sp, r2);
    const int sigma4 = parse_scaled(opt.sigma, 4, "--sigma");
    if (!opt.force && !sigma_is_admissible(sp, r2, sigma4))
        throw InvalidArgument("sigma " + quarter4_str(sigma4) +
                              " is outside the admissible lattice for r = " + half2_str(r2) +
                              " (pass --force to attempt closure anyway)");

    const ModuleRep mod = build_module(sp, cell, sigma4);
    const ModuleRelationReport rel = verify_module_relations(mod);
    const ChevalleyRep chev = extract_generators(gauss_decompose(mod), sp);
    const UhRelationReport uh = verify_uh_relations(chev);
    const int kernel = joint_kernel_dimension(chev);

    bool oracle_ok = true;
    if (sigma_is_admissible(sp, r2, sigma4) || sigma4 == 0)
        oracle_ok = mod.dimension() == module_dimension_oracle(sp, r2, sigma4);
    const bool pass = rel.pass && uh.pass && kernel == 1 && oracle_ok;

    Json echo;
    echo["series"] = opt.series;
    echo["rank"] = opt.rank;
    echo["r"] = half2_str(r2);
    echo["sigma"] = quarter4_str(sigma4);
    if (opt.force) echo["force"] = true;
    Json rep = make_report("module", std::move(echo), opt.seed);
    rep["module"] = module_report(mod, rel);
    rep["representation"] = representation_report(mod, chev, uh);
    rep["joint_kernel_dimension"] = kernel;
    if (opt.dump) rep["dump"] = operator_dump(mod);
    return finish(std::move(rep), pass, opt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for the banded reflection-equation matrices"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool need_r) {
        sub->add_option("--series", opt.series, "series family letter (B, C or D)")->required();
        sub->add_option("--rank", opt.rank, "series rank")->required()
            ->check(CLI::PositiveNumber);
        auto* r = sub->add_option("--r", opt.r, "band threshold, integer or p/2");
        if (need_r) r->required();
        sub->add_option("--seed", opt.seed, "seed for the quantified identity samples");
        sub->add_option("--out", opt.out, "write the JSON report here instead of stdout");
        sub->add_option("--csv", opt.csv, "also write a one-row-per-check CSV summary");
    };

    CLI::App* verify = app.add_subcommand("verify", "run the fixed-matrix identity catalog");
    add_common(verify, false);
    verify->add_option("--only", opt.only, "restrict to a single catalog id");

    CLI::App* algebra =
        app.add_subcommand("algebra", "build the truncated coordinate algebra and check lemmas");
    add_common(algebra, true);
    algebra->add_option("--deg", opt.deg, "truncation degree")->required()
        ->check(CLI::NonNegativeNumber);
    algebra->add_option("--lemma", opt.lemma, "restrict to a single lemma id");
    algebra->add_flag("--dump", opt.dump, "include the standard monomials per degree");

    CLI::App* module =
        app.add_subcommand("module", "build the cyclic module and verify the representation");
    add_common(module, true);
    module->add_option("--sigma", opt.sigma, "parameter sigma, integer or p/2 or p/4")->required();
    module->add_flag("--force", opt.force, "skip the sigma admissibility gate");
    module->add_flag("--dump", opt.dump, "include the operator matrix as coordinate triplets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        // Validate every value-carrying flag before touching the library so a
        // bad command line can only ever exit with code 2.
        try {
            const SeriesSpec sp = build_series(series_from_string(opt.series), opt.rank);
            if (!opt.r.empty()) cell_split(sp, parse_scaled(opt.r, 2, "--r"));
            if (module->parsed()) parse_scaled(opt.sigma, 4, "--sigma");
        } catch (const CLI::ValidationError& e) {
            std::cerr << e.what() << "\n";
            return 2;
        } catch (const InvalidArgument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }

        if (verify->parsed()) return run_verify(opt);
        if (algebra->parsed()) return run_algebra(opt);
        return run_module(opt);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // Domain failure after a valid command line: emit an error report.
        std::cerr << "error: " << e.what() << "\n";
        Json echo;
        echo["series"] = opt.series;
        echo["rank"] = opt.rank;
        if (!opt.r.empty()) echo["r"] = opt.r;
        if (!opt.sigma.empty()) echo["sigma"] = opt.sigma;
        Json rep = make_report(app.get_subcommands().front()->get_name(), std::move(echo),
                               opt.seed);
        rep["error"] = e.what();
        rep["status"] = "error";
        try {
            write_outputs(rep, opt);
        } catch (const std::exception&) {
        }
        return 1;
    }
}
