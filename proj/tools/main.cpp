// Command-line front end: ingest flow / complex / form files, dispatch the
// computations, emit deterministic JSON reports.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "confloer/json_io.hpp"

namespace {

using confloer::io::json;
using namespace confloer;

struct OutputSink {
    std::string path; // empty = stdout

    void emit(const json& report) const {
        std::string text = report.dump(2);
        text += "\n";
        if (path.empty()) {
            std::cout << text;
            return;
        }
        // atomic: write a sibling temp file, then rename
        std::filesystem::path target(path);
        std::filesystem::path tmp = target;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) fail(ErrorCode::InvalidInput, "cannot open output file " + path);
            out << text;
        }
        std::filesystem::rename(tmp, target);
    }
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open input file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(ErrorCode::InvalidInput, std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return j;
}

struct CommonOptions {
    std::string out;
    bool allow_unknown = false;
    io::ParseOptions parse_options() const { return {allow_unknown}; }
};

FlowSpec load_flow(const std::string& file, const std::string& catalog, int resolution,
                   const CommonOptions& common) {
    if (!catalog.empty()) return catalog_flow(catalog, resolution);
    if (file.empty()) fail(ErrorCode::InvalidInput, "need --flow FILE or --catalog NAME");
    return io::parse_flow(load_json(file), common.parse_options(), resolution);
}

EquivariantComplex load_complex(const std::string& file, const std::string& catalog,
                                const std::string& flavor_str, long field,
                                const CommonOptions& common) {
    Flavor flavor = flavor_str == "S1" ? Flavor::S1 : Flavor::Pin2;
    if (!catalog.empty()) return catalog_complex(catalog, flavor, field);
    if (file.empty()) fail(ErrorCode::InvalidInput, "need --complex FILE or --catalog NAME");
    return io::parse_complex(load_json(file), common.parse_options());
}

json conley_report(const TransitionSystem& t, const CellSet& candidate, bool dump_cells) {
    IndexPair pair = construct_index_pair(t, candidate);
    GradedHomology h = conley_index_homology(t, pair);
    json out;
    out["type"] = "conley_report";
    out["cells"] = static_cast<long>(t.cells().size());
    out["candidate_cells"] = static_cast<long>(candidate.size());
    out["invariant_cells"] =
        static_cast<long>(pair.n_prime.size() - pair.exit_set.size());
    out["n_prime_cells"] = static_cast<long>(pair.n_prime.size());
    out["exit_cells"] = static_cast<long>(pair.exit_set.size());
    out["verification"] = io::to_json(pair.report);
    out["homology"] = io::to_json(h);
    if (dump_cells) {
        out["n_prime"] = io::cells_to_json(t.grid(), pair.n_prime);
        out["exit_set"] = io::cells_to_json(t.grid(), pair.exit_set);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conley index and equivariant Floer-module calculator"};
    app.require_subcommand(1);

    CommonOptions common;
    long seed = 0x5eed;
    app.add_option("--out", common.out, "write the report to PATH (atomically)");
    app.add_flag("--allow-unknown", common.allow_unknown, "ignore unknown JSON fields");
    app.add_option("--seed", seed,
                   "seed for randomized suites (subcommands here are deterministic and ignore it)");

    // conley
    auto* conley = app.add_subcommand("conley", "flow -> index pair, verification, homology");
    std::string conley_flow, conley_catalog;
    int conley_resolution = 0;
    bool conley_dump = false, conley_reverse = false;
    conley->add_option("--flow", conley_flow, "flow spec JSON file");
    conley->add_option("--catalog", conley_catalog, "built-in flow name");
    conley->add_option("--resolution", conley_resolution, "cells per axis override");
    conley->add_flag("--dump-cells", conley_dump, "include cell coordinate lists");
    conley->add_flag("--reverse", conley_reverse, "analyze the reverse flow too");

    // morse
    auto* morse = app.add_subcommand("morse", "morse data -> d^2 report + homology");
    std::string morse_file;
    morse->add_option("--data", morse_file, "morse data JSON file")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "morse homology vs conley index homology");
    std::string cmp_morse, cmp_flow, cmp_catalog;
    int cmp_resolution = 0;
    compare->add_option("--data", cmp_morse, "morse data JSON file")->required();
    compare->add_option("--flow", cmp_flow, "flow spec JSON file");
    compare->add_option("--catalog", cmp_catalog, "built-in flow name");
    compare->add_option("--resolution", cmp_resolution, "cells per axis override");

    // floer
    auto* floer = app.add_subcommand("floer", "complex -> homology + invariants + Tate check");
    std::string floer_file, floer_catalog_name, floer_flavor = "S1";
    long floer_field = 2;
    std::vector<int> floer_window;
    floer->add_option("--complex", floer_file, "equivariant complex JSON file");
    floer->add_option("--catalog", floer_catalog_name, "built-in complex name");
    floer->add_option("--flavor", floer_flavor, "S1 or Pin2")
        ->check(CLI::IsMember({"S1", "Pin2"}));
    floer->add_option("--field", floer_field, "coefficient field characteristic");
    floer->add_option("--window", floer_window, "display window LO HI")->expected(2);

    // dual
    auto* dual = app.add_subcommand("dual", "complex -> dual complex");
    std::string dual_file, dual_catalog, dual_flavor = "S1";
    long dual_field = 2;
    dual->add_option("--complex", dual_file, "equivariant complex JSON file");
    dual->add_option("--catalog", dual_catalog, "built-in complex name");
    dual->add_option("--flavor", dual_flavor, "S1 or Pin2")->check(CLI::IsMember({"S1", "Pin2"}));
    dual->add_option("--field", dual_field, "coefficient field characteristic");

    // tensor
    auto* tensor = app.add_subcommand("tensor", "two complexes -> disjoint-union complex");
    std::string tl_file, tl_catalog, tr_file, tr_catalog, tensor_flavor = "Pin2";
    long tensor_field = 2;
    tensor->add_option("--left", tl_file, "left complex JSON file");
    tensor->add_option("--left-catalog", tl_catalog, "left built-in complex");
    tensor->add_option("--right", tr_file, "right complex JSON file");
    tensor->add_option("--right-catalog", tr_catalog, "right built-in complex");
    tensor->add_option("--flavor", tensor_flavor, "S1 or Pin2")
        ->check(CLI::IsMember({"S1", "Pin2"}));
    tensor->add_option("--field", tensor_field, "coefficient field characteristic");

    // certify
    auto* certify = app.add_subcommand("certify", "Pin2 complex -> non-splitting certificate");
    std::string cert_file, cert_catalog;
    certify->add_option("--complex", cert_file, "equivariant complex JSON file");
    certify->add_option("--catalog", cert_catalog, "built-in complex name");

    // lattice
    auto* lattice = app.add_subcommand("lattice", "intersection form checks");
    std::string lattice_form;
    long lattice_h = 0;
    int lattice_bound = 3;
    std::vector<long> furuta_args;
    lattice->add_option("--form", lattice_form, "intersection form JSON file");
    lattice->add_option("--h-boundary", lattice_h, "h invariant of the boundary");
    lattice->add_option("--bound", lattice_bound, "search bound for general blocks");
    lattice->add_option("--furuta", furuta_args, "B2 SIGMA for the 10/8 check")->expected(2);

    // smith
    auto* smith = app.add_subcommand("smith", "symmetric flow -> Smith inequality report");
    std::string smith_flow, smith_catalog;
    int smith_resolution = 0;
    long smith_field = 2;
    smith->add_option("--flow", smith_flow, "flow spec JSON file");
    smith->add_option("--catalog", smith_catalog, "built-in flow name");
    smith->add_option("--resolution", smith_resolution, "cells per axis override");
    smith->add_option("--field", smith_field, "prime field for the dimension count");

    CLI11_PARSE(app, argc, argv);

    OutputSink sink{common.out};
    try {
        if (conley->parsed()) {
            FlowSpec spec = load_flow(conley_flow, conley_catalog, conley_resolution, common);
            TransitionSystem t = discretize_flow(spec);
            json report = conley_report(t, t.interior_cells(), conley_dump);
            if (conley_reverse) {
                TransitionSystem r = reverse_system(t);
                report["reverse"] = conley_report(r, r.interior_cells(), false);
            }
            sink.emit(report);
        } else if (morse->parsed()) {
            MorseData data = io::parse_morse(load_json(morse_file), common.parse_options());
            DSquaredReport d2 = check_d_squared(data);
            json report;
            report["type"] = "morse_report";
            report["d_squared"] = io::to_json(d2);
            report["homology"] = d2.pass ? io::to_json(morse_homology(data)) : json(nullptr);
            sink.emit(report);
        } else if (compare->parsed()) {
            MorseData data = io::parse_morse(load_json(cmp_morse), common.parse_options());
            FlowSpec spec = load_flow(cmp_flow, cmp_catalog, cmp_resolution, common);
            TransitionSystem t = discretize_flow(spec);
            FloerComparisonReport r = floer_comparison(data, t, t.interior_cells());
            json report = io::to_json(r);
            report["type"] = "comparison_report";
            sink.emit(report);
        } else if (floer->parsed()) {
            EquivariantComplex c =
                load_complex(floer_file, floer_catalog_name, floer_flavor, floer_field, common);
            HomologyModule h = module_homology(c);
            InvariantReport inv = extract_invariants(c);
            int lo = floer_window.empty() ? -2 * c.n_reported() : floer_window[0];
            int hi = floer_window.empty() ? lo + 20 : floer_window[1];
            json report;
            report["type"] = "floer_report";
            report["homology"] = io::homology_table(h, lo, hi);
            report["invariants"] = io::to_json(inv);
            report["tate"] = io::to_json(tate_pattern_check(h));
            sink.emit(report);
        } else if (dual->parsed()) {
            EquivariantComplex c =
                load_complex(dual_file, dual_catalog, dual_flavor, dual_field, common);
            sink.emit(io::to_json(dualize(c)));
        } else if (tensor->parsed()) {
            EquivariantComplex a =
                load_complex(tl_file, tl_catalog, tensor_flavor, tensor_field, common);
            EquivariantComplex b =
                load_complex(tr_file, tr_catalog, tensor_flavor, tensor_field, common);
            EquivariantComplex c = tensor_disjoint_union(a, b);
            json report = io::to_json(c);
            report["invariants"] = io::to_json(extract_invariants(c));
            sink.emit(report);
        } else if (certify->parsed()) {
            EquivariantComplex c = load_complex(cert_file, cert_catalog, "Pin2", 2, common);
            sink.emit(io::to_json(nonsplitting_certificate(c)));
        } else if (lattice->parsed()) {
            if (!furuta_args.empty()) {
                FurutaCheck check = furuta_bound_check(furuta_args[0], furuta_args[1]);
                json report = io::to_json(check);
                report["type"] = "furuta_report";
                sink.emit(report);
            } else {
                if (lattice_form.empty())
                    fail(ErrorCode::InvalidInput, "need --form FILE or --furuta B2 SIGMA");
                IntersectionForm form =
                    io::parse_form(load_json(lattice_form), common.parse_options());
                FroyshovCheck check = froyshov_inequality_check(lattice_h, form, lattice_bound);
                json report = io::to_json(check);
                report["type"] = "froyshov_report";
                report["h"] = lattice_h;
                sink.emit(report);
            }
        } else if (smith->parsed()) {
            FlowSpec spec = load_flow(smith_flow, smith_catalog, smith_resolution, common);
            if (!spec.action)
                fail(ErrorCode::InvalidInput, "Smith check needs a flow with a group action");
            TransitionSystem t = discretize_flow(spec);
            TransitionSystem fixed = restrict_to_fixed_subgrid(t, *spec.action);
            Coefficients fp = Coefficients::mod_p(smith_field);

            IndexPair full_pair = construct_index_pair(t, t.interior_cells());
            GradedHomology full_h = conley_index_homology(t, full_pair, fp);
            CellSet fixed_candidate(fixed.cells().begin(), fixed.cells().end());
            IndexPair fixed_pair = construct_index_pair(fixed, fixed_candidate);
            GradedHomology fixed_h = conley_index_homology(fixed, fixed_pair, fp);

            SmithCheck check = smith_inequality_check(full_h, fixed_h);
            json report = io::to_json(check);
            report["type"] = "smith_report";
            report["field"] = smith_field;
            report["total_homology"] = io::to_json(full_h);
            report["fixed_homology"] = io::to_json(fixed_h);
            report["equivariant_pair"] = [&] {
                EquivarianceReport eq = check_pair_equivariance(t, *spec.action, t.interior_cells());
                return json{{"n_prime_invariant", eq.n_prime_invariant},
                            {"exit_set_invariant", eq.exit_set_invariant}};
            }();
            sink.emit(report);
        }
    } catch (const Error& e) {
        sink.emit(io::error_to_json(e));
        return 1;
    } catch (const std::exception& e) {
        json out;
        out["error"] = "Unexpected";
        out["message"] = e.what();
        sink.emit(out);
        return 2;
    }
    return 0;
}
