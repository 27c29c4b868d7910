#include "confloer/json_io.hpp"

#include <set>

namespace confloer::io {

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& what,
                const ParseOptions& opts) {
    if (!j.is_object()) fail(ErrorCode::InvalidInput, what + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            if (opts.allow_unknown) continue;
            fail(ErrorCode::InvalidInput, "unknown field \"" + key + "\" in " + what);
        }
    }
}

int require_int(const json& j, const std::string& key, const std::string& what) {
    if (!j.contains(key) || !j[key].is_number_integer())
        fail(ErrorCode::InvalidInput, what + " needs integer field \"" + key + "\"");
    return j[key].get<int>();
}

} // namespace

GroupAction parse_action(const json& j, int dimension, const ParseOptions& opts) {
    check_keys(j, {"permutation", "signs"}, "action", opts);
    GroupAction a;
    if (!j.contains("permutation") || !j["permutation"].is_array())
        fail(ErrorCode::InvalidInput, "action needs a permutation array");
    if (!j.contains("signs") || !j["signs"].is_array())
        fail(ErrorCode::InvalidInput, "action needs a signs array");
    for (const auto& v : j["permutation"]) a.permutation.push_back(v.get<int>());
    for (const auto& v : j["signs"]) a.signs.push_back(v.get<int>());
    a.validate(dimension);
    return a;
}

FlowSpec parse_flow(const json& j, const ParseOptions& opts, int resolution_override) {
    check_keys(j, {"type", "field", "dimension", "box", "resolution", "samples", "lipschitz", "action"},
               "flow", opts);
    if (j.contains("field")) {
        FlowSpec spec = catalog_flow(j["field"].get<std::string>(), resolution_override);
        if (j.contains("action"))
            spec.action = parse_action(j["action"], spec.grid.dimension, opts);
        return spec;
    }
    FlowSpec spec;
    spec.grid.dimension = require_int(j, "dimension", "flow");
    if (!j.contains("box") || !j["box"].is_array())
        fail(ErrorCode::InvalidInput, "flow needs a box array of [lo, hi] pairs");
    for (const auto& pair : j["box"])
        spec.grid.box.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    if (!j.contains("resolution")) fail(ErrorCode::InvalidInput, "flow needs a resolution array");
    for (const auto& r : j["resolution"]) spec.grid.resolution.push_back(r.get<int>());
    if (resolution_override > 0)
        for (auto& r : spec.grid.resolution) r = resolution_override;
    if (!j.contains("samples") || !j["samples"].is_array())
        fail(ErrorCode::InvalidInput,
             "flow needs per-component sample arrays (row-major over the corner lattice)");
    for (const auto& comp : j["samples"]) {
        std::vector<double> v;
        for (const auto& x : comp) v.push_back(x.get<double>());
        spec.samples.push_back(std::move(v));
    }
    if (!j.contains("lipschitz")) fail(ErrorCode::InvalidInput, "flow needs Lipschitz bounds");
    for (const auto& l : j["lipschitz"]) spec.lipschitz.push_back(l.get<double>());
    if (j.contains("action")) spec.action = parse_action(j["action"], spec.grid.dimension, opts);
    spec.validate();
    return spec;
}

MorseData parse_morse(const json& j, const ParseOptions& opts) {
    check_keys(j, {"type", "points", "lines", "compact"}, "morse data", opts);
    MorseData d;
    if (!j.contains("points")) fail(ErrorCode::InvalidInput, "morse data needs points");
    for (const auto& p : j["points"]) {
        check_keys(p, {"name", "index"}, "critical point", opts);
        d.points.push_back({p.at("name").get<std::string>(), p.at("index").get<int>()});
    }
    if (j.contains("lines"))
        for (const auto& l : j["lines"]) {
            check_keys(l, {"from", "to", "count"}, "flow-line count", opts);
            d.lines.push_back({l.at("from").get<std::string>(), l.at("to").get<std::string>(),
                               l.at("count").get<long>()});
        }
    if (j.contains("compact")) d.connecting_set_compact = j["compact"].get<bool>();
    d.validate();
    return d;
}

namespace {

Op parse_op(const std::string& s) {
    if (s == "d") return Op::D;
    if (s == "u") return Op::U;
    if (s == "q") return Op::Q;
    if (s == "v") return Op::V;
    fail(ErrorCode::InvalidInput, "unknown operator \"" + s + "\" (expected d, u, q or v)");
}

} // namespace

EquivariantComplex parse_complex(const json& j, const ParseOptions& opts) {
    check_keys(j, {"type", "catalog", "flavor", "field", "n", "grading_offset", "irreducibles",
                   "entries"},
               "floer complex", opts);
    Flavor flavor = Flavor::S1;
    if (j.contains("flavor")) {
        std::string f = j["flavor"].get<std::string>();
        if (f == "S1")
            flavor = Flavor::S1;
        else if (f == "Pin2")
            flavor = Flavor::Pin2;
        else
            fail(ErrorCode::InvalidInput, "flavor must be \"S1\" or \"Pin2\"");
    }
    long p = j.contains("field") ? j["field"].get<long>() : 2;
    if (j.contains("catalog")) return catalog_complex(j["catalog"].get<std::string>(), flavor, p);

    int n = require_int(j, "n", "floer complex");
    int offset = j.contains("grading_offset") ? j["grading_offset"].get<int>() : 0;

    std::vector<EquivariantComplex::Irreducible> irr;
    if (j.contains("irreducibles"))
        for (const auto& x : j["irreducibles"]) {
            check_keys(x, {"id", "grading"}, "irreducible", opts);
            irr.push_back({x.contains("id") ? x["id"].get<std::string>() : "",
                           x.at("grading").get<int>()});
        }

    std::vector<EquivariantComplex::IrrHit> irr_entries;
    std::vector<EquivariantComplex::TowerHit> tower_entries;
    std::vector<EquivariantComplex::CotowerHit> cotower_entries;
    if (j.contains("entries"))
        for (const auto& e : j["entries"]) {
            check_keys(e, {"op", "from", "to", "coeff"}, "entry", opts);
            Op op = parse_op(e.at("op").get<std::string>());
            long coeff = e.contains("coeff") ? e["coeff"].get<long>() : 1;
            const json& from = e.at("from");
            const json& to = e.at("to");
            bool from_tower = from.contains("tower");
            bool to_tower = to.contains("tower");
            if (from_tower && to_tower)
                fail(ErrorCode::InvalidInput,
                     "tower-to-tower entries are structural and cannot be overridden");
            if (from_tower)
                cotower_entries.push_back(
                    {op, from["tower"].get<int>(), to.at("irr").get<int>(), coeff});
            else if (to_tower)
                tower_entries.push_back(
                    {op, from.at("irr").get<int>(), to["tower"].get<int>(), coeff});
            else
                irr_entries.push_back(
                    {op, from.at("irr").get<int>(), to.at("irr").get<int>(), coeff});
        }

    return EquivariantComplex::make(flavor, p, n, std::move(irr), std::move(irr_entries),
                                    std::move(tower_entries), std::move(cotower_entries), offset);
}

IntersectionForm parse_form(const json& j, const ParseOptions& opts) {
    check_keys(j, {"type", "diagonal", "blocks"}, "intersection form", opts);
    IntersectionForm f;
    if (j.contains("diagonal")) f.diagonal_count = j["diagonal"].get<int>();
    if (j.contains("blocks"))
        for (const auto& b : j["blocks"]) {
            if (b.is_string()) {
                std::string name = b.get<std::string>();
                if (name == "-E8")
                    f.even_blocks.push_back(minus_e8_gram());
                else
                    fail(ErrorCode::InvalidInput, "unknown catalog block \"" + name + "\"");
            } else {
                check_keys(b, {"gram"}, "gram block", opts);
                const json& rows = b.at("gram");
                int nrows = static_cast<int>(rows.size());
                ExactMatrix m(nrows, nrows);
                for (int i = 0; i < nrows; ++i) {
                    if (static_cast<int>(rows[i].size()) != nrows)
                        fail(ErrorCode::InvalidInput, "gram matrix must be square");
                    for (int k = 0; k < nrows; ++k) m.set(i, k, rows[i][k].get<long>());
                }
                f.even_blocks.push_back(std::move(m));
            }
        }
    f.validate();
    return f;
}

GradedHomology parse_homology(const json& j, const ParseOptions& opts) {
    check_keys(j, {"type", "coefficients", "p", "groups"}, "homology table", opts);
    GradedHomology h;
    std::string coeffs = j.at("coefficients").get<std::string>();
    if (coeffs == "Z")
        h.coeffs = Coefficients::integers();
    else if (coeffs == "F_p")
        h.coeffs = Coefficients::mod_p(j.at("p").get<long>());
    else
        fail(ErrorCode::InvalidInput, "coefficients must be \"Z\" or \"F_p\"");
    for (const auto& [key, value] : j.at("groups").items()) {
        HomologyGroup grp;
        grp.rank = value.at("rank").get<int>();
        if (value.contains("torsion"))
            for (const auto& t : value["torsion"])
                grp.torsion.emplace_back(t.is_string() ? mpz_class(t.get<std::string>())
                                                       : mpz_class(t.get<long>()));
        if (!grp.trivial()) h.groups[std::stoi(key)] = std::move(grp);
    }
    return h;
}

json to_json(const GradedHomology& h) {
    json groups = json::object();
    for (const auto& [g, grp] : h.groups) {
        json entry;
        entry["rank"] = grp.rank;
        json torsion = json::array();
        for (const auto& t : grp.torsion) torsion.push_back(t.get_str());
        entry["torsion"] = torsion;
        groups[std::to_string(g)] = entry;
    }
    json out;
    out["type"] = "homology";
    out["coefficients"] = h.coeffs.is_integers() ? "Z" : "F_p";
    if (h.coeffs.is_mod_p()) out["p"] = h.coeffs.p;
    out["groups"] = groups;
    return out;
}

json to_json(const EquivariantComplex& c) {
    json out;
    out["type"] = "floer_complex";
    out["flavor"] = flavor_name(c.flavor());
    out["field"] = c.field();
    out["n"] = c.n_materialized();
    out["grading_offset"] = c.grading_offset();
    json irr = json::array();
    for (const auto& x : c.irreducibles())
        irr.push_back(json{{"id", x.id}, {"grading", x.grading}});
    out["irreducibles"] = irr;
    json entries = json::array();
    for (const auto& e : c.irr_entries())
        entries.push_back(json{{"op", op_name(e.op)},
                               {"from", json{{"irr", e.from}}},
                               {"to", json{{"irr", e.to}}},
                               {"coeff", e.coeff}});
    for (const auto& e : c.tower_entries())
        entries.push_back(json{{"op", op_name(e.op)},
                               {"from", json{{"irr", e.irr}}},
                               {"to", json{{"tower", e.tower_grading}}},
                               {"coeff", e.coeff}});
    for (const auto& e : c.cotower_entries())
        entries.push_back(json{{"op", op_name(e.op)},
                               {"from", json{{"tower", e.tower_grading}}},
                               {"to", json{{"irr", e.irr}}},
                               {"coeff", e.coeff}});
    out["entries"] = entries;
    return out;
}

json to_json(const InvariantReport& r) {
    json out;
    out["flavor"] = flavor_name(r.flavor);
    out["field"] = r.p;
    out["n"] = r.n;
    out["mu"] = r.mu;
    if (r.flavor == Flavor::S1) {
        out["d"] = r.d;
        out["h"] = r.h;
    } else {
        out["a"] = r.a;
        out["b"] = r.b;
        out["c"] = r.c;
        out["alpha"] = r.alpha;
        out["beta"] = r.beta;
        out["gamma"] = r.gamma;
    }
    out["window"] = json::array({r.window.first, r.window.second});
    return out;
}

json to_json(const TateReport& r) {
    return json{{"pass", r.pass}, {"detail", r.detail}};
}

json to_json(const IndexPairReport& r) {
    auto condition = [](const ConditionReport& c) {
        json j;
        j["pass"] = c.pass;
        if (!c.pass) j["witness"] = c.witness;
        return j;
    };
    json out;
    out["invariant_interior"] = condition(r.invariant_interior);
    out["exits_through_l"] = condition(r.exits_through_l);
    out["l_positively_invariant"] = condition(r.l_positively_invariant);
    out["all_pass"] = r.all();
    return out;
}

json to_json(const NonSplittingCertificate& cert) {
    json out;
    out["type"] = "nonsplitting_certificate";
    out["forward"] = to_json(cert.forward);
    out["reverse"] = to_json(cert.reverse);
    out["beta_negates_under_orientation_reversal"] = cert.beta_negates;
    out["beta_lifts_rokhlin_mod_2"] = cert.beta_lifts_rokhlin;
    out["conclusion"] = cert.conclusion;
    return out;
}

json to_json(const FloerComparisonReport& r) {
    json out;
    out["match"] = r.match;
    out["morse_homology"] = to_json(r.morse);
    out["conley_homology"] = to_json(r.conley);
    json diff = json::array();
    for (const auto& row : r.diff)
        diff.push_back(json{{"grading", row.grading},
                            {"morse_rank", row.morse_rank},
                            {"conley_rank", row.conley_rank}});
    out["diff"] = diff;
    return out;
}

json to_json(const DSquaredReport& r) {
    json out;
    out["pass"] = r.pass;
    if (!r.pass) {
        out["witness"] = json{{"from", r.witness_from}, {"to", r.witness_to},
                              {"value", r.value.get_str()}};
    }
    return out;
}

json to_json(const FroyshovCheck& r) {
    json out;
    out["verdict"] = r.allowed ? "allowed" : "excluded";
    out["required"] = r.required.get_str();
    out["margin"] = r.margin.get_str();
    out["char_min"] = r.char_min.value.get_str();
    out["exact"] = r.char_min.exact;
    if (!r.char_min.exact) {
        out["search_bound"] = r.char_min.bound_used;
        out["note"] = "bounded search, not a proof";
    }
    return out;
}

json to_json(const FurutaCheck& r) {
    return json{{"verdict", r.satisfied ? "satisfied" : "violated"},
                {"lhs_times_8", r.lhs_times_8},
                {"rhs_times_8", r.rhs_times_8}};
}

json to_json(const SmithCheck& r) {
    return json{{"verdict", r.satisfied ? "satisfied" : "violated"},
                {"fixed_total", r.fixed_total},
                {"total_total", r.total_total}};
}

json to_json(const ContinuationReport& r) {
    json out;
    out["all_equal"] = r.all_equal;
    json hom = json::array();
    for (const auto& h : r.homologies) hom.push_back(to_json(h));
    out["homologies"] = hom;
    return out;
}

json homology_table(const HomologyModule& h, int display_lo, int display_hi) {
    json groups = json::object();
    for (int g = display_lo; g <= display_hi; ++g) {
        int dim = h.dim_at(g + h.offset);
        if (dim > 0) groups[std::to_string(g)] = dim;
    }
    json out;
    out["type"] = "module_homology";
    out["field"] = h.p;
    out["window"] = json::array({display_lo, display_hi});
    out["dims"] = groups;
    return out;
}

json error_to_json(const Error& e) {
    json out;
    out["error"] = error_code_name(e.code());
    out["message"] = e.message();
    if (!e.witness().empty()) out["witness"] = e.witness();
    return out;
}

json cells_to_json(const GridGeometry& grid, const CellSet& cells) {
    json out = json::array();
    for (int c : cells) {
        auto multi = grid.cell_multi(c);
        json box = json::array();
        for (int a = 0; a < grid.dimension; ++a) {
            double lo = grid.box[a].first + multi[a] * grid.width(a);
            box.push_back(json::array({lo, lo + grid.width(a)}));
        }
        out.push_back(box);
    }
    return out;
}

} // namespace confloer::io
