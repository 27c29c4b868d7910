#include "confloer/morse.hpp"

#include <map>
#include <set>

namespace confloer {

void MorseData::validate() const {
    std::set<std::string> names;
    for (const auto& p : points) {
        if (p.index < 0) fail(ErrorCode::InvalidInput, "Morse index must be >= 0: " + p.name);
        if (!names.insert(p.name).second)
            fail(ErrorCode::InvalidInput, "duplicate critical point name: " + p.name);
    }
    for (const auto& l : lines) {
        int from = index_of(l.from);
        int to = index_of(l.to);
        if (points[from].index != points[to].index + 1)
            fail(ErrorCode::InvalidInput,
                 "flow-line count " + l.from + " -> " + l.to + " must drop Morse index by one");
    }
}

int MorseData::index_of(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
        if (points[i].name == name) return i;
    fail(ErrorCode::InvalidInput, "unknown critical point: " + name);
}

GradedChainComplex morse_boundary(const MorseData& d) {
    d.validate();

    std::vector<std::pair<std::string, int>> generators;
    generators.reserve(d.points.size());
    for (const auto& p : d.points) generators.emplace_back(p.name, p.index);

    // column position of each point within its grading
    std::map<int, int> counts;
    std::vector<int> column(d.points.size());
    for (std::size_t i = 0; i < d.points.size(); ++i)
        column[i] = counts[d.points[i].index]++;

    std::map<int, ExactMatrix> boundaries;
    for (const auto& [k, n] : counts) {
        int lower = counts.count(k - 1) ? counts.at(k - 1) : 0;
        if (k >= 1 && n > 0) boundaries.emplace(k, ExactMatrix(lower, n));
    }
    for (const auto& l : d.lines) {
        int from = d.index_of(l.from);
        int to = d.index_of(l.to);
        boundaries.at(d.points[from].index).add_to(column[to], column[from], l.count);
    }
    return GradedChainComplex::unchecked(std::move(generators), std::move(boundaries));
}

DSquaredReport check_d_squared(const MorseData& d) {
    GradedChainComplex c = morse_boundary(d);
    DSquaredReport report;

    for (int g : c.gradings_present()) {
        ExactMatrix upper = c.boundary(g + 1);
        if (upper.cols() == 0 || upper.is_zero()) continue;
        ExactMatrix lower = c.boundary(g);
        if (lower.cols() == 0 || lower.is_zero()) continue;
        ExactMatrix prod = lower.multiplied_by(upper);
        if (prod.is_zero()) continue;
        report.pass = false;
        // witness: first nonzero composite entry, named by generator pair
        for (int col = 0; col < prod.cols() && report.witness_from.empty(); ++col)
            for (const auto& [row, v] : prod.column(col)) {
                report.witness_from = c.generators()[c.grading_basis(g + 1)[col]].first;
                report.witness_to = c.generators()[c.grading_basis(g - 1)[row]].first;
                report.value = v;
                break;
            }
        return report;
    }
    return report;
}

GradedHomology morse_homology(const MorseData& d) {
    DSquaredReport r = check_d_squared(d);
    if (!r.pass)
        fail(ErrorCode::DSquaredNonzero,
             "d^2 != 0: d^2(" + r.witness_from + ") hits " + r.witness_to + " with coefficient " +
                 r.value.get_str(),
             r.witness_from + "," + r.witness_to);
    return homology_of_complex(morse_boundary(d));
}

FloerComparisonReport floer_comparison(const MorseData& d, const TransitionSystem& t,
                                       const CellSet& n) {
    FloerComparisonReport report;
    report.morse = morse_homology(d);
    if (!is_isolating(t, n))
        fail(ErrorCode::IsolationViolated, "candidate set is not isolating");
    IndexPair p = construct_index_pair(t, n);
    report.conley = conley_index_homology(t, p);

    std::set<int> gradings;
    for (const auto& [g, grp] : report.morse.groups) gradings.insert(g);
    for (const auto& [g, grp] : report.conley.groups) gradings.insert(g);
    report.match = true;
    for (int g : gradings) {
        int mr = report.morse.rank_at(g);
        int cr = report.conley.rank_at(g);
        if (mr != cr) {
            report.match = false;
            report.diff.push_back({g, mr, cr});
        }
    }
    return report;
}

} // namespace confloer
