#ifndef CONFLOER_TRANSITION_HPP
#define CONFLOER_TRANSITION_HPP

#include <set>
#include <vector>

#include "confloer/flow.hpp"

namespace confloer {

/// Subset of the cells of a transition system, by ambient cell id.
using CellSet = std::set<int>;

/// Directed graph on grid cells: the combinatorial outer approximation of
/// the flow.  Edges connect face-adjacent cells where the face enclosure of
/// the normal field component admits flow in that direction; a cell whose
/// field enclosure box contains the origin carries a self-loop.
class TransitionSystem {
public:
    const GridGeometry& grid() const { return spec_.grid; }
    const FlowSpec& spec() const { return spec_; }

    /// Ambient ids of the cells in this system (the full grid for
    /// discretize_flow output; a subset for fixed subgrids).
    const std::vector<int>& cells() const { return cells_; }
    bool has_cell(int cell) const;
    const std::vector<int>& out_edges(int cell) const;
    bool self_loop(int cell) const;
    bool on_box_boundary(int cell) const;
    /// Face-adjacent cells that belong to this system.
    std::vector<int> neighbors(int cell) const;
    /// Per-axis enclosure slack used during discretization.
    const std::vector<double>& slack() const { return slack_; }

    /// Every cell of this system except those on the outer box boundary.
    CellSet interior_cells() const;
    void require_within(const CellSet& n, const char* what) const;

    friend TransitionSystem discretize_flow(const FlowSpec& spec);
    friend TransitionSystem reverse_system(const TransitionSystem& t);
    friend TransitionSystem restrict_to_fixed_subgrid(const TransitionSystem& t,
                                                      const GroupAction& action);

private:
    int local_index(int cell) const;

    FlowSpec spec_;
    std::vector<int> cells_;              // sorted ambient ids
    std::vector<int> local_of_;           // ambient id -> local index or -1
    std::vector<std::vector<int>> out_;   // ambient ids, sorted
    std::vector<char> self_loop_;
    std::vector<char> boundary_;
    std::vector<double> slack_;
};

TransitionSystem discretize_flow(const FlowSpec& spec);

/// All edges transposed; self-loops preserved.
TransitionSystem reverse_system(const TransitionSystem& t);

/// Transition system on the cells whose closure meets the fixed locus of
/// the action, with the induced edges.  Checks that the action preserves
/// the grid and the field samples (ActionNotSymmetry otherwise).
TransitionSystem restrict_to_fixed_subgrid(const TransitionSystem& t, const GroupAction& action);

/// Image of a cell under the action (the grid must be action-symmetric).
int map_cell(const GridGeometry& grid, const GroupAction& action, int cell);
CellSet map_cell_set(const GridGeometry& grid, const GroupAction& action, const CellSet& s);

} // namespace confloer

#endif
