#ifndef CONFLOER_FLOW_HPP
#define CONFLOER_FLOW_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confloer/error.hpp"

namespace confloer {

/// Signed coordinate permutation: axis a maps to axis permutation[a] with
/// sign signs[a].  Generates a finite cyclic group acting on the grid.
struct GroupAction {
    std::vector<int> permutation;
    std::vector<int> signs; // +1 or -1

    static GroupAction identity(int dimension);
    bool is_identity() const;
    void validate(int dimension) const;
    /// v' with v'[permutation[a]] = signs[a] * v[a].
    std::vector<double> apply_vector(const std::vector<double>& v) const;
};

/// Cell indexing for a box discretized into an axis-aligned grid.
struct GridGeometry {
    int dimension = 0;
    std::vector<std::pair<double, double>> box;
    std::vector<int> resolution;

    int cell_count() const;
    int corner_count() const;
    double width(int axis) const;

    int cell_index(const std::vector<int>& multi) const;
    std::vector<int> cell_multi(int index) const;
    int corner_index(const std::vector<int>& multi) const;
    std::vector<int> corner_multi(int index) const;
    double corner_coordinate(int axis, int lattice) const;
    bool on_box_boundary(const std::vector<int>& multi) const;

    bool operator==(const GridGeometry&) const = default;
};

/// A vector field on a box, sampled at every grid corner, with
/// per-component Lipschitz bounds.  Houses everything the combinatorial
/// outer approximation needs.
struct FlowSpec {
    GridGeometry grid;
    std::vector<std::vector<double>> samples; // samples[component][corner_index]
    std::vector<double> lipschitz;            // per component
    std::optional<GroupAction> action;
    std::string name; // catalog name when built in

    void validate() const;
    double sample(int component, int corner_index) const { return samples[component][corner_index]; }

    static FlowSpec from_field(GridGeometry grid,
                               const std::function<std::vector<double>(const std::vector<double>&)>& field,
                               std::vector<double> lipschitz, std::string name = {},
                               std::optional<GroupAction> action = std::nullopt);
};

/// Built-in flows: "double_well_1d", "saddle_2d", "min_2d", "max_2d".
/// The 2D boxes are offset by half a reference cell so that no grid face
/// lies on the axes (a face on the zero set of the field forces edges in
/// both directions and destroys isolation).
FlowSpec catalog_flow(const std::string& name, int resolution = 0);
std::vector<std::string> flow_catalog_names();

} // namespace confloer

#endif
