#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "torweyl/action.hpp"
#include "torweyl/exactlin.hpp"

namespace torweyl {

// Obstruction kinds for the main verdict.  Indices are 0-based internally;
// the CLI presents them 1-based.

// The last s weight columns satisfy an integer relation, so the action is not
// transitive on the torus factor and no finite-dimensional module separates
// the resulting invariant units.
struct DependentWeightsObstruction {
    IntVec relation;  // nonzero integer vector in the kernel of the torus block
};

// Slice weight rho_index vanishes, so the isotropy identity component fixes a
// polynomial coordinate; torsion_order is the smallest e >= 1 with e times
// that weight trivial on the full isotropy group.
struct FixedCoordinateObstruction {
    std::size_t index;
    Int torsion_order;
};

using Obstruction = std::variant<DependentWeightsObstruction, FixedCoordinateObstruction>;

// True iff the invariant ring of the action is just the constants, together
// with the certifying vector beta = y^T L (positive on the first r
// coordinates, zero on the last s).  Always false for non-transitive actions,
// whose invariants contain units.
std::pair<bool, std::optional<PositivityWitness>> invariants_trivial(const TorusAction& a);

// Smallest sign-flip set I of polynomial coordinates (0-based) making the
// flipped action's invariants trivial; nullopt when some slice weight
// vanishes (then no flip set exists).  Requires transitivity.
std::optional<std::vector<std::size_t>> find_flip_set(const TorusAction& a);

// The action with the weight columns in `flips` negated (0-based indices
// into the first r coordinates).
TorusAction flip_action(const TorusAction& a, const std::vector<std::size_t>& flips);

// Smallest positive e such that e times weight j is trivial on the whole
// isotropy group of the base torus point.  Requires rho_j = 0.
Int fixed_coordinate_torsion(const TorusAction& a, std::size_t j);

// Gelfand-Kirillov dimensions (2n - m, 2(n - m)) of the invariant operator
// ring and of its fiber over the invariant base.
std::pair<long long, long long> gk_dimensions(const TorusAction& a);

struct AnalysisReport {
    bool transitive = false;
    bool faithful = false;
    bool fixed_space_trivial = false;
    bool invariants_trivial = false;
    bool enough_fdm = false;  // the main verdict
    long long gk_total = 0;
    long long gk_fiber = 0;
    std::optional<std::vector<std::size_t>> flip_set;
    std::optional<PositivityWitness> positivity_witness;
    bool witness_for_flip = false;  // witness certifies the flipped action
    std::optional<Obstruction> obstruction;
};

// Full verdict with cross-validation between the slice criterion and the
// flip-set/positivity path; disagreement raises InternalConsistencyError.
AnalysisReport analyze(const TorusAction& a);

}  // namespace torweyl
