#pragma once

#include <optional>
#include <string>

#include "tvspec/seminorm.hpp"

namespace tvspec {

/// Declarative sequence-space model: the generating seminorm family together
/// with the attributes the convergence and classification machinery needs.
/// Completeness and local boundedness are declared, never inferred.
struct SpaceModel {
    std::string name;
    SeminormFamily generating = SeminormFamily::coordinate(false);
    std::optional<SeminormFamily> bounded_sets;
    bool sequentially_complete = true;
    bool locally_bounded = false;
    /// Ambient norm whose Cauchy failure witnesses divergence on declared
    /// non-complete models (the vanishing-at-infinity sequence model).
    std::optional<Seminorm> ambient_norm;

    /// All real/complex sequences with the coordinate topology.
    static SpaceModel full_sequence(bool directed = true) {
        SpaceModel s;
        s.name = "full_sequence";
        s.generating = SeminormFamily::coordinate(directed);
        s.bounded_sets =
            SeminormFamily::bounded_boxes({WeightRule::unit(), WeightRule::power(2.0)});
        return s;
    }

    /// Bounded sequences with the coordinate topology (not sequentially
    /// complete; the growth boxes are the interesting bounded sets).
    static SpaceModel bounded_sequence() {
        SpaceModel s;
        s.name = "bounded_sequence";
        s.generating = SeminormFamily::coordinate(false);
        s.bounded_sets = SeminormFamily::bounded_boxes(
            {WeightRule::unit(), WeightRule::double_exponential_box()});
        s.sequentially_complete = false;
        return s;
    }

    /// Vanishing sequences with the coordinate topology; the declared sup
    /// norm witnesses escape from the space.
    static SpaceModel c0_sequence() {
        SpaceModel s;
        s.name = "c0_sequence";
        s.generating = SeminormFamily::coordinate(false);
        s.bounded_sets = SeminormFamily::bounded_boxes({WeightRule::unit()});
        s.sequentially_complete = false;
        s.ambient_norm = Seminorm::sup_norm();
        return s;
    }

    /// dim leading coordinates under one max-norm (a Banach block model).
    static SpaceModel single_norm(Index dim) {
        SpaceModel s;
        s.name = "single_norm(" + std::to_string(dim) + ")";
        s.generating = SeminormFamily::single_norm(dim);
        s.bounded_sets = SeminormFamily::bounded_boxes({WeightRule::unit()});
        s.locally_bounded = true;
        return s;
    }

    /// Bounded sequences under the sup norm itself (locally bounded).
    static SpaceModel sup_norm_sequence() {
        SpaceModel s;
        s.name = "sup_norm_sequence";
        s.generating = SeminormFamily::sup_norm_family();
        s.bounded_sets = SeminormFamily::bounded_boxes({WeightRule::unit()});
        s.locally_bounded = true;
        return s;
    }
};

} // namespace tvspec
