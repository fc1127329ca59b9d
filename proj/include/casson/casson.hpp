#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "casson/arrow.hpp"
#include "casson/diagram.hpp"

namespace casson {

// Straight-line model of one passage through a crossing: the strand runs
// through `offset * normal(angle)` in direction `angle`, at height `level`.
struct PassageGeometry {
    double angle = 0.0;
    double offset = 0.0;
};

// Realization data for perturbing multicrossings, keyed by crossing id.
// Entries are per passage, in strand order of the passages of that crossing.
struct CrossingGeometry {
    std::map<std::string, std::vector<PassageGeometry>> sites;

    // Deterministic directions and offsets from `seed` for every crossing of
    // G with three or more passages. Directions are solved so the
    // arrangement realizes the chord signs; throws DegenerateGeometry when
    // no arrangement does.
    static CrossingGeometry random_for(const MultiGaussDiagram& g, std::uint64_t seed);
};

// c2 of a double-crossing diagram: <p0, G>.
long long c2_double(const DoubleGaussDiagram& g);

// Multicrossing formula <p0,G> + (1/2)(<left,G> + <mid,G> + <right,G>).
// Throws NonIntegerResult when the rational value is not an integer.
long long c2_multi(const MultiGaussDiagram& g);

// Replace every k-passage crossing (k >= 3) by the k(k-1)/2 transverse
// double crossings of the straight-line arrangement described by `geom`.
// New chords inherit sign and orientation from the originals.
DoubleGaussDiagram perturb(const MultiGaussDiagram& g, const CrossingGeometry& geom);

DoubleGaussDiagram perturb(const MultiGaussDiagram& g, std::uint64_t seed);

} // namespace casson
