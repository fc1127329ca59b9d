#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "casson/casson.hpp"
#include "casson/diagram.hpp"

namespace casson {

// A pedal (petal) projection, identified by the permutation (1, a2, ..., an)
// of strand levels in traversal order. Only the counterclockwise orientation
// is implemented; clockwise input is rejected rather than guessed at.
struct PedalPermutation {
    std::vector<int> levels;
    bool counterclockwise = true;

    static PedalPermutation parse(const std::string& text); // "1,3,5,2,7,4,6"
    void check() const; // throws InvalidPermutation
    int petals() const { return static_cast<int>(levels.size()); }
};

// Sign of the chord joining strands a_i and a_j (1-based positions i < j in
// the permutation, a_1 = 1): (-1)^(j-i) when a_i < a_j, else (-1)^(j-i+1).
int pedal_chord_sign(const PedalPermutation& p, int value_a, int value_b);

// The one-crossing Gauss diagram of the pedal projection: passages in strand
// order a2,...,an,1, each at its level, with a chord for every pair.
MultiGaussDiagram pedal_to_gauss(const PedalPermutation& p);

// Direct count over the endpoint sequence (a2,...,an,1): triples whose middle
// value is smallest plus P0-type quadruples.
long long c2_pedal(const PedalPermutation& p);

// Per-subset contributions behind c2_pedal, for fixture-level checks.
struct PedalBreakdown {
    std::vector<std::pair<std::vector<int>, int>> triples;    // strand values, contribution
    std::vector<std::pair<std::vector<int>, int>> quadruples; // nonzero only
    long long total = 0;
};
PedalBreakdown c2_pedal_breakdown(const PedalPermutation& p);

// Geometry of the evenly spaced petal arrangement: visit m runs in direction
// (-1)^m * (cos(m*pi/n), sin(m*pi/n)), with deterministic offsets from seed.
CrossingGeometry pedal_geometry(const PedalPermutation& p, std::uint64_t seed);

DoubleGaussDiagram pedal_perturb(const PedalPermutation& p, std::uint64_t seed = 1);

// Lower bound C(n-1,3) + C(n-1,4) on |c2| over n-petal diagrams.
long long uber_bound(int n);

} // namespace casson
