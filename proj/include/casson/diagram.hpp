#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casson/errors.hpp"

namespace casson {

// One visit of the strand to a crossing. `position` is the index along the
// base strand (dense 0..n-1, left to right). Level 1 is the topmost branch
// at the crossing; larger numbers sit lower.
struct Passage {
    int position = 0;
    std::string crossing;
    std::optional<int> level;

    bool operator==(const Passage&) const = default;
};

// Oriented from the lower branch to the upper one (tail.level > head.level),
// decorated with the crossing sign. Endpoints are passage positions.
struct Chord {
    int tail = 0;
    int head = 0;
    int sign = 1;

    bool operator==(const Chord&) const = default;
};

struct MultiGaussDiagram {
    std::vector<Passage> passages; // index == position
    std::vector<Chord> chords;

    bool operator==(const MultiGaussDiagram&) const = default;

    std::size_t size() const { return passages.size(); }
    bool empty() const { return passages.empty(); }
};

// A multicrossing diagram in which every crossing has exactly two passages.
class DoubleGaussDiagram {
public:
    DoubleGaussDiagram() = default;
    explicit DoubleGaussDiagram(MultiGaussDiagram g); // throws NotDoubleCrossing

    const MultiGaussDiagram& get() const { return g_; }
    operator const MultiGaussDiagram&() const { return g_; }

    bool operator==(const DoubleGaussDiagram&) const = default;

private:
    MultiGaussDiagram g_;
};

// Grammar: token := ("O"|"U") int ("+"|"-"), whitespace separated, token
// order = strand order. Chords are oriented U -> O; the sign must be written
// on both tokens of a label and agree.
DoubleGaussDiagram parse_gauss_code(const std::string& text);

// Inverse of parse_gauss_code: labels are numbered 1.. in order of first
// appearance along the strand.
std::string to_gauss_code(const DoubleGaussDiagram& g);

// Diagram document (JSON, schema in the README). Accepts either explicit
// chords or a per-pair sign table from which chords are synthesized.
MultiGaussDiagram parse_diagram_json(const std::string& doc);

// Canonical document: passages sorted by position, chords sorted by
// (tail, head); parse_diagram_json(serialize(G)) == G field-exact.
std::string serialize(const MultiGaussDiagram& g);

// Report-style validation: empty result iff all invariants hold.
std::vector<std::string> validate(const MultiGaussDiagram& g);

// Positions of the k passages of each crossing, keyed by crossing id.
std::vector<std::pair<std::string, std::vector<int>>> crossing_groups(const MultiGaussDiagram& g);

bool is_double_crossing(const MultiGaussDiagram& g);

} // namespace casson
