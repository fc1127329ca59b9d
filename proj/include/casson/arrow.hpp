#pragma once

#include <vector>

#include "casson/diagram.hpp"
#include "casson/rational.hpp"

namespace casson {

// Endpoint markings: Distinct (circle) endpoints never collide with anything,
// Shared (disc) endpoints are single vertices where several arrows meet, and
// Plain (unmarked) endpoints may or may not collide with each other.
enum class Mark { Distinct, Shared, Plain };

struct ArrowEdge {
    int tail = 0; // vertex index
    int head = 0;

    bool operator==(const ArrowEdge&) const = default;
};

// Vertices are listed in strand order.
struct ArrowDiagram {
    std::vector<Mark> vertices;
    std::vector<ArrowEdge> arrows;

    bool operator==(const ArrowDiagram&) const = default;
};

struct Embedding {
    std::vector<int> vertex_to_passage; // passage positions, weakly monotone
    std::vector<int> arrow_to_chord;    // indices into G.chords, orientation preserving

    bool operator==(const Embedding&) const = default;
};

struct ArrowPolynomial {
    std::vector<std::pair<Rational, ArrowDiagram>> terms;
};

// Merge identical diagrams and drop zero coefficients.
ArrowPolynomial normalized(const ArrowPolynomial& p);

// All embeddings of A into G, duplicate free. Empty result is fine.
std::vector<Embedding> embeddings(const ArrowDiagram& a, const MultiGaussDiagram& g);

// <A,G> = sum over embeddings of the product of image chord signs.
long long pair(const ArrowDiagram& a, const MultiGaussDiagram& g);

// Linear extension of pair() with exact rational coefficients.
Rational pair_poly(const ArrowPolynomial& p, const MultiGaussDiagram& g);

// The five fixed degree-2 patterns of the c2 formulas.
struct C2Patterns {
    ArrowDiagram p0;       // v1<v2<v3<v4 all Distinct, arrows v1->v3, v4->v2
    ArrowDiagram left;     // w1 Shared, arrows w1->w2, w3->w1
    ArrowDiagram mid;      // w2 Shared, arrows w1->w2, w3->w2
    ArrowDiagram right;    // w3 Shared, arrows w1->w3, w3->w2
    ArrowDiagram unmarked; // shape of p0 with all vertices Plain
};

const C2Patterns& c2_patterns();

} // namespace casson
