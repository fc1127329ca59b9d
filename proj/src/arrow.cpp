#include "casson/arrow.hpp"

#include <algorithm>
#include <functional>

namespace casson {

namespace {

void check_arrow_diagram(const ArrowDiagram& a) {
    const int nv = static_cast<int>(a.vertices.size());
    std::vector<int> degree(nv, 0);
    for (const auto& e : a.arrows) {
        if (e.tail < 0 || e.tail >= nv || e.head < 0 || e.head >= nv)
            throw Error(ErrorCode::InvalidDiagram, "arrow endpoint out of range");
        if (e.tail == e.head) throw Error(ErrorCode::InvalidDiagram, "arrow is a loop");
        degree[e.tail]++;
        degree[e.head]++;
    }
    for (int v = 0; v < nv; ++v) {
        if (a.vertices[v] == Mark::Shared && degree[v] < 2)
            throw Error(ErrorCode::InvalidDiagram, "shared vertex with degree < 2");
        if (a.vertices[v] != Mark::Shared && degree[v] != 1)
            throw Error(ErrorCode::InvalidDiagram, "marked/unmarked vertex must have degree 1");
    }
}

} // namespace

std::vector<Embedding> embeddings(const ArrowDiagram& a, const MultiGaussDiagram& g) {
    check_arrow_diagram(a);
    const int na = static_cast<int>(a.arrows.size());
    const int nc = static_cast<int>(g.chords.size());
    const int nv = static_cast<int>(a.vertices.size());

    std::vector<Embedding> found;
    if (na == 0 || nc < na) return found;

    std::vector<int> choice(na, -1);   // arrow -> chord index
    std::vector<char> used(nc, 0);
    std::vector<int> image(nv, -1);    // vertex -> passage position

    auto assign_vertex = [&](int v, int pos) {
        if (image[v] == -1) {
            image[v] = pos;
            return true;
        }
        return image[v] == pos;
    };

    std::function<void(int)> search = [&](int ai) {
        if (ai == na) {
            // Weak monotonicity; collisions only between Plain vertices.
            for (int v = 0; v + 1 < nv; ++v) {
                if (image[v] > image[v + 1]) return;
                if (image[v] == image[v + 1] &&
                    (a.vertices[v] != Mark::Plain || a.vertices[v + 1] != Mark::Plain))
                    return;
            }
            // Non-adjacent equal images are excluded by strictness between
            // any non-Plain pair; equal runs of Plain vertices are fine.
            Embedding e;
            e.vertex_to_passage = image;
            e.arrow_to_chord = choice;
            found.push_back(std::move(e));
            return;
        }
        for (int ci = 0; ci < nc; ++ci) {
            if (used[ci]) continue;
            const Chord& c = g.chords[ci];
            int saved_tail = image[a.arrows[ai].tail];
            int saved_head = image[a.arrows[ai].head];
            if (assign_vertex(a.arrows[ai].tail, c.tail) &&
                assign_vertex(a.arrows[ai].head, c.head)) {
                used[ci] = 1;
                choice[ai] = ci;
                search(ai + 1);
                used[ci] = 0;
                choice[ai] = -1;
            }
            image[a.arrows[ai].tail] = saved_tail;
            image[a.arrows[ai].head] = saved_head;
        }
    };
    search(0);
    return found;
}

long long pair(const ArrowDiagram& a, const MultiGaussDiagram& g) {
    long long total = 0;
    for (const auto& e : embeddings(a, g)) {
        int sign = 1;
        for (int ci : e.arrow_to_chord) sign *= g.chords[ci].sign;
        total += sign;
    }
    return total;
}

Rational pair_poly(const ArrowPolynomial& p, const MultiGaussDiagram& g) {
    Rational sum;
    for (const auto& [coeff, diagram] : p.terms) sum += coeff * Rational(pair(diagram, g));
    return sum;
}

ArrowPolynomial normalized(const ArrowPolynomial& p) {
    ArrowPolynomial out;
    for (const auto& [coeff, diagram] : p.terms) {
        bool merged = false;
        for (auto& [c, d] : out.terms)
            if (d == diagram) {
                c += coeff;
                merged = true;
            }
        if (!merged) out.terms.push_back({coeff, diagram});
    }
    std::erase_if(out.terms, [](const auto& term) { return term.first == Rational(0); });
    return out;
}

const C2Patterns& c2_patterns() {
    static const C2Patterns patterns = [] {
        C2Patterns c;
        c.p0.vertices = {Mark::Distinct, Mark::Distinct, Mark::Distinct, Mark::Distinct};
        c.p0.arrows = {{0, 2}, {3, 1}};
        c.left.vertices = {Mark::Shared, Mark::Distinct, Mark::Distinct};
        c.left.arrows = {{0, 1}, {2, 0}};
        c.mid.vertices = {Mark::Distinct, Mark::Shared, Mark::Distinct};
        c.mid.arrows = {{0, 1}, {2, 1}};
        c.right.vertices = {Mark::Distinct, Mark::Distinct, Mark::Shared};
        c.right.arrows = {{0, 2}, {2, 1}};
        c.unmarked.vertices = {Mark::Plain, Mark::Plain, Mark::Plain, Mark::Plain};
        c.unmarked.arrows = {{0, 2}, {3, 1}};
        return c;
    }();
    return patterns;
}

} // namespace casson
