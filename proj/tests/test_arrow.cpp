#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "casson/arrow.hpp"
#include "casson/mc.hpp"
#include "casson/pedal.hpp"

using namespace casson;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Independent oracle for the degree-2 pairings: a plain double loop over
// ordered chord pairs with the interleaving/orientation predicates.
long long naive_p0(const MultiGaussDiagram& g) {
    long long total = 0;
    for (const auto& a : g.chords)
        for (const auto& b : g.chords) {
            if (&a == &b) continue;
            if (a.tail < b.head && b.head < a.head && a.head < b.tail) total += a.sign * b.sign;
        }
    return total;
}

long long naive_left(const MultiGaussDiagram& g) {
    long long total = 0;
    for (const auto& a : g.chords)
        for (const auto& b : g.chords) {
            if (&a == &b) continue;
            // shared leftmost passage x: a = x->m, b = r->x with x < m < r
            if (a.tail == b.head && a.tail < a.head && a.head < b.tail) total += a.sign * b.sign;
        }
    return total;
}

long long naive_mid(const MultiGaussDiagram& g) {
    long long total = 0;
    for (const auto& a : g.chords)
        for (const auto& b : g.chords) {
            if (&a == &b) continue;
            // shared middle passage m: a = l->m, b = r->m with l < m < r
            if (a.head == b.head && a.tail < a.head && a.head < b.tail) total += a.sign * b.sign;
        }
    return total;
}

long long naive_right(const MultiGaussDiagram& g) {
    long long total = 0;
    for (const auto& a : g.chords)
        for (const auto& b : g.chords) {
            if (&a == &b) continue;
            // shared rightmost passage r: a = l->r, b = r->m with l < m < r
            if (a.head == b.tail && a.tail < b.head && b.head < a.head) total += a.sign * b.sign;
        }
    return total;
}

PedalPermutation random_pedal(int n, SampleRng& rng) {
    std::vector<int> rest(n - 1);
    for (int i = 0; i < n - 1; ++i) rest[i] = i + 2;
    for (int i = n - 2; i > 0; --i) {
        int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
        std::swap(rest[i], rest[j]);
    }
    std::vector<int> levels = {1};
    levels.insert(levels.end(), rest.begin(), rest.end());
    return PedalPermutation{levels};
}

} // namespace

TEST_CASE("embeddings of p0 in the trefoil") {
    auto g = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").get();
    auto embs = embeddings(c2_patterns().p0, g);
    REQUIRE(embs.size() == 1);
    // The embedding uses the chords 1->4 and 5->2 (by position).
    const auto& e = embs[0];
    CHECK(g.chords[e.arrow_to_chord[0]] == Chord{1, 4, 1});
    CHECK(g.chords[e.arrow_to_chord[1]] == Chord{5, 2, 1});
    CHECK(e.vertex_to_passage == std::vector<int>{1, 2, 4, 5});
}

TEST_CASE("embeddings: no room in a kink") {
    auto g = parse_gauss_code("O1+ U1+").get();
    CHECK(embeddings(c2_patterns().p0, g).empty());
}

TEST_CASE("unmarked pattern on table 1 row (c)") {
    auto g = parse_diagram_json(fixture("table1_c.json"));
    auto embs = embeddings(c2_patterns().unmarked, g);
    CHECK(embs.size() == 2);
    CHECK(pair(c2_patterns().unmarked, g) == 2);
    CHECK(pair(c2_patterns().p0, g) == 0);
}

TEST_CASE("pairing values") {
    const auto& pat = c2_patterns();
    CHECK(pair(pat.p0, parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").get()) == 1);
    CHECK(pair(pat.p0, MultiGaussDiagram{}) == 0);
    CHECK(pair(pat.p0, parse_gauss_code("U1- O2- U3- O1- U2- O3-").get()) == 1);
}

TEST_CASE("shared-endpoint pairings vanish on double-crossing diagrams") {
    const auto& pat = c2_patterns();
    for (const char* code : {"O1+ U1+", "O1+ U2+ O3+ U1+ O2+ U3+", "O1+ O2- U2- U1+"}) {
        auto g = parse_gauss_code(code).get();
        CHECK(pair(pat.left, g) == 0);
        CHECK(pair(pat.mid, g) == 0);
        CHECK(pair(pat.right, g) == 0);
        CHECK(pair(pat.unmarked, g) == pair(pat.p0, g));
    }
}

TEST_CASE("pair_poly: linearity and normalization") {
    auto g = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").get();
    const auto& pat = c2_patterns();
    ArrowPolynomial p1{{{Rational(1), pat.p0}}};
    CHECK(pair_poly(p1, g) == Rational(pair(pat.p0, g)));
    ArrowPolynomial p2{{{Rational(1, 2), pat.p0}, {Rational(1, 2), pat.p0}}};
    CHECK(pair_poly(p2, g) == Rational(1));

    auto merged = normalized(p2);
    REQUIRE(merged.terms.size() == 1);
    CHECK(merged.terms[0].first == Rational(1));
    CHECK(merged.terms[0].second == pat.p0);
    auto cancelled = normalized(
        ArrowPolynomial{{{Rational(1, 2), pat.left}, {Rational(-1, 2), pat.left}}});
    CHECK(cancelled.terms.empty());
}

TEST_CASE("theorem-B polynomial on table 1 row (f)") {
    auto g = parse_diagram_json(fixture("table1_f.json"));
    const auto& pat = c2_patterns();
    CHECK(pair(pat.p0, g) == 0);
    CHECK(pair(pat.left, g) == 1);
    CHECK(pair(pat.mid, g) == 0);
    CHECK(pair(pat.right, g) == 1);
    CHECK(pair(pat.unmarked, g) == 2);
    ArrowPolynomial thmB{{{Rational(1), pat.p0},
                          {Rational(1, 2), pat.left},
                          {Rational(1, 2), pat.mid},
                          {Rational(1, 2), pat.right}}};
    CHECK(pair_poly(thmB, g) == Rational(1));
}

TEST_CASE("expansion identity and oracle equivalence on random pedal diagrams") {
    const auto& pat = c2_patterns();
    SampleRng rng(2024, 0);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng.next_u64() % 7); // up to 9 petals
        auto g = pedal_to_gauss(random_pedal(n, rng));
        long long p0 = pair(pat.p0, g);
        long long l = pair(pat.left, g), m = pair(pat.mid, g), r = pair(pat.right, g);
        CHECK(pair(pat.unmarked, g) == p0 + l + m + r);
        CHECK(p0 == naive_p0(g));
        CHECK(l == naive_left(g));
        CHECK(m == naive_mid(g));
        CHECK(r == naive_right(g));
        CHECK(embeddings(pat.p0, g).size() <= g.chords.size() * (g.chords.size() - 1) / 2);
    }
}

TEST_CASE("sign multiplicativity") {
    SampleRng rng(7, 0);
    auto g = pedal_to_gauss(random_pedal(7, rng));
    const auto& pat = c2_patterns();

    // Flipping every sign leaves all degree-2 pairings unchanged.
    MultiGaussDiagram flipped = g;
    for (auto& c : flipped.chords) c.sign = -c.sign;
    for (const ArrowDiagram* a : {&pat.p0, &pat.left, &pat.mid, &pat.right, &pat.unmarked})
        CHECK(pair(*a, g) == pair(*a, flipped));

    // Negating one chord negates exactly the embeddings through it.
    MultiGaussDiagram one = g;
    one.chords[4].sign = -one.chords[4].sign;
    long long expected = 0;
    for (const auto& e : embeddings(pat.unmarked, g)) {
        int sign = 1;
        bool uses = false;
        for (int ci : e.arrow_to_chord) {
            sign *= g.chords[ci].sign;
            if (ci == 4) uses = true;
        }
        expected += uses ? -sign : sign;
    }
    CHECK(pair(pat.unmarked, one) == expected);
}
