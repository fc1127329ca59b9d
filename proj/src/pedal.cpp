#include "casson/pedal.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "casson/mc.hpp"

namespace casson {

PedalPermutation PedalPermutation::parse(const std::string& text) {
    PedalPermutation p;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
            if (used != item.size()) throw std::invalid_argument("junk");
            p.levels.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidPermutation, "bad entry '" + item + "'");
        }
    }
    p.check();
    return p;
}

void PedalPermutation::check() const {
    if (!counterclockwise)
        throw Error(ErrorCode::InvalidPermutation,
                    "only counterclockwise pedal diagrams are supported");
    const int n = static_cast<int>(levels.size());
    if (n < 3)
        throw Error(ErrorCode::InvalidPermutation,
                    "need at least three petals for a pedal projection");
    if (levels.front() != 1)
        throw Error(ErrorCode::InvalidPermutation, "permutation must begin with 1");
    std::set<int> seen(levels.begin(), levels.end());
    if (static_cast<int>(seen.size()) != n || *seen.begin() != 1 || *seen.rbegin() != n)
        throw Error(ErrorCode::InvalidPermutation, "entries must be a permutation of 1..n");
}

int pedal_chord_sign(const PedalPermutation& p, int value_a, int value_b) {
    const int n = p.petals();
    int ia = -1, ib = -1;
    for (int i = 0; i < n; ++i) {
        if (p.levels[i] == value_a) ia = i;
        if (p.levels[i] == value_b) ib = i;
    }
    if (ia < 0 || ib < 0 || ia == ib)
        throw Error(ErrorCode::InvalidPermutation, "values not a distinct pair from the permutation");
    int i = std::min(ia, ib), j = std::max(ia, ib);
    int early = p.levels[i], late = p.levels[j];
    int parity = (j - i) % 2; // strands j-i apart run opposite ways when odd
    int base = parity ? -1 : 1;
    return early < late ? base : -base;
}

MultiGaussDiagram pedal_to_gauss(const PedalPermutation& p) {
    p.check();
    const int n = p.petals();
    // Endpoint sequence after cutting the petal joining levels 1 and a2.
    std::vector<int> s(p.levels.begin() + 1, p.levels.end());
    s.push_back(1);

    MultiGaussDiagram g;
    for (int i = 0; i < n; ++i)
        g.passages.push_back(Passage{i, "uber", s[i]});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int tail = s[i] > s[j] ? i : j; // lower branch carries the larger level
            int head = s[i] > s[j] ? j : i;
            g.chords.push_back(Chord{tail, head, pedal_chord_sign(p, s[i], s[j])});
        }
    std::sort(g.chords.begin(), g.chords.end(), [](const Chord& a, const Chord& b) {
        return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
    });
    return g;
}

PedalBreakdown c2_pedal_breakdown(const PedalPermutation& p) {
    p.check();
    const int n = p.petals();
    std::vector<int> s(p.levels.begin() + 1, p.levels.end());
    s.push_back(1);

    auto sign = [&](int a, int b) { return pedal_chord_sign(p, a, b); };

    PedalBreakdown out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!(s[j] < s[i])) continue;
            for (int k = j + 1; k < n; ++k) {
                if (!(s[j] < s[k])) continue;
                int sij = sign(s[i], s[j]);
                int sik = sign(s[i], s[k]);
                int sjk = sign(s[j], s[k]);
                int c = 0;
                if (sij == sik && sik == sjk)
                    c = 1;
                else if (s[k] < s[i] && sij == sik && sik == -sjk)
                    c = -1;
                else if (s[k] > s[i] && sjk == sik && sik == -sij)
                    c = -1;
                out.triples.push_back({{s[i], s[j], s[k]}, c});
                out.total += c;
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (!(s[k] < s[i])) continue;
                for (int l = k + 1; l < n; ++l) {
                    if (!(s[j] < s[l])) continue;
                    int c = sign(s[i], s[k]) == sign(s[j], s[l]) ? 1 : -1;
                    out.quadruples.push_back({{s[i], s[j], s[k], s[l]}, c});
                    out.total += c;
                }
            }
    return out;
}

long long c2_pedal(const PedalPermutation& p) { return c2_pedal_breakdown(p).total; }

CrossingGeometry pedal_geometry(const PedalPermutation& p, std::uint64_t seed) {
    p.check();
    const int n = p.petals();
    const double pi = std::acos(-1.0);
    // For odd n (the petal diagrams of knots), the rose r = cos(n theta)
    // realizes the chord signs: visit m passes the center at
    // theta = (2m+1) pi / (2n) moving along -(-1)^m (cos, sin) of that
    // angle, and petal_curve displaces the strands by exactly these offsets,
    // so the geometric and combinatorial perturbations agree chord for
    // chord. Even n has no rose model; directions are solved from the signs.
    if (n % 2 == 0) return CrossingGeometry::random_for(pedal_to_gauss(p), seed);
    CrossingGeometry geom;
    auto& site = geom.sites["uber"];
    for (int m = 0; m < n; ++m) {
        SampleRng rng(seed, static_cast<std::uint64_t>(m));
        double angle = (2 * m + 1) * pi / (2 * n) + (m % 2 == 0 ? pi : 0.0);
        double offset = (rng.next_double() - 0.5) * 0.12;
        site.push_back(PassageGeometry{angle, offset});
    }
    return geom;
}

DoubleGaussDiagram pedal_perturb(const PedalPermutation& p, std::uint64_t seed) {
    return perturb(pedal_to_gauss(p), pedal_geometry(p, seed));
}

long long uber_bound(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidPermutation, "petal count must be >= 1");
    auto choose = [](long long m, int k) {
        if (m < k) return 0LL;
        long long r = 1;
        for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
        return r;
    };
    return choose(n - 1, 3) + choose(n - 1, 4);
}

} // namespace casson
