#include "casson/casson.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "casson/mc.hpp"

namespace casson {

long long c2_double(const DoubleGaussDiagram& g) {
    return pair(c2_patterns().p0, g.get());
}

long long c2_multi(const MultiGaussDiagram& g) {
    const auto& pat = c2_patterns();
    Rational value = Rational(pair(pat.p0, g)) +
                     Rational(1, 2) * Rational(pair(pat.left, g) + pair(pat.mid, g) +
                                               pair(pat.right, g));
    if (!value.is_integer())
        throw Error(ErrorCode::NonIntegerResult,
                    "multicrossing count " + value.str() +
                        " is not an integer; diagram is not a knot projection");
    return value.as_integer();
}

namespace {

// Arcs on the circle as (start, length); intersect a list with the open
// half-circle starting at h.
std::vector<std::pair<double, double>> intersect_half(
    const std::vector<std::pair<double, double>>& arcs, double h) {
    const double pi = std::acos(-1.0);
    std::vector<std::pair<double, double>> out;
    for (const auto& [s, len] : arcs) {
        double delta = std::fmod(h - s, 2 * pi);
        if (delta < 0) delta += 2 * pi;
        for (double base : {delta, delta - 2 * pi}) {
            double lo = std::max(0.0, base);
            double hi = std::min(len, base + pi);
            if (hi - lo > 1e-9) out.push_back({s + lo, hi - lo});
        }
    }
    return out;
}

} // namespace

CrossingGeometry CrossingGeometry::random_for(const MultiGaussDiagram& g, std::uint64_t seed) {
    const double pi = std::acos(-1.0);
    CrossingGeometry geom;

    std::map<std::pair<int, int>, const Chord*> chord_by_pair;
    for (const auto& c : g.chords)
        chord_by_pair[{std::min(c.tail, c.head), std::max(c.tail, c.head)}] = &c;

    std::uint64_t counter = 0;
    for (const auto& [id, positions] : crossing_groups(g)) {
        if (positions.size() < 3) continue;
        const int k = static_cast<int>(positions.size());

        // The straight-line model must realize the chord signs: for each
        // pair, sign = sgn det2[direction of upper strand, direction of
        // lower strand]. That fixes, for j < i, the required sign of
        // sin(theta_i - theta_j); each constraint is an open half-circle.
        std::vector<std::vector<int>> want(k, std::vector<int>(k, 0));
        for (int j = 0; j < k; ++j)
            for (int i = j + 1; i < k; ++i) {
                int pj = positions[j], pi = positions[i];
                const Chord* c =
                    chord_by_pair.at({std::min(pj, pi), std::max(pj, pi)});
                bool j_over = (c->head == pj);
                want[j][i] = j_over ? c->sign : -c->sign;
            }

        bool placed = false;
        for (int attempt = 0; attempt < 256 && !placed; ++attempt) {
            SampleRng rng(seed, (counter << 16) + attempt);
            std::vector<double> theta(k);
            theta[0] = 2 * pi * rng.next_double();
            bool ok = true;
            for (int i = 1; i < k && ok; ++i) {
                std::vector<std::pair<double, double>> feasible = {{0.0, 2 * pi}};
                for (int j = 0; j < i; ++j) {
                    double h = want[j][i] > 0 ? theta[j] : theta[j] + pi;
                    feasible = intersect_half(feasible, h);
                }
                if (feasible.empty()) {
                    ok = false;
                    break;
                }
                auto& arc = feasible[static_cast<std::size_t>(rng.next_u64() % feasible.size())];
                theta[i] = arc.first + arc.second * (0.15 + 0.7 * rng.next_double());
            }
            if (!ok) continue;
            auto& site = geom.sites[id];
            site.clear();
            for (int i = 0; i < k; ++i)
                site.push_back(PassageGeometry{theta[i], (rng.next_double() - 0.5) * 0.4});
            placed = true;
        }
        if (!placed)
            throw Error(ErrorCode::DegenerateGeometry,
                        "no straight-line arrangement realizes the signs of crossing " + id);
        ++counter;
    }
    return geom;
}

DoubleGaussDiagram perturb(const MultiGaussDiagram& g, const CrossingGeometry& geom) {
    auto report = validate(g);
    if (!report.empty()) throw Error(ErrorCode::InvalidDiagram, report.front());

    std::map<std::pair<int, int>, const Chord*> chord_by_pair;
    for (const auto& c : g.chords)
        chord_by_pair[{std::min(c.tail, c.head), std::max(c.tail, c.head)}] = &c;

    std::set<std::string> taken_ids;
    for (const auto& p : g.passages) taken_ids.insert(p.crossing);

    // Per original passage, the ordered list of new passages it expands to,
    // each remembering which original chord it realizes and its new level.
    struct SubPassage {
        std::string crossing;
        int level;
        const Chord* original; // nullptr for untouched double crossings
        bool is_tail;
    };
    std::vector<std::vector<SubPassage>> expansion(g.passages.size());

    for (const auto& [id, positions] : crossing_groups(g)) {
        const int k = static_cast<int>(positions.size());
        if (k == 2) {
            const Chord* c = chord_by_pair.at({std::min(positions[0], positions[1]),
                                               std::max(positions[0], positions[1])});
            for (int pos : positions) {
                const auto& p = g.passages[pos];
                expansion[pos].push_back(
                    SubPassage{p.crossing, p.level ? *p.level : (pos == c->tail ? 2 : 1), c,
                               pos == c->tail});
            }
            continue;
        }
        auto it = geom.sites.find(id);
        if (it == geom.sites.end() || static_cast<int>(it->second.size()) != k)
            throw Error(ErrorCode::DegenerateGeometry,
                        "geometry does not cover crossing " + id);
        const auto& site = it->second;

        struct V2 {
            double x = 0, y = 0;
        };
        std::vector<V2> dir(k), base(k);
        for (int i = 0; i < k; ++i) {
            dir[i] = {std::cos(site[i].angle), std::sin(site[i].angle)};
            base[i] = {-std::sin(site[i].angle) * site[i].offset,
                       std::cos(site[i].angle) * site[i].offset};
        }

        // Arc position of each pairwise intersection along each line. The
        // arrangement must also realize the chord signs (sign = orientation
        // of the upper/lower direction pair), otherwise the resolved diagram
        // would not be a perturbation of anything carrying this data.
        std::vector<std::vector<std::pair<double, int>>> hits(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                double den = dir[i].x * dir[j].y - dir[i].y * dir[j].x;
                if (std::abs(den) < 1e-9)
                    throw Error(ErrorCode::DegenerateGeometry,
                                "parallel strands in crossing " + id);
                const Chord* orig = chord_by_pair.at(
                    {std::min(positions[i], positions[j]), std::max(positions[i], positions[j])});
                bool i_over = *g.passages[positions[i]].level < *g.passages[positions[j]].level;
                double oriented = i_over ? den : -den;
                if ((oriented > 0 ? 1 : -1) != orig->sign)
                    throw Error(ErrorCode::DegenerateGeometry,
                                "arrangement does not realize the sign of a chord in crossing " +
                                    id);
                double rx = base[j].x - base[i].x, ry = base[j].y - base[i].y;
                double s = (rx * dir[j].y - ry * dir[j].x) / den;
                double u = (rx * dir[i].y - ry * dir[i].x) / den;
                hits[i].push_back({s, j});
                hits[j].push_back({u, i});
            }
        for (int i = 0; i < k; ++i) {
            std::sort(hits[i].begin(), hits[i].end());
            for (std::size_t a = 0; a + 1 < hits[i].size(); ++a)
                if (hits[i][a + 1].first - hits[i][a].first < 1e-9)
                    throw Error(ErrorCode::DegenerateGeometry,
                                "coincident intersections in crossing " + id);
        }

        auto fresh_id = [&](int i, int j) {
            std::string cand = id + "#" + std::to_string(i) + "-" + std::to_string(j);
            while (taken_ids.count(cand)) cand = "#" + cand;
            return cand;
        };
        std::map<std::pair<int, int>, std::string> new_ids;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                new_ids[{i, j}] = fresh_id(i, j);
                taken_ids.insert(new_ids[{i, j}]);
            }

        for (int i = 0; i < k; ++i) {
            int pos_i = positions[i];
            int lvl_i = *g.passages[pos_i].level;
            for (const auto& [arc, j] : hits[i]) {
                int pos_j = positions[j];
                int lvl_j = *g.passages[pos_j].level;
                const Chord* orig = chord_by_pair.at(
                    {std::min(pos_i, pos_j), std::max(pos_i, pos_j)});
                expansion[pos_i].push_back(SubPassage{new_ids[{std::min(i, j), std::max(i, j)}],
                                                      lvl_i < lvl_j ? 1 : 2, orig,
                                                      lvl_i > lvl_j});
            }
        }
    }

    MultiGaussDiagram out;
    std::map<std::pair<const Chord*, std::string>, std::pair<int, int>> ends; // (tail,head) positions
    for (const auto& subs : expansion)
        for (const auto& sp : subs) {
            int pos = static_cast<int>(out.passages.size());
            out.passages.push_back(Passage{pos, sp.crossing, sp.level});
            auto& e = ends[{sp.original, sp.crossing}];
            (sp.is_tail ? e.first : e.second) = pos + 1; // +1 so 0 means unset
        }
    for (const auto& [key, e] : ends) {
        if (e.first == 0 || e.second == 0)
            throw Error(ErrorCode::InvalidDiagram, "perturbation lost a chord endpoint");
        out.chords.push_back(Chord{e.first - 1, e.second - 1, key.first->sign});
    }
    std::sort(out.chords.begin(), out.chords.end(), [](const Chord& a, const Chord& b) {
        return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
    });

    auto out_report = validate(out);
    if (!out_report.empty()) throw Error(ErrorCode::InvalidDiagram, out_report.front());
    return DoubleGaussDiagram(std::move(out));
}

DoubleGaussDiagram perturb(const MultiGaussDiagram& g, std::uint64_t seed) {
    return perturb(g, CrossingGeometry::random_for(g, seed));
}

} // namespace casson
