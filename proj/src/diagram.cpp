#include "casson/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace casson {

using nlohmann::json;

namespace {

struct PairKey {
    int a, b;
    PairKey(int x, int y) : a(std::min(x, y)), b(std::max(x, y)) {}
    bool operator<(const PairKey& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
};

} // namespace

std::vector<std::pair<std::string, std::vector<int>>> crossing_groups(const MultiGaussDiagram& g) {
    std::vector<std::pair<std::string, std::vector<int>>> groups;
    std::map<std::string, std::size_t> index;
    for (const auto& p : g.passages) {
        auto it = index.find(p.crossing);
        if (it == index.end()) {
            index.emplace(p.crossing, groups.size());
            groups.push_back({p.crossing, {p.position}});
        } else {
            groups[it->second].second.push_back(p.position);
        }
    }
    return groups;
}

bool is_double_crossing(const MultiGaussDiagram& g) {
    for (const auto& [id, positions] : crossing_groups(g))
        if (positions.size() != 2) return false;
    return true;
}

DoubleGaussDiagram::DoubleGaussDiagram(MultiGaussDiagram g) : g_(std::move(g)) {
    if (!is_double_crossing(g_))
        throw Error(ErrorCode::NotDoubleCrossing, "a crossing has more than two passages");
}

std::vector<std::string> validate(const MultiGaussDiagram& g) {
    std::vector<std::string> report;
    const int n = static_cast<int>(g.passages.size());

    std::set<int> positions;
    bool positions_ok = true;
    for (int i = 0; i < n; ++i) {
        const auto& p = g.passages[i];
        if (!positions.insert(p.position).second || p.position != i) positions_ok = false;
    }
    if (!positions_ok)
        report.push_back("positions not a permutation of 0..n-1 in strand order");

    auto passage_at = [&](int pos) -> const Passage* {
        if (pos < 0 || pos >= n) return nullptr;
        return &g.passages[pos];
    };

    for (std::size_t ci = 0; ci < g.chords.size(); ++ci) {
        const auto& c = g.chords[ci];
        const Passage* t = passage_at(c.tail);
        const Passage* h = passage_at(c.head);
        if (!t || !h) {
            report.push_back("chord " + std::to_string(ci) + ": endpoint out of range");
            continue;
        }
        if (c.tail == c.head) report.push_back("chord " + std::to_string(ci) + ": loop");
        if (t->crossing != h->crossing)
            report.push_back("chord " + std::to_string(ci) + ": endpoints in different crossings");
        if (c.sign != 1 && c.sign != -1)
            report.push_back("chord " + std::to_string(ci) + ": sign not +-1");
        if (t->level && h->level && !(*h->level < *t->level))
            report.push_back("chord " + std::to_string(ci) +
                             ": orientation contradicts levels (head must be the upper branch)");
    }

    std::map<PairKey, int> chord_count;
    for (const auto& c : g.chords) chord_count[PairKey(c.tail, c.head)]++;
    for (const auto& [key, count] : chord_count)
        if (count > 1)
            report.push_back("duplicate chord for pair (" + std::to_string(key.a) + "," +
                             std::to_string(key.b) + ")");

    for (const auto& [id, positions_of] : crossing_groups(g)) {
        const std::size_t k = positions_of.size();
        if (k < 2) {
            report.push_back("crossing " + id + ": only one passage");
            continue;
        }
        std::set<int> levels;
        std::size_t with_level = 0;
        for (int pos : positions_of) {
            const Passage* p = passage_at(pos);
            if (p && p->level) {
                ++with_level;
                if (!levels.insert(*p->level).second)
                    report.push_back("crossing " + id + ": duplicate level " +
                                     std::to_string(*p->level));
            }
        }
        if (k >= 3 && with_level != k)
            report.push_back("crossing " + id + ": levels are mandatory for multicrossings");
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                auto it = chord_count.find(PairKey(positions_of[i], positions_of[j]));
                if (it == chord_count.end())
                    report.push_back("crossing " + id + ": missing chord for pair (" +
                                     std::to_string(positions_of[i]) + "," +
                                     std::to_string(positions_of[j]) + ")");
            }
    }

    std::set<int> in_chord;
    for (const auto& c : g.chords) {
        in_chord.insert(c.tail);
        in_chord.insert(c.head);
    }
    for (const auto& p : g.passages)
        if (!in_chord.count(p.position))
            report.push_back("passage " + std::to_string(p.position) + " belongs to no chord");

    // chords between positions of different crossings already reported above;
    // chords whose pair is not within one crossing group are covered by the
    // crossing check plus the pair check.
    std::map<PairKey, std::string> pair_crossing;
    for (const auto& [id, positions_of] : crossing_groups(g))
        for (std::size_t i = 0; i < positions_of.size(); ++i)
            for (std::size_t j = i + 1; j < positions_of.size(); ++j)
                pair_crossing[PairKey(positions_of[i], positions_of[j])] = id;
    for (const auto& c : g.chords)
        if (c.tail != c.head && !pair_crossing.count(PairKey(c.tail, c.head)))
            report.push_back("chord (" + std::to_string(c.tail) + "," + std::to_string(c.head) +
                             ") joins passages that share no crossing");

    return report;
}

DoubleGaussDiagram parse_gauss_code(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.empty()) throw Error(ErrorCode::EmptyInput, "no tokens in Gauss code");

    struct Seen {
        int o_pos = -1, u_pos = -1;
        int o_sign = 0, u_sign = 0;
    };
    std::map<long, Seen> labels;

    MultiGaussDiagram g;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        if (tok.size() < 3 || (tok[0] != 'O' && tok[0] != 'U'))
            throw Error(ErrorCode::SchemaError, "bad token '" + tok + "'");
        char kind = tok[0];
        char sign_ch = tok.back();
        if (sign_ch != '+' && sign_ch != '-')
            throw Error(ErrorCode::SchemaError, "token '" + tok + "' lacks a sign");
        long label = 0;
        try {
            std::size_t used = 0;
            label = std::stol(tok.substr(1, tok.size() - 2), &used);
            if (used != tok.size() - 2) throw std::invalid_argument("junk");
        } catch (const std::exception&) {
            throw Error(ErrorCode::SchemaError, "bad label in token '" + tok + "'");
        }
        if (label <= 0) throw Error(ErrorCode::SchemaError, "labels must be positive: '" + tok + "'");
        int sign = sign_ch == '+' ? 1 : -1;

        Seen& s = labels[label];
        if (kind == 'O') {
            if (s.o_pos >= 0)
                throw Error(ErrorCode::DuplicatePassage,
                            "label " + std::to_string(label) + " appears twice as O");
            s.o_pos = static_cast<int>(i);
            s.o_sign = sign;
        } else {
            if (s.u_pos >= 0)
                throw Error(ErrorCode::DuplicatePassage,
                            "label " + std::to_string(label) + " appears twice as U");
            s.u_pos = static_cast<int>(i);
            s.u_sign = sign;
        }
        g.passages.push_back(Passage{static_cast<int>(i), std::to_string(label), std::nullopt});
    }

    for (auto& [label, s] : labels) {
        if (s.o_pos < 0 || s.u_pos < 0)
            throw Error(ErrorCode::UnbalancedLabel,
                        "label " + std::to_string(label) + " lacks its O or U partner");
        if (s.o_sign != s.u_sign)
            throw Error(ErrorCode::SignMismatch,
                        "O and U signs disagree for label " + std::to_string(label));
        // Arrow points from the under branch to the over branch.
        g.passages[s.o_pos].level = 1;
        g.passages[s.u_pos].level = 2;
        g.chords.push_back(Chord{s.u_pos, s.o_pos, s.o_sign});
    }
    std::sort(g.chords.begin(), g.chords.end(),
              [](const Chord& a, const Chord& b) { return std::tie(a.tail, a.head) < std::tie(b.tail, b.head); });
    return DoubleGaussDiagram(std::move(g));
}

std::string to_gauss_code(const DoubleGaussDiagram& dg) {
    const MultiGaussDiagram& g = dg.get();
    std::map<int, std::pair<char, const Chord*>> role; // position -> (O|U, chord)
    for (const auto& c : g.chords) {
        role[c.head] = {'O', &c};
        role[c.tail] = {'U', &c};
    }
    std::map<const Chord*, int> label;
    int next = 1;
    std::ostringstream out;
    for (std::size_t i = 0; i < g.passages.size(); ++i) {
        auto it = role.find(static_cast<int>(i));
        if (it == role.end())
            throw Error(ErrorCode::InvalidDiagram, "passage without a chord");
        const Chord* c = it->second.second;
        if (!label.count(c)) label[c] = next++;
        if (i) out << ' ';
        out << it->second.first << label[c] << (c->sign > 0 ? '+' : '-');
    }
    return out.str();
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known, const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok)
            throw Error(ErrorCode::SchemaError,
                        std::string("unknown key '") + it.key() + "' in " + where);
    }
}

} // namespace

MultiGaussDiagram parse_diagram_json(const std::string& doc) {
    json j;
    try {
        j = json::parse(doc);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaError, e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::SchemaError, "document is not an object");
    reject_unknown_keys(j, {"passages", "signs", "chords"}, "document");
    if (!j.contains("passages") || !j["passages"].is_array())
        throw Error(ErrorCode::SchemaError, "missing 'passages' array");

    MultiGaussDiagram g;
    int pos = 0;
    for (const auto& pj : j["passages"]) {
        if (!pj.is_object()) throw Error(ErrorCode::SchemaError, "passage is not an object");
        reject_unknown_keys(pj, {"crossing", "level"}, "passage");
        if (!pj.contains("crossing") || !pj["crossing"].is_string())
            throw Error(ErrorCode::SchemaError, "passage lacks string 'crossing'");
        Passage p;
        p.position = pos++;
        p.crossing = pj["crossing"].get<std::string>();
        if (pj.contains("level") && !pj["level"].is_null()) {
            if (!pj["level"].is_number_integer())
                throw Error(ErrorCode::SchemaError, "passage level must be an integer or null");
            int lvl = pj["level"].get<int>();
            if (lvl < 1) throw Error(ErrorCode::SchemaError, "levels are positive, 1 = topmost");
            p.level = lvl;
        }
        g.passages.push_back(std::move(p));
    }

    auto groups = crossing_groups(g);
    std::map<std::string, std::vector<int>> group_of(groups.begin(), groups.end());

    // Distinct levels within each crossing.
    for (const auto& [id, positions] : groups) {
        std::set<int> seen;
        for (int p : positions)
            if (g.passages[p].level && !seen.insert(*g.passages[p].level).second)
                throw Error(ErrorCode::LevelClash,
                            "crossing " + id + ": level " + std::to_string(*g.passages[p].level) +
                                " used twice");
    }

    auto level_of = [&](int position) { return g.passages[position].level; };

    if (j.contains("chords")) {
        if (!j["chords"].is_array()) throw Error(ErrorCode::SchemaError, "'chords' must be an array");
        for (const auto& cj : j["chords"]) {
            if (!cj.is_object()) throw Error(ErrorCode::SchemaError, "chord is not an object");
            reject_unknown_keys(cj, {"crossing", "tail", "head", "sign"}, "chord");
            for (const char* k : {"tail", "head", "sign"})
                if (!cj.contains(k) || !cj[k].is_number_integer())
                    throw Error(ErrorCode::SchemaError, std::string("chord lacks integer '") + k + "'");
            Chord c{cj["tail"].get<int>(), cj["head"].get<int>(), cj["sign"].get<int>()};
            if (c.sign != 1 && c.sign != -1)
                throw Error(ErrorCode::SchemaError, "chord sign must be 1 or -1");
            if (c.tail < 0 || c.tail >= static_cast<int>(g.passages.size()) || c.head < 0 ||
                c.head >= static_cast<int>(g.passages.size()))
                throw Error(ErrorCode::SchemaError, "chord endpoint out of range");
            auto lt = level_of(c.tail), lh = level_of(c.head);
            if (lt && lh && !(*lh < *lt))
                throw Error(ErrorCode::ChordLevelContradiction,
                            "chord (" + std::to_string(c.tail) + "," + std::to_string(c.head) +
                                ") must point from the lower branch to the upper one");
            g.chords.push_back(c);
        }
    }

    // Per-pair sign table, keyed by levels.
    struct SignEntry {
        int sign;
        bool used = false;
    };
    std::map<std::string, std::map<PairKey, SignEntry>> sign_table;
    if (j.contains("signs")) {
        if (!j["signs"].is_array()) throw Error(ErrorCode::SchemaError, "'signs' must be an array");
        for (const auto& sj : j["signs"]) {
            if (!sj.is_object()) throw Error(ErrorCode::SchemaError, "sign entry is not an object");
            reject_unknown_keys(sj, {"crossing", "pair", "sign"}, "sign entry");
            if (!sj.contains("crossing") || !sj["crossing"].is_string() || !sj.contains("pair") ||
                !sj["pair"].is_array() || sj["pair"].size() != 2 || !sj.contains("sign") ||
                !sj["sign"].is_number_integer())
                throw Error(ErrorCode::SchemaError, "sign entry needs crossing, pair [l1,l2], sign");
            int s = sj["sign"].get<int>();
            if (s != 1 && s != -1) throw Error(ErrorCode::SchemaError, "sign must be 1 or -1");
            PairKey key(sj["pair"][0].get<int>(), sj["pair"][1].get<int>());
            auto& per = sign_table[sj["crossing"].get<std::string>()];
            if (per.count(key))
                throw Error(ErrorCode::SchemaError, "duplicate sign entry for a pair");
            per[key] = SignEntry{s};
        }
    }

    if (!j.contains("chords")) {
        // Synthesize: orient by levels, signs from the table.
        for (const auto& [id, positions] : groups) {
            if (positions.size() < 2) continue;
            for (int p : positions)
                if (!g.passages[p].level)
                    throw Error(ErrorCode::SchemaError,
                                "crossing " + id +
                                    ": levels are required when chords are not declared");
            for (std::size_t a = 0; a < positions.size(); ++a)
                for (std::size_t b = a + 1; b < positions.size(); ++b) {
                    int pa = positions[a], pb = positions[b];
                    int la = *g.passages[pa].level, lb = *g.passages[pb].level;
                    int tail = la > lb ? pa : pb;
                    int head = la > lb ? pb : pa;
                    auto ct = sign_table.find(id);
                    if (ct == sign_table.end() || !ct->second.count(PairKey(la, lb)))
                        throw Error(ErrorCode::MissingSign,
                                    "crossing " + id + ": no sign for level pair (" +
                                        std::to_string(std::min(la, lb)) + "," +
                                        std::to_string(std::max(la, lb)) + ")");
                    auto& entry = ct->second.at(PairKey(la, lb));
                    entry.used = true;
                    g.chords.push_back(Chord{tail, head, entry.sign});
                }
        }
    } else if (!sign_table.empty()) {
        // Both present: the table must agree with the declared chords.
        for (const auto& c : g.chords) {
            auto lt = level_of(c.tail), lh = level_of(c.head);
            if (!lt || !lh) continue;
            auto ct = sign_table.find(g.passages[c.tail].crossing);
            if (ct == sign_table.end()) continue;
            auto it = ct->second.find(PairKey(*lt, *lh));
            if (it != ct->second.end() && it->second.sign != c.sign)
                throw Error(ErrorCode::SchemaError,
                            "sign table contradicts a declared chord");
        }
    }

    std::sort(g.chords.begin(), g.chords.end(),
              [](const Chord& a, const Chord& b) { return std::tie(a.tail, a.head) < std::tie(b.tail, b.head); });

    auto report = validate(g);
    if (!report.empty()) {
        std::string all;
        for (const auto& line : report) {
            if (!all.empty()) all += "; ";
            all += line;
        }
        throw Error(ErrorCode::InvalidDiagram, all);
    }
    return g;
}

std::string serialize(const MultiGaussDiagram& g) {
    auto report = validate(g);
    if (!report.empty()) throw Error(ErrorCode::InvalidDiagram, report.front());

    json passages = json::array();
    for (const auto& p : g.passages) {
        json pj;
        pj["crossing"] = p.crossing;
        pj["level"] = p.level ? json(*p.level) : json(nullptr);
        passages.push_back(pj);
    }

    std::vector<Chord> chords = g.chords;
    std::sort(chords.begin(), chords.end(),
              [](const Chord& a, const Chord& b) { return std::tie(a.tail, a.head) < std::tie(b.tail, b.head); });

    json chords_j = json::array();
    json signs = json::array();
    for (const auto& c : chords) {
        json cj;
        cj["crossing"] = g.passages[c.tail].crossing;
        cj["tail"] = c.tail;
        cj["head"] = c.head;
        cj["sign"] = c.sign;
        chords_j.push_back(cj);
        auto lt = g.passages[c.tail].level, lh = g.passages[c.head].level;
        if (lt && lh) {
            json sj;
            sj["crossing"] = g.passages[c.tail].crossing;
            sj["pair"] = {std::min(*lt, *lh), std::max(*lt, *lh)};
            sj["sign"] = c.sign;
            signs.push_back(sj);
        }
    }

    json out;
    out["passages"] = passages;
    out["signs"] = signs;
    out["chords"] = chords_j;
    return out.dump(2);
}

} // namespace casson
