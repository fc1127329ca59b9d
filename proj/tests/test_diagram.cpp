#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <functional>
#include <sstream>

#include "casson/diagram.hpp"
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

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::EmptyInput;
}

} // namespace

TEST_CASE("gauss code parsing: trefoil") {
    auto g = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+").get();
    CHECK(g.passages.size() == 6);
    REQUIRE(g.chords.size() == 3);
    // Chords sorted by (tail, head): 1->4, 3->0, 5->2.
    CHECK(g.chords[0] == Chord{1, 4, 1});
    CHECK(g.chords[1] == Chord{3, 0, 1});
    CHECK(g.chords[2] == Chord{5, 2, 1});
    CHECK(validate(g).empty());
}

TEST_CASE("gauss code parsing: single kink") {
    auto g = parse_gauss_code("O1+ U1+").get();
    CHECK(g.passages.size() == 2);
    REQUIRE(g.chords.size() == 1);
    CHECK(g.chords[0] == Chord{1, 0, 1});
}

TEST_CASE("gauss code parsing: errors") {
    CHECK(code_of([] { parse_gauss_code("O1+ U2+"); }) == ErrorCode::UnbalancedLabel);
    CHECK(code_of([] { parse_gauss_code("   "); }) == ErrorCode::EmptyInput);
    CHECK(code_of([] { parse_gauss_code("O1+ U1-"); }) == ErrorCode::SignMismatch);
    CHECK(code_of([] { parse_gauss_code("O1+ O1+ U1+"); }) == ErrorCode::DuplicatePassage);
    CHECK(code_of([] { parse_gauss_code("O1 U1"); }) == ErrorCode::SchemaError);
    CHECK(code_of([] { parse_gauss_code("Q1+ U1+"); }) == ErrorCode::SchemaError);
}

TEST_CASE("gauss code round trip") {
    for (const char* code : {"O1+ U1+", "O1+ U2+ O3+ U1+ O2+ U3+", "O1+ O2- U2- U1+"}) {
        auto g = parse_gauss_code(code);
        CHECK(to_gauss_code(g) == code);
    }
}

TEST_CASE("validate reports") {
    SUBCASE("missing chord in a 3-passage crossing") {
        MultiGaussDiagram g;
        for (int i = 0; i < 3; ++i) g.passages.push_back({i, "x", i + 1});
        g.chords.push_back({1, 0, 1});
        g.chords.push_back({2, 1, 1});
        auto report = validate(g);
        REQUIRE(!report.empty());
        bool found = false;
        for (const auto& line : report)
            if (line.find("missing chord") != std::string::npos) found = true;
        CHECK(found);
    }
    SUBCASE("duplicate positions") {
        MultiGaussDiagram g;
        g.passages.push_back({0, "x", 1});
        g.passages.push_back({0, "x", 2});
        g.chords.push_back({0, 0, 1});
        auto report = validate(g);
        bool found = false;
        for (const auto& line : report)
            if (line.find("positions not a permutation") != std::string::npos) found = true;
        CHECK(found);
    }
    SUBCASE("orientation against levels") {
        MultiGaussDiagram g;
        g.passages.push_back({0, "x", 1});
        g.passages.push_back({1, "x", 2});
        g.chords.push_back({0, 1, 1}); // points from level 1 to level 2
        auto report = validate(g);
        bool found = false;
        for (const auto& line : report)
            if (line.find("orientation contradicts levels") != std::string::npos) found = true;
        CHECK(found);
    }
}

TEST_CASE("diagram json: synthesized chords from levels") {
    auto g = parse_diagram_json(R"({
        "passages": [{"crossing": "a", "level": 1},
                     {"crossing": "a", "level": 2},
                     {"crossing": "a", "level": 3}],
        "signs": [{"crossing": "a", "pair": [1, 2], "sign": 1},
                  {"crossing": "a", "pair": [1, 3], "sign": -1},
                  {"crossing": "a", "pair": [2, 3], "sign": 1}]})");
    CHECK(g.passages.size() == 3);
    REQUIRE(g.chords.size() == 3);
    for (const auto& c : g.chords)
        CHECK(*g.passages[c.tail].level > *g.passages[c.head].level);
    CHECK(validate(g).empty());
}

TEST_CASE("diagram json: errors") {
    CHECK(code_of([] { parse_diagram_json("{"); }) == ErrorCode::SchemaError);
    CHECK(code_of([] { parse_diagram_json(R"({"passages": [], "junk": 1})"); }) ==
          ErrorCode::SchemaError);
    CHECK(code_of([] {
              parse_diagram_json(R"({"passages": [{"crossing": "a", "level": 1},
                                                  {"crossing": "a", "level": 1}]})");
          }) == ErrorCode::LevelClash);
    CHECK(code_of([] {
              parse_diagram_json(R"({"passages": [{"crossing": "a", "level": 1},
                                                  {"crossing": "a", "level": 2}]})");
          }) == ErrorCode::MissingSign);
    CHECK(code_of([] {
              parse_diagram_json(R"({"passages": [{"crossing": "a", "level": 1},
                                                  {"crossing": "a", "level": 2}],
                                     "chords": [{"crossing": "a", "tail": 0, "head": 1, "sign": 1}]})");
          }) == ErrorCode::ChordLevelContradiction);
}

TEST_CASE("serialize round trips") {
    SUBCASE("kink") {
        auto g = parse_gauss_code("O1+ U1+").get();
        CHECK(parse_diagram_json(serialize(g)) == g);
    }
    SUBCASE("table 1 fixtures") {
        for (const char* name : {"table1_a.json", "table1_c.json", "table1_f.json"}) {
            auto g = parse_diagram_json(fixture(name));
            CHECK(parse_diagram_json(serialize(g)) == g);
        }
    }
    SUBCASE("pedal-generated seven strand diagram") {
        auto g = pedal_to_gauss(PedalPermutation::parse("1,3,5,2,7,4,6"));
        CHECK(parse_diagram_json(serialize(g)) == g);
        CHECK(g.chords.size() == 21);
    }
    SUBCASE("perturbed pedal diagram") {
        auto g = pedal_perturb(PedalPermutation::parse("1,3,5,2,7,4,6")).get();
        CHECK(parse_diagram_json(serialize(g)) == g);
    }
}

TEST_CASE("chord count per crossing") {
    for (int n : {3, 4, 5, 7, 9, 10}) {
        std::vector<int> levels(n);
        for (int i = 0; i < n; ++i) levels[i] = i + 1;
        auto g = pedal_to_gauss(PedalPermutation{levels});
        CHECK(static_cast<int>(g.chords.size()) == n * (n - 1) / 2);
        CHECK(validate(g).empty());
    }
}
