// casson: compute the Casson invariant c2 from Gauss codes, multicrossing
// diagrams, pedal permutations, or the localized configuration space
// integral. Exit codes: 0 ok, 2 input error, 3 internal consistency failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "casson/casson.hpp"
#include "casson/curve.hpp"
#include "casson/integral.hpp"
#include "casson/pedal.hpp"

using namespace casson;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::SchemaError, "cannot open file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool file_exists(const std::string& path) {
    std::ifstream in(path);
    return in.good();
}

// --gauss accepts either a literal code or a path to a file holding one.
DoubleGaussDiagram gauss_arg(const std::string& arg) {
    if (arg.find_first_not_of(" \t\r\n") == std::string::npos)
        return DoubleGaussDiagram(MultiGaussDiagram{});
    if (file_exists(arg)) return parse_gauss_code(read_file(arg));
    return parse_gauss_code(arg);
}

struct Report {
    std::string input;
    std::string method;
    json value;
    std::uint64_t seed = 0;
    bool has_seed = false;

    void print(bool as_json, double elapsed_ms) const {
        if (as_json) {
            json j;
            j["input"] = input;
            j["method"] = method;
            j["value"] = value;
            if (has_seed) j["seed"] = seed;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << method << " " << input << "\n";
            if (value.is_object())
                std::cout << "value " << value["value"].get<double>() << " stderr "
                          << value["stderr"].get<double>() << " n " << value["n"].get<std::uint64_t>()
                          << " seed " << value["seed"].get<std::uint64_t>() << "\n";
            else
                std::cout << "value " << value.dump() << "\n";
        }
        // Timing is diagnostic only; stdout stays byte-identical across runs.
        std::cerr << "elapsed_ms " << elapsed_ms << "\n";
    }
};

json estimate_json(const McEstimate& e) {
    json j;
    j["value"] = e.value;
    j["stderr"] = e.std_error;
    j["n"] = e.n;
    j["seed"] = e.seed;
    return j;
}

LongKnotCurve resolve_curve(const std::string& name, double h) {
    if (name == "builtin:trivial") return builtin_trivial();
    if (name == "builtin:trefoil") return builtin_trefoil(h);
    if (name == "builtin:figure8") return builtin_figure8(h);
    return load_curve_json(read_file(name));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casson knot invariant from Gauss diagrams, pedal permutations and localized integrals"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "emit the report as JSON");

    std::string gauss, multi, pedal, pattern = "p0", curve = "builtin:trefoil", term = "both";
    double eps = 0.1, bridge_h = 0.1;
    std::uint64_t samples = 200000, seed = 1;
    int threads = 1, bound_n = 0;

    auto* c2cmd = app.add_subcommand("c2", "Casson invariant of a diagram");
    c2cmd->add_option("--gauss", gauss, "double-crossing Gauss code (or file)");
    c2cmd->add_option("--multi", multi, "multicrossing diagram JSON file");
    c2cmd->add_option("--pedal", pedal, "pedal permutation, e.g. 1,3,5,2,7,4,6");

    auto* paircmd = app.add_subcommand("pair", "arrow diagram pairing <A,G>");
    paircmd->add_option("--pattern", pattern, "p0|left|mid|right|unmarked")->required();
    paircmd->add_option("--gauss", gauss, "double-crossing Gauss code (or file)");
    paircmd->add_option("--multi", multi, "multicrossing diagram JSON file");

    auto* intcmd = app.add_subcommand("integrate", "localized configuration space integral");
    intcmd->add_option("--curve", curve, "builtin:trefoil|builtin:trivial|builtin:figure8|builtin:hopf|file");
    intcmd->add_option("--term", term, "chords|tripod|both|lk");
    intcmd->add_option("--eps", eps, "bump form radius (radians)");
    intcmd->add_option("--samples", samples, "Monte Carlo samples");
    intcmd->add_option("--seed", seed, "RNG seed");
    intcmd->add_option("--threads", threads, "worker threads");
    intcmd->add_option("--height", bridge_h, "bridge height of built-in curves");

    auto* boundcmd = app.add_subcommand("bound", "uebercrossing lower-bound value");
    boundcmd->add_option("--n", bound_n, "petal count")->required();

    auto* perturbcmd = app.add_subcommand("perturb", "resolve multicrossings into double crossings");
    perturbcmd->add_option("--multi", multi, "multicrossing diagram JSON file");
    perturbcmd->add_option("--pedal", pedal, "pedal permutation");
    perturbcmd->add_option("--gauss", gauss, "double-crossing Gauss code (already perturbed)");
    perturbcmd->add_option("--seed", seed, "geometry seed");

    CLI11_PARSE(app, argc, argv);
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    try {
        Report rep;
        if (app.got_subcommand(c2cmd)) {
            int sources = (!gauss.empty() || c2cmd->count("--gauss")) + !multi.empty() + !pedal.empty();
            if (sources != 1) {
                std::cerr << "c2 needs exactly one of --gauss/--multi/--pedal\n";
                return 2;
            }
            if (c2cmd->count("--gauss")) {
                rep.method = "double";
                rep.input = gauss;
                rep.value = c2_double(gauss_arg(gauss));
            } else if (!multi.empty()) {
                rep.method = "multi";
                rep.input = multi;
                rep.value = c2_multi(parse_diagram_json(read_file(multi)));
            } else {
                rep.method = "pedal";
                rep.input = pedal;
                auto p = PedalPermutation::parse(pedal);
                if (p.petals() % 2 == 0)
                    std::cerr << "note: even petal counts are not realizable as knot pedal"
                                 " diagrams; counting rules applied anyway\n";
                rep.value = c2_pedal(p);
            }
        } else if (app.got_subcommand(paircmd)) {
            const auto& pat = c2_patterns();
            const ArrowDiagram* a = nullptr;
            if (pattern == "p0") a = &pat.p0;
            else if (pattern == "left") a = &pat.left;
            else if (pattern == "mid") a = &pat.mid;
            else if (pattern == "right") a = &pat.right;
            else if (pattern == "unmarked") a = &pat.unmarked;
            if (!a) {
                std::cerr << "unknown pattern '" << pattern << "'\n";
                return 2;
            }
            MultiGaussDiagram g;
            if (paircmd->count("--gauss")) {
                rep.input = gauss;
                g = gauss_arg(gauss).get();
            } else if (!multi.empty()) {
                rep.input = multi;
                g = parse_diagram_json(read_file(multi));
            } else {
                std::cerr << "pair needs --gauss or --multi\n";
                return 2;
            }
            rep.method = "pair:" + pattern;
            rep.value = pair(*a, g);
        } else if (app.got_subcommand(intcmd)) {
            McConfig cfg;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.threads = threads;
            rep.method = "integral:" + term;
            rep.input = curve;
            rep.seed = seed;
            rep.has_seed = true;
            if (term == "lk") {
                if (curve != "builtin:hopf" && curve != "builtin:distant")
                    throw Error(ErrorCode::SchemaError,
                                "--term lk expects --curve builtin:hopf or builtin:distant");
                auto [l1, l2] = curve == "builtin:hopf" ? builtin_hopf() : builtin_distant_circles();
                rep.value = estimate_json(lk_localized(l1, l2, BumpForm({0, 0, 1}, eps), cfg));
            } else {
                LongKnotCurve k = resolve_curve(curve, bridge_h);
                BumpForm bump({0, 0, 1}, eps);
                McEstimate e;
                if (term == "chords") e = term_chords(k, bump, cfg);
                else if (term == "tripod") e = term_tripod(k, bump, cfg);
                else if (term == "both") e = casson_estimate(k, bump, cfg);
                else throw Error(ErrorCode::SchemaError, "unknown --term " + term);
                rep.value = estimate_json(e);
            }
        } else if (app.got_subcommand(boundcmd)) {
            if (bound_n < 1) {
                std::cerr << "petal count must be >= 1\n";
                return 2;
            }
            rep.method = "bound";
            rep.input = std::to_string(bound_n);
            rep.value = uber_bound(bound_n);
        } else if (app.got_subcommand(perturbcmd)) {
            MultiGaussDiagram g;
            if (!pedal.empty()) {
                rep.input = pedal;
                g = pedal_to_gauss(PedalPermutation::parse(pedal));
            } else if (!multi.empty()) {
                rep.input = multi;
                g = parse_diagram_json(read_file(multi));
            } else if (perturbcmd->count("--gauss")) {
                rep.input = gauss;
                g = gauss_arg(gauss).get();
            } else {
                std::cerr << "perturb needs --multi, --pedal or --gauss\n";
                return 2;
            }
            DoubleGaussDiagram fine =
                pedal.empty() ? perturb(g, seed)
                              : perturb(g, pedal_geometry(PedalPermutation::parse(pedal), seed));
            long long via_double = c2_double(fine);
            long long via_multi = c2_multi(g);
            rep.method = "perturb";
            json v;
            v["gauss"] = g.passages.empty() ? "" : to_gauss_code(fine);
            v["c2_double"] = via_double;
            v["c2_multi"] = via_multi;
            rep.value = v;
            rep.print(as_json, elapsed());
            if (via_double != via_multi) {
                std::cerr << "perturbation oracle mismatch: " << via_double << " vs " << via_multi
                          << "\n";
                return 3;
            }
            return 0;
        }
        rep.print(as_json, elapsed());
        return 0;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
