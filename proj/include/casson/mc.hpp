#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace casson {

struct McConfig {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    int stratification_depth = 0; // 0 = automatic support discovery
    double padding = 0.5;         // integration box padding along the knot
    int threads = 1;
};

struct McEstimate {
    double value = 0;
    double std_error = 0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

// Counter-based generator: the stream for global sample index i is a pure
// function of (seed, i), so partitioning samples across threads cannot
// change any draw and merged results are bit-identical for any thread count.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();
    double next_double(); // [0,1)
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::uint64_t state_;
};

// One additive piece of a stratified estimator. draw() must return an
// unbiased single-sample estimate of the piece's integral.
struct McPiece {
    std::function<double(SampleRng&)> draw;
    double share = 1; // relative sample allocation
};

// Deterministic stratified run: fixed chunking, per-chunk compensated sums,
// sequential reduction in chunk order. Threads only execute chunks.
McEstimate run_pieces(const std::vector<McPiece>& pieces, const McConfig& cfg);

} // namespace casson
