#include "casson/mc.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace casson {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index) {
    // Decorrelate the (seed, index) pair before streaming.
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    state_ = a ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    (void)next_u64();
}

std::uint64_t SampleRng::next_u64() { return splitmix64(state_); }

double SampleRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

McEstimate run_pieces(const std::vector<McPiece>& pieces, const McConfig& cfg) {
    if (pieces.empty()) return McEstimate{0, 0, 0, cfg.seed};
    if (cfg.samples < 1000) throw std::invalid_argument("sample count must be >= 1000");

    // Pilot pass: estimate per-piece spread, then allocate the budget
    // Neyman-style. Pilot draws use a reserved index range and are not part
    // of the estimate, so the allocation stays deterministic and unbiased.
    const std::size_t np = pieces.size();
    std::vector<double> alloc_weight(np);
    if (np > 1) {
        std::uint64_t pilot_n = std::clamp<std::uint64_t>(cfg.samples / (8 * np), 32, 512);
        constexpr std::uint64_t kPilotBase = 1ULL << 62;
        for (std::size_t i = 0; i < np; ++i) {
            double sum = 0, sumsq = 0;
            for (std::uint64_t j = 0; j < pilot_n; ++j) {
                SampleRng rng(cfg.seed, kPilotBase + i * pilot_n + j);
                double v = pieces[i].draw(rng);
                sum += v;
                sumsq += v * v;
            }
            double mean = sum / static_cast<double>(pilot_n);
            double var = std::max(0.0, sumsq / static_cast<double>(pilot_n) - mean * mean);
            alloc_weight[i] = std::sqrt(var) * pieces[i].share;
        }
        double wsum = 0, ssum = 0;
        for (std::size_t i = 0; i < np; ++i) {
            wsum += alloc_weight[i];
            ssum += pieces[i].share;
        }
        if (wsum <= 0) {
            for (std::size_t i = 0; i < np; ++i) alloc_weight[i] = pieces[i].share;
        } else {
            // Blend with the static shares so a stratum whose pilot saw only
            // zeros still gets a real slice of the budget.
            for (std::size_t i = 0; i < np; ++i)
                alloc_weight[i] = 0.5 * alloc_weight[i] / wsum + 0.5 * pieces[i].share / ssum;
        }
    } else {
        alloc_weight[0] = 1;
    }

    double total_share = 0;
    for (double w : alloc_weight) total_share += w;

    struct Span {
        const McPiece* piece;
        std::uint64_t first; // global sample index
        std::uint64_t count;
    };
    std::vector<Span> spans;
    std::uint64_t cursor = 0;
    for (std::size_t i = 0; i < np; ++i) {
        std::uint64_t n = std::max<std::uint64_t>(
            64,
            static_cast<std::uint64_t>(std::floor(cfg.samples * alloc_weight[i] / total_share)));
        spans.push_back(Span{&pieces[i], cursor, n});
        cursor += n;
    }

    constexpr std::uint64_t kChunk = 16384;
    struct Chunk {
        const McPiece* piece;
        std::uint64_t first, count;
        std::size_t span_id;
        double sum = 0, sumsq = 0;
    };
    std::vector<Chunk> chunks;
    for (std::size_t si = 0; si < spans.size(); ++si) {
        const auto& sp = spans[si];
        for (std::uint64_t off = 0; off < sp.count; off += kChunk)
            chunks.push_back(Chunk{sp.piece, sp.first + off, std::min(kChunk, sp.count - off), si});
    }

    auto run_chunk = [&](Chunk& ch) {
        double sum = 0, comp = 0, sumsq = 0, compsq = 0;
        for (std::uint64_t i = 0; i < ch.count; ++i) {
            SampleRng rng(cfg.seed, ch.first + i);
            double v = ch.piece->draw(rng);
            double y = v - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            double y2 = v * v - compsq;
            double t2 = sumsq + y2;
            compsq = (t2 - sumsq) - y2;
            sumsq = t2;
        }
        ch.sum = sum;
        ch.sumsq = sumsq;
    };

    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        for (auto& ch : chunks) run_chunk(ch);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= chunks.size()) return;
                    run_chunk(chunks[i]);
                }
            });
        for (auto& th : pool) th.join();
    }

    // Sequential reduction in span/chunk order keeps results bit-identical
    // for any thread count.
    McEstimate est;
    est.seed = cfg.seed;
    double var_total = 0;
    for (std::size_t si = 0; si < spans.size(); ++si) {
        double sum = 0, sumsq = 0;
        std::uint64_t n = spans[si].count;
        for (const auto& ch : chunks)
            if (ch.span_id == si) {
                sum += ch.sum;
                sumsq += ch.sumsq;
            }
        double mean = sum / static_cast<double>(n);
        double var = sumsq / static_cast<double>(n) - mean * mean;
        if (var < 0) var = 0;
        est.value += mean;
        var_total += var / static_cast<double>(n);
        est.n += n;
    }
    est.std_error = std::sqrt(var_total);
    return est;
}

} // namespace casson
