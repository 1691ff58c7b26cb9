// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 3 (the multi-hour table rows) runs only with --long.

#include <cstring>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "nwall/checkpoint.hpp"
#include "nwall/ff.hpp"
#include "nwall/seq.hpp"
#include "nwall/tiling.hpp"
#include "nwall/verify.hpp"
#include "nwall/wall.hpp"

using namespace nwall;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << "criterion " << criterion << " [" << name << "]: " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

std::vector<Fp> random_seq(std::mt19937_64& rng, std::size_t len, unsigned p) {
    std::vector<Fp> s(len);
    for (auto& x : s) x = static_cast<Fp>(rng() % p);
    return s;
}

// collected walls feed the square-window / frame-ratio sweep of criterion 5
struct InvariantSweep {
    long long windows_checked = 0;
    long long ratios_checked = 0;
    bool ok = true;
    std::string detail;

    void feed(const WallGrid& g, const PrimeField& field) {
        std::vector<Window> wins;
        try {
            wins = find_windows(g);  // NonSquareZeroRegion on violation
        } catch (const NonSquareZeroRegion&) {
            ok = false;
            detail = "non-square zero region";
            return;
        }
        for (const Window& w : wins) {
            ++windows_checked;
            if (w.clipped) continue;
            const int t = w.top, a = w.left, l = w.side, b = a + l - 1;
            if (!g.in_grid(t + l, a - 1) || !g.in_grid(t + l, b + 1)) continue;
            FrameRatios r = frame_ratios(g, w, field);
            ++ratios_checked;
            if (field.mul(r.P, r.S) != field.mul(field.sign(l), field.mul(r.Q, r.R))) {
                ok = false;
                detail = "frame ratio identity violated";
                return;
            }
        }
    }
};

InvariantSweep sweep;

void criterion1_oracle_equivalence() {
    std::mt19937_64 rng(0x5eed0001);
    bool pass = true;
    std::string detail;
    long long cells = 0;
    for (unsigned p : {2u, 3u, 5u, 7u, 11u}) {
        PrimeField field(p);
        for (int trial = 0; trial < 500 && pass; ++trial) {
            auto s = random_seq(rng, 1 + rng() % 32, p);
            WallGrid eng = generate_wall(s, field);
            WallGrid orc = oracle_wall(s, field);
            cells += static_cast<long long>(eng.data.size());
            if (eng.data != orc.data) {
                pass = false;
                detail = "mismatch at p=" + std::to_string(p);
            }
            sweep.feed(eng, field);
        }
    }
    if (pass) detail = "2500 walls, " + std::to_string(cells) + " entries, exact";
    report(1, "oracle equivalence", pass, detail);
}

void criterion2_f3_row(TileStore& store) {
    bool pass = store.size() == 390;
    std::string detail = "tiles=" + std::to_string(store.size());
    auto tuples = enumerate_four_tuples(store);
    detail += " tuples=" + std::to_string(tuples.size());
    pass = pass && tuples.size() == 1366;
    auto res = verify_four_tuples(store, tuples, 2);
    detail += res.pass ? " status=PASS" : " status=FAIL";
    pass = pass && res.pass;
    report(2, "paper table F3 row: 390 tiles, 1366 tuples", pass, detail);
}

void criterion3_extended(bool long_tests) {
    if (!long_tests) {
        std::cout << "criterion 3 [extended table rows F7/F11/pf2-F5]: SKIPPED"
                     " (hours; run with --long)" << std::endl;
        return;
    }
    struct Row {
        const char* seq;
        unsigned p, tile_length;
        std::size_t tiles, tuples;
    };
    const Row rows[] = {
        {"pf1", 7, 8, 1778011, 17221408},
        {"pf1", 11, 8, 70360006, 864510531},
        {"pf2", 5, 16, 65349573, 510595180},
    };
    for (const Row& r : rows) {
        PrimeField field(r.p);
        auto init = algorithm_1_1(builtin_spec(r.seq, field), field, r.tile_length);
        algorithm_1_2(*init.store);
        bool pass = init.store->size() == r.tiles;
        auto tuples = enumerate_four_tuples(*init.store);
        pass = pass && tuples.size() == r.tuples;
        auto res = verify_four_tuples(*init.store, tuples, std::thread::hardware_concurrency());
        pass = pass && res.pass;
        report(3, std::string(r.seq) + "/F" + std::to_string(r.p), pass,
               "tiles=" + std::to_string(init.store->size()) +
                   " tuples=" + std::to_string(tuples.size()));
    }
}

void criterion4_reconstruction(TileStore& store, TileId start, const SequenceSpec& spec,
                               const PrimeField& field) {
    WallGrid assembled = assemble(store, start, 6);
    auto s = coded_prefix(spec, assembled.cols);
    WallGrid direct = generate_wall(s, field);
    bool pass = assembled.cols == direct.cols && assembled.depth == direct.depth;
    for (int m = 0; pass && m <= direct.depth; ++m)
        for (int n = m; n <= direct.cols - 1 - m; ++n)
            if (assembled.at(m, n) != direct.at(m, n)) {
                pass = false;
                break;
            }
    bool zeroth = true;
    for (int n = 0; n < assembled.cols; ++n)
        if (assembled.at(0, n) != s[n]) zeroth = false;
    pass = pass && zeroth;
    sweep.feed(direct, field);
    report(4, "assemble(6) = generate_wall, zeroth row = coded sequence", pass,
           std::to_string(assembled.cols) + " columns");
}

void criterion5_invariants() {
    report(5, "square windows and frame-ratio identity on all generated walls", sweep.ok,
           std::to_string(sweep.windows_checked) + " windows, " +
               std::to_string(sweep.ratios_checked) + " fully framed" +
               (sweep.detail.empty() ? "" : "; " + sweep.detail));
}

void criterion6_formula_crosscheck() {
    PrimeField f5(5);
    bool pass = true;
    for (unsigned level : {1u, 2u}) {
        auto spec = builtin_spec(level == 1 ? "pf1" : "pf2", f5);
        auto coded = coded_prefix(spec, 1u << 16);
        for (std::size_t i = 1; i <= coded.size(); ++i)
            if (coded[i - 1] != paperfolding(level, i)) {
                pass = false;
                break;
            }
    }
    report(6, "closed formula vs morphism over 2^16 indices", pass);
}

void criterion7_f2_search() {
    PrimeField f2(2);
    std::optional<unsigned> minimal;
    for (unsigned len = 1; len <= 24; ++len) {
        auto res = exhaustive_window_search(f2, len, 2, 1ull << 25);
        if (res.status == SearchResult::Status::AllHaveWindow) {
            minimal = len;
            break;
        }
    }
    // regression constant pinned on first computation
    const unsigned pinned = 18;
    bool pass = minimal.has_value() && *minimal == pinned;
    report(7, "minimal F2 length forcing a side-2 window", pass,
           minimal ? "L*=" + std::to_string(*minimal) : "none up to 24");
}

void criterion8_negative_control() {
    PrimeField f2(2);
    auto spec = builtin_spec("thue-morse", f2);
    auto init = algorithm_1_1(spec, f2, 8);
    bool too_large = false;
    try {
        algorithm_1_2(*init.store);
    } catch (const WindowTooLarge&) {
        too_large = true;
    }
    report(8, "thue-morse over F2 stops with WindowTooLarge", too_large,
           "tiles=" + std::to_string(init.store->size()));
}

}  // namespace

int main(int argc, char** argv) {
    bool long_tests = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--long") long_tests = true;
    if (!long_tests && std::getenv("NWALL_LONG_TESTS")) long_tests = true;

    criterion1_oracle_equivalence();

    PrimeField f3(3);
    auto spec = builtin_spec("pf1", f3);
    auto init = algorithm_1_1(spec, f3, 8);
    algorithm_1_2(*init.store);
    criterion2_f3_row(*init.store);
    criterion3_extended(long_tests);
    criterion4_reconstruction(*init.store, init.start, spec, f3);

    // feed the criterion-2 wall family into the invariant sweep as well
    auto s1024 = coded_prefix(spec, 1024);
    sweep.feed(generate_wall(s1024, f3), f3);
    criterion5_invariants();

    criterion6_formula_crosscheck();
    criterion7_f2_search();
    criterion8_negative_control();

    std::cout << (failures == 0 ? "ALL ACCEPTANCE CRITERIA PASS" : "ACCEPTANCE FAILURES: ")
              << (failures ? std::to_string(failures) : "") << std::endl;
    return failures == 0 ? 0 : 1;
}
