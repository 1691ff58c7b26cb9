// nwall: number walls of automatic sequences over prime fields -- wall
// generation, tile-morphism discovery, verification, exhaustive window
// searches and Laurent-series substitution.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nwall/checkpoint.hpp"
#include "nwall/ff.hpp"
#include "nwall/render.hpp"
#include "nwall/seq.hpp"
#include "nwall/tiling.hpp"
#include "nwall/verify.hpp"
#include "nwall/wall.hpp"

namespace {

constexpr int kExitWindowTooLarge = 2;
constexpr int kExitVerifyFail = 3;
constexpr int kExitUsage = 4;

struct Source {
    std::optional<nwall::SequenceSpec> spec;  // morphism-defined sequence
    std::optional<std::uint64_t> seed;        // random:seed=S
    std::string name;
};

Source parse_source(const std::string& name, const nwall::PrimeField& field) {
    Source src;
    src.name = name;
    if (name == "pf1" || name == "pf2" || name == "thue-morse") {
        src.spec = nwall::builtin_spec(name, field);
        return src;
    }
    if (name.rfind("random:seed=", 0) == 0) {
        src.seed = std::stoull(name.substr(12));
        return src;
    }
    std::ifstream in(name);
    if (!in) throw std::invalid_argument("cannot open sequence spec file: " + name);
    src.spec = nwall::parse_spec(in, field);
    src.spec->name = name;
    return src;
}

std::vector<nwall::Fp> materialize(const Source& src, std::size_t len,
                                   const nwall::PrimeField& field) {
    if (src.spec) return nwall::coded_prefix(*src.spec, len);
    std::mt19937_64 rng(*src.seed);
    std::vector<nwall::Fp> s(len);
    for (auto& x : s) x = static_cast<nwall::Fp>(rng() % field.p());
    return s;
}

int cmd_wall(const std::string& seq, unsigned p, std::size_t len, bool oracle,
             const std::string& dump_path, const std::string& render_path, unsigned overlay) {
    nwall::PrimeField field(p);
    Source src = parse_source(seq, field);
    auto s = materialize(src, len, field);
    nwall::WallGrid g = oracle ? nwall::oracle_wall(s, field) : nwall::generate_wall(s, field);
    auto windows = nwall::find_windows(g);
    std::size_t clipped = 0;
    for (const auto& w : windows) clipped += w.clipped;
    nwall::LcQuality q = nwall::lc_quality(g);
    std::cout << "max_window_side=" << q.max_side << " clipped_extent=" << q.max_clipped_extent
              << " windows=" << windows.size() << " clipped=" << clipped << " cols=" << g.cols
              << " depth=" << g.depth << " p=" << p << "\n";
    std::cout << "wall of " << src.name << " over F_" << p << ", " << len << " entries, "
              << (oracle ? "determinant oracle" : "frame-constraints engine") << "\n";
    if (!dump_path.empty()) {
        std::ofstream os(dump_path);
        if (!os) throw std::runtime_error("cannot open dump file: " + dump_path);
        nwall::dump_wall(g, os);
        std::cout << "dump written to " << dump_path << "\n";
    }
    if (!render_path.empty()) {
        std::ofstream os(render_path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open image file: " + render_path);
        nwall::render_ppm(g, os, overlay);
        std::cout << "image written to " << render_path << "\n";
    }
    return 0;
}

int cmd_tile(const std::string& seq, unsigned p, unsigned tile_length,
             const std::string& ckpt_path, bool resume, std::uint64_t ckpt_interval,
             std::uint64_t progress_interval, std::uint64_t max_tiles) {
    nwall::PrimeField field(p);
    std::unique_ptr<nwall::TileStore> store;
    if (resume) {
        if (ckpt_path.empty()) throw std::invalid_argument("--resume requires --checkpoint");
        store = nwall::checkpoint_load(ckpt_path);
        if (store->field().p() != p)
            throw std::invalid_argument("checkpoint prime differs from --p");
        std::cerr << "resumed at " << store->size() << " tiles, cursor " << store->cursor << "\n";
    } else {
        Source src = parse_source(seq, field);
        if (!src.spec) throw std::invalid_argument("tile discovery needs a morphism sequence");
        if (tile_length == 0) tile_length = (seq == "pf2") ? 16 : 8;
        auto init = nwall::algorithm_1_1(*src.spec, field, tile_length);
        store = std::move(init.store);
    }
    std::uint64_t processed = 0;
    auto t0 = std::chrono::steady_clock::now();
    bool closed = false;
    bool too_large = false;
    try {
        closed = nwall::algorithm_1_2(*store, [&](nwall::TileStore& st) {
            ++processed;
            if (progress_interval && processed % progress_interval == 0) {
                auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
                std::cerr << "tiles=" << st.size() << " frontier=" << (st.size() - st.cursor)
                          << " bytes~" << st.size() * (st.value_bytes() + 28) << " t=" << dt.count()
                          << "s\n";
            }
            if (!ckpt_path.empty() && ckpt_interval && processed % ckpt_interval == 0)
                nwall::checkpoint_save(st, ckpt_path);
            return !(max_tiles && st.size() >= max_tiles);
        });
    } catch (const nwall::WindowTooLarge& e) {
        too_large = true;
        std::cerr << e.what() << "\n";
    }
    if (!ckpt_path.empty()) nwall::checkpoint_save(*store, ckpt_path);
    const char* status = too_large ? "WINDOW_TOO_LARGE" : (closed ? "CLOSED" : "PAUSED");
    std::cout << "tiles=" << store->size() << " status=" << status << " p=" << p
              << " tile_length=" << store->tile_length() << "\n";
    if (too_large) {
        std::cout << "the frame constraints ran outside the stitched patch: windows of this wall\n"
                     "exceed this tile size (not a bounded-window counterexample at this size)\n";
        return kExitWindowTooLarge;
    }
    return 0;
}

int cmd_verify(const std::string& ckpt_path, unsigned threads) {
    auto store = nwall::checkpoint_load(ckpt_path);
    if (store->cursor < store->size())
        throw std::invalid_argument("checkpoint holds an unfinished discovery; run tile --resume");
    auto tuples = nwall::enumerate_four_tuples(*store);
    auto res = nwall::verify_four_tuples(*store, tuples, threads);
    std::cout << "tiles=" << store->size() << " tuples=" << tuples.size()
              << " verified=" << res.checked << " status=" << (res.pass ? "PASS" : "FAIL") << "\n";
    if (!res.pass) {
        std::cout << "first failing tuple (w,n,s,e) = (" << res.failure->w << "," << res.failure->n
                  << "," << res.failure->s << "," << res.failure->e << ")\n";
        return kExitVerifyFail;
    }
    std::cout << "every 4-tuple satisfies the frame constraints; the tile morphism generates\n"
                 "the number wall of its zeroth-row sequence\n";
    return 0;
}

int cmd_search(unsigned p, unsigned max_len, int window, std::uint64_t budget, unsigned min_len) {
    nwall::PrimeField field(p);
    std::ostringstream detail;
    std::optional<unsigned> minimal;
    bool exceeded = false;
    unsigned last_feasible = 0;
    for (unsigned len = min_len; len <= max_len; ++len) {
        auto res = nwall::exhaustive_window_search(field, len, window, budget);
        if (res.status == nwall::SearchResult::Status::BudgetExceeded) {
            exceeded = true;
            break;
        }
        last_feasible = len;
        if (res.status == nwall::SearchResult::Status::Witness) {
            detail << "len=" << len << " witness=";
            for (auto v : res.witness) detail << static_cast<unsigned>(v);
            detail << "\n";
        } else {
            detail << "len=" << len << " all_have_window\n";
            minimal = len;
            break;
        }
    }
    if (minimal) {
        std::cout << "status=FOUND minimal_len=" << *minimal << " window=" << window << " p=" << p
                  << "\n";
        std::cout << "every length-" << *minimal << " sequence over F_" << p
                  << " has a zero square of side >= " << window << "; shorter lengths have the\n"
                  << "witnesses below\n";
    } else if (exceeded) {
        std::cout << "status=BUDGET_EXCEEDED last_feasible_len=" << last_feasible
                  << " budget=" << budget << " window=" << window << " p=" << p << "\n";
        std::cout << "enumeration of " << p << "^" << (last_feasible + 1)
                  << " sequences exceeds the budget; raise --budget to continue the scan\n";
    } else {
        std::cout << "status=WITNESSES_EVERYWHERE max_len=" << max_len << " window=" << window
                  << " p=" << p << "\n";
    }
    std::cout << detail.str();
    return 0;
}

int cmd_subst(const std::string& seq, unsigned p, const std::string& poly_csv, unsigned len) {
    nwall::PrimeField field(p);
    Source src = parse_source(seq, field);
    nwall::Poly poly;
    std::istringstream ps(poly_csv);
    std::string tok;
    while (std::getline(ps, tok, ',')) poly.coeffs.push_back(field.reduce(std::stoll(tok)));
    while (!poly.coeffs.empty() && poly.coeffs.back() == 0) poly.coeffs.pop_back();
    poly.validate();  // DegreeZero for constants
    auto a = materialize(src, len, field);
    auto out = nwall::laurent_substitute(a, poly, len, field);
    std::cout << "coeffs=";
    for (std::size_t i = 0; i < out.size(); ++i)
        std::cout << (i ? "," : "") << static_cast<unsigned>(out[i]);
    std::cout << "\n";
    std::cout << "first " << len << " coefficients of Theta(p(t)) for " << src.name << " over F_"
              << p << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"number walls of automatic sequences over prime finite fields"};
    app.require_subcommand(1);

    std::string seq = "pf1", dump_path, render_path, ckpt_path, poly_csv;
    unsigned p = 3, tile_length = 0, threads = 1, overlay = 0, max_len = 0, min_len = 1, len_u = 0;
    int window = 2;
    std::size_t len = 0;
    bool oracle = false, resume = false;
    std::uint64_t budget = 1ull << 24, ckpt_interval = 1u << 20, progress_interval = 1u << 16,
                  max_tiles = 0;

    auto* wall = app.add_subcommand("wall", "generate a number wall, report its windows");
    wall->add_option("--seq", seq, "pf1|pf2|thue-morse|random:seed=<s>|<spec file>");
    wall->add_option("--p", p, "prime modulus")->required();
    wall->add_option("--len", len, "sequence prefix length")->required();
    wall->add_flag("--oracle", oracle, "use the Toeplitz-determinant oracle instead of the engine");
    wall->add_option("--dump", dump_path, "write a text dump");
    wall->add_option("--render", render_path, "write a P6 PPM image");
    wall->add_option("--tile-overlay", overlay, "tint tiles of this tile length in the image");

    auto* tile = app.add_subcommand("tile", "discover the tile alphabet and [2,2]-morphism");
    tile->add_option("--seq", seq, "pf1|pf2|thue-morse|<spec file>");
    tile->add_option("--p", p, "prime modulus")->required();
    tile->add_option("--tile-length", tile_length, "longest diamond row (default 8; pf2 16)");
    tile->add_option("--checkpoint", ckpt_path, "checkpoint file (written periodically)");
    tile->add_flag("--resume", resume, "resume from the checkpoint");
    tile->add_option("--checkpoint-interval", ckpt_interval, "tiles between checkpoint writes");
    tile->add_option("--progress-interval", progress_interval, "tiles between progress lines");
    tile->add_option("--max-tiles", max_tiles, "pause once this many tiles exist (0 = run)");

    auto* verify = app.add_subcommand("verify", "verify a discovered morphism (algorithms 2.1/2.2)");
    verify->add_option("--checkpoint", ckpt_path, "checkpoint of a closed discovery")->required();
    verify->add_option("--threads", threads, "verification worker threads");

    auto* search = app.add_subcommand("search", "exhaustive window search over all sequences");
    search->add_option("--p", p, "prime modulus")->required();
    search->add_option("--max-len", max_len, "largest sequence length to scan")->required();
    search->add_option("--window", window, "window side to look for")->required();
    search->add_option("--budget", budget, "max sequences enumerable per length");
    search->add_option("--min-len", min_len, "smallest sequence length to scan");

    auto* subst = app.add_subcommand("subst", "Laurent coefficients of Theta(p(t))");
    subst->add_option("--seq", seq, "pf1|pf2|thue-morse|random:seed=<s>|<spec file>");
    subst->add_option("--p", p, "prime modulus")->required();
    subst->add_option("--poly", poly_csv, "p(t) coefficients, lowest degree first, comma separated")
        ->required();
    subst->add_option("--len", len_u, "number of output coefficients")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (wall->parsed()) return cmd_wall(seq, p, len, oracle, dump_path, render_path, overlay);
        if (tile->parsed())
            return cmd_tile(seq, p, tile_length, ckpt_path, resume, ckpt_interval,
                            progress_interval, max_tiles);
        if (verify->parsed()) return cmd_verify(ckpt_path, threads);
        if (search->parsed()) return cmd_search(p, max_len, window, budget, min_len);
        if (subst->parsed()) return cmd_subst(seq, p, poly_csv, len_u);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
