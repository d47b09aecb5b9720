#pragma once

// DFA intersection compiled into levels with holes. The level stacks:
//
//   CW1..CW3   three small sub-levels whose joint language is exactly the
//              Kleene closure of clockwise blocks, so the program is a
//              sequence of blocks R^x1 D^x2 L^x3 U^x4 with every x >= 6;
//   enforce#   checks that blocks come in groups of k+2 closed by '#';
//   M_i odd / M_i even, for each automaton i: check the state sequence of
//              automaton i on odd / even record transitions.
//
// Gadgets are drawn on a Canvas at a "port" (the cell where the worker sits
// before the gadget's block starts) and return the ports they lead to. Rows
// grow downwards, so R/D moves increase col/row.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sevenbh/automata.hpp"
#include "sevenbh/canvas.hpp"
#include "sevenbh/encoding.hpp"
#include "sevenbh/grid.hpp"

namespace sevenbh {

// ---- fast simulation -----------------------------------------------------------

// Runs `program` on a level whose workers live in pairwise disjoint regions,
// so that no worker can ever block another. Each worker is simulated on its
// own and the run stops early once a worker is stuck.
inline Configuration run_isolated(const Level& level, Configuration cfg, const Program& program,
                                  bool stop_when_stuck = true) {
    for (WorkerState& w : cfg) {
        if (w.stuck) continue;
        for (Direction d : program) {
            const Position t = moved(w.pos, d);
            const Cell c = level.at(t);
            if (c == Cell::Wall) continue;
            w.pos = t;
            if (c == Cell::Hole) {
                w.stuck = true;
                break;
            }
        }
        if (stop_when_stuck && w.stuck) break;
    }
    return cfg;
}

inline bool solves_isolated(const Level& level, const Program& program) {
    return is_solved(level, run_isolated(level, initial_configuration(level), program));
}

// ---- gadgets -----------------------------------------------------------------------

// A gadget drawn on its own canvas, with named ports in canvas coordinates.
struct SubGrid {
    Canvas canvas;
    std::map<std::string, Position> ports;
};

inline Position offset_by(Position p, int dc, int dr) { return {p.col + dc, p.row + dr}; }

// Counter: consumes any clockwise block and moves the worker by (rx-1, 3),
// where rx is the length of its rightward run (5 for the standard counter,
// giving displacement (4, 3); 4 for the short variant, giving (3, 3)). The
// block's runs are absorbed by walls: R stops at the end of the top row, D at
// the bottom of the right column, L one cell later, U immediately.
inline Position draw_counter(Canvas& cv, Position p, int rx = 5) {
    cv.hrun(p.row, p.col, p.col + rx);
    cv.vrun(p.col + rx, p.row, p.row + 3);
    const Position out = offset_by(p, rx - 1, 3);
    cv.open(out);
    cv.wall(offset_by(p, rx + 1, 0));
    cv.wall(offset_by(p, rx, 4));
    cv.wall(offset_by(out, -1, 0));
    cv.wall(offset_by(out, 0, -1));
    return out;
}

inline Position draw_counters(Canvas& cv, Position p, int count) {
    for (int c = 0; c < count; ++c) p = draw_counter(cv, p);
    return p;
}

// Selector over `nums` (strictly increasing): a corridor to the right of the
// port with a shaft of depth v at horizontal offset v for every v. A block
// R^v D^v L.. U.. ends two cells left of the bottom of shaft v; every other
// (x1, x2) lands in a hole. Returns one exit per value, in order.
inline std::vector<Position> draw_selector(Canvas& cv, Position p, const std::vector<long>& nums) {
    if (nums.empty()) throw std::invalid_argument("selector needs at least one branch");
    for (std::size_t i = 0; i < nums.size(); ++i)
        if (nums[i] < 6 || (i > 0 && nums[i] <= nums[i - 1]))
            throw std::invalid_argument("selector values must be increasing and >= 6");
    const int last = static_cast<int>(nums.back());
    cv.hrun(p.row, p.col, p.col + last);
    cv.hole(offset_by(p, last + 1, 0));
    std::vector<Position> outs;
    for (long v : nums) {
        const int d = static_cast<int>(v);
        const int x = p.col + d, y = p.row + d;
        cv.vrun(x, p.row, y);
        cv.hole({x, y + 1});
        for (int r = p.row + 6; r < y; ++r) cv.hole({x - 1, r});
        cv.hrun(y, x - 2, x);
        cv.wall({x - 3, y});
        cv.wall({x - 2, y - 1});
        outs.push_back({x - 2, y});
    }
    for (int j = 6; j <= last; ++j)
        if (!std::binary_search(nums.begin(), nums.end(), static_cast<long>(j))) cv.hole(offset_by(p, j, 1));
    return outs;
}

// Forcer: R moves two cells, then a shaft of exactly `depth` cells; any other
// D run falls in a hole (too long: below; too short: the L run hits a hole at
// the side). Exit is straight below the port.
inline Position draw_forcer(Canvas& cv, Position p, long depth) {
    const int d = static_cast<int>(depth);
    cv.hrun(p.row, p.col, p.col + 2);
    cv.wall(offset_by(p, 3, 0));
    cv.vrun(p.col + 2, p.row, p.row + d);
    cv.hole(offset_by(p, 2, d + 1));
    for (int r = 6; r < d; ++r) cv.hole(offset_by(p, 1, r));
    const Position out = offset_by(p, 0, d);
    cv.hrun(out.row, out.col, out.col + 2);
    cv.wall(offset_by(out, -1, 0));
    cv.wall(offset_by(out, 0, -1));
    return out;
}

// Go-back: from every registered cell, the '#' block moves R three cells,
// down a private lane to a common bottom row, left along it to the return
// column and up to `ret`. Runs are absorbed by walls, so the block works as
// long as every distance fits within the corresponding '#' exponent.
//
// Every lane is longer than the largest symbol number and has holes on its
// left from depth 6 on, so a symbol block (whose D run is its number) stops
// inside the lane and falls into a hole on its L run; only a D run of at
// least the lane length, such as x# = 2 w#, reaches the bottom row.
inline int goback_min_lane(const EncodingParams& p) { return static_cast<int>(p.num_symbol(p.m - 1)) + 1; }

inline int goback_bottom(const EncodingParams& p, const std::vector<Position>& cells) {
    int deepest = 0;
    for (Position c : cells) deepest = std::max(deepest, c.row);
    return deepest + goback_min_lane(p);
}

inline void draw_goback(Canvas& cv, const EncodingParams& params, Position ret, const std::vector<Position>& cells,
                        int bottom) {
    int right = ret.col;
    for (Position c : cells) {
        if (c.col < ret.col || c.row < ret.row || bottom - c.row < goback_min_lane(params))
            throw std::invalid_argument("go-back cell outside the admissible rectangle");
        right = std::max(right, c.col + 3);
    }
    if (right - ret.col > params.y_sharp || bottom - ret.row > params.z_sharp)
        throw std::invalid_argument("go-back rectangle exceeds the '#' block");
    for (Position c : cells) {
        if (bottom - c.row > params.x_sharp) throw std::invalid_argument("go-back lane longer than x#");
        cv.hrun(c.row, c.col, c.col + 3);
        cv.vrun(c.col + 3, c.row, bottom);
        cv.wall(offset_by(c, 4, 0));
        for (int r = c.row + 6; r < bottom; ++r) cv.hole({c.col + 2, r});
    }
    cv.hrun(bottom, ret.col, right);
    cv.vrun(ret.col, ret.row, bottom);
    cv.wall(offset_by(ret, 0, -1));
    cv.wall({ret.col - 1, bottom});
}

inline SubGrid build_counter(const EncodingParams&) {
    SubGrid g;
    g.ports["0"] = {0, 0};
    g.ports["1"] = draw_counter(g.canvas, {0, 0});
    return g;
}

inline std::vector<Symbol> selector_set_states(const EncodingParams& p) {
    std::vector<Symbol> s;
    for (int q = 0; q < p.n; ++q) s.push_back(Symbol::state(q));
    return s;
}

inline std::vector<Symbol> selector_set_letters(const EncodingParams& p) {
    std::vector<Symbol> s;
    for (int a = 0; a < p.m; ++a) s.push_back(Symbol::letter(a));
    return s;
}

// Ports: "0" and "out:<symbol>" for every member of `set`.
inline SubGrid build_selector(const std::vector<Symbol>& set, const EncodingParams& p) {
    std::vector<long> nums;
    for (const Symbol& s : set) {
        if (s.kind == Symbol::Kind::Sharp) throw std::invalid_argument("'#' cannot be selected");
        nums.push_back(num(s, p));
    }
    for (std::size_t i = 1; i < nums.size(); ++i)
        if (nums[i] <= nums[i - 1]) throw std::invalid_argument("selector set must be sorted by num without duplicates");
    SubGrid g;
    g.ports["0"] = {0, 0};
    const auto outs = draw_selector(g.canvas, {0, 0}, nums);
    for (std::size_t i = 0; i < set.size(); ++i) g.ports["out:" + to_string(set[i])] = outs[i];
    return g;
}

inline SubGrid build_forcer(int q, const EncodingParams& p) {
    SubGrid g;
    g.ports["0"] = {0, 0};
    g.ports["1"] = draw_forcer(g.canvas, {0, 0}, num(Symbol::state(q), p));
    return g;
}

// Ports: "1" (return) and "0:<j>" for each registered cell, given relative
// to the return port.
inline SubGrid build_goback(const EncodingParams& p, const std::vector<Position>& cells) {
    SubGrid g;
    const int bottom = goback_bottom(p, cells);
    for (std::size_t j = 0; j < cells.size(); ++j) {
        g.canvas.open(cells[j]);
        g.ports["0:" + std::to_string(j)] = cells[j];
    }
    draw_goback(g.canvas, p, {0, 0}, cells, bottom);
    g.ports["1"] = {0, 0};
    return g;
}

// Level for gadget contract checks: the worker starts at `start`.
inline Level gadget_level(const SubGrid& g, Position start, Position* shift) {
    Canvas cv = g.canvas;
    cv.worker(start);
    return cv.to_level(shift);
}

// Runs `program` from canvas cell `from` of a gadget; the result is reported
// in canvas coordinates.
inline WorkerState run_gadget(const SubGrid& g, Position from, const Program& program) {
    Position shift;
    const Level l = gadget_level(g, from, &shift);
    WorkerState w = run_isolated(l, initial_configuration(l), program).front();
    w.pos = offset_by(w.pos, -shift.col, -shift.row);
    return w;
}

// Exponent for contract sampling: mostly uniform in [6, 2 w#], with the
// boundary values 6, 7, w#, x#, y#, z# drawn a quarter of the time.
template <class Rng>
long sample_exponent(Rng& rng, const EncodingParams& p) {
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
        const long edges[] = {6, 7, p.w_sharp, p.x_sharp, p.y_sharp, p.z_sharp};
        return edges[std::uniform_int_distribution<int>(0, 5)(rng)];
    }
    return std::uniform_int_distribution<long>(6, 2 * p.w_sharp)(rng);
}

// ---- clockwise sub-levels ----------------------------------------------------------

namespace detail {

// Every still-unclaimed diagonal neighbour of an open cell becomes a hole.
inline void hole_diagonals(Canvas& cv, const std::vector<Position>& cells) {
    for (Position c : cells)
        for (Direction d : {Direction::UpLeft, Direction::UpRight, Direction::DownLeft, Direction::DownRight}) {
            const Position t = moved(c, d);
            if (!cv.marked(t)) cv.hole(t);
        }
}

}  // namespace detail

// CW1: a vertical run of seven cells. L is only safe at the bottom, R only at
// the top. CW2: a horizontal run of seven cells, U only safe at the left end,
// D only at the right end. Together they force the runs R, D, L, U to come
// in this cyclic order with every run of length >= 6. CW3 forces the first
// move to be R.
inline std::vector<Level> build_cw_sublevels() {
    std::vector<Level> out;
    {
        Canvas cv;
        std::vector<Position> cells;
        for (int r = 1; r <= 7; ++r) cells.push_back({2, r});
        for (Position c : cells) cv.open(c);
        cv.accept(cells.front());
        cv.wall({2, 0});
        cv.wall({2, 8});
        for (int r = 1; r <= 7; ++r) {
            if (r == 1) cv.wall({3, r});
            else cv.hole({3, r});
            if (r == 7) cv.wall({1, r});
            else cv.hole({1, r});
        }
        detail::hole_diagonals(cv, cells);
        cv.worker(cells.front());
        out.push_back(cv.to_level());
    }
    {
        Canvas cv;
        std::vector<Position> cells;
        for (int c = 1; c <= 7; ++c) cells.push_back({c, 2});
        for (Position c : cells) cv.open(c);
        cv.accept(cells.front());
        cv.wall({0, 2});
        cv.wall({8, 2});
        for (int c = 1; c <= 7; ++c) {
            if (c == 1) cv.wall({c, 1});
            else cv.hole({c, 1});
            if (c == 7) cv.wall({c, 3});
            else cv.hole({c, 3});
        }
        detail::hole_diagonals(cv, cells);
        cv.worker(cells.front());
        out.push_back(cv.to_level());
    }
    {
        // s0 (start) -R-> s1, then a two-cell drop to s2. Any first move other
        // than R falls in a hole; afterwards the worker alternates between s1
        // (after R and U runs) and s2 (after D and L runs).
        Canvas cv;
        const Position s0{2, 2}, s1{3, 2}, mid{3, 3}, s2{3, 4};
        cv.accept(s0);
        cv.accept(s1);
        cv.open(mid);
        cv.open(s2);
        cv.hole({2, 1});
        cv.hole({1, 2});
        cv.hole({2, 3});
        cv.wall({3, 1});
        cv.wall({4, 2});
        cv.hole({4, 3});
        cv.wall({2, 4});
        cv.wall({4, 4});
        cv.wall({3, 5});
        detail::hole_diagonals(cv, {s0, s1, mid, s2});
        cv.worker(s0);
        out.push_back(cv.to_level());
    }
    return out;
}

// ---- enforce# -----------------------------------------------------------------

// k+1 counters (the first one short) followed by a loop shaped exactly like
// the '#' block that returns to the start cell, the only accepting cell. The
// loop's sides are lined with holes from the sixth cell on, and a hole sits
// just past the end of each side, so only the exact '#' block survives it.
// The short first counter makes the loop close:
//   y# = w# + 4k + 3 = w# + 3 + 4k,   z# = x# + 3k + 3 = x# + 3 + 3k.
inline Level build_enforce_sharp(const EncodingParams& p) {
    Canvas cv;
    const Position s{0, 0};
    Position e = draw_counter(cv, s, 4);
    e = draw_counters(cv, e, p.k);
    const int w = static_cast<int>(p.w_sharp), x = static_cast<int>(p.x_sharp);
    const int y = static_cast<int>(p.y_sharp), z = static_cast<int>(p.z_sharp);
    const int cx = e.col + w, by = e.row + x;
    if (cx - y != s.col || by - z != s.row) throw std::logic_error("'#' loop does not close");
    cv.hrun(e.row, e.col, cx);
    cv.hole({cx + 1, e.row});
    for (int t = 6; t < w; ++t) cv.hole({e.col + t, e.row + 1});
    cv.vrun(cx, e.row, by);
    cv.hole({cx, by + 1});
    for (int t = 6; t < x; ++t) cv.hole({cx - 1, e.row + t});
    cv.hrun(by, s.col, cx);
    cv.hole({s.col - 1, by});
    for (int t = 6; t < y; ++t) cv.hole({cx - t, by - 1});
    cv.vrun(s.col, s.row, by);
    cv.hole({s.col, s.row - 1});
    for (int t = 6; t < z; ++t) cv.hole({s.col + 1, by - t});
    cv.accept(s);
    cv.worker(s);
    return cv.to_level();
}

// ---- M_i ---------------------------------------------------------------------------

struct MiLayout {
    Level odd, even;
    int width = 0, height = 0;  // bounding box of the drawn cells
};

// The two sub-levels checking automaton i (1-based). They share one grid:
//  - the symbol selector at P (the odd start, accepting) branches on the
//    record's symbol; each branch skips i-1 state blocks and branches on
//    automaton i's state q; that branch skips k+1 blocks (rest of the record,
//    '#', next symbol, the next record's first i-1 states), forces the next
//    state block to delta_i(q, sigma), skips the remaining k-i states and
//    hands the closing '#' to the go-back, which returns to P. When q is
//    accepting, the cell reached k+1-i blocks after the state selector (the
//    end of the record) is accepting.
//  - the even start skips the first symbol and i-1 states, forces the start
//    state, skips the rest and joins the go-back.
// So the odd worker checks transitions out of records 1, 3, 5, ... and the
// even worker the start state and transitions out of records 2, 4, ...
inline MiLayout build_Mi_pair(int i, const IntersectionInstance& inst, const EncodingParams& p) {
    if (i < 1 || i > p.k) throw std::invalid_argument("automaton index out of range");
    const Dfa& dfa = inst.dfas.at(static_cast<std::size_t>(i - 1));
    Canvas cv;
    const Position start{0, 0};
    std::vector<long> letters, states;
    for (int a = 0; a < p.m; ++a) letters.push_back(p.num_symbol(a));
    for (int q = 0; q < p.n; ++q) states.push_back(p.num_state(q));
    std::vector<Position> back;
    const auto sigma_out = draw_selector(cv, start, letters);
    for (int a = 0; a < p.m; ++a) {
        const Position sel = draw_counters(cv, sigma_out[static_cast<std::size_t>(a)], i - 1);
        const auto q_out = draw_selector(cv, sel, states);
        for (int q = 0; q < p.n; ++q) {
            Position port = q_out[static_cast<std::size_t>(q)];
            for (int c = 1; c <= p.k + 1; ++c) {
                port = draw_counter(cv, port);
                if (c == p.k + 1 - i && dfa.accepting[static_cast<std::size_t>(q)]) cv.accept(port);
            }
            port = draw_forcer(cv, port, p.num_state(dfa.next(q, a)));
            back.push_back(draw_counters(cv, port, p.k - i));
        }
    }
    const Position even_start{cv.bounds().max_col + 6, start.row};
    Position port = draw_counters(cv, even_start, i);
    port = draw_forcer(cv, port, p.num_state(dfa.start));
    back.push_back(draw_counters(cv, port, p.k - i));
    draw_goback(cv, p, start, back, std::max(cv.bounds().max_row + 2, goback_bottom(p, back)));
    cv.accept(start);

    MiLayout out;
    const Canvas::Box b = cv.bounds();
    out.width = b.max_col - b.min_col + 1;
    out.height = b.max_row - b.min_row + 1;
    Canvas odd = cv, even = cv;
    odd.worker(start);
    even.worker(even_start);
    out.odd = odd.to_level();
    out.even = even.to_level();
    return out;
}

enum class Parity { Odd, Even };

inline Level build_Mi(int i, const IntersectionInstance& inst, Parity parity, const EncodingParams& p) {
    MiLayout l = build_Mi_pair(i, inst, p);
    return parity == Parity::Odd ? std::move(l.odd) : std::move(l.even);
}

// ---- the whole level ---------------------------------------------------------------

struct DfaCompilation {
    Stacked stacked;
    std::vector<std::string> names;  // CW1, CW2, CW3, enforce#, M1odd, M1even, ...
    EncodingParams params;
    std::vector<std::pair<int, int>> mi_sizes;  // (width, height) of each M_i grid
};

inline DfaCompilation compile_intersection_with_layout(const IntersectionInstance& inst) {
    if (inst.k() < 1) throw std::invalid_argument("instance needs at least one automaton");
    for (const Dfa& d : inst.dfas) {
        d.validate();
        if (d.state_count != inst.n() || d.alphabet != inst.alphabet() || d.start != 0)
            throw std::invalid_argument("instance is not normalized");
    }
    DfaCompilation out;
    out.params = derive_params(inst);
    std::vector<Level> parts = build_cw_sublevels();
    out.names = {"CW1", "CW2", "CW3"};
    parts.push_back(build_enforce_sharp(out.params));
    out.names.push_back("enforce#");
    for (int i = 1; i <= inst.k(); ++i) {
        MiLayout mi = build_Mi_pair(i, inst, out.params);
        if (mi.width > out.params.w_sharp || mi.height > out.params.x_sharp)
            throw std::logic_error("M" + std::to_string(i) + " exceeds the w# x x# box");
        out.mi_sizes.emplace_back(mi.width, mi.height);
        parts.push_back(std::move(mi.odd));
        out.names.push_back("M" + std::to_string(i) + "odd");
        parts.push_back(std::move(mi.even));
        out.names.push_back("M" + std::to_string(i) + "even");
    }
    out.stacked = stack_with_layout(parts);
    return out;
}

inline Level compile_intersection(const IntersectionInstance& inst) {
    return compile_intersection_with_layout(inst).stacked.level;
}

}  // namespace sevenbh
