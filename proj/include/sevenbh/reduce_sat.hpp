#pragma once

// Positive 1-in-3-SAT compiled into levels that use only walls and empty
// cells. Every gadget is a set of single-worker sub-levels that are stacked;
// all of them share one column plan so that a single program drives the
// whole stack:
//
//   column 0            border
//   columns 1,2         start columns of every worker pair / block
//   columns 4i+1,4i+2   vertical slot ("shaft") of variable i, 1 <= i <= n
//   columns 4n+5,4n+6   final columns, where accepting cells live
//
// A canonical program R4 s1^4 R4 s2^4 ... sn^4 R4 (s_i in {U,D}) walks every
// worker from the start columns through each shaft to the final columns.
//
// Sub-levels come in groups with identical walls whose workers start at
// adjacent cells (a "pair" or a 2x2 "block"). If one member of a group is
// stopped by a wall while the member behind it moves, the two end up at the
// same coordinates in identical grids; they then move identically forever
// and, since their accepting cells differ, can never both be accepted.

#include <array>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sevenbh/canvas.hpp"
#include "sevenbh/grid.hpp"

namespace sevenbh {

struct Sat1in3Instance {
    int n = 0;
    std::vector<std::array<int, 3>> clauses;

    int m() const { return static_cast<int>(clauses.size()); }

    void validate() const {
        if (n < 1) throw std::invalid_argument("instance needs at least one variable");
        for (const auto& c : clauses)
            if (!(1 <= c[0] && c[0] < c[1] && c[1] < c[2] && c[2] <= n))
                throw std::invalid_argument("clause indices must be increasing and within 1..n");
    }
};

using AssignmentVector = std::vector<bool>;

inline Sat1in3Instance parse_sat(std::string_view text) {
    Sat1in3Instance inst;
    int expected = -1;
    bool header = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto semi = line.find(';'); semi != std::string::npos) line.erase(semi);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (!header) {
            std::string kind;
            if (first != "p" || !(ls >> kind) || kind != "pos1in3" || !(ls >> inst.n >> expected) ||
                inst.n < 1 || expected < 0)
                throw ParseError("expected header 'p pos1in3 n m'", line_no, 1);
            std::string extra;
            if (ls >> extra) throw ParseError("trailing text after header", line_no, 1);
            header = true;
            continue;
        }
        std::array<int, 3> c{};
        std::istringstream cl(line);
        std::string extra;
        if (!(cl >> c[0] >> c[1] >> c[2]) || (cl >> extra))
            throw ParseError("expected three variable indices", line_no, 1);
        if (!(1 <= c[0] && c[0] < c[1] && c[1] < c[2] && c[2] <= inst.n))
            throw ParseError("clause indices must be increasing and within 1.." + std::to_string(inst.n),
                             line_no, 1);
        inst.clauses.push_back(c);
    }
    if (!header) throw ParseError("missing header 'p pos1in3 n m'");
    if (inst.m() != expected)
        throw ParseError("header announces " + std::to_string(expected) + " clauses, found " +
                         std::to_string(inst.m()));
    return inst;
}

inline std::string format_sat(const Sat1in3Instance& inst) {
    std::ostringstream out;
    out << "p pos1in3 " << inst.n << ' ' << inst.m() << '\n';
    for (const auto& c : inst.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
    return out.str();
}

inline bool satisfies(const Sat1in3Instance& inst, const AssignmentVector& alpha) {
    if (static_cast<int>(alpha.size()) != inst.n) return false;
    for (const auto& c : inst.clauses) {
        int t = 0;
        for (int v : c) t += alpha[static_cast<std::size_t>(v - 1)] ? 1 : 0;
        if (t != 1) return false;
    }
    return true;
}

struct SatVerdict {
    bool satisfying = false;
    AssignmentVector alpha;  // first satisfying assignment in counting order
};

inline constexpr int kBruteForceLimit = 24;

// Enumerates all 2^n assignments; assignment number b sets variable i true
// iff bit i-1 of b is set.
inline SatVerdict brute_force_sat(const Sat1in3Instance& inst) {
    inst.validate();
    if (inst.n > kBruteForceLimit)
        throw std::invalid_argument("brute force limited to n <= " + std::to_string(kBruteForceLimit));
    std::vector<std::uint32_t> masks;
    for (const auto& c : inst.clauses)
        masks.push_back((1u << (c[0] - 1)) | (1u << (c[1] - 1)) | (1u << (c[2] - 1)));
    for (std::uint32_t b = 0; b < (1u << inst.n); ++b) {
        bool ok = true;
        for (std::uint32_t mk : masks)
            if (std::popcount(b & mk) != 1) {
                ok = false;
                break;
            }
        if (!ok) continue;
        SatVerdict v{true, AssignmentVector(static_cast<std::size_t>(inst.n))};
        for (int i = 0; i < inst.n; ++i) v.alpha[static_cast<std::size_t>(i)] = ((b >> i) & 1u) != 0;
        return v;
    }
    return {};
}

// ---- column plan -------------------------------------------------------------

namespace sat_layout {

inline int shaft_col(int i) { return 4 * i + 1; }
inline int final_col(int n) { return 4 * n + 5; }
inline int width(int n) { return 4 * n + 8; }

}  // namespace sat_layout

// ---- gadgets -----------------------------------------------------------------

// Two pairs of 4x4 sub-levels. In each pair only two diagonal cells of the
// 2x2 interior are open; each worker starts (and is accepted) on its own
// cell. Axis moves are wall no-ops; the diagonal pointing from one cell to
// the other moves that worker onto its partner's cell, which merges the pair.
inline std::vector<Level> build_diagonal_gadget() {
    std::vector<Level> out;
    const std::array<std::array<Position, 2>, 2> pairs{{{Position{1, 2}, Position{2, 1}},
                                                         {Position{1, 1}, Position{2, 2}}}};
    for (const auto& cells : pairs)
        for (int who = 0; who < 2; ++who) {
            Canvas cv;
            cv.open(cells[0]);
            cv.open(cells[1]);
            cv.accept(cells[static_cast<std::size_t>(who)]);
            cv.worker(cells[static_cast<std::size_t>(who)]);
            out.push_back(cv.to_level(4, 4));
        }
    return out;
}

// Four identical lattices, one worker each, starting as a 2x2 block. Level h
// in [-n, n] is a two-row corridor at rows R(h), R(h)+1 with R(h) = 1+4(n-h).
// Shaft i spans levels -i..i; after shaft i corridors exist only at levels of
// the parity of i, so each shaft must change the level by an odd amount and a
// corridor arriving at a shaft dead-ends there.
inline std::vector<Level> build_assignment_gadget(int n) {
    if (n < 1) throw std::invalid_argument("assignment gadget needs n >= 1");
    auto row = [n](int h) { return 1 + 4 * (n - h); };
    Canvas cv;
    auto corridor = [&](int h, int c0, int c1) {
        cv.hrun(row(h), c0, c1);
        cv.hrun(row(h) + 1, c0, c1);
    };
    corridor(0, 1, sat_layout::shaft_col(1) + 1);
    for (int i = 1; i <= n; ++i) {
        const int c = sat_layout::shaft_col(i);
        cv.vrun(c, row(i), row(-i) + 1);
        cv.vrun(c + 1, row(i), row(-i) + 1);
        const int end = i < n ? sat_layout::shaft_col(i + 1) + 1 : sat_layout::final_col(n) + 1;
        for (int h = -i; h <= i; h += 2) corridor(h, c, end);
    }
    const std::array<Position, 4> offsets{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
    std::vector<Level> out;
    for (Position o : offsets) {
        Canvas sub = cv;
        for (int h = -n; h <= n; h += 2) sub.accept({sat_layout::final_col(n) + o.col, row(h) + o.row});
        sub.worker({1 + o.col, row(0) + o.row});
        out.push_back(sub.to_level(sat_layout::width(n), 8 * n + 4));
    }
    return out;
}

namespace detail {

// A pair of sub-levels sharing `cv`'s walls; the left worker starts at
// column 1 and is accepted at the left final column on `accept_rows`, the
// right worker one column further right.
inline std::vector<Level> make_pair(const Canvas& cv, int n, int start_row, const std::vector<int>& accept_rows,
                                    int height) {
    std::vector<Level> out;
    for (int who = 0; who < 2; ++who) {
        Canvas sub = cv;
        for (int r : accept_rows) sub.accept({sat_layout::final_col(n) + who, r});
        sub.worker({1 + who, start_row});
        out.push_back(sub.to_level(sat_layout::width(n), height));
    }
    return out;
}

// Two-column window at shaft `x` covering rows [top, bottom].
inline void window(Canvas& cv, int x, int top, int bottom) {
    cv.vrun(sat_layout::shaft_col(x), top, bottom);
    cv.vrun(sat_layout::shaft_col(x) + 1, top, bottom);
}

// One-row track from just right of shaft `from` (or the start columns when
// from == 0) to the left column of shaft `to` (or the final columns when
// to == n+1).
inline void track(Canvas& cv, int n, int row, int from, int to) {
    const int c0 = from == 0 ? 1 : sat_layout::shaft_col(from) + 2;
    const int c1 = to == n + 1 ? sat_layout::final_col(n) + 1 : sat_layout::shaft_col(to) - 1;
    cv.hrun(row, c0, c1);
}

}  // namespace detail

// Pins variable x to a single reading. A one-row track enters a window of
// +-4 rows at shaft x and leaves only from its top row (x true) or bottom row
// (x false): within a visit the pair must end exactly one level up or down
// before moving sideways, otherwise the pair splits on a wall and merges.
inline std::vector<Level> build_variable_limiter(int x, int n) {
    if (x < 1 || x > n) throw std::invalid_argument("limiter variable out of range");
    constexpr int e = 5;
    Canvas cv;
    detail::track(cv, n, e, 0, x);
    detail::window(cv, x, e - 4, e + 4);
    detail::track(cv, n, e - 4, x, n + 1);
    detail::track(cv, n, e + 4, x, n + 1);
    return detail::make_pair(cv, n, e, {e - 4, e + 4}, 11);
}

// A tree of one-row tracks indexed by the readings of the members so far.
// Rows are relative to the start track (0); up is negative, so reading
// "true" (moving up four rows) subtracts 4.
//   a:  full window [-4, 4]:  T -> -4, F -> 4
//   b:  from T: upper half [-8, -4]  (-8 = second true: dead end; -4 = TF)
//       from F: full window [0, 8]   (0 = FT, 8 = FF)
//   c:  from TF: upper half [-8, -4] (-4 accepted; -8 dead end)
//       from FT: lower half [0, 4]   (4 accepted; 0 dead end)
//       from FF: lower half [8, 12]  (8 accepted; 12 dead end)
// Half windows clamp one way, so a pair that already counted a true cannot
// count another, and one that has not cannot skip the third member.
// Non-member shafts are crossed by straight tracks, where vertical moves are
// wall no-ops for both workers.
inline std::vector<Level> build_clause_gadget(const std::array<int, 3>& clause, int n) {
    const auto [a, b, c] = clause;
    if (!(1 <= a && a < b && b < c && c <= n)) throw std::invalid_argument("invalid clause");
    constexpr int o = 9;  // row of the start track
    Canvas cv;
    auto track = [&](int rel, int from, int to) { detail::track(cv, n, o + rel, from, to); };
    auto window = [&](int x, int top, int bottom) { detail::window(cv, x, o + top, o + bottom); };
    track(0, 0, a);
    window(a, -4, 4);
    track(-4, a, b);
    track(4, a, b);
    window(b, -8, -4);
    window(b, 0, 8);
    track(-4, b, c);
    track(0, b, c);
    track(8, b, c);
    window(c, -8, -4);
    window(c, 0, 4);
    window(c, 8, 12);
    track(-4, c, n + 1);
    track(4, c, n + 1);
    track(8, c, n + 1);
    return detail::make_pair(cv, n, o, {o - 4, o + 4, o + 8}, 23);
}

// Variables that occur in at least one clause, ascending.
inline std::vector<int> used_variables(const Sat1in3Instance& inst) {
    std::vector<bool> used(static_cast<std::size_t>(inst.n) + 1, false);
    for (const auto& c : inst.clauses)
        for (int v : c) used[static_cast<std::size_t>(v)] = true;
    std::vector<int> out;
    for (int v = 1; v <= inst.n; ++v)
        if (used[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

struct SatCompilation {
    Stacked stacked;
    std::vector<std::string> names;  // one per sub-level, in stacking order
};

// Stack order: diagonal gadget, assignment block, one limiter pair per used
// variable, one pair per clause.
inline SatCompilation compile_sat_with_layout(const Sat1in3Instance& inst) {
    inst.validate();
    std::vector<Level> parts;
    std::vector<std::string> names;
    auto add = [&](std::vector<Level> ls, const std::string& base) {
        for (std::size_t i = 0; i < ls.size(); ++i) {
            parts.push_back(std::move(ls[i]));
            names.push_back(base + "." + std::to_string(i));
        }
    };
    add(build_diagonal_gadget(), "diagonal");
    add(build_assignment_gadget(inst.n), "assignment");
    for (int v : used_variables(inst)) add(build_variable_limiter(v, inst.n), "limiter" + std::to_string(v));
    for (std::size_t j = 0; j < inst.clauses.size(); ++j) add(build_clause_gadget(inst.clauses[j], inst.n), "clause" + std::to_string(j + 1));
    return {stack_with_layout(parts), std::move(names)};
}

inline Level compile_sat(const Sat1in3Instance& inst) { return compile_sat_with_layout(inst).stacked.level; }

// ---- witnesses -----------------------------------------------------------------

inline Program canonical_program(const AssignmentVector& alpha) {
    Program p(4, Direction::Right);
    for (bool v : alpha) {
        p.insert(p.end(), 4, v ? Direction::Up : Direction::Down);
        p.insert(p.end(), 4, Direction::Right);
    }
    return p;
}

class DecodeError : public std::runtime_error {
public:
    DecodeError(const std::string& what, std::size_t step)
        : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
    // 1-based index of the first offending step.
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

// Inverse of canonical_program. A missing tail is reported at the first step
// of the incomplete four-step group.
inline AssignmentVector decode_canonical(const Program& p, int n) {
    if (n < 0) throw std::invalid_argument("negative variable count");
    const std::size_t total = 4 + 8 * static_cast<std::size_t>(n);
    AssignmentVector alpha;
    for (std::size_t g = 0; g < total / 4; ++g) {
        const std::size_t first = 4 * g;
        if (p.size() < first + 4) throw DecodeError("program ends inside a four-step group", first + 1);
        const bool shaft = g % 2 == 1;
        const Direction want = shaft ? p[first] : Direction::Right;
        if (shaft && want != Direction::Up && want != Direction::Down)
            throw DecodeError("expected U or D", first + 1);
        for (std::size_t s = first; s < first + 4; ++s)
            if (p[s] != want)
                throw DecodeError(std::string("expected ") + std::string(name(want)), s + 1);
        if (shaft) alpha.push_back(want == Direction::Up);
    }
    if (p.size() > total) throw DecodeError("program longer than the canonical shape", total + 1);
    return alpha;
}

}  // namespace sevenbh
