#pragma once

// Core game semantics: levels, programs, simultaneous stepping, acceptance,
// reachability regions and vertical stacking of sub-levels.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sevenbh {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0, int column = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + ": " + what
                                      : what),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

enum class Direction : std::uint8_t { Up, Down, Left, Right, UpLeft, UpRight, DownLeft, DownRight };

inline constexpr std::array<Direction, 8> kAllDirections{
    Direction::Up,     Direction::Down,    Direction::Left,     Direction::Right,
    Direction::UpLeft, Direction::UpRight, Direction::DownLeft, Direction::DownRight};
inline constexpr std::array<Direction, 4> kAxisDirections{Direction::Up, Direction::Down,
                                                          Direction::Left, Direction::Right};

struct Offset {
    int dx;
    int dy;
};

constexpr Offset offset(Direction d) {
    switch (d) {
    case Direction::Up: return {0, -1};
    case Direction::Down: return {0, 1};
    case Direction::Left: return {-1, 0};
    case Direction::Right: return {1, 0};
    case Direction::UpLeft: return {-1, -1};
    case Direction::UpRight: return {1, -1};
    case Direction::DownLeft: return {-1, 1};
    case Direction::DownRight: return {1, 1};
    }
    return {0, 0};
}

constexpr bool is_diagonal(Direction d) {
    const Offset o = offset(d);
    return o.dx != 0 && o.dy != 0;
}

constexpr std::string_view name(Direction d) {
    constexpr std::array<std::string_view, 8> names{"U", "D", "L", "R", "UL", "UR", "DL", "DR"};
    return names[static_cast<std::size_t>(d)];
}

inline std::optional<Direction> direction_from_name(std::string_view s) {
    for (Direction d : kAllDirections)
        if (name(d) == s) return d;
    return std::nullopt;
}

using Program = std::vector<Direction>;

// Tokens are DIR or DIRcount separated by whitespace; counts are positive.
inline Program parse_program(std::string_view text) {
    Program out;
    std::size_t i = 0;
    int token_no = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        std::string_view tok = text.substr(i, j - i);
        ++token_no;
        std::size_t k = 0;
        while (k < tok.size() && std::isalpha(static_cast<unsigned char>(tok[k]))) ++k;
        auto dir = direction_from_name(tok.substr(0, k));
        if (!dir) throw ParseError("unknown direction in token '" + std::string(tok) + "' (token " +
                                   std::to_string(token_no) + ")");
        std::uint64_t count = 1;
        if (k < tok.size()) {
            std::string_view digits = tok.substr(k);
            if (digits[0] < '1' || digits[0] > '9' ||
                !std::all_of(digits.begin(), digits.end(),
                             [](char c) { return c >= '0' && c <= '9'; }) ||
                digits.size() > 9)
                throw ParseError("bad count in token '" + std::string(tok) + "' (token " +
                                 std::to_string(token_no) + ")");
            count = std::stoull(std::string(digits));
        }
        out.insert(out.end(), count, *dir);
        i = j;
    }
    return out;
}

inline std::string format_program(const Program& p) {
    std::string out;
    for (std::size_t i = 0; i < p.size();) {
        std::size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        if (!out.empty()) out += ' ';
        out += name(p[i]);
        if (j - i > 1) out += std::to_string(j - i);
        i = j;
    }
    return out;
}

struct Position {
    int col = 0;
    int row = 0;
    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

inline Position moved(Position p, Direction d) {
    const Offset o = offset(d);
    return {p.col + o.dx, p.row + o.dy};
}

enum class Cell : std::uint8_t { Wall, Empty, Accept, Hole };

inline bool is_open(Cell c) { return c != Cell::Wall; }

class Level {
public:
    Level() = default;

    Level(int width, int height, std::vector<Cell> cells, std::vector<Position> workers)
        : width_(width), height_(height), cells_(std::move(cells)), workers_(std::move(workers)) {
        if (width <= 0 || height <= 0) throw std::invalid_argument("level dimensions must be positive");
        if (cells_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
            throw std::invalid_argument("cell array size does not match dimensions");
        for (int c = 0; c < width; ++c)
            if (at({c, 0}) != Cell::Wall || at({c, height - 1}) != Cell::Wall)
                throw std::invalid_argument("border cell is not a wall");
        for (int r = 0; r < height; ++r)
            if (at({0, r}) != Cell::Wall || at({width - 1, r}) != Cell::Wall)
                throw std::invalid_argument("border cell is not a wall");
        std::vector<Position> sorted = workers_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("two workers share a start cell");
        for (Position w : workers_) {
            if (!inside(w)) throw std::invalid_argument("worker outside the grid");
            const Cell c = at(w);
            if (c != Cell::Empty && c != Cell::Accept)
                throw std::invalid_argument("worker must start on an empty cell");
        }
    }

    int width() const { return width_; }
    int height() const { return height_; }
    const std::vector<Position>& workers() const { return workers_; }
    const std::vector<Cell>& cells() const { return cells_; }

    bool inside(Position p) const {
        return p.col >= 0 && p.row >= 0 && p.col < width_ && p.row < height_;
    }
    std::size_t index(Position p) const {
        return static_cast<std::size_t>(p.row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(p.col);
    }
    Position position(std::size_t idx) const {
        return {static_cast<int>(idx % static_cast<std::size_t>(width_)),
                static_cast<int>(idx / static_cast<std::size_t>(width_))};
    }
    // Cells outside the grid read as walls.
    Cell at(Position p) const { return inside(p) ? cells_[index(p)] : Cell::Wall; }

    std::size_t cell_count() const { return cells_.size(); }
    std::size_t count(Cell kind) const {
        return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), kind));
    }

    friend bool operator==(const Level&, const Level&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Cell> cells_;
    std::vector<Position> workers_;
};

struct WorkerState {
    Position pos;
    bool stuck = false;
    friend bool operator==(const WorkerState&, const WorkerState&) = default;
};

using Configuration = std::vector<WorkerState>;

inline Configuration initial_configuration(const Level& level) {
    Configuration cfg;
    cfg.reserve(level.workers().size());
    for (Position p : level.workers()) cfg.push_back({p, false});
    return cfg;
}

// One simultaneous step. A worker moves iff its target is not a wall, is not
// occupied by any worker before the step, and is not targeted by another
// mover. Landing on a hole makes the worker stuck for good.
inline Configuration step(const Level& level, const Configuration& cfg, Direction dir) {
    const std::size_t n = cfg.size();
    Configuration next = cfg;
    if (n == 1) {
        if (cfg[0].stuck) return next;
        const Position t = moved(cfg[0].pos, dir);
        const Cell c = level.at(t);
        if (c != Cell::Wall) next[0] = {t, c == Cell::Hole};
        return next;
    }
    std::vector<std::optional<Position>> target(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (cfg[i].stuck) continue;
        const Position t = moved(cfg[i].pos, dir);
        if (level.at(t) != Cell::Wall) target[i] = t;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!target[i]) continue;
        bool free = true;
        for (std::size_t j = 0; j < n && free; ++j) {
            if (j == i) continue;
            if (cfg[j].pos == *target[i]) free = false;
            else if (target[j] && *target[j] == *target[i]) free = false;
        }
        if (free) next[i] = {*target[i], level.at(*target[i]) == Cell::Hole};
    }
    return next;
}

inline Configuration run(const Level& level, Configuration cfg, const Program& program,
                         std::vector<Configuration>* trace = nullptr) {
    if (trace) {
        trace->clear();
        trace->push_back(cfg);
    }
    for (Direction d : program) {
        cfg = step(level, cfg, d);
        if (trace) trace->push_back(cfg);
    }
    return cfg;
}

inline bool is_solved(const Level& level, const Configuration& cfg) {
    return std::all_of(cfg.begin(), cfg.end(), [&](const WorkerState& w) {
        return !w.stuck && level.at(w.pos) == Cell::Accept;
    });
}

struct ComponentReport {
    // Region of each worker, as sorted cell indices (holes included).
    std::vector<std::vector<std::size_t>> regions;
    bool disjoint = true;
};

// Cells reachable from `start` by 8-direction moves ignoring other workers;
// holes are reachable but never expanded.
inline std::vector<std::size_t> region_of(const Level& level, Position start) {
    std::vector<char> seen(level.cell_count(), 0);
    std::vector<std::size_t> out{level.index(start)};
    seen[out[0]] = 1;
    for (std::size_t head = 0; head < out.size(); ++head) {
        const Position p = level.position(out[head]);
        if (level.at(p) == Cell::Hole) continue;
        for (Direction d : kAllDirections) {
            const Position t = moved(p, d);
            if (!level.inside(t) || level.at(t) == Cell::Wall) continue;
            const std::size_t idx = level.index(t);
            if (!seen[idx]) {
                seen[idx] = 1;
                out.push_back(idx);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ComponentReport components(const Level& level) {
    ComponentReport rep;
    std::vector<int> owner(level.cell_count(), -1);
    for (std::size_t w = 0; w < level.workers().size(); ++w) {
        rep.regions.push_back(region_of(level, level.workers()[w]));
        for (std::size_t idx : rep.regions.back()) {
            if (owner[idx] >= 0) rep.disjoint = false;
            owner[idx] = static_cast<int>(w);
        }
    }
    return rep;
}

struct Stacked {
    Level level;
    // Half-open row range [first, second) of each member in the stacked grid.
    std::vector<std::pair<int, int>> rows;
};

// Places the members top to bottom. Every member keeps its own wall border,
// so consecutive members are separated by wall rows; the grid is two columns
// wider than the widest member.
inline Stacked stack_with_layout(const std::vector<Level>& parts) {
    if (parts.empty()) throw std::invalid_argument("stack needs at least one level");
    int width = 0;
    int height = 0;
    for (const Level& l : parts) {
        width = std::max(width, l.width());
        height += l.height();
    }
    width += 2;
    std::vector<Cell> cells(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                            Cell::Wall);
    std::vector<Position> workers;
    Stacked out;
    int top = 0;
    for (const Level& l : parts) {
        for (int r = 0; r < l.height(); ++r)
            std::copy_n(l.cells().begin() + static_cast<std::ptrdiff_t>(l.index({0, r})),
                        l.width(),
                        cells.begin() + static_cast<std::ptrdiff_t>(top + r) * width);
        for (Position w : l.workers()) workers.push_back({w.col, w.row + top});
        out.rows.emplace_back(top, top + l.height());
        top += l.height();
    }
    out.level = Level(width, height, std::move(cells), std::move(workers));
    return out;
}

inline Level stack(const std::vector<Level>& parts) { return stack_with_layout(parts).level; }

// ---- text formats ----------------------------------------------------------

inline Level parse_level(std::string_view text) {
    std::vector<std::string> rows;
    std::vector<int> line_of;
    int line_no = 0;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find('\n', i);
        if (j == std::string_view::npos) j = text.size();
        std::string line(text.substr(i, j - i));
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] != ';') {
            rows.push_back(line);
            line_of.push_back(line_no);
        } else if (line.empty() && !rows.empty() && j < text.size()) {
            // A blank line inside the grid is a ragged row.
            throw ParseError("empty row inside grid", line_no, 1);
        }
        if (j == text.size()) break;
        i = j + 1;
    }
    if (rows.empty()) throw ParseError("no grid rows");
    const int height = static_cast<int>(rows.size());
    const int width = static_cast<int>(rows[0].size());
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    std::vector<Position> workers;
    for (int r = 0; r < height; ++r) {
        if (static_cast<int>(rows[r].size()) != width)
            throw ParseError("row has length " + std::to_string(rows[r].size()) + ", expected " +
                                 std::to_string(width),
                             line_of[r], 1);
        for (int c = 0; c < width; ++c) {
            const char ch = rows[r][c];
            Cell cell;
            switch (ch) {
            case '#': cell = Cell::Wall; break;
            case '.': cell = Cell::Empty; break;
            case 'A': cell = Cell::Accept; break;
            case 'o': cell = Cell::Hole; break;
            case '@': cell = Cell::Empty; workers.push_back({c, r}); break;
            case 'W': cell = Cell::Accept; workers.push_back({c, r}); break;
            default: throw ParseError(std::string("unknown cell character '") + ch + "'", line_of[r], c + 1);
            }
            const bool border = r == 0 || c == 0 || r == height - 1 || c == width - 1;
            if (border && cell != Cell::Wall) {
                if (ch == '@' || ch == 'W') throw ParseError("worker on the border", line_of[r], c + 1);
                throw ParseError("border cell must be '#'", line_of[r], c + 1);
            }
            cells.push_back(cell);
        }
    }
    return Level(width, height, std::move(cells), std::move(workers));
}

// Legend: '#' wall, '.' empty, 'A' accepting, 'o' hole, '@' worker, 'W' worker
// on an accepting cell, 'X' stuck worker.
inline std::string render_level(const Level& level, const Configuration* cfg = nullptr) {
    std::unordered_map<std::size_t, bool> occupant;  // index -> stuck
    if (cfg) {
        for (const WorkerState& w : *cfg) occupant[level.index(w.pos)] = w.stuck;
    } else {
        for (Position p : level.workers()) occupant[level.index(p)] = false;
    }
    std::string out;
    out.reserve(level.cell_count() + static_cast<std::size_t>(level.height()));
    for (int r = 0; r < level.height(); ++r) {
        for (int c = 0; c < level.width(); ++c) {
            const std::size_t idx = level.index({c, r});
            const Cell cell = level.cells()[idx];
            auto it = occupant.find(idx);
            if (it != occupant.end()) {
                if (it->second) out += 'X';
                else out += cell == Cell::Accept ? 'W' : '@';
                continue;
            }
            switch (cell) {
            case Cell::Wall: out += '#'; break;
            case Cell::Empty: out += '.'; break;
            case Cell::Accept: out += 'A'; break;
            case Cell::Hole: out += 'o'; break;
            }
        }
        out += '\n';
    }
    return out;
}

inline std::string format_configuration(const Configuration& cfg) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        os << i << ": " << (cfg[i].stuck ? "STUCK " : "") << '(' << cfg[i].pos.col << ','
           << cfg[i].pos.row << ")\n";
    }
    return os.str();
}

inline Configuration parse_configuration(std::string_view text) {
    Configuration cfg;
    std::istringstream is{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == ';') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'i: (c,r)'", line_no, 1);
        const std::size_t idx = std::stoul(line.substr(0, colon));
        if (idx != cfg.size()) throw ParseError("worker indices must be consecutive", line_no, 1);
        std::string rest = line.substr(colon + 1);
        WorkerState w;
        const auto stuck_at = rest.find("STUCK");
        if (stuck_at != std::string::npos) {
            w.stuck = true;
            rest = rest.substr(stuck_at + 5);
        }
        if (std::sscanf(rest.c_str(), " (%d,%d)", &w.pos.col, &w.pos.row) != 2)
            throw ParseError("expected '(c,r)'", line_no, static_cast<int>(colon) + 2);
        cfg.push_back(w);
    }
    return cfg;
}

// Fixed 10-unit cells; walls dark grey, empty white, accepting green, holes
// black, workers blue circles (red when stuck).
inline std::string render_svg(const Level& level, const Configuration* cfg = nullptr) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << level.width() * 10
       << "\" height=\"" << level.height() * 10 << "\">\n";
    for (int r = 0; r < level.height(); ++r)
        for (int c = 0; c < level.width(); ++c) {
            const char* fill = "#444444";
            switch (level.at({c, r})) {
            case Cell::Wall: fill = "#444444"; break;
            case Cell::Empty: fill = "#ffffff"; break;
            case Cell::Accept: fill = "#7fd17f"; break;
            case Cell::Hole: fill = "#000000"; break;
            }
            os << "<rect x=\"" << c * 10 << "\" y=\"" << r * 10
               << "\" width=\"10\" height=\"10\" fill=\"" << fill << "\"/>\n";
        }
    const Configuration start = initial_configuration(level);
    for (const WorkerState& w : cfg ? *cfg : start)
        os << "<circle cx=\"" << w.pos.col * 10 + 5 << "\" cy=\"" << w.pos.row * 10 + 5
           << "\" r=\"4\" fill=\"" << (w.stuck ? "#d03030" : "#3050d0") << "\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace sevenbh
