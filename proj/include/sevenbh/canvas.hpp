#pragma once

// Sparse drawing surface for gadget construction. Unmarked cells are walls.
// Marks are checked for conflicts so that two gadget parts claiming the same
// cell for different purposes fail loudly instead of silently merging.

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sevenbh/grid.hpp"

namespace sevenbh {

class Canvas {
public:
    enum class Mark { Empty, Accept, Hole, Wall };

    // Claims a cell. Re-marking with the same mark is a no-op; an open cell
    // may be made accepting (in either order); every other change is a conflict.
    void put(Position p, Mark m) {
        auto [it, fresh] = marks_.emplace(p, m);
        if (fresh || it->second == m || (it->second == Mark::Accept && m == Mark::Empty)) return;
        if (it->second == Mark::Empty && m == Mark::Accept) {
            it->second = m;
            return;
        }
        throw std::logic_error("canvas conflict at (" + std::to_string(p.col) + "," +
                               std::to_string(p.row) + ")");
    }
    void open(Position p) { put(p, Mark::Empty); }
    void accept(Position p) { put(p, Mark::Accept); }
    void hole(Position p) { put(p, Mark::Hole); }
    void wall(Position p) { put(p, Mark::Wall); }

    // Inclusive straight runs of a mark.
    void hrun(int row, int c0, int c1, Mark m = Mark::Empty) {
        for (int c = std::min(c0, c1); c <= std::max(c0, c1); ++c) put({c, row}, m);
    }
    void vrun(int col, int r0, int r1, Mark m = Mark::Empty) {
        for (int r = std::min(r0, r1); r <= std::max(r0, r1); ++r) put({col, r}, m);
    }

    void worker(Position p) {
        const auto it = marks_.find(p);
        if (it == marks_.end() || (it->second != Mark::Empty && it->second != Mark::Accept))
            throw std::logic_error("worker placed on a cell that is not open");
        workers_.push_back(p);
    }

    bool marked(Position p) const { return marks_.count(p) != 0; }
    const std::vector<Position>& workers() const { return workers_; }

    struct Box {
        int min_col = INT_MAX, min_row = INT_MAX, max_col = INT_MIN, max_row = INT_MIN;
    };
    Box bounds() const {
        Box b;
        for (const auto& [p, m] : marks_) {
            b.min_col = std::min(b.min_col, p.col);
            b.min_row = std::min(b.min_row, p.row);
            b.max_col = std::max(b.max_col, p.col);
            b.max_row = std::max(b.max_row, p.row);
        }
        return b;
    }

    // Level in canvas coordinates; every mark must lie strictly inside the
    // width x height frame so that the border stays walled.
    Level to_level(int width, int height) const {
        std::vector<Cell> cells(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), Cell::Wall);
        for (const auto& [p, m] : marks_) {
            if (p.col < 1 || p.row < 1 || p.col > width - 2 || p.row > height - 2)
                throw std::logic_error("canvas mark outside the frame interior");
            cells[static_cast<std::size_t>(p.row) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(p.col)] = to_cell(m);
        }
        return Level(width, height, std::move(cells), workers_);
    }

    // Level spanning the bounding box plus a one-cell wall border; `shift`
    // receives the offset added to canvas coordinates.
    Level to_level(Position* shift = nullptr) const {
        if (marks_.empty()) throw std::logic_error("empty canvas");
        const Box b = bounds();
        const Position d{1 - b.min_col, 1 - b.min_row};
        Canvas moved;
        for (const auto& [p, m] : marks_) moved.marks_.emplace(Position{p.col + d.col, p.row + d.row}, m);
        for (Position w : workers_) moved.workers_.push_back({w.col + d.col, w.row + d.row});
        if (shift) *shift = d;
        return moved.to_level(b.max_col - b.min_col + 3, b.max_row - b.min_row + 3);
    }

private:
    static Cell to_cell(Mark m) {
        switch (m) {
        case Mark::Empty: return Cell::Empty;
        case Mark::Accept: return Cell::Accept;
        case Mark::Hole: return Cell::Hole;
        case Mark::Wall: return Cell::Wall;
        }
        return Cell::Wall;
    }

    std::map<Position, Mark> marks_;
    std::vector<Position> workers_;
};

}  // namespace sevenbh
