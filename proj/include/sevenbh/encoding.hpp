#pragma once

// Numeric encoding of automaton states, input symbols and the separator '#'
// as clockwise blocks R^x1 D^x2 L^x3 U^x4, and of record strings built from
// them. A record string lists, for each input position j, the symbol read and
// the current state of each of the k automata:
//
//   R_j = sigma_j q(1,j) ... q(k,j)       and the whole string is R_1 # ... R_r #
//
// A symbol gamma is encoded by any block with x1 = x2 = num(gamma); '#' has
// the single block (w#, x#, y#, z#).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sevenbh/automata.hpp"
#include "sevenbh/grid.hpp"

namespace sevenbh {

struct EncodingParams {
    int k = 0, n = 0, m = 0;
    long w_sharp = 0, x_sharp = 0, y_sharp = 0, z_sharp = 0;

    // States are 0..n-1 and symbols 0..m-1; symbol i prints as sigma<i+1>.
    long num_state(int q) const { return 9L * (k + 2) * (q + 1); }
    long num_symbol(int s) const { return 9L * (k + 2) * (n + 2) * (s + 1); }
};

inline EncodingParams derive_params(int k, int n, int m) {
    if (k < 1 || n < 1 || m < 1) throw std::invalid_argument("k, n and m must be positive");
    EncodingParams p{k, n, m, 0, 0, 0, 0};
    p.w_sharp = 9L * (k + 2) * (n + 2) * (m + 2);
    p.x_sharp = 2 * p.w_sharp;
    p.y_sharp = p.w_sharp + 4L * k + 3;
    p.z_sharp = p.x_sharp + 3L * k + 3;
    return p;
}

inline EncodingParams derive_params(const IntersectionInstance& inst) {
    return derive_params(inst.k(), inst.n(), inst.m());
}

// An element of Q ∪ Σ ∪ {#}.
struct Symbol {
    enum class Kind { State, Letter, Sharp } kind = Kind::Sharp;
    int index = 0;

    static Symbol state(int q) { return {Kind::State, q}; }
    static Symbol letter(int s) { return {Kind::Letter, s}; }
    static Symbol sharp() { return {Kind::Sharp, 0}; }
    friend bool operator==(const Symbol&, const Symbol&) = default;
};

inline std::string to_string(const Symbol& s) {
    switch (s.kind) {
    case Symbol::Kind::State: return "q" + std::to_string(s.index);
    case Symbol::Kind::Letter: return "sigma" + std::to_string(s.index + 1);
    case Symbol::Kind::Sharp: return "#";
    }
    return "?";
}

struct CwBlock {
    long x1 = 6, x2 = 6, x3 = 6, x4 = 6;

    bool valid() const { return x1 >= 6 && x2 >= 6 && x3 >= 6 && x4 >= 6; }
    friend bool operator==(const CwBlock&, const CwBlock&) = default;

    void append_to(Program& p) const {
        p.insert(p.end(), static_cast<std::size_t>(x1), Direction::Right);
        p.insert(p.end(), static_cast<std::size_t>(x2), Direction::Down);
        p.insert(p.end(), static_cast<std::size_t>(x3), Direction::Left);
        p.insert(p.end(), static_cast<std::size_t>(x4), Direction::Up);
    }
    Program program() const {
        Program p;
        append_to(p);
        return p;
    }
};

inline std::string format_block(const CwBlock& b) {
    return "R" + std::to_string(b.x1) + " D" + std::to_string(b.x2) + " L" + std::to_string(b.x3) + " U" +
           std::to_string(b.x4);
}

inline long num(const Symbol& s, const EncodingParams& p) {
    switch (s.kind) {
    case Symbol::Kind::State: return p.num_state(s.index);
    case Symbol::Kind::Letter: return p.num_symbol(s.index);
    case Symbol::Kind::Sharp: return p.w_sharp;
    }
    return 0;
}

inline CwBlock encode_symbol(const Symbol& s, const EncodingParams& p) {
    if (s.kind == Symbol::Kind::Sharp) throw std::invalid_argument("'#' has its own block");
    if (s.kind == Symbol::Kind::State && (s.index < 0 || s.index >= p.n))
        throw std::invalid_argument("state out of range");
    if (s.kind == Symbol::Kind::Letter && (s.index < 0 || s.index >= p.m))
        throw std::invalid_argument("symbol out of range");
    const long v = num(s, p);
    return {v, v, 6, 6};
}

inline CwBlock encode_sharp(const EncodingParams& p) { return {p.w_sharp, p.x_sharp, p.y_sharp, p.z_sharp}; }

// The symbol a block encodes, or nullopt for blocks outside every encoding set.
inline std::optional<Symbol> decode_block(const CwBlock& b, const EncodingParams& p) {
    if (!b.valid()) return std::nullopt;
    if (b == encode_sharp(p)) return Symbol::sharp();
    if (b.x1 != b.x2) return std::nullopt;
    const long unit = 9L * (p.k + 2);
    if (b.x1 % unit != 0) return std::nullopt;
    const long t = b.x1 / unit;
    if (t >= 1 && t <= p.n) return Symbol::state(static_cast<int>(t - 1));
    if (t % (p.n + 2) == 0) {
        const long s = t / (p.n + 2);
        if (s >= 1 && s <= p.m) return Symbol::letter(static_cast<int>(s - 1));
    }
    return std::nullopt;
}

// Factorization of an axis program into clockwise blocks. On failure
// `error_block` is the 1-based index of the block that could not be formed.
struct BlockSplit {
    std::vector<CwBlock> blocks;
    bool ok = true;
    std::size_t error_block = 0;
    std::string error;
};

inline BlockSplit split_blocks(const Program& p) {
    BlockSplit out;
    std::size_t i = 0;
    const Direction order[4] = {Direction::Right, Direction::Down, Direction::Left, Direction::Up};
    while (i < p.size()) {
        long run[4];
        for (int phase = 0; phase < 4; ++phase) {
            std::size_t j = i;
            while (j < p.size() && p[j] == order[phase]) ++j;
            run[phase] = static_cast<long>(j - i);
            if (run[phase] < 6) {
                out.ok = false;
                out.error_block = out.blocks.size() + 1;
                out.error = j == p.size() && run[phase] == 0 ? "incomplete clockwise block"
                                                              : std::string("run of ") + std::string(name(order[phase])) +
                                                                    " shorter than 6 or out of order";
                return out;
            }
            i = j;
        }
        out.blocks.push_back({run[0], run[1], run[2], run[3]});
    }
    return out;
}

// ---- record strings -------------------------------------------------------------

struct Record {
    int symbol = 0;
    std::vector<int> states;  // one per automaton
    friend bool operator==(const Record&, const Record&) = default;
};

using RString = std::vector<Record>;

// Records for `word` followed by one closing record whose symbol is the
// first alphabet symbol; states follow each automaton from its start.
inline RString rstring_from_word(const std::vector<int>& word, const IntersectionInstance& inst) {
    RString rs;
    std::vector<int> cur(static_cast<std::size_t>(inst.k()));
    for (int i = 0; i < inst.k(); ++i) cur[static_cast<std::size_t>(i)] = inst.dfas[static_cast<std::size_t>(i)].start;
    for (std::size_t j = 0; j <= word.size(); ++j) {
        const int s = j < word.size() ? word[j] : 0;
        if (s < 0 || s >= inst.m()) throw std::invalid_argument("symbol not in alphabet");
        rs.push_back({s, cur});
        for (int i = 0; i < inst.k(); ++i)
            cur[static_cast<std::size_t>(i)] = inst.dfas[static_cast<std::size_t>(i)].next(cur[static_cast<std::size_t>(i)], s);
    }
    return rs;
}

inline std::vector<int> word_from_rstring(const RString& rs) {
    std::vector<int> w;
    for (std::size_t j = 0; j + 1 < rs.size(); ++j) w.push_back(rs[j].symbol);
    return w;
}

inline bool is_accepting_rstring(const RString& rs, const IntersectionInstance& inst) {
    if (rs.empty()) return false;
    const auto k = static_cast<std::size_t>(inst.k());
    for (const Record& r : rs)
        if (r.states.size() != k || r.symbol < 0 || r.symbol >= inst.m()) return false;
    for (std::size_t i = 0; i < k; ++i) {
        const Dfa& d = inst.dfas[i];
        if (rs.front().states[i] != d.start) return false;
        for (std::size_t j = 0; j + 1 < rs.size(); ++j)
            if (rs[j + 1].states[i] != d.next(rs[j].states[i], rs[j].symbol)) return false;
        if (!d.accepting[static_cast<std::size_t>(rs.back().states[i])]) return false;
    }
    return true;
}

inline std::string format_rstring(const RString& rs) {
    std::string out;
    for (const Record& r : rs) {
        out += to_string(Symbol::letter(r.symbol));
        for (int q : r.states) out += " " + to_string(Symbol::state(q));
        out += " # ";
    }
    if (!out.empty()) out.pop_back();
    return out;
}

inline Program encode_rstring(const RString& rs, const EncodingParams& p) {
    Program out;
    for (const Record& r : rs) {
        if (static_cast<int>(r.states.size()) != p.k) throw std::invalid_argument("record has the wrong number of states");
        encode_symbol(Symbol::letter(r.symbol), p).append_to(out);
        for (int q : r.states) encode_symbol(Symbol::state(q), p).append_to(out);
        encode_sharp(p).append_to(out);
    }
    return out;
}

class BlockDecodeError : public std::runtime_error {
public:
    BlockDecodeError(const std::string& what, std::size_t block)
        : std::runtime_error("block " + std::to_string(block) + ": " + what), block_(block) {}
    // 1-based index of the offending block.
    std::size_t block() const { return block_; }

private:
    std::size_t block_;
};

inline RString decode_program(const Program& prog, const EncodingParams& p) {
    const BlockSplit split = split_blocks(prog);
    if (!split.ok) throw BlockDecodeError("not clockwise: " + split.error, split.error_block);
    const std::size_t group = static_cast<std::size_t>(p.k) + 2;
    RString rs;
    for (std::size_t b = 0; b < split.blocks.size(); ++b) {
        const auto sym = decode_block(split.blocks[b], p);
        if (!sym) throw BlockDecodeError("not an encoding: " + format_block(split.blocks[b]), b + 1);
        const std::size_t pos = b % group;
        const Symbol::Kind want = pos == 0           ? Symbol::Kind::Letter
                                  : pos + 1 == group ? Symbol::Kind::Sharp
                                                     : Symbol::Kind::State;
        if (sym->kind != want) throw BlockDecodeError("expected " + std::string(want == Symbol::Kind::Letter ? "a symbol" : want == Symbol::Kind::Sharp ? "#" : "a state") + ", found " + to_string(*sym), b + 1);
        if (pos == 0) rs.push_back({sym->index, {}});
        else if (want == Symbol::Kind::State) rs.back().states.push_back(sym->index);
    }
    if (split.blocks.empty()) throw BlockDecodeError("empty program", 1);
    if (split.blocks.size() % group != 0)
        throw BlockDecodeError("last record is incomplete", split.blocks.size() + 1);
    return rs;
}

}  // namespace sevenbh
