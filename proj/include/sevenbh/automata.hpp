#pragma once

// Deterministic finite automata: text format, normalization of intersection
// instances, product search, extraction from levels and language equivalence.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <tuple>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sevenbh/grid.hpp"
#include "sevenbh/tuple_set.hpp"

namespace sevenbh {

struct Dfa {
    int state_count = 1;
    std::vector<std::string> alphabet;
    int start = 0;
    std::vector<bool> accepting;  // size state_count
    std::vector<int> delta;       // state * |alphabet| + symbol

    int symbols() const { return static_cast<int>(alphabet.size()); }
    int next(int state, int symbol) const {
        return delta[static_cast<std::size_t>(state) * alphabet.size() +
                     static_cast<std::size_t>(symbol)];
    }
    int symbol_index(const std::string& s) const {
        auto it = std::find(alphabet.begin(), alphabet.end(), s);
        if (it == alphabet.end()) throw std::invalid_argument("symbol '" + s + "' not in alphabet");
        return static_cast<int>(it - alphabet.begin());
    }
    bool accepts(const std::vector<int>& word) const {
        int q = start;
        for (int s : word) q = next(q, s);
        return accepting[static_cast<std::size_t>(q)];
    }
    void validate() const {
        if (state_count <= 0) throw std::invalid_argument("DFA needs at least one state");
        if (alphabet.empty()) throw std::invalid_argument("DFA alphabet is empty");
        if (start < 0 || start >= state_count) throw std::invalid_argument("start state out of range");
        if (accepting.size() != static_cast<std::size_t>(state_count))
            throw std::invalid_argument("accepting set has wrong size");
        if (delta.size() != static_cast<std::size_t>(state_count) * alphabet.size())
            throw std::invalid_argument("transition table is not total");
        for (int t : delta)
            if (t < 0 || t >= state_count) throw std::invalid_argument("transition target out of range");
    }
};

inline Dfa parse_dfa(std::string_view text) {
    Dfa d;
    d.state_count = -1;
    std::vector<int> accept_list;
    std::vector<std::tuple<int, std::string, int, int>> trans;
    bool have_start = false;
    std::istringstream is{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (auto c = line.find(';'); c != std::string::npos) line.resize(c);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "states") {
            if (!(ls >> d.state_count) || d.state_count <= 0)
                throw ParseError("bad state count", line_no, 1);
        } else if (key == "alphabet") {
            std::string s;
            while (ls >> s) {
                if (std::find(d.alphabet.begin(), d.alphabet.end(), s) != d.alphabet.end())
                    throw ParseError("duplicate symbol '" + s + "'", line_no, 1);
                d.alphabet.push_back(s);
            }
        } else if (key == "start") {
            if (!(ls >> d.start)) throw ParseError("bad start state", line_no, 1);
            have_start = true;
        } else if (key == "accept") {
            int q;
            while (ls >> q) accept_list.push_back(q);
        } else if (key == "trans") {
            int q, t;
            std::string s;
            if (!(ls >> q >> s >> t)) throw ParseError("expected 'trans q sym q''", line_no, 1);
            trans.emplace_back(q, s, t, line_no);
        } else {
            throw ParseError("unknown directive '" + key + "'", line_no, 1);
        }
    }
    if (d.state_count <= 0) throw ParseError("missing 'states' line");
    if (d.alphabet.empty()) throw ParseError("missing 'alphabet' line");
    if (!have_start || d.start < 0 || d.start >= d.state_count) throw ParseError("missing or bad 'start'");
    d.accepting.assign(static_cast<std::size_t>(d.state_count), false);
    for (int q : accept_list) {
        if (q < 0 || q >= d.state_count) throw ParseError("accepting state out of range");
        d.accepting[static_cast<std::size_t>(q)] = true;
    }
    d.delta.assign(static_cast<std::size_t>(d.state_count) * d.alphabet.size(), -1);
    for (const auto& [q, s, t, ln] : trans) {
        auto it = std::find(d.alphabet.begin(), d.alphabet.end(), s);
        if (it == d.alphabet.end()) throw ParseError("unknown symbol '" + s + "'", ln, 1);
        if (q < 0 || q >= d.state_count || t < 0 || t >= d.state_count)
            throw ParseError("state out of range", ln, 1);
        int& slot = d.delta[static_cast<std::size_t>(q) * d.alphabet.size() +
                            static_cast<std::size_t>(it - d.alphabet.begin())];
        if (slot >= 0 && slot != t) throw ParseError("conflicting transition", ln, 1);
        slot = t;
    }
    for (std::size_t i = 0; i < d.delta.size(); ++i)
        if (d.delta[i] < 0)
            throw ParseError("missing transition for state " +
                             std::to_string(i / d.alphabet.size()) + " on '" +
                             d.alphabet[i % d.alphabet.size()] + "'");
    return d;
}

inline std::string format_dfa(const Dfa& d) {
    std::ostringstream os;
    os << "states " << d.state_count << "\nalphabet";
    for (const auto& s : d.alphabet) os << ' ' << s;
    os << "\nstart " << d.start << "\naccept";
    for (int q = 0; q < d.state_count; ++q)
        if (d.accepting[static_cast<std::size_t>(q)]) os << ' ' << q;
    os << '\n';
    for (int q = 0; q < d.state_count; ++q)
        for (int s = 0; s < d.symbols(); ++s)
            os << "trans " << q << ' ' << d.alphabet[static_cast<std::size_t>(s)] << ' ' << d.next(q, s) << '\n';
    return os.str();
}

// Several automata in one file, separated by lines starting with "---".
inline std::vector<Dfa> parse_dfas(std::string_view text) {
    std::vector<Dfa> out;
    std::string chunk;
    std::istringstream is{std::string(text)};
    std::string line;
    auto flush = [&] {
        if (chunk.find_first_not_of(" \t\r\n") != std::string::npos) out.push_back(parse_dfa(chunk));
        chunk.clear();
    };
    while (std::getline(is, line)) {
        if (line.rfind("---", 0) == 0) flush();
        else chunk += line + '\n';
    }
    flush();
    return out;
}

struct IntersectionInstance {
    std::vector<Dfa> dfas;  // same alphabet, same state count, start 0
    int k() const { return static_cast<int>(dfas.size()); }
    int n() const { return dfas.empty() ? 0 : dfas[0].state_count; }
    int m() const { return dfas.empty() ? 0 : dfas[0].symbols(); }
    const std::vector<std::string>& alphabet() const { return dfas.at(0).alphabet; }
};

// Pads every automaton with sink states up to the largest state count and
// renames states so that the start state is 0.
inline IntersectionInstance normalize(const std::vector<Dfa>& dfas) {
    if (dfas.empty()) throw std::invalid_argument("normalize needs at least one DFA");
    int n = 0;
    for (const Dfa& d : dfas) {
        d.validate();
        if (d.alphabet != dfas[0].alphabet) throw std::invalid_argument("alphabet mismatch");
        n = std::max(n, d.state_count);
    }
    IntersectionInstance inst;
    for (const Dfa& d : dfas) {
        // Swap the start state with state 0.
        std::vector<int> ren(static_cast<std::size_t>(n));
        std::iota(ren.begin(), ren.end(), 0);
        std::swap(ren[0], ren[static_cast<std::size_t>(d.start)]);
        Dfa e;
        e.state_count = n;
        e.alphabet = d.alphabet;
        e.start = 0;
        e.accepting.assign(static_cast<std::size_t>(n), false);
        e.delta.assign(static_cast<std::size_t>(n) * d.alphabet.size(), 0);
        for (int q = 0; q < n; ++q) {
            const int nq = ren[static_cast<std::size_t>(q)];
            for (int s = 0; s < d.symbols(); ++s) {
                // Padding states loop on themselves.
                const int t = q < d.state_count ? d.next(q, s) : q;
                e.delta[static_cast<std::size_t>(nq) * d.alphabet.size() + static_cast<std::size_t>(s)] =
                    ren[static_cast<std::size_t>(t)];
            }
            if (q < d.state_count) e.accepting[static_cast<std::size_t>(nq)] = d.accepting[static_cast<std::size_t>(q)];
        }
        inst.dfas.push_back(std::move(e));
    }
    return inst;
}

struct ProductResult {
    enum class Status { Accepted, Empty, Unknown } status = Status::Unknown;
    std::vector<int> word;  // valid when Accepted
    std::size_t explored = 0;
};

// Breadth-first search of the reachable product; the first accepting tuple
// found gives a shortest word, ties broken by alphabet order.
inline ProductResult product_shortest_word(const std::vector<Dfa>& dfas, std::size_t cap) {
    if (dfas.empty()) throw std::invalid_argument("product needs at least one DFA");
    const std::size_t k = dfas.size();
    const int m = dfas[0].symbols();
    for (const Dfa& d : dfas)
        if (d.alphabet != dfas[0].alphabet) throw std::invalid_argument("alphabet mismatch");
    TupleSet seen(k);
    std::vector<std::uint32_t> parent;
    std::vector<int> via;
    std::vector<std::int32_t> cur(k), nxt(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = dfas[i].start;
    auto accepting = [&](const std::int32_t* t) {
        for (std::size_t i = 0; i < k; ++i)
            if (!dfas[i].accepting[static_cast<std::size_t>(t[i])]) return false;
        return true;
    };
    ProductResult res;
    auto build_word = [&](std::uint32_t id) {
        std::vector<int> w;
        while (id != 0) {
            w.push_back(via[id]);
            id = parent[id];
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    seen.insert(cur.data());
    parent.push_back(0);
    via.push_back(-1);
    if (accepting(cur.data())) {
        res.status = ProductResult::Status::Accepted;
        res.explored = 1;
        return res;
    }
    for (std::uint32_t head = 0; head < seen.size(); ++head) {
        for (int s = 0; s < m; ++s) {
            const std::int32_t* t = seen.at(head);
            for (std::size_t i = 0; i < k; ++i) nxt[i] = dfas[i].next(t[i], s);
            auto [id, fresh] = seen.insert(nxt.data());
            if (!fresh) continue;
            parent.push_back(head);
            via.push_back(s);
            if (accepting(nxt.data())) {
                res.status = ProductResult::Status::Accepted;
                res.word = build_word(id);
                res.explored = seen.size();
                return res;
            }
            if (seen.size() >= cap) {
                res.status = ProductResult::Status::Unknown;
                res.explored = seen.size();
                return res;
            }
        }
    }
    res.status = ProductResult::Status::Empty;
    res.explored = seen.size();
    return res;
}

inline ProductResult product_shortest_word(const IntersectionInstance& inst, std::size_t cap) {
    return product_shortest_word(inst.dfas, cap);
}

inline std::vector<std::string> direction_names(const std::vector<Direction>& dirs) {
    std::vector<std::string> out;
    for (Direction d : dirs) out.emplace_back(name(d));
    return out;
}

// One state per cell of the worker's region (all holes merged into a single
// absorbing sink); wall-blocked moves are self-loops. Requires the worker's
// region to be disjoint from every other worker's.
inline Dfa level_to_dfa(const Level& level, std::size_t worker, const std::vector<Direction>& alphabet) {
    const ComponentReport rep = components(level);
    const auto& mine = rep.regions.at(worker);
    for (std::size_t w = 0; w < rep.regions.size(); ++w) {
        if (w == worker) continue;
        const auto& other = rep.regions[w];
        std::vector<std::size_t> common;
        std::set_intersection(mine.begin(), mine.end(), other.begin(), other.end(),
                              std::back_inserter(common));
        if (!common.empty()) throw std::invalid_argument("worker region overlaps another worker's region");
    }
    std::unordered_map<std::size_t, int> state_of;
    int next_state = 0;
    int sink = -1;
    // Start cell first so that it becomes state 0.
    const std::size_t start_idx = level.index(level.workers().at(worker));
    state_of[start_idx] = next_state++;
    for (std::size_t idx : mine) {
        if (idx == start_idx) continue;
        if (level.cells()[idx] == Cell::Hole) {
            if (sink < 0) sink = next_state++;
            state_of[idx] = sink;
        } else {
            state_of[idx] = next_state++;
        }
    }
    Dfa d;
    d.state_count = next_state;
    d.alphabet = direction_names(alphabet);
    d.start = 0;
    d.accepting.assign(static_cast<std::size_t>(next_state), false);
    d.delta.assign(static_cast<std::size_t>(next_state) * alphabet.size(), 0);
    for (std::size_t idx : mine) {
        const int q = state_of[idx];
        const Cell c = level.cells()[idx];
        if (c == Cell::Accept) d.accepting[static_cast<std::size_t>(q)] = true;
        for (std::size_t s = 0; s < alphabet.size(); ++s) {
            int t = q;
            if (c != Cell::Hole) {
                const Position to = moved(level.position(idx), alphabet[s]);
                if (level.at(to) != Cell::Wall) t = state_of.at(level.index(to));
            }
            d.delta[static_cast<std::size_t>(q) * alphabet.size() + s] = t;
        }
    }
    return d;
}

struct Equivalence {
    bool equal = true;
    std::vector<int> counterexample;  // shortest distinguishing word when !equal
};

// Union-find over the disjoint union of both state sets decides equality;
// when the languages differ a breadth-first search over state pairs yields a
// shortest distinguishing word.
inline Equivalence equivalent(const Dfa& a, const Dfa& b) {
    if (a.alphabet != b.alphabet) throw std::invalid_argument("alphabet mismatch");
    const int m = a.symbols();
    const int na = a.state_count;
    std::vector<int> parent(static_cast<std::size_t>(na + b.state_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto acc = [&](int x) {
        return x < na ? a.accepting[static_cast<std::size_t>(x)]
                      : b.accepting[static_cast<std::size_t>(x - na)];
    };
    bool equal = true;
    std::vector<std::pair<int, int>> work{{a.start, na + b.start}};
    parent[static_cast<std::size_t>(find(na + b.start))] = find(a.start);
    while (!work.empty() && equal) {
        auto [p, q] = work.back();
        work.pop_back();
        if (acc(p) != acc(q)) {
            equal = false;
            break;
        }
        for (int s = 0; s < m; ++s) {
            const int p2 = a.next(p, s);
            const int q2 = na + b.next(q - na, s);
            const int rp = find(p2), rq = find(q2);
            if (rp != rq) {
                parent[static_cast<std::size_t>(rq)] = rp;
                work.emplace_back(p2, q2);
            }
        }
    }
    Equivalence res;
    res.equal = equal;
    if (equal) return res;
    // Shortest counterexample by BFS over the reachable pair space.
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, int>> prev;
    auto key = [&](int p, int q) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p)) << 32) | static_cast<std::uint32_t>(q);
    };
    std::vector<std::pair<int, int>> queue{{a.start, b.start}};
    prev[key(a.start, b.start)] = {key(a.start, b.start), -1};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [p, q] = queue[head];
        if (a.accepting[static_cast<std::size_t>(p)] != b.accepting[static_cast<std::size_t>(q)]) {
            std::uint64_t cur = key(p, q);
            while (prev[cur].second >= 0) {
                res.counterexample.push_back(prev[cur].second);
                cur = prev[cur].first;
            }
            std::reverse(res.counterexample.begin(), res.counterexample.end());
            return res;
        }
        for (int s = 0; s < m; ++s) {
            const std::uint64_t k2 = key(a.next(p, s), b.next(q, s));
            if (prev.emplace(k2, std::make_pair(key(p, q), s)).second)
                queue.emplace_back(a.next(p, s), b.next(q, s));
        }
    }
    return res;  // unreachable: union-find reported a difference
}

// Product automaton of several DFAs over a shared alphabet (reachable part).
inline Dfa product_dfa(const std::vector<Dfa>& dfas) {
    if (dfas.empty()) throw std::invalid_argument("product needs at least one DFA");
    const std::size_t k = dfas.size();
    const int m = dfas[0].symbols();
    TupleSet seen(k);
    std::vector<std::int32_t> t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = dfas[i].start;
    seen.insert(t.data());
    Dfa out;
    out.alphabet = dfas[0].alphabet;
    for (std::uint32_t head = 0; head < seen.size(); ++head) {
        bool acc = true;
        for (std::size_t i = 0; i < k; ++i) acc = acc && dfas[i].accepting[static_cast<std::size_t>(seen.at(head)[i])];
        out.accepting.push_back(acc);
        for (int s = 0; s < m; ++s) {
            for (std::size_t i = 0; i < k; ++i) t[i] = dfas[i].next(seen.at(head)[i], s);
            out.delta.push_back(static_cast<int>(seen.insert(t.data()).first));
        }
    }
    out.state_count = static_cast<int>(seen.size());
    out.start = 0;
    return out;
}

// DFA for (r r^5 r* d d^5 d* l l^5 l* u u^5 u*)* over U, D, L, R (optionally
// followed by the four diagonal symbols, which always reject).
inline Dfa reference_clockwise_dfa(bool with_diagonals = false) {
    // State 0: between blocks. Phase p in {R=0,D=1,L=2,U=3}, run length c in
    // 1..6 (6 meaning "at least 6") -> state 1 + 6p + (c-1). State 25: dead.
    const std::vector<Direction> sigma = with_diagonals
                                             ? std::vector<Direction>(kAllDirections.begin(), kAllDirections.end())
                                             : std::vector<Direction>(kAxisDirections.begin(), kAxisDirections.end());
    const Direction phase_dir[4] = {Direction::Right, Direction::Down, Direction::Left, Direction::Up};
    const int dead = 25;
    auto st = [](int p, int c) { return 1 + 6 * p + (c - 1); };
    Dfa d;
    d.state_count = 26;
    d.alphabet = direction_names(sigma);
    d.start = 0;
    d.accepting.assign(26, false);
    d.accepting[0] = true;
    d.accepting[static_cast<std::size_t>(st(3, 6))] = true;
    d.delta.assign(26 * sigma.size(), dead);
    auto set = [&](int q, Direction dir, int t) {
        const auto s = static_cast<std::size_t>(std::find(sigma.begin(), sigma.end(), dir) - sigma.begin());
        d.delta[static_cast<std::size_t>(q) * sigma.size() + s] = t;
    };
    set(0, Direction::Right, st(0, 1));
    for (int p = 0; p < 4; ++p)
        for (int c = 1; c <= 6; ++c) {
            set(st(p, c), phase_dir[p], st(p, std::min(c + 1, 6)));
            if (c == 6) set(st(p, c), phase_dir[(p + 1) % 4], st((p + 1) % 4, 1));
        }
    return d;
}

inline std::vector<int> word_from_program(const Program& p, const std::vector<Direction>& alphabet) {
    std::vector<int> w;
    for (Direction d : p) {
        auto it = std::find(alphabet.begin(), alphabet.end(), d);
        if (it == alphabet.end()) throw std::invalid_argument("direction not in alphabet");
        w.push_back(static_cast<int>(it - alphabet.begin()));
    }
    return w;
}

inline std::string format_word(const std::vector<int>& w, const std::vector<std::string>& alphabet) {
    std::string out;
    for (int s : w) {
        if (!out.empty()) out += ' ';
        out += alphabet[static_cast<std::size_t>(s)];
    }
    return out;
}

}  // namespace sevenbh
