#pragma once

// Breadth-first solvability search over joint configurations, and the
// automata-based cross-check engine.

#include <cstdint>
#include <string>
#include <vector>

#include "sevenbh/automata.hpp"
#include "sevenbh/grid.hpp"
#include "sevenbh/tuple_set.hpp"

namespace sevenbh {

struct SolveBudget {
    std::size_t max_configs = 1'000'000;
    std::size_t max_length = 100'000;
};

struct SolveOptions {
    // Discard configurations in which some pair of workers (indices at most
    // `pair_window` apart) can no longer be jointly solved. The test is exact
    // for the pair, so verdicts and shortest witnesses are unaffected. Only
    // used when the worker regions are pairwise disjoint.
    bool prune_dead_pairs = true;
    std::size_t pair_window = 3;
};

struct SolveOutcome {
    enum class Status { Solvable, Unsolvable, Unknown } status = Status::Unknown;
    Program program;
    std::size_t explored = 0;
    std::string cap;  // which budget was hit, for Unknown
};

inline std::string to_string(SolveOutcome::Status s) {
    switch (s) {
    case SolveOutcome::Status::Solvable: return "SOLVABLE";
    case SolveOutcome::Status::Unsolvable: return "UNSOLVABLE";
    case SolveOutcome::Status::Unknown: return "UNKNOWN";
    }
    return "?";
}

namespace detail {

// Per-worker automaton restricted to its region, with local state numbers.
struct LocalMachine {
    Dfa dfa;
    std::vector<bool> alive;  // can still reach an accepting state alone
};

inline std::vector<bool> backward_alive(const Dfa& d) {
    const int m = d.symbols();
    std::vector<std::vector<int>> rev(static_cast<std::size_t>(d.state_count));
    for (int q = 0; q < d.state_count; ++q)
        for (int s = 0; s < m; ++s) rev[static_cast<std::size_t>(d.next(q, s))].push_back(q);
    std::vector<bool> alive(static_cast<std::size_t>(d.state_count), false);
    std::vector<int> queue;
    for (int q = 0; q < d.state_count; ++q)
        if (d.accepting[static_cast<std::size_t>(q)]) {
            alive[static_cast<std::size_t>(q)] = true;
            queue.push_back(q);
        }
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (int p : rev[static_cast<std::size_t>(queue[h])])
            if (!alive[static_cast<std::size_t>(p)]) {
                alive[static_cast<std::size_t>(p)] = true;
                queue.push_back(p);
            }
    return alive;
}

// Pairs of local states from which both workers can be solved together.
inline std::vector<bool> pair_alive(const Dfa& a, const Dfa& b) {
    const int m = a.symbols();
    const auto na = static_cast<std::size_t>(a.state_count);
    const auto nb = static_cast<std::size_t>(b.state_count);
    std::vector<std::vector<std::uint32_t>> rev(na * nb);
    for (std::size_t p = 0; p < na; ++p)
        for (std::size_t q = 0; q < nb; ++q)
            for (int s = 0; s < m; ++s) {
                const auto t = static_cast<std::size_t>(a.next(static_cast<int>(p), s)) * nb +
                               static_cast<std::size_t>(b.next(static_cast<int>(q), s));
                rev[t].push_back(static_cast<std::uint32_t>(p * nb + q));
            }
    std::vector<bool> alive(na * nb, false);
    std::vector<std::uint32_t> queue;
    for (std::size_t p = 0; p < na; ++p)
        for (std::size_t q = 0; q < nb; ++q)
            if (a.accepting[p] && b.accepting[q]) {
                alive[p * nb + q] = true;
                queue.push_back(static_cast<std::uint32_t>(p * nb + q));
            }
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (std::uint32_t x : rev[queue[h]])
            if (!alive[x]) {
                alive[x] = true;
                queue.push_back(x);
            }
    return alive;
}

}  // namespace detail

// Shortest solving program by breadth-first search over configurations,
// trying directions in the order of `alphabet` (default: all eight).
inline SolveOutcome solve(const Level& level, const SolveBudget& budget = {},
                          const std::vector<Direction>& alphabet =
                              std::vector<Direction>(kAllDirections.begin(), kAllDirections.end()),
                          const SolveOptions& options = {}) {
    const std::size_t w = level.workers().size();
    SolveOutcome out;
    const Configuration start = initial_configuration(level);
    if (is_solved(level, start)) {
        out.status = SolveOutcome::Status::Solvable;
        out.explored = 1;
        return out;
    }
    const ComponentReport rep = components(level);
    const int m = static_cast<int>(alphabet.size());

    TupleSet seen(w);
    std::vector<std::uint32_t> parent{0};
    std::vector<std::uint8_t> via{0};
    std::vector<std::uint32_t> depth{0};
    std::vector<std::int32_t> key(w);

    auto finish = [&](std::uint32_t id) {
        Program p;
        while (id != 0) {
            p.push_back(alphabet[via[id]]);
            id = parent[id];
        }
        std::reverse(p.begin(), p.end());
        out.status = SolveOutcome::Status::Solvable;
        out.program = std::move(p);
        out.explored = seen.size();
        return out;
    };
    bool truncated = false;

    if (rep.disjoint) {
        // Workers never interact: each moves by its own region automaton.
        std::vector<detail::LocalMachine> local(w);
        for (std::size_t i = 0; i < w; ++i) {
            local[i].dfa = level_to_dfa(level, i, alphabet);
            local[i].alive = detail::backward_alive(local[i].dfa);
        }
        struct PairCheck {
            std::size_t i, j, nb;
            std::vector<bool> alive;
        };
        std::vector<PairCheck> pairs;
        if (options.prune_dead_pairs)
            for (std::size_t i = 0; i < w; ++i)
                for (std::size_t j = i + 1; j < w && j <= i + options.pair_window; ++j)
                    pairs.push_back({i, j, static_cast<std::size_t>(local[j].dfa.state_count),
                                     detail::pair_alive(local[i].dfa, local[j].dfa)});
        auto viable = [&](const std::int32_t* t) {
            for (std::size_t i = 0; i < w; ++i)
                if (!local[i].alive[static_cast<std::size_t>(t[i])]) return false;
            for (const PairCheck& pc : pairs)
                if (!pc.alive[static_cast<std::size_t>(t[pc.i]) * pc.nb + static_cast<std::size_t>(t[pc.j])])
                    return false;
            return true;
        };
        auto accepting = [&](const std::int32_t* t) {
            for (std::size_t i = 0; i < w; ++i)
                if (!local[i].dfa.accepting[static_cast<std::size_t>(t[i])]) return false;
            return true;
        };
        for (std::size_t i = 0; i < w; ++i) key[i] = 0;
        if (!viable(key.data())) {
            out.status = SolveOutcome::Status::Unsolvable;
            out.explored = 1;
            return out;
        }
        seen.insert(key.data());
        for (std::uint32_t head = 0; head < seen.size(); ++head) {
            if (depth[head] >= budget.max_length) {
                truncated = true;
                continue;
            }
            for (int s = 0; s < m; ++s) {
                const std::int32_t* t = seen.at(head);
                for (std::size_t i = 0; i < w; ++i) key[i] = local[i].dfa.next(t[i], s);
                if (!viable(key.data())) continue;
                auto [id, fresh] = seen.insert(key.data());
                if (!fresh) continue;
                parent.push_back(head);
                via.push_back(static_cast<std::uint8_t>(s));
                depth.push_back(depth[head] + 1);
                if (accepting(key.data())) return finish(id);
                if (seen.size() >= budget.max_configs) {
                    out.status = SolveOutcome::Status::Unknown;
                    out.cap = "max-configs";
                    out.explored = seen.size();
                    return out;
                }
            }
        }
    } else {
        // General case: simulate the joint step, workers may block each other.
        auto encode = [&](const Configuration& c) {
            for (std::size_t i = 0; i < w; ++i) {
                const auto idx = static_cast<std::int32_t>(level.index(c[i].pos));
                key[i] = c[i].stuck ? -idx - 1 : idx;
            }
        };
        auto decode = [&](const std::int32_t* t) {
            Configuration c(w);
            for (std::size_t i = 0; i < w; ++i) {
                const std::int32_t v = t[i];
                c[i].stuck = v < 0;
                c[i].pos = level.position(static_cast<std::size_t>(v < 0 ? -v - 1 : v));
            }
            return c;
        };
        encode(start);
        seen.insert(key.data());
        for (std::uint32_t head = 0; head < seen.size(); ++head) {
            if (depth[head] >= budget.max_length) {
                truncated = true;
                continue;
            }
            const Configuration cur = decode(seen.at(head));
            for (int s = 0; s < m; ++s) {
                const Configuration nxt = step(level, cur, alphabet[static_cast<std::size_t>(s)]);
                // A stuck worker can never be solved again.
                if (std::any_of(nxt.begin(), nxt.end(), [](const WorkerState& x) { return x.stuck; }))
                    continue;
                encode(nxt);
                auto [id, fresh] = seen.insert(key.data());
                if (!fresh) continue;
                parent.push_back(head);
                via.push_back(static_cast<std::uint8_t>(s));
                depth.push_back(depth[head] + 1);
                if (is_solved(level, nxt)) return finish(id);
                if (seen.size() >= budget.max_configs) {
                    out.status = SolveOutcome::Status::Unknown;
                    out.cap = "max-configs";
                    out.explored = seen.size();
                    return out;
                }
            }
        }
    }
    out.explored = seen.size();
    if (truncated) {
        out.status = SolveOutcome::Status::Unknown;
        out.cap = "max-length";
    } else {
        out.status = SolveOutcome::Status::Unsolvable;
    }
    return out;
}

// Cross-check engine: one extracted automaton per worker, product search.
inline SolveOutcome solve_via_automata(const Level& level, std::size_t cap = 1'000'000,
                                       const std::vector<Direction>& alphabet =
                                           std::vector<Direction>(kAxisDirections.begin(), kAxisDirections.end())) {
    SolveOutcome out;
    if (level.workers().empty()) {
        out.status = SolveOutcome::Status::Solvable;
        return out;
    }
    std::vector<Dfa> dfas;
    for (std::size_t i = 0; i < level.workers().size(); ++i) dfas.push_back(level_to_dfa(level, i, alphabet));
    const ProductResult r = product_shortest_word(dfas, cap);
    out.explored = r.explored;
    switch (r.status) {
    case ProductResult::Status::Accepted:
        out.status = SolveOutcome::Status::Solvable;
        for (int s : r.word) out.program.push_back(alphabet[static_cast<std::size_t>(s)]);
        break;
    case ProductResult::Status::Empty: out.status = SolveOutcome::Status::Unsolvable; break;
    case ProductResult::Status::Unknown:
        out.status = SolveOutcome::Status::Unknown;
        out.cap = "max-configs";
        break;
    }
    return out;
}

}  // namespace sevenbh
