// sevenbh: command-line front end for the simulator, the solvers, the two
// reduction compilers and their witness checkers.
//
// Exit codes: simulate 0 solved / 1 not solved / 2 error; solve 0 solvable /
// 1 unsolvable / 3 unknown (2 on error); verify 0 witness solves / 1 not /
// 2 error; other commands 0 / 2.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sevenbh/reduce_dfa.hpp"
#include "sevenbh/reduce_sat.hpp"
#include "sevenbh/solver.hpp"

using namespace sevenbh;

namespace {

constexpr int kUsageError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

Level load_level(const std::string& path) { return parse_level(read_file(path)); }

// A program argument is a file when such a file exists, inline text otherwise.
Program load_program(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) return parse_program(read_file(arg));
    return parse_program(arg);
}

IntersectionInstance load_dfas(const std::vector<std::string>& paths) {
    std::vector<Dfa> dfas;
    for (const std::string& p : paths)
        for (Dfa& d : parse_dfas(read_file(p))) dfas.push_back(std::move(d));
    return normalize(dfas);
}

// Runs a program, simulating workers one at a time when their regions are
// disjoint (the compiled levels are large but never interact).
Configuration simulate(const Level& level, const Program& program) {
    if (components(level).disjoint) return run_isolated(level, initial_configuration(level), program, false);
    return run(level, initial_configuration(level), program);
}

void write_manifest(const std::string& path, const Stacked& s, const std::vector<std::string>& names) {
    std::ostringstream os;
    for (std::size_t i = 0; i < names.size(); ++i)
        os << nlohmann::ordered_json{{"name", names[i]}, {"row_start", s.rows[i].first}, {"row_end", s.rows[i].second}}.dump()
           << '\n';
    write_file(path, os.str());
}

std::size_t open_cells(const Level& l) {
    std::size_t n = 0;
    for (int r = 0; r < l.height(); ++r)
        for (int c = 0; c < l.width(); ++c) n += l.at({c, r}) != Cell::Wall;
    return n;
}

void print_sizes(const Level& l, double bound_term, const char* bound_name) {
    const std::size_t cells = l.cell_count(), open = open_cells(l);
    std::cout << "size " << l.width() << "x" << l.height() << "\n"
              << "cells " << cells << "\n"
              << "open_cells " << open << "\n"
              << "C_cells " << static_cast<double>(cells) / bound_term << "  (cells / " << bound_name << ")\n"
              << "C_open " << static_cast<double>(open) / bound_term << "  (open cells / " << bound_name << ")\n";
}

// "TFF" / "101" -> assignment of x1..xn.
AssignmentVector parse_assignment(const std::string& text) {
    AssignmentVector a;
    for (char ch : text) {
        if (ch == 'T' || ch == 't' || ch == '1') a.push_back(true);
        else if (ch == 'F' || ch == 'f' || ch == '0') a.push_back(false);
        else if (!std::isspace(static_cast<unsigned char>(ch))) throw std::invalid_argument(std::string("bad assignment character '") + ch + "'");
    }
    return a;
}

// A word is whitespace-separated symbol names, or one symbol per character
// when it contains no whitespace.
std::vector<int> parse_word(const std::string& text, const std::vector<std::string>& alphabet) {
    std::vector<std::string> tokens;
    if (text.find_first_of(" \t") != std::string::npos) {
        std::istringstream is(text);
        for (std::string t; is >> t;) tokens.push_back(t);
    } else {
        for (char ch : text) tokens.emplace_back(1, ch);
    }
    std::vector<int> w;
    for (const std::string& t : tokens) {
        const auto it = std::find(alphabet.begin(), alphabet.end(), t);
        if (it == alphabet.end()) throw std::invalid_argument("symbol '" + t + "' not in the alphabet");
        w.push_back(static_cast<int>(it - alphabet.begin()));
    }
    return w;
}

std::vector<Direction> alphabet_named(const std::string& name) {
    if (name == "axis") return {kAxisDirections.begin(), kAxisDirections.end()};
    return {kAllDirections.begin(), kAllDirections.end()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator, solver and reduction compilers for the step-only grid puzzle fragment"};
    app.require_subcommand(1);
    int exit_code = 0;

    // simulate
    std::string level_path, program_arg, trace_path;
    auto* sim = app.add_subcommand("simulate", "Run a program on a level");
    sim->add_option("--level", level_path, "Level file (.7bh)")->required();
    sim->add_option("--program", program_arg, "Program file or inline program, e.g. \"R4 U2\"")->required();
    sim->add_option("--trace", trace_path, "Write one rendered frame per step to this file");
    sim->callback([&] {
        const Level level = load_level(level_path);
        const Program program = load_program(program_arg);
        Configuration cfg = initial_configuration(level);
        if (!trace_path.empty()) {
            std::ostringstream frames;
            frames << "; step 0\n" << render_level(level, &cfg);
            for (std::size_t i = 0; i < program.size(); ++i) {
                cfg = step(level, cfg, program[i]);
                frames << "; step " << i + 1 << " " << name(program[i]) << "\n" << render_level(level, &cfg);
            }
            write_file(trace_path, frames.str());
        } else {
            cfg = simulate(level, program);
        }
        const bool solved = is_solved(level, cfg);
        for (std::size_t i = 0; i < cfg.size(); ++i)
            std::cout << "worker " << i << " " << (cfg[i].stuck ? "STUCK" : level.at(cfg[i].pos) == Cell::Accept ? "ACCEPT" : "ACTIVE")
                      << " (" << cfg[i].pos.col << "," << cfg[i].pos.row << ")\n";
        std::cout << "steps " << program.size() << "\n" << (solved ? "SOLVED" : "NOT SOLVED") << "\n";
        exit_code = solved ? 0 : 1;
    });

    // solve
    std::string engine = "bfs", solve_alphabet = "all";
    std::size_t max_configs = 1'000'000, max_len = 100'000;
    auto* sol = app.add_subcommand("solve", "Decide solvability and print a shortest witness");
    sol->add_option("--level", level_path, "Level file (.7bh)")->required();
    sol->add_option("--engine", engine, "bfs or automata")->check(CLI::IsMember({"bfs", "automata"}));
    sol->add_option("--max-configs", max_configs, "Configuration budget");
    sol->add_option("--max-len", max_len, "Program length budget (bfs)");
    sol->add_option("--alphabet", solve_alphabet, "all (8 directions) or axis")->check(CLI::IsMember({"all", "axis"}));
    sol->callback([&] {
        const Level level = load_level(level_path);
        const std::vector<Direction> sigma = alphabet_named(solve_alphabet);
        const SolveOutcome out = engine == "bfs" ? solve(level, {max_configs, max_len}, sigma)
                                                 : solve_via_automata(level, max_configs, sigma);
        std::cout << to_string(out.status) << "\n";
        if (out.status == SolveOutcome::Status::Solvable) std::cout << format_program(out.program) << "\n";
        if (out.status == SolveOutcome::Status::Unknown) std::cout << "budget exhausted: " << out.cap << "\n";
        std::cerr << "explored " << out.explored << "\n";
        exit_code = out.status == SolveOutcome::Status::Solvable ? 0 : out.status == SolveOutcome::Status::Unsolvable ? 1 : 3;
    });

    // reduce
    std::vector<std::string> in_paths;
    std::string out_path, manifest_path;
    auto* red = app.add_subcommand("reduce", "Compile an instance into a level");
    red->require_subcommand(1);
    auto* red_sat = red->add_subcommand("sat1in3", "Positive 1-in-3-SAT instance to a walls-only level");
    red_sat->add_option("--in", in_paths, "Instance file")->required()->expected(1);
    red_sat->add_option("--out", out_path, "Output level file")->required();
    red_sat->add_option("--manifest", manifest_path, "JSON-lines sub-level row ranges");
    red_sat->callback([&] {
        const Sat1in3Instance inst = parse_sat(read_file(in_paths.front()));
        const SatCompilation c = compile_sat_with_layout(inst);
        write_file(out_path, render_level(c.stacked.level));
        if (!manifest_path.empty()) write_manifest(manifest_path, c.stacked, c.names);
        std::cout << "sublevels " << c.names.size() << "\n";
        print_sizes(c.stacked.level, static_cast<double>(inst.n) * inst.n + static_cast<double>(inst.n) * inst.m(),
                    "(n^2 + nm)");
    });
    auto* red_dfa = red->add_subcommand("dfa-intersect", "DFA intersection instance to a level with holes");
    red_dfa->add_option("--in", in_paths, "DFA file(s); a file may hold several DFAs separated by '---'")->required();
    red_dfa->add_option("--out", out_path, "Output level file")->required();
    red_dfa->add_option("--manifest", manifest_path, "JSON-lines sub-level row ranges");
    red_dfa->callback([&] {
        const IntersectionInstance inst = load_dfas(in_paths);
        const DfaCompilation c = compile_intersection_with_layout(inst);
        write_file(out_path, render_level(c.stacked.level));
        if (!manifest_path.empty()) write_manifest(manifest_path, c.stacked, c.names);
        const double k = inst.k(), n = inst.n(), m = inst.m();
        std::cout << "sublevels " << c.names.size() << "\n"
                  << "k " << inst.k() << " n " << inst.n() << " m " << inst.m() << "\n"
                  << "sharp R" << c.params.w_sharp << " D" << c.params.x_sharp << " L" << c.params.y_sharp << " U"
                  << c.params.z_sharp << "\n";
        print_sizes(c.stacked.level, k * k * k * n * n * m * m, "k^3 n^2 m^2");
    });

    // verify
    std::string assignment, word;
    auto* ver = app.add_subcommand("verify", "Check that an encoded witness solves a compiled level");
    ver->require_subcommand(1);
    auto* ver_sat = ver->add_subcommand("sat", "Assignment witness for a 1-in-3-SAT level");
    ver_sat->add_option("--in", in_paths, "Instance file")->required()->expected(1);
    ver_sat->add_option("--assignment", assignment, "Truth values of x1..xn, e.g. TFF")->required();
    ver_sat->add_option("--level", level_path, "Compiled level (compiled from --in when omitted)");
    ver_sat->callback([&] {
        const Sat1in3Instance inst = parse_sat(read_file(in_paths.front()));
        const AssignmentVector alpha = parse_assignment(assignment);
        if (static_cast<int>(alpha.size()) != inst.n) throw std::invalid_argument("assignment needs one value per variable");
        const Level level = level_path.empty() ? compile_sat(inst) : load_level(level_path);
        const bool solved = is_solved(level, simulate(level, canonical_program(alpha)));
        std::cout << "assignment " << (satisfies(inst, alpha) ? "satisfies" : "does not satisfy") << " the instance\n"
                  << (solved ? "SOLVED" : "NOT SOLVED") << "\n";
        exit_code = solved ? 0 : 1;
    });
    auto* ver_dfa = ver->add_subcommand("dfa", "Word witness for a DFA intersection level");
    ver_dfa->add_option("--in", in_paths, "DFA file(s)")->required();
    ver_dfa->add_option("--word", word, "Input word, e.g. \"ab\" or \"a b\"")->required();
    ver_dfa->add_option("--level", level_path, "Compiled level (compiled from --in when omitted)");
    ver_dfa->callback([&] {
        const IntersectionInstance inst = load_dfas(in_paths);
        const RString rs = rstring_from_word(parse_word(word, inst.alphabet()), inst);
        const Level level = level_path.empty() ? compile_intersection(inst) : load_level(level_path);
        const bool solved = is_solved(level, simulate(level, encode_rstring(rs, derive_params(inst))));
        std::cout << "records " << format_rstring(rs) << "\n"
                  << "word " << (is_accepting_rstring(rs, inst) ? "accepted by every automaton" : "rejected by some automaton") << "\n"
                  << (solved ? "SOLVED" : "NOT SOLVED") << "\n";
        exit_code = solved ? 0 : 1;
    });

    // extract-dfa
    std::size_t worker = 0;
    std::string extract_alphabet = "axis";
    auto* ext = app.add_subcommand("extract-dfa", "Automaton of one worker's sub-level");
    ext->add_option("--level", level_path, "Level file (.7bh)")->required();
    ext->add_option("--worker", worker, "Worker index")->required();
    ext->add_option("--out", out_path, "Output DFA file (stdout when omitted)");
    ext->add_option("--alphabet", extract_alphabet, "axis or all")->check(CLI::IsMember({"all", "axis"}));
    ext->callback([&] {
        const Level level = load_level(level_path);
        if (worker >= level.workers().size()) throw std::invalid_argument("no such worker");
        const std::string text = format_dfa(level_to_dfa(level, worker, alphabet_named(extract_alphabet)));
        if (out_path.empty()) std::cout << text;
        else write_file(out_path, text);
    });

    // render
    std::string format = "ascii", config_path;
    auto* ren = app.add_subcommand(
        "render", "Draw a level. SVG legend: walls dark grey, empty white, accepting green, holes black, "
                  "workers blue circles (red when stuck); cells are 10 units wide");
    ren->add_option("--level", level_path, "Level file (.7bh)")->required();
    ren->add_option("--format", format, "ascii or svg")->check(CLI::IsMember({"ascii", "svg"}));
    ren->add_option("--config", config_path, "Configuration dump to draw instead of the start");
    ren->add_option("--out", out_path, "Output file (stdout when omitted)");
    ren->callback([&] {
        const Level level = load_level(level_path);
        std::optional<Configuration> cfg;
        if (!config_path.empty()) {
            cfg = parse_configuration(read_file(config_path));
            if (cfg->size() != level.workers().size()) throw std::invalid_argument("configuration has the wrong number of workers");
        }
        const Configuration* c = cfg ? &*cfg : nullptr;
        const std::string text = format == "svg" ? render_svg(level, c) : render_level(level, c);
        if (out_path.empty()) std::cout << text;
        else write_file(out_path, text);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return exit_code;
}
