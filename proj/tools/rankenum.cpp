// Command-line front end: validation, smoothing, counting, automaton
// compilation, ranked enumeration (both algorithms), brute-force oracles and
// the subset-monotonicity checker, wired over the file formats of the core
// library.
//
// Exit codes: 0 success, 1 usage or unreadable/malformed input, 2 a requested
// check or structural requirement failed, 3 empty language / empty answer set.

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rankenum/circuit_io.hpp"
#include "rankenum/ddnnf_enum.hpp"
#include "rankenum/dnnf_enum.hpp"
#include "rankenum/oracle.hpp"
#include "rankenum/provenance.hpp"

namespace {

using namespace rankenum;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitEmpty = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(0, "cannot write '" + path + "'");
    out << content;
}

std::string format_score(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, end);
}

void print_answer(double score, const PartialAssignment& a, const Domain& domain, const VarSet& vars) {
    std::string line = format_score(score);
    line += '\t';
    for (int var = 0; var < vars.size(); ++var) {
        if (var > 0) line += ' ';
        line += vars.name(var);
        line += '=';
        line += domain.name(a.value(var));
    }
    std::cout << line << '\n';
}

struct EnumerateOptions {
    std::string circuit_path;
    std::string ranking_path;
    std::string algo = "ddnnf";
    bool stats = false;
    std::int64_t limit = -1;  // -1 = everything
};

int run_enumeration(const Circuit& circuit, const RankingFunction& ranking,
                    const EnumerateOptions& opt) {
    std::uint64_t emitted = 0;
    auto want_more = [&] {
        return opt.limit < 0 || emitted < static_cast<std::uint64_t>(opt.limit);
    };
    if (opt.algo == "dnnf") {
        DnnfEnumerator e(circuit, ranking);
        while (want_more()) {
            auto item = e.next();
            if (!item) break;
            print_answer(item->first, item->second, circuit.domain(), circuit.vars());
            ++emitted;
            if (opt.stats) {
                const auto& s = e.last_output_stats();
                std::cerr << emitted << '\t' << s.pops << '\t' << s.completion_calls << '\n';
            }
        }
    } else {
        DdnnfEnumerator e(circuit, ranking);
        while (want_more()) {
            auto item = e.next();
            if (!item) break;
            print_answer(item->first, item->second, circuit.domain(), circuit.vars());
            ++emitted;
            if (opt.stats) {
                const auto& s = e.state().call_stats();
                std::cerr << emitted << '\t' << s.pops << '\t' << s.pushes << '\t' << s.gets << '\n';
            }
        }
    }
    return kExitOk;
}

int cmd_validate(const std::string& path, bool brute_determinism) {
    Circuit circuit = parse_circuit(read_file(path));
    ValidationReport report = validate_structural(circuit);
    bool ok = report.ok();
    std::cout << "decomposable: " << (report.decomposable ? "yes" : "no");
    if (!report.decomposable)
        std::cout << " (gate " << circuit.gate_name(report.first_nondecomposable) << ")";
    std::cout << "\nsmooth: " << (report.smooth ? "yes" : "no");
    if (!report.smooth) std::cout << " (gate " << circuit.gate_name(report.first_nonsmooth) << ")";
    std::cout << '\n';
    if (brute_determinism) {
        if (!report.ok()) {
            std::cout << "deterministic: not checked (circuit is not a smooth DNNF)\n";
            ok = false;
        } else {
            DeterminismReport det = check_deterministic_bruteforce(circuit);
            std::cout << "deterministic: " << (det.deterministic ? "yes" : "no");
            if (!det.deterministic)
                std::cout << " (gate " << circuit.gate_name(det.gate) << " repeats "
                          << to_string(det.witness, circuit.vars(), circuit.domain()) << ")";
            std::cout << '\n';
            ok = ok && det.deterministic;
        }
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_count(const std::string& path, bool per_gate) {
    Circuit circuit = parse_circuit(read_file(path));
    std::vector<std::uint64_t> counts = count_per_gate(circuit);
    if (per_gate) {
        for (int i = 0; i < circuit.gate_count(); ++i)
            std::cout << circuit.gate_name(i) << '\t' << counts[static_cast<std::size_t>(i)] << '\n';
    } else {
        std::cout << counts[static_cast<std::size_t>(circuit.output())] << '\n';
    }
    return kExitOk;
}

/// Builds the (domain, vars) context for a standalone ranking file: names
/// mentioned in the file first (in order of appearance), padded with fresh
/// names up to the requested sizes.
std::pair<Domain, VarSet> monotone_context(const std::string& text, int domain_size, int var_count) {
    std::vector<std::string> vars, values;
    auto note = [](std::vector<std::string>& list, const std::string& name) {
        for (const auto& n : list)
            if (n == name) return;
        list.push_back(name);
    };
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream words(line.substr(0, line.find('#')));
        std::string head;
        words >> head;
        if (head == "w") {
            std::string var, value;
            words >> var >> value;
            if (!var.empty()) note(vars, var);
            if (!value.empty()) note(values, value);
        } else if (head == "order") {
            std::string var;
            while (words >> var) note(vars, var);
        }
    }
    if (static_cast<int>(vars.size()) > var_count)
        throw ParseError(0, "ranking file mentions more variables than --vars");
    if (static_cast<int>(values.size()) > domain_size)
        throw ParseError(0, "ranking file mentions more values than --domain-size");
    for (int i = 0; static_cast<int>(vars.size()) < var_count; ++i) {
        std::string name = "_x" + std::to_string(i);
        if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
    }
    for (int i = 0; static_cast<int>(values.size()) < domain_size; ++i) {
        std::string name = "_v" + std::to_string(i);
        if (std::find(values.begin(), values.end(), name) == values.end()) values.push_back(name);
    }
    return {Domain(values), VarSet(vars)};
}

int cmd_check_monotone(const std::string& ranking_path, int domain_size, int var_count) {
    std::string text = read_file(ranking_path);
    auto [domain, vars] = monotone_context(text, domain_size, var_count);
    RankingFunction ranking = parse_ranking(text, domain, vars);
    auto cex = check_subset_monotone_bruteforce(
        [&](const PartialAssignment& a) { return ranking(a); }, domain.size(), vars.size());
    if (!cex) {
        std::cout << "subset-monotone: yes\n";
        return kExitOk;
    }
    std::cout << "subset-monotone: no\n";
    std::cout << "  t1    = [" << to_string(cex->t1, vars, domain) << "]\n";
    std::cout << "  t2    = [" << to_string(cex->t2, vars, domain) << "]\n";
    std::cout << "  sigma = [" << to_string(cex->sigma, vars, domain) << "]\n";
    return kExitCheckFailed;
}

void print_oracle(const RankedAnswerList& answers, const Domain& domain, const VarSet& vars) {
    for (const RankedAnswer& a : answers) print_answer(a.score, a.assignment, domain, vars);
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    CLI::App app{"Ranked enumeration for smooth decomposable multivalued circuits"};
    app.require_subcommand(1);

    std::function<int()> action;

    // validate
    {
        auto* cmd = app.add_subcommand("validate", "Check decomposability and smoothness");
        auto path = std::make_shared<std::string>();
        auto det = std::make_shared<bool>(false);
        cmd->add_option("circuit", *path, "circuit file")->required();
        cmd->add_flag("--brute-determinism", *det, "also brute-force the determinism check");
        cmd->callback([&action, path, det] {
            action = [path, det] { return cmd_validate(*path, *det); };
        });
    }

    // smooth
    {
        auto* cmd = app.add_subcommand("smooth", "Smooth a decomposable circuit");
        auto path = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        cmd->add_option("circuit", *path, "circuit file")->required();
        cmd->add_option("-o,--output", *out, "output circuit file")->required();
        cmd->callback([&action, path, out] {
            action = [path, out] {
                Circuit c = parse_circuit(read_file(*path));
                write_file(*out, format_circuit(smooth_transform(c)));
                return kExitOk;
            };
        });
    }

    // count
    {
        auto* cmd = app.add_subcommand("count", "Per-gate model counts");
        auto path = std::make_shared<std::string>();
        auto per_gate = std::make_shared<bool>(false);
        cmd->add_option("circuit", *path, "circuit file")->required();
        cmd->add_flag("--per-gate", *per_gate, "print every gate's count");
        cmd->callback([&action, path, per_gate] {
            action = [path, per_gate] { return cmd_count(*path, *per_gate); };
        });
    }

    // compile
    {
        auto* cmd = app.add_subcommand("compile", "Compile (automaton, tree) to a circuit");
        auto tree = std::make_shared<std::string>();
        auto automaton = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        cmd->add_option("--tree", *tree, "tree file")->required();
        cmd->add_option("--automaton", *automaton, "automaton file")->required();
        cmd->add_option("-o,--output", *out, "output circuit file")->required();
        cmd->callback([&action, tree, automaton, out] {
            action = [tree, automaton, out] {
                Bdta a = trim(parse_automaton(read_file(*automaton)));
                LabeledTree t = parse_tree(read_file(*tree));
                ProvenanceResult result = provenance_circuit(a, t);
                write_file(*out, format_circuit(result.circuit));
                return kExitOk;
            };
        });
    }

    // topk / enumerate
    auto add_enum_command = [&](const char* name, const char* help, bool with_k) {
        auto* cmd = app.add_subcommand(name, help);
        auto opt = std::make_shared<EnumerateOptions>();
        cmd->add_option("circuit", opt->circuit_path, "circuit file")->required();
        cmd->add_option("--ranking", opt->ranking_path, "ranking file")->required();
        cmd->add_option("--algo", opt->algo, "dnnf or ddnnf")
            ->check(CLI::IsMember({"dnnf", "ddnnf"}));
        cmd->add_flag("--stats", opt->stats, "per-answer counters on standard error");
        if (with_k) cmd->add_option("-k", opt->limit, "number of answers")->required();
        cmd->callback([&action, opt] {
            action = [opt] {
                Circuit circuit = parse_circuit(read_file(opt->circuit_path));
                RankingFunction ranking =
                    parse_ranking(read_file(opt->ranking_path), circuit.domain(), circuit.vars());
                return run_enumeration(circuit, ranking, *opt);
            };
        });
    };
    add_enum_command("topk", "First K answers in nonincreasing score order", true);
    add_enum_command("enumerate", "All answers in nonincreasing score order", false);

    // mso-topk
    {
        auto* cmd = app.add_subcommand("mso-topk", "Compile (automaton, tree), then top-k answers");
        auto tree = std::make_shared<std::string>();
        auto automaton = std::make_shared<std::string>();
        auto ranking_path = std::make_shared<std::string>();
        auto k = std::make_shared<std::int64_t>(-1);
        auto stats = std::make_shared<bool>(false);
        cmd->add_option("--tree", *tree, "tree file")->required();
        cmd->add_option("--automaton", *automaton, "automaton file")->required();
        cmd->add_option("--ranking", *ranking_path, "ranking file (values are node names n0, n1, ...)")
            ->required();
        cmd->add_option("-k", *k, "number of answers")->required();
        cmd->add_flag("--stats", *stats, "per-answer counters on standard error");
        cmd->callback([&action, tree, automaton, ranking_path, k, stats] {
            action = [tree, automaton, ranking_path, k, stats] {
                Bdta a = trim(parse_automaton(read_file(*automaton)));
                LabeledTree t = parse_tree(read_file(*tree));
                ProvenanceResult compiled = provenance_circuit(a, t);
                RankingFunction ranking = parse_ranking(read_file(*ranking_path),
                                                        compiled.circuit.domain(),
                                                        compiled.circuit.vars());
                EnumerateOptions opt;
                opt.algo = "ddnnf";
                opt.stats = *stats;
                opt.limit = *k;
                return run_enumeration(compiled.circuit, ranking, opt);
            };
        });
    }

    // oracle circuit|mso
    {
        auto* cmd = app.add_subcommand("oracle", "Brute-force reference output");
        cmd->require_subcommand(1);
        {
            auto* sub = cmd->add_subcommand("circuit", "All models of a circuit, sorted");
            auto path = std::make_shared<std::string>();
            auto ranking_path = std::make_shared<std::string>();
            sub->add_option("circuit", *path, "circuit file")->required();
            sub->add_option("--ranking", *ranking_path, "ranking file")->required();
            sub->callback([&action, path, ranking_path] {
                action = [path, ranking_path] {
                    Circuit circuit = parse_circuit(read_file(*path));
                    RankingFunction ranking =
                        parse_ranking(read_file(*ranking_path), circuit.domain(), circuit.vars());
                    print_oracle(brute_force_circuit(circuit, ranking), circuit.domain(),
                                 circuit.vars());
                    return kExitOk;
                };
            });
        }
        {
            auto* sub = cmd->add_subcommand("mso", "All accepted assignments, sorted");
            auto tree = std::make_shared<std::string>();
            auto automaton = std::make_shared<std::string>();
            auto ranking_path = std::make_shared<std::string>();
            sub->add_option("--tree", *tree, "tree file")->required();
            sub->add_option("--automaton", *automaton, "automaton file")->required();
            sub->add_option("--ranking", *ranking_path, "ranking file")->required();
            sub->callback([&action, tree, automaton, ranking_path] {
                action = [tree, automaton, ranking_path] {
                    Bdta a = parse_automaton(read_file(*automaton));
                    LabeledTree t = parse_tree(read_file(*tree));
                    std::vector<std::string> node_names;
                    for (int i = 0; i < t.node_count(); ++i)
                        node_names.push_back("n" + std::to_string(i));
                    Domain domain{node_names};
                    RankingFunction ranking =
                        parse_ranking(read_file(*ranking_path), domain, a.vars());
                    print_oracle(brute_force_mso(t, a, ranking), domain, a.vars());
                    return kExitOk;
                };
            });
        }
    }

    // check-monotone
    {
        auto* cmd = app.add_subcommand("check-monotone", "Brute-force subset-monotonicity check");
        auto ranking_path = std::make_shared<std::string>();
        auto domain_size = std::make_shared<int>(0);
        auto var_count = std::make_shared<int>(0);
        cmd->add_option("--ranking", *ranking_path, "ranking file")->required();
        cmd->add_option("--domain-size", *domain_size, "number of domain values")->required();
        cmd->add_option("--vars", *var_count, "number of variables")->required();
        cmd->callback([&action, ranking_path, domain_size, var_count] {
            action = [ranking_path, domain_size, var_count] {
                return cmd_check_monotone(*ranking_path, *domain_size, *var_count);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        return action();
    } catch (const EmptyLanguageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEmpty;
    } catch (const EmptyAnswerSetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEmpty;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}
