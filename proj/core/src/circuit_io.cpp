#include "rankenum/circuit_io.hpp"

#include <sstream>

#include "rankenum/detail/lines.hpp"

namespace rankenum {

Circuit parse_circuit(std::string_view text) {
    detail::LineReader reader(text);

    detail::Tokens header = reader.expect_line("circuit header");
    if (header.words.size() != 2 || header.words[0] != "circuit" || header.words[1] != "v1")
        throw ParseError(header.line, "expected 'circuit v1'");

    detail::Tokens domain_line = reader.expect_line("domain declaration");
    if (domain_line.words.empty() || domain_line.words[0] != "domain")
        throw ParseError(domain_line.line, "expected 'domain <value>...'");
    Domain domain(std::vector<std::string>(domain_line.words.begin() + 1, domain_line.words.end()));

    detail::Tokens vars_line = reader.expect_line("vars declaration");
    if (vars_line.words.empty() || vars_line.words[0] != "vars")
        throw ParseError(vars_line.line, "expected 'vars <var>...'");
    VarSet vars(std::vector<std::string>(vars_line.words.begin() + 1, vars_line.words.end()));

    std::vector<Gate> gates;
    std::vector<std::string> names;
    std::unordered_map<std::string, int, detail::StringHash, std::equal_to<>> by_name;
    int output = -1;

    while (auto tokens = reader.next_line()) {
        const auto& words = tokens->words;
        int line = tokens->line;
        if (words[0] == "output") {
            if (words.size() != 2) throw ParseError(line, "expected 'output <gate>'");
            auto it = by_name.find(words[1]);
            if (it == by_name.end()) throw ParseError(line, "unknown gate '" + words[1] + "'");
            output = it->second;
            if (reader.next_line()) throw ParseError(line + 1, "content after output line");
            break;
        }
        if (words[0] != "gate" || words.size() < 3)
            throw ParseError(line, "expected 'gate <name> <kind> ...'");
        const std::string& name = words[1];
        if (by_name.contains(name)) throw ParseError(line, "duplicate gate name '" + name + "'");
        const std::string& kind = words[2];
        Gate gate;
        if (kind == "input") {
            if (words.size() != 5) throw ParseError(line, "expected 'gate <name> input <var> <value>'");
            auto var = vars.find(words[3]);
            if (!var) throw ParseError(line, "unknown variable '" + words[3] + "'");
            auto value = domain.find(words[4]);
            if (!value) throw ParseError(line, "unknown value '" + words[4] + "'");
            gate = Gate::input(*var, *value);
        } else if (kind == "and" || kind == "or") {
            if (words.size() < 4) throw ParseError(line, "gate '" + name + "' needs at least one child");
            std::vector<int> children;
            children.reserve(words.size() - 3);
            for (std::size_t i = 3; i < words.size(); ++i) {
                auto it = by_name.find(words[i]);
                if (it == by_name.end())
                    throw ParseError(line, "unknown gate '" + words[i] +
                                               "' (children must be declared first)");
                children.push_back(it->second);
            }
            gate = kind == "and" ? Gate::and_gate(std::move(children))
                                 : Gate::or_gate(std::move(children));
        } else {
            throw ParseError(line, "unknown gate kind '" + kind + "'");
        }
        by_name.emplace(name, static_cast<int>(gates.size()));
        gates.push_back(std::move(gate));
        names.push_back(name);
    }
    if (output < 0) throw ParseError(reader.line_count(), "missing output line");
    return Circuit(domain, vars, std::move(gates), std::move(names), output);
}

std::string format_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "circuit v1\n";
    out << "domain";
    for (const auto& v : c.domain().names()) out << ' ' << v;
    out << "\nvars";
    for (const auto& x : c.vars().names()) out << ' ' << x;
    out << '\n';
    for (int i = 0; i < c.gate_count(); ++i) {
        const Gate& g = c.gate(i);
        out << "gate " << c.gate_name(i);
        switch (g.kind) {
            case GateKind::Input:
                out << " input " << c.vars().name(g.var) << ' ' << c.domain().name(g.value);
                break;
            case GateKind::And:
            case GateKind::Or:
                out << (g.kind == GateKind::And ? " and" : " or");
                for (int child : g.children) out << ' ' << c.gate_name(child);
                break;
        }
        out << '\n';
    }
    out << "output " << c.gate_name(c.output()) << '\n';
    return out.str();
}

}  // namespace rankenum
