#pragma once

#include <cctype>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ghzw/error.hpp"
#include "ghzw/state.hpp"

namespace ghzw {

enum class StateFormat { text, json };

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> split_tokens(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        tokens.push_back({line.substr(start, i - start), start + 1});
    }
    return tokens;
}

inline std::optional<Symbol> parse_symbol(std::string_view s) {
    if (s == "0") return Symbol::zero;
    if (s == "1") return Symbol::one;
    if (s == "W") return Symbol::w;
    return std::nullopt;
}

inline GroupSpec parse_group_entry(const Token& tok, std::size_t index, std::size_t line) {
    const auto colon = tok.text.find(':');
    if (colon != 1 || (tok.text[0] != 'G' && tok.text[0] != 'W')) {
        throw ParseError("expected group entry G:<size> or W:<size>, got '" + std::string(tok.text) + "'", line,
                         tok.column);
    }
    auto size = parse_natural(tok.text.substr(2));
    if (!size) throw ParseError("invalid group size in '" + std::string(tok.text) + "'", line, tok.column + 2);
    if (*size < 2) throw ParseError("group size must be >= 2", line, tok.column + 2);
    if (*size > 1'000'000) throw ParseError("group size too large", line, tok.column + 2);
    return {index, static_cast<int>(*size), tok.text[0] == 'G' ? BasisKind::ghz : BasisKind::w};
}

inline SymbolicState parse_text(std::string_view text) {
    std::vector<GroupSpec> groups;
    std::vector<Term> terms;
    bool have_groups = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = split_tokens(line);
        if (tokens.empty()) continue;

        const auto& head = tokens.front();
        if (head.text == "groups:") {
            if (have_groups) throw ParseError("duplicate groups line", line_no, head.column);
            if (tokens.size() < 2) throw ParseError("groups line lists no groups", line_no, head.column);
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                groups.push_back(parse_group_entry(tokens[i], i - 1, line_no));
            }
            have_groups = true;
        } else if (head.text == "term:") {
            if (!have_groups) throw ParseError("term before groups line", line_no, head.column);
            if (tokens.size() != groups.size() + 2) {
                throw ParseError("term needs a coefficient and " + std::to_string(groups.size()) + " symbols", line_no,
                                 head.column);
            }
            auto coeff = GaussianRational::parse(tokens[1].text);
            if (!coeff) {
                throw ParseError("invalid coefficient '" + std::string(tokens[1].text) + "'", line_no,
                                 tokens[1].column);
            }
            Term term{{}, *coeff};
            for (std::size_t i = 0; i < groups.size(); ++i) {
                const auto& tok = tokens[i + 2];
                auto sym = parse_symbol(tok.text);
                if (!sym) throw ParseError("invalid symbol '" + std::string(tok.text) + "'", line_no, tok.column);
                if (!symbol_legal(*sym, groups[i].kind)) {
                    throw ParseError(std::string("symbol '") + to_char(*sym) + "' is illegal for " +
                                         to_char(groups[i].kind) + " group " + std::to_string(i),
                                     line_no, tok.column);
                }
                term.symbols.push_back(*sym);
            }
            terms.push_back(std::move(term));
        } else {
            throw ParseError("expected 'groups:' or 'term:', got '" + std::string(head.text) + "'", line_no,
                             head.column);
        }
    }
    if (!have_groups) throw ParseError("missing groups line");
    if (terms.empty()) throw ParseError("state has no terms");
    return normalize_terms(SymbolicState(std::move(groups), std::move(terms)));
}

inline SymbolicState parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        std::vector<GroupSpec> groups;
        const auto& jgroups = doc.at("groups");
        if (!jgroups.is_array() || jgroups.empty()) throw ParseError("'groups' must be a nonempty array");
        for (std::size_t i = 0; i < jgroups.size(); ++i) {
            const std::string kind = jgroups[i].at("kind").get<std::string>();
            const int size = jgroups[i].at("size").get<int>();
            if (kind != "G" && kind != "W") throw ParseError("group kind must be \"G\" or \"W\"");
            if (size < 2) throw ParseError("group size must be >= 2");
            groups.push_back({i, size, kind == "G" ? BasisKind::ghz : BasisKind::w});
        }
        std::vector<Term> terms;
        for (const auto& jt : doc.at("terms")) {
            auto coeff = GaussianRational::parse(jt.at("coeff").get<std::string>());
            if (!coeff) throw ParseError("invalid coefficient '" + jt.at("coeff").get<std::string>() + "'");
            Term term{{}, *coeff};
            const auto& jsyms = jt.at("symbols");
            std::vector<std::string> raw;
            if (jsyms.is_string()) {
                for (char c : jsyms.get<std::string>()) raw.emplace_back(1, c);
            } else {
                raw = jsyms.get<std::vector<std::string>>();
            }
            if (raw.size() != groups.size()) throw ParseError("term symbol count differs from group count");
            for (std::size_t i = 0; i < raw.size(); ++i) {
                auto sym = parse_symbol(raw[i]);
                if (!sym) throw ParseError("invalid symbol '" + raw[i] + "'");
                if (!symbol_legal(*sym, groups[i].kind)) {
                    throw ParseError(std::string("symbol '") + to_char(*sym) + "' is illegal for " +
                                     to_char(groups[i].kind) + " group " + std::to_string(i));
                }
                term.symbols.push_back(*sym);
            }
            terms.push_back(std::move(term));
        }
        if (terms.empty()) throw ParseError("state has no terms");
        return normalize_terms(SymbolicState(std::move(groups), std::move(terms)));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed state JSON: ") + e.what());
    }
}

}  // namespace detail

// Parses a state document. JSON is detected by a leading '{'; anything else is
// the line-based text format. The result is validated and normalized.
inline SymbolicState parse_state(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return detail::parse_json(text);
    return detail::parse_text(text);
}

inline nlohmann::json state_to_json(const SymbolicState& state) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : state.groups()) groups.push_back({{"kind", std::string(1, to_char(g.kind))}, {"size", g.size}});
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : state.terms()) {
        terms.push_back({{"coeff", t.coeff.to_string()}, {"symbols", symbols_to_string(t.symbols)}});
    }
    return {{"groups", groups}, {"terms", terms}};
}

inline std::string serialize_state(const SymbolicState& state, StateFormat format = StateFormat::text) {
    if (format == StateFormat::json) return state_to_json(state).dump(2) + "\n";
    std::ostringstream out;
    out << "groups:";
    for (const auto& g : state.groups()) out << ' ' << to_char(g.kind) << ':' << g.size;
    out << '\n';
    for (const auto& t : state.terms()) {
        out << "term: " << t.coeff.to_string();
        for (auto s : t.symbols) out << ' ' << to_char(s);
        out << '\n';
    }
    return out.str();
}

}  // namespace ghzw
