#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trel/ast.hpp"
#include "trel/error.hpp"

namespace trel {

// ---------------------------------------------------------------------------
// Interpretations
// ---------------------------------------------------------------------------

/// A finite interpretation: a nonempty ordered universe of named objects plus
/// closed-world extensions (tuples not listed are false). Immutable once built.
struct Interpretation {
    struct Extension {
        int arity = 0;
        std::set<std::vector<std::string>> tuples;
    };

    std::vector<std::string> universe;
    std::vector<std::pair<std::string, Extension>> predicates; // declaration order

    bool has_constant(const std::string& name) const {
        for (const auto& u : universe)
            if (u == name) return true;
        return false;
    }

    const Extension* find(const std::string& pred) const {
        for (const auto& [name, ext] : predicates)
            if (name == pred) return &ext;
        return nullptr;
    }

    const Extension& require(const std::string& pred) const {
        const Extension* e = find(pred);
        if (!e) throw SemanticError("undeclared predicate " + pred);
        return *e;
    }

    void declare(const std::string& pred, int arity) {
        if (find(pred)) throw SemanticError("duplicate predicate declaration " + pred);
        predicates.emplace_back(pred, Extension{arity, {}});
    }

    void add_tuple(const std::string& pred, std::vector<std::string> tuple) {
        for (auto& [name, ext] : predicates) {
            if (name != pred) continue;
            if (static_cast<int>(tuple.size()) != ext.arity)
                throw SemanticError("arity mismatch for predicate " + pred);
            for (const auto& c : tuple)
                if (!has_constant(c))
                    throw SemanticError("unknown constant '" + c + "' in extension of " + pred);
            ext.tuples.insert(std::move(tuple));
            return;
        }
        throw SemanticError("undeclared predicate " + pred);
    }

    bool holds(const std::string& pred, const std::vector<std::string>& args) const {
        const Extension& ext = require(pred);
        if (static_cast<int>(args.size()) != ext.arity)
            throw SemanticError("arity mismatch for predicate " + pred);
        return ext.tuples.count(args) != 0;
    }
};

/// Truth of a ground atom under the closed-world extensions.
inline bool predicate_truth(const Interpretation& m, const FormulaPtr& atom) {
    if (atom->kind != FormulaKind::Atom)
        throw SemanticError("predicate_truth expects an atomic formula");
    std::vector<std::string> args;
    args.reserve(atom->args.size());
    for (const Term& t : atom->args) {
        if (t.kind != TermKind::Constant)
            throw SemanticError("atom " + print_formula(atom) + " is not ground");
        if (!m.has_constant(t.name))
            throw SemanticError("unknown constant '" + t.name + "'");
        args.push_back(t.name);
    }
    return m.holds(atom->pred, args);
}

// ---------------------------------------------------------------------------
// Model file format
// ---------------------------------------------------------------------------
//
//   universe: a b c
//   pred J/1:
//   pred S/1: a b
//   pred F/2: (a,b) (b,c)
//
// '#' starts a line comment. A 1-ary tuple is a bare name; k-ary tuples use
// parentheses; a 0-ary predicate is made true with the empty tuple "()".

namespace detail {

inline std::string strip_line(const std::string& line) {
    std::string s = line;
    auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline std::vector<std::vector<std::string>> parse_tuples(const std::string& text, int line_no) {
    std::vector<std::vector<std::string>> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&] { while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto read_name = [&]() -> std::string {
        std::size_t start = i;
        while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
        std::string name = text.substr(start, i - start);
        if (!is_valid_var_name(name))
            throw ParseError("invalid constant name in model file, line " + std::to_string(line_no));
        return name;
    };
    while (true) {
        skip_ws();
        if (i >= n) break;
        if (text[i] == '(') {
            ++i;
            std::vector<std::string> tuple;
            skip_ws();
            if (i < n && text[i] == ')') { // 0-ary tuple
                ++i;
                out.push_back(std::move(tuple));
                continue;
            }
            while (true) {
                skip_ws();
                tuple.push_back(read_name());
                skip_ws();
                if (i < n && text[i] == ',') { ++i; continue; }
                if (i < n && text[i] == ')') { ++i; break; }
                throw ParseError("expected ',' or ')' in tuple, line " + std::to_string(line_no));
            }
            out.push_back(std::move(tuple));
        } else {
            out.push_back({read_name()});
        }
    }
    return out;
}

} // namespace detail

inline Interpretation parse_model(const std::string& text) {
    Interpretation m;
    bool have_universe = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::strip_line(raw);
        if (line.empty()) continue;
        if (line.rfind("universe:", 0) == 0) {
            if (have_universe)
                throw ParseError("duplicate universe line, line " + std::to_string(line_no));
            have_universe = true;
            std::istringstream ws(line.substr(9));
            std::string name;
            while (ws >> name) {
                if (!is_valid_var_name(name))
                    throw ParseError("invalid universe element '" + name + "', line " +
                                     std::to_string(line_no));
                if (m.has_constant(name))
                    throw SemanticError("duplicate universe element '" + name + "'");
                m.universe.push_back(name);
            }
            if (m.universe.empty()) throw SemanticError("empty universe");
            continue;
        }
        if (line.rfind("pred", 0) == 0) {
            if (!have_universe)
                throw ParseError("predicate declared before universe, line " + std::to_string(line_no));
            std::size_t i = 4;
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t start = i;
            while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) ++i;
            std::string name = line.substr(start, i - start);
            if (!is_valid_pred_name(name))
                throw ParseError("invalid predicate name, line " + std::to_string(line_no));
            if (i >= line.size() || line[i] != '/')
                throw ParseError("expected '/<arity>' after predicate name, line " + std::to_string(line_no));
            ++i;
            start = i;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
            if (start == i)
                throw ParseError("expected arity digits, line " + std::to_string(line_no));
            int arity = std::stoi(line.substr(start, i - start));
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i >= line.size() || line[i] != ':')
                throw ParseError("expected ':' after predicate declaration, line " + std::to_string(line_no));
            ++i;
            m.declare(name, arity);
            for (auto& tuple : detail::parse_tuples(line.substr(i), line_no))
                m.add_tuple(name, std::move(tuple));
            continue;
        }
        throw ParseError("unrecognized model line, line " + std::to_string(line_no));
    }
    if (!have_universe) throw SemanticError("empty universe");
    return m;
}

/// Inverse of parse_model: parse_model(format_model(m)) reproduces m.
inline std::string format_model(const Interpretation& m) {
    std::ostringstream out;
    out << "universe:";
    for (const auto& u : m.universe) out << ' ' << u;
    out << '\n';
    for (const auto& [name, ext] : m.predicates) {
        out << "pred " << name << '/' << ext.arity << ':';
        for (const auto& tuple : ext.tuples) {
            out << ' ';
            if (ext.arity == 1) {
                out << tuple[0];
            } else {
                out << '(';
                for (std::size_t i = 0; i < tuple.size(); ++i) {
                    if (i) out << ',';
                    out << tuple[i];
                }
                out << ')';
            }
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Signatures and exhaustive model enumeration
// ---------------------------------------------------------------------------

struct Signature {
    std::vector<std::pair<std::string, int>> predicates;
};

/// Parses "F/2,G/2".
inline Signature parse_signature(const std::string& text) {
    Signature sig;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto slash = item.find('/');
        if (slash == std::string::npos)
            throw ParseError("expected NAME/ARITY in signature: " + item);
        std::string name = item.substr(0, slash);
        std::string arity = item.substr(slash + 1);
        if (!is_valid_pred_name(name))
            throw ParseError("invalid predicate name in signature: " + name);
        if (arity.empty() || arity.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("invalid arity in signature: " + item);
        for (const auto& [n, a] : sig.predicates)
            if (n == name) throw SemanticError("duplicate predicate in signature: " + name);
        sig.predicates.emplace_back(name, std::stoi(arity));
    }
    if (sig.predicates.empty()) throw ParseError("empty signature");
    return sig;
}

/// Indexed enumeration of every interpretation of `sig` over the canonical
/// universe {e1..en}. Each k-ary predicate contributes 2^(n^k) extension
/// choices; at(i) is deterministic, so consumers may fan out over indices.
class ModelEnumerator {
public:
    ModelEnumerator(Signature sig, int universe_size)
        : sig_(std::move(sig)), n_(universe_size) {
        if (n_ < 1) throw SemanticError("universe size must be at least 1");
        total_bits_ = 0;
        for (const auto& [name, arity] : sig_.predicates) {
            std::uint64_t tuples = 1;
            for (int i = 0; i < arity; ++i) {
                tuples *= static_cast<std::uint64_t>(n_);
                if (tuples > 62) throw SemanticError("extension space too large to enumerate");
            }
            tuple_counts_.push_back(tuples);
            total_bits_ += tuples;
            if (total_bits_ > 62) throw SemanticError("model space too large to enumerate");
        }
    }

    std::uint64_t count() const { return std::uint64_t{1} << total_bits_; }

    Interpretation at(std::uint64_t index) const {
        Interpretation m;
        for (int i = 1; i <= n_; ++i) m.universe.push_back("e" + std::to_string(i));
        // The last predicate's extension bits vary fastest.
        std::vector<std::uint64_t> masks(sig_.predicates.size());
        for (std::size_t p = sig_.predicates.size(); p-- > 0;) {
            std::uint64_t bits = tuple_counts_[p];
            masks[p] = index & ((std::uint64_t{1} << bits) - 1);
            index >>= bits;
        }
        for (std::size_t p = 0; p < sig_.predicates.size(); ++p) {
            const auto& [name, arity] = sig_.predicates[p];
            m.declare(name, arity);
            for (std::uint64_t t = 0; t < tuple_counts_[p]; ++t) {
                if (!((masks[p] >> t) & 1)) continue;
                m.add_tuple(name, tuple_at(t, arity, m.universe));
            }
        }
        return m;
    }

    const Signature& signature() const { return sig_; }
    int universe_size() const { return n_; }

private:
    // Tuple t in lexicographic order, leftmost position most significant.
    std::vector<std::string> tuple_at(std::uint64_t t, int arity,
                                      const std::vector<std::string>& universe) const {
        std::vector<std::string> tuple(static_cast<std::size_t>(arity));
        for (int pos = arity - 1; pos >= 0; --pos) {
            tuple[static_cast<std::size_t>(pos)] = universe[t % n_];
            t /= n_;
        }
        return tuple;
    }

    Signature sig_;
    int n_;
    std::vector<std::uint64_t> tuple_counts_;
    std::uint64_t total_bits_;
};

} // namespace trel
