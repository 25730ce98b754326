#pragma once

// Propositional formulae over an explicit, closed variable universe: syntax
// tree, parser, printer, evaluation and exhaustive model enumeration.

#include "wmerge/error.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wmerge {

inline constexpr std::size_t kDefaultEnumerationLimit = 24;
inline constexpr std::size_t kMaxUniverseSize = 31;

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s.front());
    if (!(std::isalpha(head) || head == '_')) return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

/// Ordered list of distinct variable names. Position i is the variable's
/// index; models store one bit per position.
class Universe {
public:
    Universe() = default;

    explicit Universe(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw ValidationError("universe must contain at least one variable");
        if (names_.size() > kMaxUniverseSize)
            throw ValidationError("universe larger than " + std::to_string(kMaxUniverseSize) +
                                  " variables is not supported");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            const auto& name = names_[i];
            if (!is_identifier(name)) throw ValidationError("invalid variable name '" + name + "'");
            if (name == "true" || name == "false")
                throw ValidationError("'" + name + "' is reserved and cannot name a variable");
            if (!index_.emplace(name, i).second)
                throw ValidationError("duplicate variable '" + name + "'");
        }
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const Universe& a, const Universe& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Total truth assignment. Variable 0 is the most significant bit so that
/// integer order on `bits` is lexicographic order on the assignment tuple
/// (false < true).
class Model {
public:
    Model() = default;
    Model(std::uint32_t bits, std::size_t width) : bits_(bits), width_(width) {
        if (width > kMaxUniverseSize) throw ValidationError("model width too large");
        if (width < 32 && (bits >> width) != 0) throw ValidationError("model bits exceed width");
    }

    static Model from_values(const std::vector<bool>& values) {
        std::uint32_t bits = 0;
        for (bool v : values) bits = (bits << 1) | (v ? 1u : 0u);
        return Model(bits, values.size());
    }

    std::uint32_t bits() const noexcept { return bits_; }
    std::size_t width() const noexcept { return width_; }

    bool get(std::size_t var) const noexcept { return (bits_ >> shift(var)) & 1u; }

    Model with(std::size_t var, bool value) const {
        auto mask = std::uint32_t{1} << shift(var);
        return Model(value ? (bits_ | mask) : (bits_ & ~mask), width_);
    }

    friend bool operator==(const Model&, const Model&) = default;
    friend auto operator<=>(const Model& a, const Model& b) {
        if (auto c = a.width_ <=> b.width_; c != 0) return c;
        return a.bits_ <=> b.bits_;
    }

private:
    std::size_t shift(std::size_t var) const noexcept { return width_ - 1 - var; }

    std::uint32_t bits_ = 0;
    std::size_t width_ = 0;
};

/// Sorted, duplicate-free list of models.
using ModelSet = std::vector<Model>;

inline void normalize(ModelSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool contains(const ModelSet& s, const Model& m) {
    return std::binary_search(s.begin(), s.end(), m);
}

inline ModelSet set_intersection(const ModelSet& a, const ModelSet& b) {
    ModelSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline ModelSet set_union(const ModelSet& a, const ModelSet& b) {
    ModelSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline ModelSet set_difference(const ModelSet& a, const ModelSet& b) {
    ModelSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const ModelSet& a, const ModelSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Immutable propositional syntax tree; copies share structure.
class Formula {
public:
    enum class Op { True, False, Var, Not, And, Or, Implies, Iff };

    /// The constant `true`.
    Formula() : Formula(make(Op::True)) {}

    static Formula constant(bool value) { return Formula(make(value ? Op::True : Op::False)); }

    static Formula variable(std::size_t index) {
        auto n = make(Op::Var);
        n->var = index;
        return Formula(std::move(n));
    }

    static Formula negation(const Formula& f) {
        auto n = make(Op::Not);
        n->lhs = f.node_;
        return Formula(std::move(n));
    }

    static Formula binary(Op op, const Formula& a, const Formula& b) {
        if (op == Op::True || op == Op::False || op == Op::Var || op == Op::Not)
            throw ValidationError("not a binary connective");
        auto n = make(op);
        n->lhs = a.node_;
        n->rhs = b.node_;
        return Formula(std::move(n));
    }

    /// Left-nested conjunction; the empty conjunction is `true`.
    static Formula all_of(std::span<const Formula> fs) {
        if (fs.empty()) return constant(true);
        Formula acc = fs.front();
        for (std::size_t i = 1; i < fs.size(); ++i) acc = binary(Op::And, acc, fs[i]);
        return acc;
    }

    /// Left-nested disjunction; the empty disjunction is `false`.
    static Formula any_of(std::span<const Formula> fs) {
        if (fs.empty()) return constant(false);
        Formula acc = fs.front();
        for (std::size_t i = 1; i < fs.size(); ++i) acc = binary(Op::Or, acc, fs[i]);
        return acc;
    }

    Op op() const noexcept { return node_->op; }
    std::size_t var() const noexcept { return node_->var; }
    Formula lhs() const { return Formula(node_->lhs); }
    Formula rhs() const { return Formula(node_->rhs); }

    /// Largest variable index mentioned, if any.
    std::optional<std::size_t> max_variable() const { return max_var(*node_); }

    bool evaluate(const Model& m) const { return eval(*node_, m); }

    /// Structural equality.
    friend bool operator==(const Formula& a, const Formula& b) { return same(*a.node_, *b.node_); }

private:
    struct Node {
        Op op = Op::True;
        std::size_t var = 0;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<Node> make(Op op) {
        auto n = std::make_shared<Node>();
        n->op = op;
        return n;
    }

    static bool eval(const Node& n, const Model& m) {
        switch (n.op) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Var: return m.get(n.var);
        case Op::Not: return !eval(*n.lhs, m);
        case Op::And: return eval(*n.lhs, m) && eval(*n.rhs, m);
        case Op::Or: return eval(*n.lhs, m) || eval(*n.rhs, m);
        case Op::Implies: return !eval(*n.lhs, m) || eval(*n.rhs, m);
        case Op::Iff: return eval(*n.lhs, m) == eval(*n.rhs, m);
        }
        return false;
    }

    static std::optional<std::size_t> max_var(const Node& n) {
        switch (n.op) {
        case Op::True:
        case Op::False: return std::nullopt;
        case Op::Var: return n.var;
        case Op::Not: return max_var(*n.lhs);
        default: {
            auto a = max_var(*n.lhs);
            auto b = max_var(*n.rhs);
            if (!a) return b;
            if (!b) return a;
            return std::max(*a, *b);
        }
        }
    }

    static bool same(const Node& a, const Node& b) {
        if (&a == &b) return true;
        if (a.op != b.op) return false;
        switch (a.op) {
        case Op::True:
        case Op::False: return true;
        case Op::Var: return a.var == b.var;
        case Op::Not: return same(*a.lhs, *b.lhs);
        default: return same(*a.lhs, *b.lhs) && same(*a.rhs, *b.rhs);
        }
    }

    std::shared_ptr<const Node> node_;
};

inline Formula operator!(const Formula& f) { return Formula::negation(f); }
inline Formula operator&&(const Formula& a, const Formula& b) { return Formula::binary(Formula::Op::And, a, b); }
inline Formula operator||(const Formula& a, const Formula& b) { return Formula::binary(Formula::Op::Or, a, b); }

inline bool evaluate(const Formula& f, const Model& m) { return f.evaluate(m); }

/// Throws UnknownVariableError when `f` mentions an index outside `u`.
inline void check_in_universe(const Formula& f, const Universe& u) {
    if (auto mv = f.max_variable(); mv && *mv >= u.size())
        throw UnknownVariableError("#" + std::to_string(*mv));
}

namespace detail {

class FormulaParser {
public:
    FormulaParser(std::string_view text, const Universe& u) : text_(text), universe_(u) {}

    Formula parse() {
        Formula f = parse_iff();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(std::string_view tok) {
        skip_ws();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    // "->" must not be taken as the tail of "<->".
    bool at_implies() {
        skip_ws();
        return text_.substr(pos_, 2) == "->";
    }

    Formula parse_iff() {
        Formula lhs = parse_imp();
        if (accept("<->")) return Formula::binary(Formula::Op::Iff, lhs, parse_iff());
        return lhs;
    }

    Formula parse_imp() {
        Formula lhs = parse_or();
        if (at_implies()) {
            pos_ += 2;
            return Formula::binary(Formula::Op::Implies, lhs, parse_imp());
        }
        return lhs;
    }

    Formula parse_or() {
        Formula acc = parse_and();
        while (accept("|")) acc = Formula::binary(Formula::Op::Or, acc, parse_and());
        return acc;
    }

    Formula parse_and() {
        Formula acc = parse_unary();
        while (accept("&")) acc = Formula::binary(Formula::Op::And, acc, parse_unary());
        return acc;
    }

    Formula parse_unary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '!') {
            ++pos_;
            return Formula::negation(parse_unary());
        }
        if (c == '(') {
            ++pos_;
            Formula inner = parse_iff();
            if (!accept(")")) fail("expected ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            auto word = text_.substr(start, pos_ - start);
            if (word == "true") return Formula::constant(true);
            if (word == "false") return Formula::constant(false);
            auto idx = universe_.index_of(word);
            if (!idx) throw UnknownVariableError(std::string(word));
            return Formula::variable(*idx);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const Universe& universe_;
    std::size_t pos_ = 0;
};

inline int precedence(Formula::Op op) {
    switch (op) {
    case Formula::Op::Iff: return 1;
    case Formula::Op::Implies: return 2;
    case Formula::Op::Or: return 3;
    case Formula::Op::And: return 4;
    default: return 5;
    }
}

inline void print_into(std::string& out, const Formula& f, const Universe& u, int min_prec) {
    using Op = Formula::Op;
    const int p = precedence(f.op());
    const bool parens = p < min_prec;
    if (parens) out += '(';
    switch (f.op()) {
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Var: out += u.name(f.var()); break;
    case Op::Not:
        out += '!';
        print_into(out, f.lhs(), u, 5);
        break;
    case Op::And:
    case Op::Or: {
        print_into(out, f.lhs(), u, p);
        out += f.op() == Op::And ? " & " : " | ";
        print_into(out, f.rhs(), u, p + 1);
        break;
    }
    case Op::Implies:
    case Op::Iff: {
        print_into(out, f.lhs(), u, p + 1);
        out += f.op() == Op::Implies ? " -> " : " <-> ";
        print_into(out, f.rhs(), u, p);
        break;
    }
    }
    if (parens) out += ')';
}

}  // namespace detail

/// Parses `text` against the closed universe `u`.
///
/// Grammar: iff := imp ("<->" iff)? ; imp := or ("->" imp)? ;
/// or := and ("|" and)* ; and := unary ("&" unary)* ;
/// unary := "!" unary | "(" iff ")" | "true" | "false" | ident.
inline Formula parse_formula(std::string_view text, const Universe& u) {
    return detail::FormulaParser(text, u).parse();
}

/// Minimal-parenthesis rendering that parses back to the same tree.
inline std::string print(const Formula& f, const Universe& u) {
    std::string out;
    detail::print_into(out, f, u, 0);
    return out;
}

/// All 2^n assignments in lexicographic order.
inline ModelSet all_models(const Universe& u, std::size_t limit = kDefaultEnumerationLimit) {
    const std::size_t n = u.size();
    if (n > limit)
        throw ResourceLimitError("universe of " + std::to_string(n) + " variables exceeds enumeration limit " +
                                 std::to_string(limit));
    ModelSet out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) out.emplace_back(static_cast<std::uint32_t>(b), n);
    return out;
}

/// Satisfying assignments of `f`, lexicographically ordered.
inline ModelSet models_of(const Formula& f, const Universe& u, std::size_t limit = kDefaultEnumerationLimit) {
    check_in_universe(f, u);
    const std::size_t n = u.size();
    if (n > limit)
        throw ResourceLimitError("universe of " + std::to_string(n) + " variables exceeds enumeration limit " +
                                 std::to_string(limit));
    ModelSet out;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        Model m(static_cast<std::uint32_t>(b), n);
        if (f.evaluate(m)) out.push_back(m);
    }
    return out;
}

inline bool is_satisfiable(const Formula& f, const Universe& u) { return !models_of(f, u).empty(); }

/// Conjunction of literals that holds in exactly `m`.
inline Formula model_term(const Model& m) {
    std::vector<Formula> lits;
    lits.reserve(m.width());
    for (std::size_t i = 0; i < m.width(); ++i) {
        auto v = Formula::variable(i);
        lits.push_back(m.get(i) ? v : !v);
    }
    return Formula::all_of(lits);
}

/// Disjunction of full terms with exactly the given models; `true` when the
/// set covers the whole universe and `false` when empty.
inline Formula formula_from_models(const ModelSet& models, const Universe& u) {
    if (models.size() == (std::size_t{1} << u.size())) return Formula::constant(true);
    std::vector<Formula> terms;
    terms.reserve(models.size());
    for (const auto& m : models) {
        if (m.width() != u.size()) throw ValidationError("model does not match universe");
        terms.push_back(model_term(m));
    }
    return Formula::any_of(terms);
}

/// Set-of-literals rendering, e.g. `{a,!b,c}`.
inline std::string to_string(const Model& m, const Universe& u) {
    if (m.width() != u.size()) throw ValidationError("model does not match universe");
    std::string out = "{";
    for (std::size_t i = 0; i < m.width(); ++i) {
        if (i) out += ',';
        if (!m.get(i)) out += '!';
        out += u.name(i);
    }
    out += '}';
    return out;
}

/// Inverse of `to_string` on literal lists; every variable must appear once.
inline Model model_from_literals(std::span<const std::string> literals, const Universe& u) {
    std::vector<int> seen(u.size(), -1);
    for (const auto& lit : literals) {
        bool positive = true;
        std::string_view name = lit;
        if (!name.empty() && name.front() == '!') {
            positive = false;
            name.remove_prefix(1);
        }
        auto idx = u.index_of(name);
        if (!idx) throw UnknownVariableError(std::string(name));
        if (seen[*idx] != -1) throw ValidationError("variable '" + std::string(name) + "' assigned twice");
        seen[*idx] = positive ? 1 : 0;
    }
    std::vector<bool> values(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (seen[i] == -1) throw ValidationError("variable '" + u.name(i) + "' not assigned");
        values[i] = seen[i] == 1;
    }
    return Model::from_values(values);
}

}  // namespace wmerge
