#include "sltl/formula.hpp"

#include "sltl/errors.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_set>

namespace sltl {

Standpoint::Standpoint(std::string name) : name_(std::move(name)) {
    if (name_.empty())
        throw Error("standpoint name must be non-empty");
}

std::string to_string(const Standpoint& s) { return "@" + s.name(); }

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

} // namespace

Formula make_node(detail::Node&& n) {
    std::size_t h = std::hash<int>{}(static_cast<int>(n.op));
    switch (n.op) {
    case Op::Prop:
        h = mix(h, std::hash<std::string>{}(n.name));
        break;
    case Op::Sharper:
        h = mix(h, std::hash<std::string>{}(n.sp.name()));
        h = mix(h, std::hash<std::string>{}(n.sp2.name()));
        break;
    case Op::Diamond:
    case Op::Box:
        h = mix(h, std::hash<std::string>{}(n.sp.name()));
        break;
    default:
        break;
    }
    n.size = 1;
    n.ops = 1U << static_cast<unsigned>(n.op);
    if (n.a) {
        h = mix(h, n.a.hash());
        n.size += n.a.size();
        n.ops |= n.a.node_->ops;
    }
    if (n.b) {
        h = mix(h, n.b.hash());
        n.size += n.b.size();
        n.ops |= n.b.node_->ops;
    }
    n.hash = h;
    return Formula(std::make_shared<const detail::Node>(std::move(n)));
}

bool operator==(const Formula& x, const Formula& y) noexcept {
    if (x.node_ == y.node_)
        return true;
    if (!x.node_ || !y.node_)
        return false;
    const auto& a = *x.node_;
    const auto& b = *y.node_;
    if (a.hash != b.hash || a.size != b.size || a.op != b.op)
        return false;
    switch (a.op) {
    case Op::Prop:
        return a.name == b.name;
    case Op::Top:
    case Op::Bottom:
        return true;
    case Op::Sharper:
        return a.sp == b.sp && a.sp2 == b.sp2;
    case Op::Diamond:
    case Op::Box:
        return a.sp == b.sp && a.a == b.a;
    case Op::Not:
    case Op::Next:
        return a.a == b.a;
    case Op::And:
    case Op::Or:
    case Op::Until:
        return a.a == b.a && a.b == b.b;
    }
    return false;
}

Formula prop(std::string name) {
    if (name.empty())
        throw Error("proposition name must be non-empty");
    detail::Node n{.op = Op::Prop, .name = std::move(name)};
    return make_node(std::move(n));
}

Formula top() {
    static const Formula t = make_node(detail::Node{.op = Op::Top});
    return t;
}

Formula bottom() {
    static const Formula b = make_node(detail::Node{.op = Op::Bottom});
    return b;
}

Formula sharper(Standpoint s, Standpoint s2) {
    return make_node(detail::Node{.op = Op::Sharper, .sp = std::move(s), .sp2 = std::move(s2)});
}

Formula neg(Formula f) {
    switch (f.op()) {
    case Op::Not:
        return f.child();
    case Op::Top:
        return bottom();
    case Op::Bottom:
        return top();
    default:
        return make_node(detail::Node{.op = Op::Not, .a = std::move(f)});
    }
}

Formula conj(Formula a, Formula b) {
    return make_node(detail::Node{.op = Op::And, .a = std::move(a), .b = std::move(b)});
}

Formula disj(Formula a, Formula b) {
    return make_node(detail::Node{.op = Op::Or, .a = std::move(a), .b = std::move(b)});
}

Formula diamond(Standpoint s, Formula f) {
    return make_node(detail::Node{.op = Op::Diamond, .sp = std::move(s), .a = std::move(f)});
}

Formula box(Standpoint s, Formula f) {
    return make_node(detail::Node{.op = Op::Box, .sp = std::move(s), .a = std::move(f)});
}

Formula next(Formula f) { return make_node(detail::Node{.op = Op::Next, .a = std::move(f)}); }

Formula until(Formula a, Formula b) {
    return make_node(detail::Node{.op = Op::Until, .a = std::move(a), .b = std::move(b)});
}

Formula implies(Formula a, Formula b) { return disj(neg(std::move(a)), std::move(b)); }

Formula iff(Formula a, Formula b) { return conj(implies(a, b), implies(b, a)); }

Formula eventually(Formula f) { return until(top(), std::move(f)); }

Formula always(Formula f) { return neg(until(top(), neg(std::move(f)))); }

Formula conj_all(std::span<const Formula> fs) {
    if (fs.empty())
        return top();
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i)
        acc = conj(acc, fs[i]);
    return acc;
}

Formula disj_all(std::span<const Formula> fs) {
    if (fs.empty())
        return bottom();
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i)
        acc = disj(acc, fs[i]);
    return acc;
}

namespace {

bool is_binary(Op op) {
    return op == Op::And || op == Op::Or || op == Op::Until || op == Op::Sharper;
}

void print(std::string& out, const Formula& f);

void print_operand(std::string& out, const Formula& f) {
    if (is_binary(f.op())) {
        out += '(';
        print(out, f);
        out += ')';
    } else {
        print(out, f);
    }
}

void print(std::string& out, const Formula& f) {
    switch (f.op()) {
    case Op::Prop:
        out += f.prop_name();
        break;
    case Op::Top:
        out += "true";
        break;
    case Op::Bottom:
        out += "false";
        break;
    case Op::Sharper:
        out += to_string(f.standpoint());
        out += " <= ";
        out += to_string(f.rhs_standpoint());
        break;
    case Op::Not:
        out += '!';
        print_operand(out, f.child());
        break;
    case Op::Diamond:
        out += "<" + to_string(f.standpoint()) + "> ";
        print_operand(out, f.child());
        break;
    case Op::Box:
        out += "[" + to_string(f.standpoint()) + "] ";
        print_operand(out, f.child());
        break;
    case Op::Next:
        out += "X ";
        print_operand(out, f.child());
        break;
    case Op::And:
    case Op::Or:
    case Op::Until:
        print_operand(out, f.lhs());
        out += f.op() == Op::And ? " & " : f.op() == Op::Or ? " | " : " U ";
        print_operand(out, f.rhs());
        break;
    }
}

} // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print(out, f);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

std::vector<Formula> subformulas(const Formula& f) {
    std::vector<Formula> order;
    std::unordered_set<Formula, FormulaHash> seen;
    // Iterative post-order; formulas can be deep (e.g. long conjunction chains).
    std::vector<std::pair<Formula, bool>> stack{{f, false}};
    while (!stack.empty()) {
        auto [g, expanded] = stack.back();
        stack.pop_back();
        if (seen.contains(g))
            continue;
        if (expanded) {
            seen.insert(g);
            order.push_back(g);
            continue;
        }
        stack.emplace_back(g, true);
        if (g.rhs())
            stack.emplace_back(g.rhs(), false);
        if (g.lhs())
            stack.emplace_back(g.lhs(), false);
    }
    return order;
}

bool canonical_less(const Formula& a, const Formula& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return to_string(a) < to_string(b);
}

} // namespace sltl
