#include "sltl/syntax.hpp"

#include "sltl/errors.hpp"

#include <unordered_map>

namespace sltl {

namespace {

class NnfBuilder {
public:
    Formula pos(const Formula& f) {
        if (auto it = pos_memo_.find(f); it != pos_memo_.end())
            return it->second;
        Formula r;
        switch (f.op()) {
        case Op::Prop:
        case Op::Top:
        case Op::Bottom:
        case Op::Sharper:
            r = f;
            break;
        case Op::Not:
            r = negated(f.child());
            break;
        case Op::And:
            r = conj(pos(f.lhs()), pos(f.rhs()));
            break;
        case Op::Or:
            r = disj(pos(f.lhs()), pos(f.rhs()));
            break;
        case Op::Diamond:
            r = diamond(f.standpoint(), pos(f.child()));
            break;
        case Op::Box:
            r = box(f.standpoint(), pos(f.child()));
            break;
        case Op::Next:
            r = next(pos(f.child()));
            break;
        case Op::Until:
            r = until(pos(f.lhs()), pos(f.rhs()));
            break;
        }
        pos_memo_.emplace(f, r);
        return r;
    }

    Formula negated(const Formula& f) {
        if (auto it = neg_memo_.find(f); it != neg_memo_.end())
            return it->second;
        Formula r;
        switch (f.op()) {
        case Op::Prop:
        case Op::Sharper:
        case Op::Top:
        case Op::Bottom:
            r = neg(f);
            break;
        case Op::Not:
            r = pos(f.child());
            break;
        case Op::And:
            r = disj(negated(f.lhs()), negated(f.rhs()));
            break;
        case Op::Or:
            r = conj(negated(f.lhs()), negated(f.rhs()));
            break;
        case Op::Diamond:
            r = box(f.standpoint(), negated(f.child()));
            break;
        case Op::Box:
            r = diamond(f.standpoint(), negated(f.child()));
            break;
        case Op::Next:
            r = next(negated(f.child()));
            break;
        case Op::Until:
            r = neg(until(pos(f.lhs()), pos(f.rhs())));
            break;
        }
        neg_memo_.emplace(f, r);
        return r;
    }

private:
    std::unordered_map<Formula, Formula, FormulaHash> pos_memo_;
    std::unordered_map<Formula, Formula, FormulaHash> neg_memo_;
};

bool has_temporal_under_modality(const Formula& f, bool under) {
    if (f.is_temporal_op() && under)
        return true;
    bool inner = under || f.is_modal_op();
    if (f.lhs() && has_temporal_under_modality(f.lhs(), inner))
        return true;
    return f.rhs() && has_temporal_under_modality(f.rhs(), inner);
}

template <class Visit>
void preorder(const Formula& f, Visit&& visit) {
    std::vector<Formula> stack{f};
    while (!stack.empty()) {
        Formula g = std::move(stack.back());
        stack.pop_back();
        visit(g);
        if (g.rhs())
            stack.push_back(g.rhs());
        if (g.lhs())
            stack.push_back(g.lhs());
    }
}

} // namespace

Formula to_nnf(const Formula& f) {
    NnfBuilder b;
    return b.pos(f);
}

std::string_view to_string(Fragment fr) {
    switch (fr) {
    case Fragment::PSL:
        return "PSL";
    case Fragment::PureLTL:
        return "PureLTL";
    case Fragment::LtlPsl:
        return "LtlPsl";
    case Fragment::FullSLTL:
        return "FullSLTL";
    }
    return "?";
}

bool is_temporal_free(const Formula& f) {
    return !f.contains_op(Op::Next) && !f.contains_op(Op::Until);
}

bool is_standpoint_free(const Formula& f) {
    return !f.contains_op(Op::Diamond) && !f.contains_op(Op::Box) && !f.contains_op(Op::Sharper);
}

Fragment classify(const Formula& f) {
    if (is_temporal_free(f))
        return Fragment::PSL;
    if (is_standpoint_free(f))
        return Fragment::PureLTL;
    if (!has_temporal_under_modality(f, false))
        return Fragment::LtlPsl;
    return Fragment::FullSLTL;
}

Vocabulary vocab(const Formula& f) {
    Vocabulary v;
    for (const auto& g : subformulas(f)) {
        switch (g.op()) {
        case Op::Prop:
            v.props.insert(g.prop_name());
            break;
        case Op::Sharper:
            v.standpoints.insert(g.standpoint());
            v.standpoints.insert(g.rhs_standpoint());
            v.sharpening_atoms.emplace(g.standpoint(), g.rhs_standpoint());
            break;
        case Op::Diamond:
        case Op::Box:
            v.standpoints.insert(g.standpoint());
            break;
        default:
            break;
        }
    }
    if (!v.standpoints.empty())
        v.standpoints.insert(Standpoint::universal());
    return v;
}

std::vector<Standpoint> standpoints_in_order(const Formula& f) {
    std::vector<Standpoint> out;
    std::set<Standpoint> seen;
    auto add = [&](const Standpoint& s) {
        if (!s.is_universal() && seen.insert(s).second)
            out.push_back(s);
    };
    preorder(f, [&](const Formula& g) {
        if (g.op() == Op::Sharper) {
            add(g.standpoint());
            add(g.rhs_standpoint());
        } else if (g.is_modal_op()) {
            add(g.standpoint());
        }
    });
    return out;
}

std::vector<SharpeningAtom> sharpening_atoms_in_order(const Formula& f) {
    std::vector<SharpeningAtom> out;
    std::set<SharpeningAtom> seen;
    preorder(f, [&](const Formula& g) {
        if (g.op() == Op::Sharper) {
            SharpeningAtom a{g.standpoint(), g.rhs_standpoint()};
            if (seen.insert(a).second)
                out.push_back(a);
        }
    });
    return out;
}

Formula substitute_sharper(const Formula& f, const std::set<SharpeningAtom>& positive) {
    std::unordered_map<Formula, Formula, FormulaHash> memo;
    auto go = [&](auto&& self, const Formula& g) -> Formula {
        if (auto it = memo.find(g); it != memo.end())
            return it->second;
        Formula r;
        switch (g.op()) {
        case Op::Sharper:
            r = positive.contains({g.standpoint(), g.rhs_standpoint()}) ? top() : bottom();
            break;
        case Op::Prop:
        case Op::Top:
        case Op::Bottom:
            r = g;
            break;
        case Op::Not:
            r = neg(self(self, g.child()));
            break;
        case Op::And:
            r = conj(self(self, g.lhs()), self(self, g.rhs()));
            break;
        case Op::Or:
            r = disj(self(self, g.lhs()), self(self, g.rhs()));
            break;
        case Op::Diamond:
            r = diamond(g.standpoint(), self(self, g.child()));
            break;
        case Op::Box:
            r = box(g.standpoint(), self(self, g.child()));
            break;
        case Op::Next:
            r = next(self(self, g.child()));
            break;
        case Op::Until:
            r = until(self(self, g.lhs()), self(self, g.rhs()));
            break;
        }
        memo.emplace(g, r);
        return r;
    };
    return go(go, f);
}

} // namespace sltl
