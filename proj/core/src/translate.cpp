#include "sltl/translate.hpp"

#include "sltl/errors.hpp"
#include "sltl/semantics.hpp"
#include "sltl/syntax.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>

namespace sltl {

namespace {

bool plain_identifier(const std::string& s) {
    static const std::set<std::string> keywords{"X", "U", "F", "G", "R", "true", "false"};
    if (s.empty() || keywords.contains(s))
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

std::string default_prop_name(const Standpoint& s) {
    return plain_identifier(s.name()) ? s.name() : "$sp_" + s.name();
}

const std::string& name_of(const StandpointProps& names, const Standpoint& s) {
    auto it = names.find(s);
    if (it == names.end())
        throw InternalError("no proposition assigned to standpoint " + to_string(s));
    return it->second;
}

/// Proposition for `s`, or `true` for the universal standpoint.
Formula standpoint_atom(const StandpointProps& names, const Standpoint& s) {
    return s.is_universal() ? top() : prop(name_of(names, s));
}

/// Homomorphic rebuild with a hook for the interesting cases.
Formula rebuild(const Formula& f, const std::function<std::optional<Formula>(const Formula&)>& hook,
                std::unordered_map<Formula, Formula, FormulaHash>& memo) {
    if (auto it = memo.find(f); it != memo.end())
        return it->second;
    Formula r;
    if (auto h = hook(f)) {
        r = *h;
    } else {
        auto go = [&](const Formula& g) { return rebuild(g, hook, memo); };
        switch (f.op()) {
        case Op::Prop:
        case Op::Top:
        case Op::Bottom:
        case Op::Sharper:
            r = f;
            break;
        case Op::Not:
            r = neg(go(f.child()));
            break;
        case Op::And:
            r = conj(go(f.lhs()), go(f.rhs()));
            break;
        case Op::Or:
            r = disj(go(f.lhs()), go(f.rhs()));
            break;
        case Op::Diamond:
            r = diamond(f.standpoint(), go(f.child()));
            break;
        case Op::Box:
            r = box(f.standpoint(), go(f.child()));
            break;
        case Op::Next:
            r = next(go(f.child()));
            break;
        case Op::Until:
            r = until(go(f.lhs()), go(f.rhs()));
            break;
        }
    }
    memo.emplace(f, r);
    return r;
}

} // namespace

std::vector<Partition> partitions(const Formula& f) {
    auto atoms = sharpening_atoms_in_order(f);
    const std::size_t n = atoms.size();
    if (n > 24)
        throw ResourceError("partitions", "formula has " + std::to_string(n) +
                                              " sharpening atoms; at most 24 are supported");
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        masks.push_back(m);
    auto rank = [n](std::uint32_t m) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1)
                idx.push_back(i);
        return idx;
    };
    std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb)
            return pa < pb;
        return rank(a) < rank(b);
    });
    std::vector<Partition> out;
    out.reserve(masks.size());
    for (auto m : masks) {
        Partition d;
        for (std::size_t i = 0; i < n; ++i)
            (m >> i & 1 ? d.i_minus : d.i_plus).insert(atoms[i]);
        out.push_back(std::move(d));
    }
    return out;
}

StandpointProps standpoint_props(const Formula& f) {
    Vocabulary v = vocab(f);
    StandpointProps names;
    for (const auto& s : v.standpoints) {
        if (s.is_universal())
            continue;
        bool ok = plain_identifier(s.name()) && !v.props.contains(s.name());
        names.emplace(s, ok ? s.name() : "$sp_" + s.name());
    }
    return names;
}

std::string sharpening_witness(const SharpeningAtom& atom) {
    return "$sh_" + atom.first.name() + "_" + atom.second.name();
}

std::vector<std::string> sharpening_witnesses(const std::vector<SharpeningAtom>& atoms) {
    std::vector<std::string> names;
    std::map<std::string, int> used;
    for (const auto& a : atoms)
        ++used[sharpening_witness(a)];
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        std::string n = sharpening_witness(atoms[i]);
        if (used[n] > 1)
            n += "_" + std::to_string(i);
        names.push_back(std::move(n));
    }
    return names;
}

Formula t1(const Formula& f) {
    if (!is_ptls5_formula(f))
        throw FragmentError("t1 expects a PTL x S5 formula (only <@*>/[@*], no sharpening atoms)");
    return f;
}

Formula t2(const Formula& f) { return t2(f, standpoint_props(f)); }

Formula t2(const Formula& f, const StandpointProps& names) {
    std::unordered_map<Formula, Formula, FormulaHash> memo;
    std::function<std::optional<Formula>(const Formula&)> hook;
    hook = [&](const Formula& g) -> std::optional<Formula> {
        auto go = [&](const Formula& h) { return rebuild(h, hook, memo); };
        switch (g.op()) {
        case Op::Sharper:
            return box(Standpoint::universal(), implies(standpoint_atom(names, g.standpoint()),
                                                        standpoint_atom(names, g.rhs_standpoint())));
        case Op::Diamond:
            if (g.standpoint().is_universal())
                return std::nullopt;
            return diamond(Standpoint::universal(), conj(standpoint_atom(names, g.standpoint()), go(g.child())));
        case Op::Box:
            if (g.standpoint().is_universal())
                return std::nullopt;
            return box(Standpoint::universal(), implies(standpoint_atom(names, g.standpoint()), go(g.child())));
        default:
            return std::nullopt;
        }
    };
    return rebuild(f, hook, memo);
}

Formula chi_n(std::span<const Standpoint> standpoints) {
    StandpointProps names;
    for (const auto& s : standpoints)
        if (!s.is_universal())
            names.emplace(s, default_prop_name(s));
    return chi_n(standpoints, names);
}

Formula chi_n(std::span<const Standpoint> standpoints, const StandpointProps& names) {
    if (standpoints.empty())
        return top();
    std::vector<Formula> nonempty;
    std::vector<Formula> rigid;
    for (const auto& s : standpoints) {
        if (s.is_universal())
            throw Error("chi_n: the universal standpoint needs no guard");
        Formula a = prop(name_of(names, s));
        nonempty.push_back(diamond(Standpoint::universal(), a));
        rigid.push_back(disj(always(a), always(neg(a))));
    }
    return conj(conj_all(nonempty), box(Standpoint::universal(), conj_all(rigid)));
}

Formula sltl_to_ptls5(const Formula& f) {
    StandpointProps names = standpoint_props(f);
    auto order = standpoints_in_order(f);
    return conj(chi_n(order, names), t2(f, names));
}

Formula psl_to_s5(const Formula& f) {
    if (!is_temporal_free(f))
        throw FragmentError("psl_to_s5 expects a PSL formula (no X or U)");
    StandpointProps names = standpoint_props(f);
    std::vector<Formula> guards;
    for (const auto& s : standpoints_in_order(f))
        guards.push_back(diamond(Standpoint::universal(), prop(name_of(names, s))));
    return conj(conj_all(guards), t2(f, names));
}

Formula until_to_strict(const Formula& f) {
    std::vector<Formula> defs;
    std::unordered_map<Formula, Formula, FormulaHash> memo;
    std::function<std::optional<Formula>(const Formula&)> hook;
    hook = [&](const Formula& g) -> std::optional<Formula> {
        if (g.op() != Op::Until)
            return std::nullopt;
        Formula a = rebuild(g.lhs(), hook, memo);
        Formula b = rebuild(g.rhs(), hook, memo);
        Formula var = prop("$u" + std::to_string(defs.size()));
        Formula strict = next(until(a, b));
        defs.push_back(box(Standpoint::universal(), always(iff(var, disj(b, conj(a, strict))))));
        return var;
    };
    Formula body = rebuild(f, hook, memo);
    if (defs.empty())
        return f;
    return conj(body, conj_all(defs));
}

Formula build_phi_d(const Formula& f, const Partition& d) {
    auto atoms = sharpening_atoms_in_order(f);
    std::set<SharpeningAtom> all(atoms.begin(), atoms.end());
    std::set<SharpeningAtom> covered = d.i_plus;
    for (const auto& a : d.i_minus)
        if (!covered.insert(a).second)
            throw Error("partition: atom " + to_string(sharper(a.first, a.second)) + " is in both I+ and I-");
    if (covered != all)
        throw Error("partition does not cover exactly the sharpening atoms of the formula");

    auto names = sharpening_witnesses(atoms);
    std::vector<Formula> body;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (d.i_plus.contains(atoms[i]))
            body.push_back(sharper(atoms[i].first, atoms[i].second));
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!d.i_minus.contains(atoms[i]))
            continue;
        Formula w = prop(names[i]);
        body.push_back(conj(diamond(atoms[i].first, w), neg(diamond(atoms[i].second, w))));
    }
    Formula psi = always(body.empty() ? top() : conj_all(body));
    return conj(substitute_sharper(f, d.i_plus), psi);
}

Formula gen_counter(std::size_t n) {
    if (n == 0)
        throw Error("counter width must be at least 1");
    auto p = [](std::size_t i) { return prop("p" + std::to_string(i)); };
    std::vector<Formula> zeros, ones, next_zeros;
    for (std::size_t i = 1; i <= n; ++i) {
        zeros.push_back(neg(p(i)));
        ones.push_back(p(i));
    }
    Formula all_zero = conj_all(zeros);
    std::vector<Formula> parts{all_zero, always(implies(conj_all(ones), next(all_zero)))};
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<Formula> guard{neg(p(i))};
        std::vector<Formula> effect;
        for (std::size_t j = i + 1; j <= n; ++j) {
            guard.push_back(p(j));
            effect.push_back(next(neg(p(j))));
        }
        effect.push_back(next(p(i)));
        for (std::size_t j = 1; j < i; ++j)
            effect.push_back(iff(p(j), next(p(j))));
        parts.push_back(always(implies(conj_all(guard), conj_all(effect))));
    }
    return conj_all(parts);
}

Formula gen_phi_c(std::size_t n) {
    if (n == 0)
        throw Error("counter width must be at least 1");
    Formula p = prop("p");
    Formula body = conj(conj(gen_counter(n), p), next(always(neg(p))));
    return always(diamond(Standpoint("s"), body));
}

} // namespace sltl
