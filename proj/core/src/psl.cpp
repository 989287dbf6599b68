#include "sltl/psl.hpp"

#include "sltl/errors.hpp"
#include "sltl/syntax.hpp"
#include "sltl/translate.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <mutex>
#include <unordered_map>

namespace sltl {

SharpeningClosure::SharpeningClosure(std::span<const SharpeningAtom> atoms,
                                     const std::set<Standpoint>& universe)
    : universe_(universe) {
    universe_.insert(Standpoint::universal());
    for (const auto& [a, b] : atoms) {
        universe_.insert(a);
        universe_.insert(b);
    }
    for (const auto& s : universe_)
        image_[s] = {s, Standpoint::universal()};
    for (const auto& [a, b] : atoms)
        image_[a].insert(b);
    // Transitive closure by fixpoint; universes are tiny.
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [s, img] : image_) {
            std::set<Standpoint> grown = img;
            for (const auto& t : img) {
                const auto& other = image_.at(t);
                grown.insert(other.begin(), other.end());
            }
            if (grown.size() != img.size()) {
                img = std::move(grown);
                changed = true;
            }
        }
    }
}

const std::set<Standpoint>& SharpeningClosure::image(const Standpoint& s) const {
    auto it = image_.find(s);
    if (it == image_.end())
        throw InternalError("standpoint " + to_string(s) + " outside the sharpening universe");
    return it->second;
}

bool SharpeningClosure::entails(const Standpoint& s, const Standpoint& s2) const {
    if (s == s2 || s2.is_universal())
        return true;
    auto it = image_.find(s);
    return it != image_.end() && it->second.contains(s2);
}

SFamily SFamily::from(const SharpeningClosure& r) {
    SFamily fam;
    fam.sets.push_back(r.image(Standpoint::universal()));
    for (const auto& s : r.universe()) {
        const auto& img = r.image(s);
        if (std::find(fam.sets.begin(), fam.sets.end(), img) == fam.sets.end())
            fam.sets.push_back(img);
    }
    return fam;
}

void PSLModel::validate() const {
    if (s_family.sets.empty())
        throw ModelError("PSL model has an empty S-family");
    if (n == 0)
        throw ModelError("PSL model grid width must be at least 1");
    if (valuation.size() != s_family.sets.size() * n)
        throw ModelError("PSL model valuation does not cover exactly the grid");
    for (const auto& [cell, v] : valuation)
        if (cell.first >= s_family.sets.size() || cell.second < 1 || cell.second > n)
            throw ModelError("PSL model has a cell outside the grid");
}

namespace {

bool cell_in(const PSLModel& m, const Cell& c, const Standpoint& s) {
    return s.is_universal() || m.s_family.sets[c.first].contains(s);
}

bool carried(const SFamily& fam, const Standpoint& s) {
    if (s.is_universal())
        return true;
    return std::any_of(fam.sets.begin(), fam.sets.end(), [&](const auto& S) { return S.contains(s); });
}

} // namespace

namespace {

/// Modal subformulas have the same truth value in every cell, so each is evaluated once.
class CellEvaluator {
public:
    explicit CellEvaluator(const PSLModel& m) : m_(m) {}

    bool eval(const Cell& cell, const Formula& f) {
        switch (f.op()) {
        case Op::Prop: {
            auto it = m_.valuation.find(cell);
            if (it == m_.valuation.end())
                throw EvalError("cell outside the grid");
            return it->second.contains(f.prop_name());
        }
        case Op::Top:
            return true;
        case Op::Bottom:
            return false;
        case Op::Sharper:
            return global(f, [&] {
                for (const auto& s : {f.standpoint(), f.rhs_standpoint()})
                    if (!carried(m_.s_family, s))
                        throw EvalError("standpoint " + to_string(s) + " is carried by no cell");
                for (const auto& [c, v] : m_.valuation)
                    if (cell_in(m_, c, f.standpoint()) && !cell_in(m_, c, f.rhs_standpoint()))
                        return false;
                return true;
            });
        case Op::Not:
            return !eval(cell, f.child());
        case Op::And:
            return eval(cell, f.lhs()) && eval(cell, f.rhs());
        case Op::Or:
            return eval(cell, f.lhs()) || eval(cell, f.rhs());
        case Op::Diamond:
        case Op::Box:
            return global(f, [&] {
                if (!carried(m_.s_family, f.standpoint()))
                    throw EvalError("standpoint " + to_string(f.standpoint()) + " is carried by no cell");
                bool is_dia = f.op() == Op::Diamond;
                for (const auto& [c, v] : m_.valuation) {
                    if (!cell_in(m_, c, f.standpoint()))
                        continue;
                    bool h = eval(c, f.child());
                    if (is_dia && h)
                        return true;
                    if (!is_dia && !h)
                        return false;
                }
                return !is_dia;
            });
        case Op::Next:
        case Op::Until:
            throw EvalError("temporal operator in a PSL formula: " + to_string(f));
        }
        return false;
    }

private:
    template <class Compute>
    bool global(const Formula& f, Compute&& compute) {
        if (auto it = memo_.find(f); it != memo_.end())
            return it->second;
        bool v = compute();
        memo_.emplace(f, v);
        return v;
    }

    const PSLModel& m_;
    std::unordered_map<Formula, bool, FormulaHash> memo_;
};

} // namespace

bool psl_eval(const PSLModel& m, const Cell& cell, const Formula& f) {
    return CellEvaluator(m).eval(cell, f);
}

std::variant<NormalizedPsl, Unrepresentable> normalize_for_theorem(const Formula& f) {
    if (!is_temporal_free(f))
        throw FragmentError("normalize_for_theorem expects a PSL formula (no X or U)");
    NormalizedPsl out;
    std::vector<Formula> rest;
    std::vector<Formula> stack{f};
    while (!stack.empty()) {
        Formula g = stack.back();
        stack.pop_back();
        if (g.op() == Op::And) {
            stack.push_back(g.rhs());
            stack.push_back(g.lhs());
        } else if (g.op() == Op::Sharper) {
            SharpeningAtom a{g.standpoint(), g.rhs_standpoint()};
            if (std::find(out.phi1.begin(), out.phi1.end(), a) == out.phi1.end())
                out.phi1.push_back(a);
        } else {
            rest.push_back(g);
        }
    }
    for (const auto& g : rest)
        if (g.contains_op(Op::Sharper))
            return Unrepresentable{g};
    SharpeningAtom star{Standpoint::universal(), Standpoint::universal()};
    if (std::find(out.phi1.begin(), out.phi1.end(), star) == out.phi1.end())
        out.phi1.push_back(star);
    out.phi2 = to_nnf(conj_all(rest));
    return out;
}

namespace {

/// Set of propositional valuations over k propositions, one bit each; up to 64 bits inline.
class Bits {
public:
    Bits() = default;
    Bits(std::size_t nbits, bool fill) : nbits_(nbits) {
        if (nbits > 64)
            big_.assign((nbits + 63) / 64, 0);
        set_all(fill);
    }

    static Bits prop_mask(std::size_t nbits, std::size_t k) {
        Bits b(nbits, false);
        for (std::size_t v = 0; v < nbits; ++v)
            if (v >> k & 1)
                b.data()[v / 64] |= 1ULL << (v % 64);
        return b;
    }

    void set_all(bool fill) {
        std::fill_n(data(), words(), fill ? ~0ULL : 0ULL);
        trim();
    }
    Bits& operator&=(const Bits& o) {
        auto* w = data();
        const auto* x = o.data();
        for (std::size_t i = 0; i < words(); ++i)
            w[i] &= x[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        auto* w = data();
        const auto* x = o.data();
        for (std::size_t i = 0; i < words(); ++i)
            w[i] |= x[i];
        return *this;
    }
    void assign_not(const Bits& o) {
        auto* w = data();
        const auto* x = o.data();
        for (std::size_t i = 0; i < words(); ++i)
            w[i] = ~x[i];
        trim();
    }
    bool any() const {
        const auto* w = data();
        return std::any_of(w, w + words(), [](std::uint64_t x) { return x != 0; });
    }
    bool intersects(const Bits& o) const {
        const auto* w = data();
        const auto* x = o.data();
        for (std::size_t i = 0; i < words(); ++i)
            if (w[i] & x[i])
                return true;
        return false;
    }
    /// Lowest set bit; requires any().
    std::size_t first() const {
        const auto* w = data();
        for (std::size_t i = 0; i < words(); ++i)
            if (w[i])
                return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
        return nbits_;
    }

private:
    std::size_t words() const { return big_.empty() ? 1 : big_.size(); }
    std::uint64_t* data() { return big_.empty() ? &small_ : big_.data(); }
    const std::uint64_t* data() const { return big_.empty() ? &small_ : big_.data(); }
    void trim() {
        if (nbits_ % 64)
            data()[words() - 1] &= (1ULL << (nbits_ % 64)) - 1;
    }

    std::size_t nbits_ = 0;
    std::uint64_t small_ = 0;
    std::vector<std::uint64_t> big_;
};

constexpr std::size_t kMaxProps = 22;

class GridSearch {
public:
    GridSearch(std::span<const SharpeningAtom> phi1, const Formula& phi2, const std::optional<GridSpec>& grid)
        : phi1_(phi1.begin(), phi1.end()), phi2_(phi2) {
        Vocabulary v = vocab(phi2);
        props_.assign(v.props.begin(), v.props.end());
        if (props_.size() > kMaxProps)
            throw ResourceError("psl-props", "PSL search supports at most " + std::to_string(kMaxProps) +
                                                 " propositions, got " + std::to_string(props_.size()));
        nval_ = std::size_t{1} << props_.size();
        for (std::size_t k = 0; k < props_.size(); ++k)
            prop_masks_.push_back(Bits::prop_mask(nval_, k));
        std::size_t diamonds = 0;
        compile(phi2, diamonds);
        if (grid) {
            family_ = grid->family;
            n_ = grid->n;
        } else {
            SharpeningClosure r(phi1_, v.standpoints);
            family_ = SFamily::from(r);
            n_ = r.universe().size() + diamonds + 1;
        }
        for (const auto& s : v.standpoints)
            if (!carried(family_, s))
                throw Error("grid family does not carry standpoint " + to_string(s));
        for (const auto& atom : atoms_) {
            std::vector<char> cols;
            for (std::size_t col = 0; col < family_.sets.size(); ++col)
                cols.push_back(in_column(col, atom.standpoint()));
            atom_cols_.push_back(std::move(cols));
        }
        state_.assign(atoms_.size(), kUndecided);
        values_.assign(nodes_.size(), Bits(nval_, false));
        allowed_.assign(family_.sets.size(), Bits(nval_, true));
    }

    std::optional<PslWitness> run() {
        if (!family_respects_phi1())
            return std::nullopt;
        return dfs(0);
    }

private:
    static constexpr signed char kUndecided = -1;

    /// Post-order node of the search formula; `idx` is a proposition or atom index.
    struct Node {
        Op op;
        std::size_t lhs = 0;
        std::size_t rhs = 0;
        std::size_t idx = 0;
    };

    std::size_t compile(const Formula& f, std::size_t& diamonds) {
        Node n{f.op()};
        switch (f.op()) {
        case Op::Prop: {
            auto it = std::find(props_.begin(), props_.end(), f.prop_name());
            n.idx = static_cast<std::size_t>(it - props_.begin());
            break;
        }
        case Op::Top:
        case Op::Bottom:
            break;
        case Op::Not:
            n.lhs = compile(f.child(), diamonds);
            break;
        case Op::And:
        case Op::Or:
            n.lhs = compile(f.lhs(), diamonds);
            n.rhs = compile(f.rhs(), diamonds);
            break;
        case Op::Diamond:
        case Op::Box: {
            if (f.op() == Op::Diamond)
                ++diamonds;
            std::size_t body = compile(f.child(), diamonds);
            auto it = std::find(atoms_.begin(), atoms_.end(), f);
            n.idx = static_cast<std::size_t>(it - atoms_.begin());
            if (it == atoms_.end()) {
                atoms_.push_back(f);
                atom_body_.push_back(body);
            }
            break;
        }
        default:
            throw InternalError("unexpected operator in PSL search: " + to_string(f));
        }
        nodes_.push_back(n);
        return nodes_.size() - 1;
    }

    bool family_respects_phi1() const {
        for (const auto& [a, b] : phi1_)
            for (const auto& S : family_.sets)
                if ((a.is_universal() || S.contains(a)) && !(b.is_universal() || S.contains(b)))
                    return false;
        return true;
    }

    bool in_column(std::size_t col, const Standpoint& s) const {
        return s.is_universal() || family_.sets[col].contains(s);
    }

    /// Valuations satisfying every node when undecided modal atoms count as true.
    void eval_all() {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const Node& n = nodes_[i];
            Bits& out = values_[i];
            switch (n.op) {
            case Op::Prop:
                out = prop_masks_[n.idx];
                break;
            case Op::Top:
                out.set_all(true);
                break;
            case Op::Bottom:
                out.set_all(false);
                break;
            case Op::Not:
                out.assign_not(values_[n.lhs]);
                break;
            case Op::And:
                out = values_[n.lhs];
                out &= values_[n.rhs];
                break;
            case Op::Or:
                out = values_[n.lhs];
                out |= values_[n.rhs];
                break;
            default:
                out.set_all(state_[n.idx] != 0);
                break;
            }
        }
    }

    const Bits& body(std::size_t a) const { return values_[atom_body_[a]]; }
    const Bits& root() const { return values_.back(); }

    /// Fills `allowed_` (per column: valuations meeting every true box) and checks the guess.
    bool feasible() {
        eval_all();
        for (auto& col : allowed_)
            col.set_all(true);
        for (std::size_t a = 0; a < atoms_.size(); ++a) {
            if (state_[a] != 1 || atoms_[a].op() != Op::Box)
                continue;
            for (std::size_t col = 0; col < allowed_.size(); ++col)
                if (atom_cols_[a][col])
                    allowed_[col] &= body(a);
        }
        for (const auto& col : allowed_)
            if (!col.any())
                return false;
        if (!allowed_[0].intersects(root()))
            return false;
        for (std::size_t a = 0; a < atoms_.size(); ++a) {
            if (state_[a] != 1 || atoms_[a].op() != Op::Diamond)
                continue;
            bool found = false;
            for (std::size_t col = 0; col < allowed_.size() && !found; ++col)
                found = atom_cols_[a][col] && allowed_[col].intersects(body(a));
            if (!found)
                return false;
        }
        return true;
    }

    std::optional<PslWitness> dfs(std::size_t k) {
        if (!feasible())
            return std::nullopt;
        if (k == atoms_.size())
            return build();
        for (signed char v : {1, 0}) {
            state_[k] = v;
            if (auto w = dfs(k + 1))
                return w;
        }
        state_[k] = kUndecided;
        return std::nullopt;
    }

    Valuation decode(std::size_t v) const {
        Valuation out;
        for (std::size_t k = 0; k < props_.size(); ++k)
            if (v >> k & 1)
                out.insert(props_[k]);
        return out;
    }

    std::optional<PslWitness> build() const {
        PslWitness w;
        w.model.s_family = family_;
        w.model.n = n_;
        std::vector<std::size_t> next_free(family_.sets.size(), 1);
        Bits start = allowed_[0];
        start &= root();
        w.model.valuation[{0, 1}] = decode(start.first());
        next_free[0] = 2;
        for (std::size_t a = 0; a < atoms_.size(); ++a) {
            if (state_[a] != 1 || atoms_[a].op() != Op::Diamond)
                continue;
            bool placed = false;
            for (std::size_t col = 0; col < family_.sets.size() && !placed; ++col) {
                if (!atom_cols_[a][col] || next_free[col] > n_)
                    continue;
                Bits cell = allowed_[col];
                cell &= body(a);
                if (!cell.any())
                    continue;
                w.model.valuation[{col, next_free[col]++}] = decode(cell.first());
                placed = true;
            }
            if (!placed)
                return std::nullopt; // grid too narrow for this guess
        }
        for (std::size_t col = 0; col < family_.sets.size(); ++col)
            for (std::size_t j = next_free[col]; j <= n_; ++j)
                w.model.valuation[{col, j}] = decode(allowed_[col].first());

        std::vector<Formula> all;
        for (const auto& [a, b] : phi1_)
            all.push_back(sharper(a, b));
        all.push_back(phi2_);
        if (!psl_eval(w.model, w.designated, conj_all(all)))
            throw InternalError("PSL grid model fails its own formula");
        return w;
    }

    std::vector<SharpeningAtom> phi1_;
    Formula phi2_;
    std::vector<std::string> props_;
    std::vector<Bits> prop_masks_;
    std::size_t nval_ = 1;
    std::vector<Node> nodes_;
    std::vector<Bits> values_;
    std::vector<Formula> atoms_;
    std::vector<std::size_t> atom_body_;
    std::vector<std::vector<char>> atom_cols_;
    std::vector<signed char> state_;
    std::vector<Bits> allowed_;
    SFamily family_;
    std::size_t n_ = 1;
};

} // namespace

std::optional<PslWitness> psl_sat(std::span<const SharpeningAtom> phi1, const Formula& phi2,
                                  const std::optional<GridSpec>& grid) {
    if (!is_temporal_free(phi2))
        throw FragmentError("psl_sat expects a PSL body (no X or U)");
    GridSearch search(phi1, phi2, grid);
    return search.run();
}

std::optional<PslWitness> psl_sat_general(const Formula& f) {
    if (!is_temporal_free(f))
        throw FragmentError("psl_sat_general expects a PSL formula (no X or U)");
    auto atoms = sharpening_atoms_in_order(f);
    auto witnesses = sharpening_witnesses(atoms);
    for (const auto& d : partitions(f)) {
        std::vector<Formula> parts{substitute_sharper(f, d.i_plus)};
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const auto& [s, s2] = atoms[i];
            if (d.i_plus.contains(atoms[i])) {
                parts.push_back(sharper(s, s2));
            } else {
                Formula w = prop(witnesses[i]);
                parts.push_back(diamond(s, w));
                parts.push_back(neg(diamond(s2, w)));
            }
        }
        auto norm = normalize_for_theorem(conj_all(parts));
        const auto* ok = std::get_if<NormalizedPsl>(&norm);
        if (!ok)
            throw InternalError("partition left a sharpening atom below the top level");
        if (auto w = psl_sat(ok->phi1, ok->phi2))
            return w;
    }
    return std::nullopt;
}

namespace {

struct KeyHash {
    std::size_t operator()(const std::vector<Formula>& v) const noexcept {
        std::size_t h = v.size();
        for (const auto& f : v)
            h ^= f.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

struct ConsistencyCache {
    std::mutex mu;
    std::unordered_map<std::vector<Formula>, bool, KeyHash> map;
};

ConsistencyCache& cache() {
    static ConsistencyCache c;
    return c;
}

constexpr std::size_t kCacheCap = 1 << 20;

bool decide(const std::vector<Formula>& members) {
    std::vector<SharpeningAtom> positive;
    std::set<Standpoint> universe;
    for (const auto& g : members) {
        if (g.op() == Op::Sharper)
            positive.emplace_back(g.standpoint(), g.rhs_standpoint());
        if (g.op() == Op::Bottom)
            return false;
    }
    SharpeningClosure r(positive, universe);
    for (const auto& g : members)
        if (g.op() == Op::Not && g.child().op() == Op::Sharper &&
            r.entails(g.child().standpoint(), g.child().rhs_standpoint()))
            return false;
    return psl_sat_general(conj_all(members)).has_value();
}

} // namespace

bool standpoint_consistent(std::span<const Formula> conj, bool use_cache) {
    for (const auto& g : conj)
        if (!is_temporal_free(g))
            throw FragmentError("standpoint_consistent expects PSL formulas, got " + to_string(g));
    std::vector<Formula> key(conj.begin(), conj.end());
    std::sort(key.begin(), key.end(), [](const Formula& a, const Formula& b) {
        if (a.hash() != b.hash())
            return a.hash() < b.hash();
        return canonical_less(a, b);
    });
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (!use_cache)
        return decide(key);
    auto& c = cache();
    {
        std::lock_guard lock(c.mu);
        if (auto it = c.map.find(key); it != c.map.end())
            return it->second;
    }
    bool v = decide(key);
    std::lock_guard lock(c.mu);
    if (c.map.size() >= kCacheCap)
        c.map.clear();
    c.map.emplace(std::move(key), v);
    return v;
}

void clear_consistency_cache() {
    auto& c = cache();
    std::lock_guard lock(c.mu);
    c.map.clear();
}

} // namespace sltl
