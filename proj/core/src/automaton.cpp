#include "sltl/automaton.hpp"

#include "sltl/errors.hpp"
#include "sltl/psl.hpp"
#include "sltl/syntax.hpp"

#include <cassert>
#include <ostream>
#include <unordered_map>

namespace sltl {

std::size_t SElementarySet::hash() const noexcept {
    std::size_t h = words_.size();
    for (auto w : words_)
        h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::vector<AcceptanceCondition> acceptance_family(const ClosureSet& cl) {
    std::vector<AcceptanceCondition> out;
    for (std::size_t i = 0; i < cl.size(); ++i)
        if (cl[i].op() == Op::Until)
            out.push_back({i, cl.index_of(cl[i].rhs())});
    return out;
}

namespace {

bool is_base(const Formula& f) {
    switch (f.op()) {
    case Op::Prop:
    case Op::Sharper:
    case Op::Next:
    case Op::Diamond:
    case Op::Box:
        return true;
    default:
        return false;
    }
}

bool has_temporal_below_modality(const Formula& f) {
    for (const auto& g : subformulas(f))
        if (g.is_modal_op() && !is_temporal_free(g.child()))
            return true;
    return false;
}

constexpr signed char kUnknown = -1;

} // namespace

struct Gnba::Impl {
    Formula phi_d;
    ClosureSet cl;
    std::size_t n;
    std::vector<std::size_t> base;           // closure indices of base members, in order
    std::vector<std::size_t> base_pos;       // closure index -> position in `base`, or npos
    std::vector<std::size_t> lhs, rhs, xu;   // child indices for derived members
    std::vector<std::pair<std::size_t, std::size_t>> next_links; // (X g, g)
    std::vector<std::size_t> psl_base;       // base members that are PSL
    bool needs_psl_check = false;
    std::vector<AcceptanceCondition> acc;
    std::size_t phi_idx;
    mutable std::unordered_map<std::string, bool> psl_memo;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit Impl(const Formula& f) : phi_d(f), cl(f), n(cl.size()) {
        if (has_temporal_below_modality(f))
            throw FragmentError("automaton construction needs an LTL+PSL formula; found a temporal "
                                "operator inside a standpoint modality");
        base_pos.assign(n, npos);
        lhs.assign(n, npos);
        rhs.assign(n, npos);
        xu.assign(n, npos);
        for (std::size_t i = 0; i < n; ++i) {
            const Formula& g = cl[i];
            if (is_base(g)) {
                base_pos[i] = base.size();
                base.push_back(i);
                if (g.op() == Op::Next)
                    next_links.emplace_back(i, cl.index_of(g.child()));
                else {
                    psl_base.push_back(i);
                    if (g.op() != Op::Prop)
                        needs_psl_check = true;
                }
                continue;
            }
            switch (g.op()) {
            case Op::Not:
                lhs[i] = cl.index_of(g.child());
                break;
            case Op::And:
            case Op::Or:
                lhs[i] = cl.index_of(g.lhs());
                rhs[i] = cl.index_of(g.rhs());
                break;
            case Op::Until:
                lhs[i] = cl.index_of(g.lhs());
                rhs[i] = cl.index_of(g.rhs());
                xu[i] = cl.index_of(next(g));
                break;
            default:
                break;
            }
        }
        acc = sltl::acceptance_family(cl);
        phi_idx = cl.index_of(f);
    }

    static signed char k_not(signed char a) { return a == kUnknown ? kUnknown : !a; }
    static signed char k_and(signed char a, signed char b) {
        if (a == 0 || b == 0)
            return 0;
        if (a == 1 && b == 1)
            return 1;
        return kUnknown;
    }
    static signed char k_or(signed char a, signed char b) { return k_not(k_and(k_not(a), k_not(b))); }

    /// Kleene evaluation of every member from (possibly partial) base values.
    void evaluate(const std::vector<signed char>& base_vals, std::vector<signed char>& v) const {
        v.assign(n, kUnknown);
        for (std::size_t k = 0; k < base.size(); ++k)
            v[base[k]] = base_vals[k];
        for (std::size_t i = 0; i < n; ++i) {
            if (base_pos[i] != npos)
                continue;
            switch (cl[i].op()) {
            case Op::Top:
                v[i] = 1;
                break;
            case Op::Bottom:
                v[i] = 0;
                break;
            case Op::Not:
                v[i] = k_not(v[lhs[i]]);
                break;
            case Op::And:
                v[i] = k_and(v[lhs[i]], v[rhs[i]]);
                break;
            case Op::Or:
                v[i] = k_or(v[lhs[i]], v[rhs[i]]);
                break;
            case Op::Until:
                v[i] = k_or(v[rhs[i]], k_and(v[lhs[i]], v[xu[i]]));
                break;
            default:
                throw InternalError("unclassified closure member");
            }
        }
    }

    bool psl_consistent(const std::vector<signed char>& v) const {
        if (!needs_psl_check)
            return true;
        std::string key;
        key.reserve(psl_base.size());
        for (auto i : psl_base)
            key.push_back(v[i] ? '1' : '0');
        if (auto it = psl_memo.find(key); it != psl_memo.end())
            return it->second;
        std::vector<Formula> lits;
        for (auto i : psl_base)
            lits.push_back(v[i] ? cl[i] : neg(cl[i]));
        bool ok = standpoint_consistent(lits);
        psl_memo.emplace(std::move(key), ok);
        return ok;
    }

    SElementarySet to_set(const std::vector<signed char>& v) const {
        SElementarySet s(n);
        for (std::size_t i = 0; i < n; ++i)
            s.set(i, v[i] == 1);
        return s;
    }
};

struct StateStream::Impl {
    std::shared_ptr<const Gnba::Impl> g;
    std::vector<std::pair<std::size_t, signed char>> required; // (closure index, value)
    std::vector<signed char> fixed;                            // per base position
    std::vector<signed char> assign;                           // per base position
    std::vector<signed char> vals;
    struct Frame {
        std::size_t depth;
        int option;
    };
    std::vector<Frame> stack;

    Impl(std::shared_ptr<const Gnba::Impl> gi, std::vector<std::pair<std::size_t, signed char>> req)
        : g(std::move(gi)), required(std::move(req)) {
        const std::size_t m = g->base.size();
        fixed.assign(m, kUnknown);
        assign.assign(m, kUnknown);
        bool contradiction = false;
        for (const auto& [idx, val] : required) {
            std::size_t k = g->base_pos[idx];
            if (k == Gnba::Impl::npos)
                continue;
            if (fixed[k] != kUnknown && fixed[k] != val)
                contradiction = true;
            fixed[k] = val;
        }
        if (!contradiction && partial_ok())
            stack.push_back({0, 0});
    }

    bool partial_ok() {
        g->evaluate(assign, vals);
        for (const auto& [idx, val] : required)
            if (vals[idx] != kUnknown && vals[idx] != val)
                return false;
        return true;
    }

    std::optional<SElementarySet> next() {
        const std::size_t m = g->base.size();
        while (!stack.empty()) {
            Frame& fr = stack.back();
            if (fr.depth == m) {
                stack.pop_back();
                g->evaluate(assign, vals);
                if (g->psl_consistent(vals))
                    return g->to_set(vals);
                continue;
            }
            if (fr.option > 1) {
                assign[fr.depth] = kUnknown;
                stack.pop_back();
                continue;
            }
            auto v = static_cast<signed char>(fr.option++);
            std::size_t k = fr.depth;
            if (fixed[k] != kUnknown && fixed[k] != v)
                continue;
            assign[k] = v;
            if (partial_ok())
                stack.push_back({k + 1, 0});
        }
        return std::nullopt;
    }
};

StateStream::StateStream(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
StateStream::~StateStream() = default;
StateStream::StateStream(StateStream&&) noexcept = default;
StateStream& StateStream::operator=(StateStream&&) noexcept = default;

std::optional<SElementarySet> StateStream::next() {
    auto s = impl_->next();
#ifndef NDEBUG
    if (s) {
        Gnba::Impl const& g = *impl_->g;
        std::vector<signed char> v(g.base.size());
        for (std::size_t k = 0; k < g.base.size(); ++k)
            v[k] = s->contains(g.base[k]);
        std::vector<signed char> full;
        g.evaluate(v, full);
        assert(g.to_set(full) == *s);
    }
#endif
    return s;
}

Gnba::Gnba(const Formula& phi_d) : impl_(std::make_shared<Impl>(phi_d)) {}

const ClosureSet& Gnba::closure() const { return impl_->cl; }
const Formula& Gnba::phi_d() const { return impl_->phi_d; }
const std::vector<AcceptanceCondition>& Gnba::acceptance_family() const { return impl_->acc; }

StateStream Gnba::initial_states() const {
    return StateStream(std::make_unique<StateStream::Impl>(
        impl_, std::vector<std::pair<std::size_t, signed char>>{{impl_->phi_idx, 1}}));
}

StateStream Gnba::successors(const SElementarySet& b) const {
    std::vector<std::pair<std::size_t, signed char>> req;
    for (const auto& [x, body] : impl_->next_links)
        req.emplace_back(body, static_cast<signed char>(b.contains(x)));
    return StateStream(std::make_unique<StateStream::Impl>(impl_, std::move(req)));
}

bool Gnba::is_elementary(const SElementarySet& b) const {
    const Impl& g = *impl_;
    std::vector<signed char> base_vals(g.base.size());
    for (std::size_t k = 0; k < g.base.size(); ++k)
        base_vals[k] = b.contains(g.base[k]);
    std::vector<signed char> v;
    g.evaluate(base_vals, v);
    return g.to_set(v) == b && g.psl_consistent(v);
}

bool Gnba::is_transition(const SElementarySet& from, const SElementarySet& to) const {
    for (const auto& [x, body] : impl_->next_links)
        if (from.contains(x) != to.contains(body))
            return false;
    return true;
}

std::string Gnba::describe(const SElementarySet& b) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < impl_->n; ++i) {
        const Formula& f = impl_->cl[i];
        if (!b.contains(i) || f.op() == Op::Not || f.op() == Op::Top)
            continue;
        if (!first)
            out += ", ";
        out += to_string(f);
        first = false;
    }
    return out + "}";
}

std::optional<Lasso> Gnba::find_accepting_lasso(const AutomatonOptions& opts) const {
    const auto& acc = impl_->acc;
    const std::size_t k = acc.size();
    const std::size_t width = k == 0 ? 1 : k;

    std::vector<SElementarySet> states;
    std::unordered_map<SElementarySet, std::size_t, SElementarySetHash> state_id;
    std::vector<std::optional<std::vector<std::size_t>>> succ_cache;

    auto intern = [&](SElementarySet s, bool initial) {
        auto [it, inserted] = state_id.emplace(s, states.size());
        if (inserted) {
            if (states.size() * width >= opts.max_states)
                throw ResourceError("automaton-states", "emptiness check exceeded " +
                                                            std::to_string(opts.max_states) + " states");
            states.push_back(std::move(s));
            succ_cache.emplace_back();
            if (opts.dump) {
                *opts.dump << "state " << it->second << (initial ? " init" : "") << " acc=";
                for (const auto& c : acc)
                    *opts.dump << (c(states.back()) ? '1' : '0');
                *opts.dump << ' ' << describe(states.back()) << '\n';
            }
        }
        return it->second;
    };
    auto state_succ = [&](std::size_t id) -> const std::vector<std::size_t>& {
        if (!succ_cache[id]) {
            std::vector<std::size_t> out;
            StateStream st = successors(states[id]);
            while (auto s = st.next())
                out.push_back(intern(std::move(*s), false));
            if (opts.dump)
                for (auto t : out)
                    *opts.dump << "edge " << id << " -> " << t << '\n';
            succ_cache[id] = std::move(out);
        }
        return *succ_cache[id];
    };

    // Product state (B, c) is encoded as B * width + c.
    auto b_of = [&](std::size_t p) { return p / width; };
    auto c_of = [&](std::size_t p) { return p % width; };
    auto accepting = [&](std::size_t p) { return k == 0 || (c_of(p) == 0 && acc[0](states[b_of(p)])); };
    auto next_counter = [&](std::size_t p) -> std::size_t {
        if (k == 0)
            return 0;
        std::size_t c = c_of(p);
        return acc[c](states[b_of(p)]) ? (c + 1) % k : c;
    };
    std::vector<char> blue, cyan, red;
    auto grow = [&](std::size_t p) {
        if (p >= blue.size()) {
            blue.resize(p + 1, 0);
            cyan.resize(p + 1, 0);
            red.resize(p + 1, 0);
        }
    };
    auto product_succ = [&](std::size_t p) {
        std::vector<std::size_t> out;
        std::size_t c2 = next_counter(p);
        for (auto t : state_succ(b_of(p)))
            out.push_back(t * width + c2);
        return out;
    };

    struct Frame {
        std::size_t p;
        std::vector<std::size_t> succ;
        std::size_t i = 0;
    };

    auto inner = [&](std::size_t seed) -> std::optional<std::vector<std::size_t>> {
        std::vector<Frame> st;
        st.push_back({seed, product_succ(seed)});
        while (!st.empty()) {
            Frame& fr = st.back();
            if (fr.i == fr.succ.size()) {
                st.pop_back();
                continue;
            }
            std::size_t t = fr.succ[fr.i++];
            grow(t);
            if (cyan[t]) {
                std::vector<std::size_t> path;
                for (const auto& f : st)
                    path.push_back(f.p);
                path.push_back(t);
                return path;
            }
            if (!red[t]) {
                red[t] = 1;
                st.push_back({t, product_succ(t)});
            }
        }
        return std::nullopt;
    };

    StateStream init = initial_states();
    while (auto s0 = init.next()) {
        std::size_t p0 = intern(std::move(*s0), true) * width;
        grow(p0);
        if (blue[p0])
            continue;
        blue[p0] = cyan[p0] = 1;
        std::vector<Frame> st;
        st.push_back({p0, product_succ(p0)});
        while (!st.empty()) {
            Frame& fr = st.back();
            if (fr.i < fr.succ.size()) {
                std::size_t t = fr.succ[fr.i++];
                grow(t);
                if (!blue[t]) {
                    blue[t] = cyan[t] = 1;
                    st.push_back({t, product_succ(t)});
                }
                continue;
            }
            std::size_t p = fr.p;
            if (accepting(p)) {
                if (auto path = inner(p)) {
                    // path = p, x1, ..., xm, t with t on the outer stack.
                    std::size_t t = path->back();
                    std::size_t j = 0;
                    while (st[j].p != t)
                        ++j;
                    Lasso lasso;
                    for (std::size_t q = 0; q < j; ++q)
                        lasso.stem.push_back(states[b_of(st[q].p)]);
                    for (std::size_t q = j; q < st.size(); ++q)
                        lasso.cycle.push_back(states[b_of(st[q].p)]);
                    for (std::size_t q = 1; q + 1 < path->size(); ++q)
                        lasso.cycle.push_back(states[b_of((*path)[q])]);
                    return lasso;
                }
            }
            cyan[p] = 0;
            st.pop_back();
        }
    }
    return std::nullopt;
}

std::optional<Lasso> find_accepting_lasso(const Formula& phi_d, const AutomatonOptions& opts) {
    return Gnba(phi_d).find_accepting_lasso(opts);
}

} // namespace sltl
