#include "sltl/solver.hpp"

#include "sltl/closure.hpp"
#include "sltl/errors.hpp"
#include "sltl/semantics.hpp"
#include "sltl/syntax.hpp"

#include <future>
#include <vector>

namespace sltl {

std::string_view to_string(Status s) {
    switch (s) {
    case Status::Sat:
        return "sat";
    case Status::Unsat:
        return "unsat";
    case Status::Unknown:
        return "unknown";
    case Status::OutOfFragment:
        return "out_of_fragment";
    }
    return "?";
}

std::string_view to_string(Engine e) {
    switch (e) {
    case Engine::Psl:
        return "psl";
    case Engine::Automaton:
        return "automaton";
    case Engine::Oracle:
        return "oracle";
    case Engine::None:
        return "none";
    }
    return "?";
}

namespace {

/// Cells in grid order become traces t0, t1, ...; (0, 1) comes first.
Witness grid_to_traces(const SFamily& fam, std::size_t n, const std::vector<std::map<Cell, Valuation>>& positions,
                       std::size_t prefix_len) {
    Witness w;
    w.model.prefix_len = prefix_len;
    w.model.period_len = positions.size() - prefix_len;
    std::set<Standpoint> carried{Standpoint::universal()};
    for (const auto& S : fam.sets)
        carried.insert(S.begin(), S.end());
    for (std::size_t col = 0; col < fam.sets.size(); ++col) {
        for (std::size_t j = 1; j <= n; ++j) {
            NamedTrace t;
            t.id = "t" + std::to_string(w.model.traces.size());
            for (std::size_t k = 0; k < positions.size(); ++k) {
                const Valuation& v = positions[k].at({col, j});
                (k < prefix_len ? t.trace.prefix : t.trace.period).push_back(v);
            }
            for (const auto& s : carried)
                if (s.is_universal() || fam.sets[col].contains(s))
                    w.model.lambda[s].insert(t.id);
            w.model.traces.push_back(std::move(t));
        }
    }
    w.designated = "t0";
    return w;
}

void require_valid(const Formula& f, const Witness& w, std::string_view engine) {
    if (!check_witness(f, w.model, w.designated))
        throw InternalError(std::string(engine) + " witness fails the input formula");
}

struct PartitionOutcome {
    std::optional<Witness> witness;
};

PartitionOutcome run_partition(const Formula& f, const Partition& d, bool has_atoms, const AutomatonOptions& ao) {
    Formula phi_d = has_atoms ? build_phi_d(f, d) : f;
    Gnba g(phi_d);
    auto lasso = g.find_accepting_lasso(ao);
    if (!lasso)
        return {};
    Witness w = witness_from_lasso(*lasso, phi_d);
    require_valid(f, w, "automaton");
    return {std::move(w)};
}

Verdict decide_by_automaton(const Formula& f, const SolveOptions& opts) {
    const auto parts = partitions(f);
    const bool has_atoms = !sharpening_atoms_in_order(f).empty();
    const std::size_t jobs = opts.automaton.dump ? 1 : std::max<std::size_t>(opts.jobs, 1);
    auto sat_verdict = [&](std::size_t i, Witness w) {
        Verdict v;
        v.status = Status::Sat;
        v.engine = Engine::Automaton;
        v.partition = parts[i];
        v.witness = std::move(w);
        return v;
    };
    for (std::size_t base = 0; base < parts.size(); base += jobs) {
        const std::size_t end = std::min(parts.size(), base + jobs);
        if (jobs == 1) {
            auto out = run_partition(f, parts[base], has_atoms, opts.automaton);
            if (out.witness)
                return sat_verdict(base, std::move(*out.witness));
            continue;
        }
        std::vector<std::future<PartitionOutcome>> batch;
        for (std::size_t i = base; i < end; ++i)
            batch.push_back(std::async(std::launch::async, run_partition, std::cref(f), std::cref(parts[i]),
                                       has_atoms, std::cref(opts.automaton)));
        // Wait for the whole batch so the lowest satisfiable index wins.
        std::vector<PartitionOutcome> results;
        for (auto& fut : batch)
            results.push_back(fut.get());
        for (std::size_t i = base; i < end; ++i)
            if (results[i - base].witness)
                return sat_verdict(i, std::move(*results[i - base].witness));
    }
    Verdict v;
    v.status = Status::Unsat;
    v.engine = Engine::Automaton;
    return v;
}

} // namespace

std::size_t uniform_grid_width(const Formula& phi_d) {
    std::set<Standpoint> universe = vocab(phi_d).standpoints;
    universe.insert(Standpoint::universal());
    ClosureSet cl(phi_d);
    std::size_t diamonds = 0;
    for (const auto& g : cl.formulas())
        if (g.op() == Op::Diamond || (g.op() == Op::Not && g.child().op() == Op::Box))
            ++diamonds;
    return universe.size() + diamonds + 1;
}

Witness witness_from_lasso(const Lasso& lasso, const Formula& phi_d) {
    if (lasso.cycle.empty())
        throw InternalError("lasso without a cycle");
    ClosureSet cl(phi_d);
    Vocabulary voc = vocab(phi_d);
    std::vector<SharpeningAtom> atoms(voc.sharpening_atoms.begin(), voc.sharpening_atoms.end());
    SharpeningClosure r(atoms, voc.standpoints);
    GridSpec grid{SFamily::from(r), uniform_grid_width(phi_d)};

    std::vector<std::map<Cell, Valuation>> positions;
    auto place = [&](const SElementarySet& b) {
        std::vector<Formula> lits;
        for (std::size_t i = 0; i < cl.size(); ++i) {
            const Formula& g = cl[i];
            switch (g.op()) {
            case Op::Prop:
            case Op::Diamond:
            case Op::Box:
                lits.push_back(b.contains(i) ? g : neg(g));
                break;
            case Op::Sharper:
                if (!b.contains(i))
                    throw InternalError("run state drops a sharpening atom of its partition");
                break;
            default:
                break;
            }
        }
        auto w = psl_sat(atoms, to_nnf(conj_all(lits)), grid);
        if (!w)
            throw InternalError("run state " + std::to_string(positions.size()) +
                                " has no model on the uniform grid");
        positions.push_back(std::move(w->model.valuation));
    };
    for (const auto& b : lasso.stem)
        place(b);
    for (const auto& b : lasso.cycle)
        place(b);
    return grid_to_traces(grid.family, grid.n, positions, lasso.stem.size());
}

Witness lift_psl_witness(const PslWitness& w) {
    Witness out = grid_to_traces(w.model.s_family, w.model.n, {w.model.valuation}, 0);
    // Designated cell is not necessarily (0, 1) for hand-built witnesses.
    std::size_t idx = w.designated.first * w.model.n + (w.designated.second - 1);
    out.designated = "t" + std::to_string(idx);
    return out;
}

bool check_witness(const Formula& f, const SLTLModel& m, const TraceId& t) {
    m.validate();
    if (!m.index_of(t))
        throw ModelError("designated trace '" + t + "' is not in the model");
    return eval_sltl(m, t, 0, f);
}

Verdict solve(const Formula& f, const SolveOptions& opts) {
    const Fragment fr = classify(f);
    if (fr == Fragment::PSL) {
        Verdict v;
        v.engine = Engine::Psl;
        if (auto w = psl_sat_general(f)) {
            v.status = Status::Sat;
            v.witness = lift_psl_witness(*w);
            require_valid(f, *v.witness, "PSL");
        } else {
            v.status = Status::Unsat;
        }
        return v;
    }
    if (fr == Fragment::PureLTL || fr == Fragment::LtlPsl)
        return decide_by_automaton(f, opts);

    Verdict v;
    if (opts.attach_translation)
        v.translation = sltl_to_ptls5(f);
    if (opts.fragment_strict) {
        v.status = Status::OutOfFragment;
        v.details = "temporal operator inside a standpoint modality; input is outside LTL+PSL";
        return v;
    }
    v.engine = Engine::Oracle;
    if (auto w = oracle_sat(f, opts.bounds, opts.oracle_limits)) {
        v.status = Status::Sat;
        v.witness = Witness{std::move(w->model), std::move(w->designated)};
        v.translation.reset();
        require_valid(f, *v.witness, "oracle");
    } else {
        v.status = Status::Unknown;
        v.bounds = opts.bounds;
        v.details = "no model within the search bounds; full SLTL is not decided";
    }
    return v;
}

} // namespace sltl
