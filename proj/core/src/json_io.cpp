#include "sltl/json_io.hpp"

#include "sltl/errors.hpp"

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include <json.hpp>
#endif

namespace sltl {

using json = nlohmann::ordered_json;

namespace {

json valuation_json(const Valuation& v) { return json(std::vector<std::string>(v.begin(), v.end())); }

json witness_obj(const Witness& w) {
    json j;
    j["prefix_len"] = w.model.prefix_len;
    j["period_len"] = w.model.period_len;
    json traces = json::object();
    for (const auto& t : w.model.traces) {
        json seq = json::array();
        for (std::size_t i = 0; i < w.model.length(); ++i)
            seq.push_back(valuation_json(t.trace.at(i)));
        traces[t.id] = std::move(seq);
    }
    j["traces"] = std::move(traces);
    json lambda = json::object();
    for (const auto& [s, ids] : w.model.lambda)
        lambda[to_string(s)] = std::vector<std::string>(ids.begin(), ids.end());
    j["lambda"] = std::move(lambda);
    j["designated"] = w.designated;
    return j;
}

json atoms_json(const std::set<SharpeningAtom>& atoms) {
    json a = json::array();
    for (const auto& [s, s2] : atoms)
        a.push_back({to_string(s), to_string(s2)});
    return a;
}

std::string dump(const json& j, int indent) { return j.dump(indent); }

[[noreturn]] void bad(const std::string& what) {
    throw ModelError("malformed witness: " + what + "; expected " + std::string(kWitnessSchema));
}

std::size_t get_size(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        bad(std::string("\"") + key + "\" must be a non-negative integer");
    return j[key].get<std::size_t>();
}

Standpoint parse_standpoint(const std::string& text) {
    if (text.size() < 2 || text[0] != '@')
        bad("standpoint key \"" + text + "\" must look like @name");
    return Standpoint(text.substr(1));
}

} // namespace

std::string witness_to_json(const Witness& w, int indent) { return dump(witness_obj(w), indent); }

Witness witness_from_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        bad("not valid JSON");
    if (!j.is_object())
        bad("top level must be an object");
    Witness w;
    w.model.prefix_len = get_size(j, "prefix_len");
    w.model.period_len = get_size(j, "period_len");
    if (w.model.period_len == 0)
        bad("\"period_len\" must be at least 1");
    const std::size_t len = w.model.prefix_len + w.model.period_len;
    if (!j.contains("traces") || !j["traces"].is_object() || j["traces"].empty())
        bad("\"traces\" must be a non-empty object");
    for (const auto& [id, seq] : j["traces"].items()) {
        if (!seq.is_array() || seq.size() != len)
            bad("trace \"" + id + "\" must list exactly prefix_len + period_len valuations");
        NamedTrace t{id, {}};
        for (std::size_t i = 0; i < len; ++i) {
            if (!seq[i].is_array())
                bad("trace \"" + id + "\" position " + std::to_string(i) + " must be an array of strings");
            Valuation v;
            for (const auto& p : seq[i]) {
                if (!p.is_string())
                    bad("trace \"" + id + "\" position " + std::to_string(i) + " must be an array of strings");
                v.insert(p.get<std::string>());
            }
            (i < w.model.prefix_len ? t.trace.prefix : t.trace.period).push_back(std::move(v));
        }
        w.model.traces.push_back(std::move(t));
    }
    if (!j.contains("lambda") || !j["lambda"].is_object())
        bad("\"lambda\" must be an object");
    for (const auto& [key, ids] : j["lambda"].items()) {
        if (!ids.is_array())
            bad("lambda entry \"" + key + "\" must be an array of trace ids");
        auto& set = w.model.lambda[parse_standpoint(key)];
        for (const auto& id : ids) {
            if (!id.is_string())
                bad("lambda entry \"" + key + "\" must be an array of trace ids");
            set.insert(id.get<std::string>());
        }
    }
    // `@*` may be omitted; it always denotes every trace.
    auto& all = w.model.lambda[Standpoint::universal()];
    if (all.empty())
        for (const auto& t : w.model.traces)
            all.insert(t.id);
    if (!j.contains("designated") || !j["designated"].is_string())
        bad("\"designated\" must be a trace id");
    w.designated = j["designated"].get<std::string>();
    w.model.validate();
    if (!w.model.index_of(w.designated))
        bad("\"designated\" names no trace");
    return w;
}

std::string psl_witness_to_json(const PslWitness& w, int indent) {
    json j;
    json fam = json::array();
    for (const auto& S : w.model.s_family.sets) {
        json s = json::array();
        for (const auto& sp : S)
            s.push_back(to_string(sp));
        fam.push_back(std::move(s));
    }
    j["s_family"] = std::move(fam);
    j["n"] = w.model.n;
    auto cell_key = [](const Cell& c) { return std::to_string(c.first) + "," + std::to_string(c.second); };
    json val = json::object();
    for (const auto& [cell, v] : w.model.valuation)
        val[cell_key(cell)] = valuation_json(v);
    j["valuation"] = std::move(val);
    j["designated"] = cell_key(w.designated);
    return dump(j, indent);
}

std::string verdict_to_json(const Verdict& v, int indent) {
    json j;
    j["status"] = std::string(to_string(v.status));
    j["engine"] = v.engine == Engine::None ? json(nullptr) : json(std::string(to_string(v.engine)));
    if (v.partition)
        j["partition"] = {{"i_plus", atoms_json(v.partition->i_plus)},
                          {"i_minus", atoms_json(v.partition->i_minus)}};
    else
        j["partition"] = nullptr;
    j["witness"] = v.witness ? witness_obj(*v.witness) : json(nullptr);
    if (v.bounds)
        j["bounds"] = {{"traces", v.bounds->max_traces},
                       {"prefix", v.bounds->max_prefix},
                       {"period", v.bounds->max_period}};
    if (v.translation)
        j["translation"] = to_string(*v.translation);
    if (!v.details.empty())
        j["details"] = v.details;
    return dump(j, indent);
}

} // namespace sltl
