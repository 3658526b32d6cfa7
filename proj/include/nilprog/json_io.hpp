#pragma once

#include <json.hpp>

#include "nilprog/dark.hpp"
#include "nilprog/group.hpp"
#include "nilprog/hp_sequence.hpp"
#include "nilprog/occupancy.hpp"
#include "nilprog/span.hpp"

namespace nilprog {

using Json = nlohmann::ordered_json;

inline Json rationals_to_json(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(q.get_str());
    return out;
}

inline std::vector<Rational> rationals_from_json(const Json& j) {
    std::vector<Rational> out;
    for (const auto& s : j) out.push_back(parse_rational(s.get<std::string>()));
    return out;
}

inline Json spec_to_json(const NilGroupSpec& spec) {
    Json j;
    if (spec.model() == GroupModel::Unitriangular) {
        j["model"] = "unitriangular";
        j["dimension"] = spec.matrix_dim();
        j["class"] = spec.nil_class();
        return j;
    }
    j["model"] = "free_nilpotent";
    j["rank"] = spec.rank();
    j["class"] = spec.nil_class();
    Json basis = Json::array();
    for (std::size_t k = 0; k < spec.lie_dim(); ++k)
        basis.push_back(Json{{"label", spec.coord_label(k)}, {"weight", spec.coord_weight(k)}});
    j["basis"] = basis;
    Json brackets = Json::array();
    for (const auto& [pair, sv] : spec.bracket_table()) {
        Json coeffs = Json::array();
        for (const auto& [k, q] : sv) coeffs.push_back(Json::array({k, q.get_str()}));
        brackets.push_back(
            Json{{"left", pair.first}, {"right", pair.second}, {"coeffs", coeffs}});
    }
    j["brackets"] = brackets;
    return j;
}

// Rebuilds the spec from its defining data and verifies that the serialized
// basis and bracket table match the reconstruction.
inline SpecPtr spec_from_json(const Json& j) {
    std::string model = j.at("model").get<std::string>();
    if (model == "unitriangular") {
        auto spec = NilGroupSpec::unitriangular(j.at("dimension").get<int>());
        if (j.contains("class") && j.at("class").get<int>() != spec->nil_class())
            throw Error("spec_from_json: class does not match dimension");
        return spec;
    }
    if (model != "free_nilpotent") throw Error("spec_from_json: unknown model " + model);
    auto spec = hall_basis(j.at("rank").get<int>(), j.at("class").get<int>());
    if (j.contains("basis")) {
        const auto& basis = j.at("basis");
        if (basis.size() != spec->lie_dim()) throw Error("spec_from_json: basis size mismatch");
        for (std::size_t k = 0; k < spec->lie_dim(); ++k) {
            if (basis[k].at("label").get<std::string>() != spec->coord_label(k) ||
                basis[k].at("weight").get<int>() != spec->coord_weight(k))
                throw Error("spec_from_json: basis entry mismatch at position " + std::to_string(k));
        }
    }
    if (j.contains("brackets")) {
        auto expected = spec_to_json(*spec).at("brackets");
        if (expected != j.at("brackets")) throw Error("spec_from_json: bracket table mismatch");
    }
    return spec;
}

inline Json element_to_json(const GroupElement& g) { return rationals_to_json(g.coords()); }

inline Json hp_to_json(const HPSequence& phi) {
    Json j;
    j["spec"] = spec_to_json(*phi.spec());
    j["base"] = element_to_json(phi.base());
    Json coords = Json::array();
    for (const auto& g : phi.coords()) coords.push_back(element_to_json(g));
    j["coords"] = coords;
    return j;
}

inline HPSequence hp_from_json(const Json& j) {
    auto spec = spec_from_json(j.at("spec"));
    auto base = GroupElement::from_coords(spec, rationals_from_json(j.at("base")));
    std::vector<GroupElement> coords;
    for (const auto& c : j.at("coords"))
        coords.push_back(GroupElement::from_coords(spec, rationals_from_json(c)));
    return HPSequence(std::move(base), std::move(coords));
}

inline Json expansion_to_json(const MultiIndexExpansion& e) {
    Json j;
    j["spec"] = spec_to_json(*e.spec);
    j["arity"] = e.arity;
    j["ordering"] = e.ordering;
    Json entries = Json::array();
    for (const auto& [index, z] : e.table) {
        if (z.is_identity()) continue;
        entries.push_back(Json{{"index", index}, {"coords", element_to_json(z)}});
    }
    j["entries"] = entries;
    return j;
}

inline Json intertwine_to_json(const IntertwineResult& r) {
    Json j;
    j["ok"] = r.ok;
    if (!r.ok) j["witness"] = r.witness;
    return j;
}

inline Json occupancy_to_json(const OccupancyReport& rep) {
    Json j;
    j["system"] = rep.system;
    j["grid"] = rep.grid;
    j["samples"] = rep.samples;
    j["occupied_cells"] = rep.occupied_cells;
    j["total_cells"] = rep.total_cells;
    j["fraction"] = rep.fraction;
    Json params;
    for (int i = 0; i < kNumParams; ++i)
        params[kParamNames[static_cast<std::size_t>(i)]] = rep.params[static_cast<std::size_t>(i)];
    j["params"] = params;
    j["start"] = rep.start;
    return j;
}

inline Json witness_to_json(const SpanWitness& w) {
    Json layers = Json::array();
    for (const auto& [weight, terms] : w.layers) {
        Json jterms = Json::array();
        for (const auto& t : terms) {
            Json dir = Json::array();
            for (const auto& [c, name] : t.direction)
                dir.push_back(Json::array({c.get_str(), name}));
            jterms.push_back(Json{{"coeff", t.coeff.get_str()}, {"direction", dir}});
        }
        layers.push_back(Json{{"weight", weight}, {"terms", jterms}});
    }
    return Json{{"layers", layers}};
}

inline Json span_result_to_json(const SpanCheckResult& r) {
    Json j;
    j["ok"] = r.ok;
    Json basis = Json::array();
    for (const auto& b : r.basis) basis.push_back(Json{{"name", b.name}, {"definition", b.definition}});
    j["closure_basis"] = basis;
    if (r.ok) {
        Json ws = Json::array();
        for (const auto& w : r.witnesses) ws.push_back(witness_to_json(w));
        j["witnesses"] = ws;
    } else {
        j["failed_candidate"] = *r.failed_candidate;
        if (r.failed_layer) j["failed_layer"] = *r.failed_layer;
    }
    return j;
}

}  // namespace nilprog
