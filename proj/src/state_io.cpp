#include "imag/state_io.hpp"

#include <fstream>

#include "imag/errors.hpp"

namespace imag {

using nlohmann::json;

namespace {

CVec parse_data(const json& j, size_t expected) {
    if (!j.is_array() || j.size() != expected)
        throw ParseError("data array has wrong length");
    CVec out;
    out.reserve(expected);
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw ParseError("data entries must be [re, im] pairs");
        out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return out;
}

json data_to_json(const CVec& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(json::array({x.real(), x.imag()}));
    return arr;
}

}  // namespace

StateVariant state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("kind") || !j.contains("data"))
        throw ParseError("state object needs dim, kind, data");
    if (!j["dim"].is_number_integer()) throw ParseError("dim must be an integer");
    const int dim = j["dim"].get<int>();
    if (dim < 1) throw ParseError("dim must be positive");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "pure") {
            return PureState(parse_data(j["data"], static_cast<size_t>(dim)));
        } else if (kind == "density") {
            ComplexMatrix m(dim, parse_data(j["data"], static_cast<size_t>(dim) * dim));
            return DensityMatrix::validate(m);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    throw ParseError("kind must be \"pure\" or \"density\"");
}

json state_to_json(const PureState& psi) {
    return json{{"dim", psi.dim()}, {"kind", "pure"}, {"data", data_to_json(psi.amplitudes())}};
}

json state_to_json(const DensityMatrix& rho) {
    return json{{"dim", rho.dim()}, {"kind", "density"}, {"data", data_to_json(rho.matrix().entries())}};
}

StateVariant load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return state_from_json(j);
}

void save_state_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

json ensemble_to_json(const Ensemble& e) {
    json members = json::array();
    for (const auto& m : e.members) members.push_back(state_to_json(m));
    return json{{"weights", e.weights}, {"members", members}};
}

Ensemble ensemble_from_json(const json& j) {
    if (!j.is_object() || !j.contains("weights") || !j.contains("members"))
        throw ParseError("ensemble object needs weights, members");
    Ensemble e;
    for (const auto& w : j["weights"]) e.weights.push_back(w.get<double>());
    for (const auto& m : j["members"]) {
        StateVariant s = state_from_json(m);
        if (!std::holds_alternative<PureState>(s)) throw ParseError("ensemble members must be pure");
        e.members.push_back(std::get<PureState>(std::move(s)));
    }
    if (e.weights.size() != e.members.size()) throw ParseError("weights/members size mismatch");
    return e;
}

DensityMatrix as_density(const StateVariant& s) {
    if (std::holds_alternative<DensityMatrix>(s)) return std::get<DensityMatrix>(s);
    return DensityMatrix::from_pure(std::get<PureState>(s));
}

}  // namespace imag
