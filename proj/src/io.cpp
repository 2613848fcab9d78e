#include "polyterm/io.hpp"

#include <fstream>

#include "polyterm/errors.hpp"

namespace polyterm {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw Error("invalid_argument", "params: missing numeric field '" + key + "'");
    return j.at(key).get<double>();
}

int require_int(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw Error("invalid_argument", "params: missing integer field '" + key + "'");
    return j.at(key).get<int>();
}

std::vector<double> require_array(const json& j, const std::string& key,
                                  std::size_t max_len) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw Error("invalid_argument", "params: missing array field '" + key + "'");
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number())
            throw Error("invalid_argument", "params: non-numeric entry in '" + key + "'");
        out.push_back(v.get<double>());
    }
    if (out.size() > max_len)
        throw Error("invalid_argument", "params: '" + key + "' has too many coefficients");
    return out;
}

}  // namespace

json to_json(const CanonicalParams& p) {
    return json{{"n", p.n},  {"R0", p.R[0]}, {"R1", p.R[1]}, {"R2", p.R[2]},
                {"b0", p.b[0]}, {"b1", p.b[1]}, {"b2", p.b[2]}, {"b3", p.b[3]},
                {"c0", p.c[0]}, {"c1", p.c[1]}, {"c2", p.c[2]}};
}

CanonicalParams canonical_from_json(const json& j) {
    CanonicalParams p;
    p.n = require_int(j, "n");
    p.R = {require_number(j, "R0"), require_number(j, "R1"), require_number(j, "R2")};
    p.b = {require_number(j, "b0"), require_number(j, "b1"), require_number(j, "b2"),
           require_number(j, "b3")};
    p.c = {require_number(j, "c0"), require_number(j, "c1"), require_number(j, "c2")};
    return p;
}

json to_json(const GeneralParams& g) {
    return json{{"n", g.n},
                {"lo", g.interval.lo},
                {"hi", g.interval.hi},
                {"R", g.R.coeffs()},
                {"b", g.b.coeffs()},
                {"a", g.a.coeffs()}};
}

GeneralParams general_from_json(const json& j) {
    GeneralParams g;
    g.n = require_int(j, "n");
    g.interval = Interval{require_number(j, "lo"), require_number(j, "hi")};
    g.R = Polynomial{require_array(j, "R", 3)};
    g.b = Polynomial{require_array(j, "b", 4)};
    g.a = Polynomial{require_array(j, "a", 5)};
    return g;
}

json to_json(const ExampleModelParams& p) {
    return json{{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"n", p.n}};
}

ExampleModelParams example_from_json(const json& j) {
    ExampleModelParams p;
    p.alpha = require_number(j, "alpha");
    p.beta = require_number(j, "beta");
    p.gamma = require_number(j, "gamma");
    p.n = require_int(j, "n");
    return p;
}

LoadedParams params_from_json(const json& j) {
    if (!j.is_object()) throw Error("invalid_argument", "params file must hold a JSON object");
    LoadedParams out;
    if (j.contains("alpha")) {
        out.example = example_from_json(j);
        out.general = example_to_general(*out.example);
    } else if (j.contains("c0")) {
        out.canonical = canonical_from_json(j);
        out.general = to_general(*out.canonical);
    } else if (j.contains("a")) {
        out.general = general_from_json(j);
    } else {
        throw Error("invalid_argument",
                    "unrecognized params schema: expected canonical {n, R0.., b0.., c0..}, "
                    "general {n, lo, hi, R, b, a} or example {alpha, beta, gamma, n}");
    }
    return out;
}

LoadedParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("invalid_argument", "cannot open params file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error("invalid_argument", std::string("params file is not valid JSON: ") + e.what());
    }
    return params_from_json(j);
}

}  // namespace polyterm
