#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "modp.hpp"
#include "parse.hpp"
#include "theta_operator.hpp"

namespace cyode {

/// A named operator from the built-in catalog or a user file.  Expected
/// values, when present, are verified on load.
struct FamilyEntry {
    std::string name;
    std::string parameter;
    ThetaOperator op;
    std::string provenance;
    std::optional<RationalFunction<Rational>> expected_beta;
    std::map<std::int64_t, long> expected_hasse_degree;
};

namespace families_detail {

inline void verify_expected(const FamilyEntry& e) {
    if (!check_condition_N(e.op))
        throw std::domain_error("family '" + e.name + "': condition (N) fails on load");
    if (e.expected_beta) {
        const auto beta = beta_rational(e.op);
        if (!beta || !(*beta == *e.expected_beta))
            throw std::domain_error("family '" + e.name + "': beta-factor mismatch");
    }
    for (const auto& [p, deg] : e.expected_hasse_degree) {
        const auto rep = hasse_candidate(e.op, p);
        if (rep.degree != deg)
            throw std::domain_error("family '" + e.name + "': Hasse degree mismatch at p = " +
                                    std::to_string(p) + " (got " + std::to_string(rep.degree) +
                                    ", expected " + std::to_string(deg) + ")");
    }
}

inline FamilyEntry make_entry(std::string name, const std::string& expr, std::string provenance,
                              const char* beta_expr,
                              std::map<std::int64_t, long> hasse_degrees) {
    FamilyEntry e{std::move(name),
                  "lambda",
                  parse_operator(expr, "lambda"),
                  std::move(provenance),
                  std::nullopt,
                  std::move(hasse_degrees)};
    if (beta_expr) e.expected_beta = parse_rational_function(beta_expr, "lambda");
    verify_expected(e);
    return e;
}

} // namespace families_detail

/// Built-in catalog: the Legendre pencil, the Dwork families of orders
/// 2..4, and the Hadamard square of the Legendre period.
inline const std::vector<FamilyEntry>& catalog() {
    static const std::vector<FamilyEntry> entries = [] {
        using families_detail::make_entry;
        std::vector<FamilyEntry> v;
        v.push_back(make_entry(
            "legendre", "theta^2 - lambda*(theta + 1/2)^2",
            "Picard-Fuchs operator of the Legendre pencil y^2 = x(x-1)(x-lambda)", "1 - lambda",
            {{5, 2}, {7, 3}, {11, 5}, {13, 6}}));
        v.push_back(make_entry(
            "dwork-2", "theta^2 - lambda*(theta + 1/3)*(theta + 2/3)",
            "Dwork pencil of cubic curves, parameter lambda = t^-3", "1 - lambda",
            {{5, 1}, {7, 2}, {11, 3}, {13, 4}}));
        v.push_back(make_entry(
            "dwork-3", "theta^3 - lambda*(theta + 1/4)*(theta + 2/4)*(theta + 3/4)",
            "Dwork pencil of quartic K3 surfaces", "1 - lambda",
            {{5, 1}, {7, 1}, {11, 2}, {13, 3}}));
        v.push_back(make_entry(
            "dwork-4",
            "theta^4 - lambda*(theta + 1/5)*(theta + 2/5)*(theta + 3/5)*(theta + 4/5)",
            "Dwork pencil of quintic threefolds", "1 - lambda",
            {{7, 1}, {11, 2}, {13, 2}}));
        v.push_back(make_entry(
            "hadamard-legendre-squared", "theta^4 - lambda*(theta + 1/2)^4",
            "annihilator of the Hadamard square of the Legendre period (derived by guessing, "
            "then fixed)",
            "1 - lambda", {}));
        return v;
    }();
    return entries;
}

inline const FamilyEntry& find_family(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw std::invalid_argument("unknown catalog family '" + name + "'");
}

// ---------------------------------------------------------------------------
// file format: a JSON array of entry objects; coefficients are the monic
// a_0..a_{n-1} as expressions in the CLI grammar

inline nlohmann::ordered_json family_to_json(const FamilyEntry& e) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["order"] = e.op.order();
    j["parameter"] = e.parameter;
    auto coeffs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < e.op.order(); ++i)
        coeffs.push_back(ratfun_to_string(e.op.a(i), e.parameter));
    j["coefficients"] = coeffs;
    if (!e.provenance.empty()) j["provenance"] = e.provenance;
    if (e.expected_beta || !e.expected_hasse_degree.empty()) {
        nlohmann::ordered_json exp;
        if (e.expected_beta) exp["beta"] = ratfun_to_string(*e.expected_beta, e.parameter);
        if (!e.expected_hasse_degree.empty()) {
            nlohmann::ordered_json hd;
            for (const auto& [p, d] : e.expected_hasse_degree) hd[std::to_string(p)] = d;
            exp["hasse_degree"] = hd;
        }
        j["expected"] = exp;
    }
    return j;
}

inline FamilyEntry family_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("catalog entry: expected an object");
    const std::string name = j.at("name").get<std::string>();
    const std::string param = j.value("parameter", std::string("t"));
    const std::size_t order = j.at("order").get<std::size_t>();
    const auto& coeffs = j.at("coefficients");
    if (!coeffs.is_array() || coeffs.size() != order)
        throw std::invalid_argument("catalog entry '" + name +
                                    "': coefficients must list a_0..a_{n-1}");
    std::vector<RationalFunction<Rational>> c;
    c.reserve(order + 1);
    for (const auto& s : coeffs) c.push_back(parse_rational_function(s.get<std::string>(), param));
    c.push_back(RationalFunction<Rational>(Rational(1)));
    FamilyEntry e{name,
                  param,
                  ThetaOperator(ThetaPoly<Rational>(std::move(c))),
                  j.value("provenance", std::string()),
                  std::nullopt,
                  {}};
    if (j.contains("expected")) {
        const auto& exp = j.at("expected");
        if (exp.contains("beta"))
            e.expected_beta = parse_rational_function(exp.at("beta").get<std::string>(), param);
        if (exp.contains("hasse_degree"))
            for (const auto& [key, val] : exp.at("hasse_degree").items())
                e.expected_hasse_degree[std::stoll(key)] = val.get<long>();
    }
    families_detail::verify_expected(e);
    return e;
}

inline void save_families(const std::vector<FamilyEntry>& entries, const std::string& path) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) arr.push_back(family_to_json(e));
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << arr.dump(2) << "\n";
}

inline void save_family(const FamilyEntry& entry, const std::string& path) {
    save_families({entry}, path);
}

inline std::vector<FamilyEntry> load_families(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        // translate the byte offset into line/column
        std::ifstream again(path);
        std::size_t line = 1, col = 1, seen = 0;
        char ch;
        while (again.get(ch) && seen + 1 < err.byte) {
            ++seen;
            if (ch == '\n') { ++line; col = 1; } else { ++col; }
        }
        throw std::invalid_argument("catalog file '" + path + "': parse error at line " +
                                    std::to_string(line) + ", column " + std::to_string(col) +
                                    ": " + err.what());
    }
    std::vector<FamilyEntry> out;
    if (doc.is_object()) {
        out.push_back(family_from_json(doc));
        return out;
    }
    if (!doc.is_array())
        throw std::invalid_argument("catalog file '" + path + "': expected an array of entries");
    for (const auto& j : doc) out.push_back(family_from_json(j));
    return out;
}

} // namespace cyode
