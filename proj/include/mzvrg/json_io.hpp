#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "mzvrg/characters.hpp"
#include "mzvrg/laurent.hpp"
#include "mzvrg/quotient.hpp"
#include "mzvrg/singular.hpp"
#include "mzvrg/word.hpp"

namespace mzvrg {

using json = nlohmann::ordered_json;

inline json to_json(const Word& w) {
    json arr = json::array();
    for (Letter k : w.letters()) arr.push_back(k);
    return arr;
}

inline Word word_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) fail(errc::parse_error, where + ": word must be an array of integers");
    std::vector<Letter> ls;
    for (const auto& x : j) {
        if (!x.is_number_integer()) fail(errc::parse_error, where + ": non-integer letter");
        ls.push_back(x.get<Letter>());
    }
    return Word(std::move(ls));
}

inline json to_json(const LinComb& x) {
    json terms = json::array();
    for (const auto& [w, c] : x.terms())
        terms.push_back(json{{"word", to_json(w)}, {"coef", to_string(c)}});
    return json{{"terms", std::move(terms)}};
}

/// {"min_exp":-2,"trunc":3,"coefs":["1","0","-1/12",...]} with positional
/// coefficients; trunc is null for exactly known series.
inline json to_json(const TruncatedLaurent& s) {
    json j;
    j["min_exp"] = s.is_zero() ? 0 : s.min_exp();
    j["trunc"] = s.is_exact() ? json(nullptr) : json(s.trunc_order());
    json coefs = json::array();
    for (const Rational& c : s.window_coefs()) coefs.push_back(to_string(c));
    j["coefs"] = std::move(coefs);
    return j;
}

inline json to_json(const SingularityVerdict& v) {
    json j;
    j["non_singular"] = v.non_singular;
    if (v.failing_condition) j["failing_condition"] = *v.failing_condition;
    return j;
}

inline Alphabet alphabet_from_string(const std::string& s) {
    if (s == "strictly-negative") return Alphabet::StrictlyNegative;
    if (s == "non-positive") return Alphabet::NonPositive;
    fail(errc::parse_error, "unknown alphabet '" + s + "'");
}

inline json to_json(const EmsCompatReport& r) {
    return json{{"word", json::array({-1})},
                {"t", to_string(r.t)},
                {"required", to_string(r.required)},
                {"computed_left", to_string(r.computed_left)},
                {"computed_right", to_string(r.computed_right)},
                {"pass_left", r.pass_left},
                {"pass_right", r.pass_right}};
}

inline json to_json(const CharacterTable& t) {
    json j;
    j["name"] = t.name;
    j["alphabet"] = alphabet_name(t.alphabet);
    j["max_length"] = t.bound.max_length;
    j["max_abs_weight"] = t.bound.max_abs_weight;
    j["lambda_convention"] = t.lambda_convention;
    if (!t.provenance.empty()) j["provenance"] = t.provenance;
    if (t.ems_compat) j["ems_depth1_compatibility"] = to_json(*t.ems_compat);
    json vals = json::array();
    for (const auto& [w, v] : t.values)
        vals.push_back(json{{"word", to_json(w)}, {"value", to_string(v)}});
    j["values"] = std::move(vals);
    return j;
}

inline CharacterTable table_from_json(const json& j) {
    if (!j.is_object()) fail(errc::parse_error, "table: expected a JSON object");
    CharacterTable t;
    try {
        t.name = j.at("name").get<std::string>();
        t.alphabet = alphabet_from_string(j.at("alphabet").get<std::string>());
        t.bound.max_length = j.at("max_length").get<std::size_t>();
        t.bound.max_abs_weight = j.at("max_abs_weight").get<Letter>();
        t.lambda_convention = j.value("lambda_convention", "left");
        t.provenance = j.value("provenance", "ingested");
        std::size_t i = 0;
        for (const auto& entry : j.at("values")) {
            const std::string where = "values[" + std::to_string(i++) + "]";
            Word w = word_from_json(entry.at("word"), where);
            if (w.is_empty())
                fail(errc::parse_error, where + ": the empty word is implicit (value 1)");
            if (!word_in_bound(w, t.alphabet, t.bound))
                fail(errc::parse_error,
                     where + ": word [" + w.str() + "] violates the declared alphabet/bound");
            const Rational v = parse_rational(entry.at("value").get<std::string>());
            if (!t.values.emplace(std::move(w), v).second)
                fail(errc::parse_error, where + ": duplicate word");
        }
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("table: ") + e.what());
    }
    return t;
}

inline json to_json(const SolutionReport& r) {
    json mult = json::array();
    for (const auto& v : r.multiplicativity)
        mult.push_back(json{{"u", to_json(v.u)},
                            {"w", to_json(v.w)},
                            {"product", to_string(v.product)},
                            {"expanded", to_string(v.expanded)}});
    json cont = json::array();
    for (const auto& v : r.continuation)
        cont.push_back(json{{"word", to_json(v.w)},
                            {"expected", to_string(v.expected)},
                            {"got", to_string(v.got)}});
    return json{{"passed", r.passed},
                {"multiplicativity_violations", std::move(mult)},
                {"continuation_violations", std::move(cont)}};
}

inline json to_json(const TransferReport& r) {
    json nv = json::array();
    for (const auto& w : r.nonvanishing) nv.push_back(to_json(w));
    json mult = json::array();
    for (const auto& v : r.multiplicativity)
        mult.push_back(json{{"u", to_json(v.u)},
                            {"w", to_json(v.w)},
                            {"product", to_string(v.product)},
                            {"expanded", to_string(v.expanded)}});
    return json{{"in_group", r.in_group},
                {"nonvanishing_on_N", std::move(nv)},
                {"multiplicativity_violations", std::move(mult)}};
}

inline json to_json(const InfinitesimalSeed& s) {
    json support = json::array();
    for (const auto& [w, c] : s.support)
        support.push_back(json{{"word", to_json(w)}, {"coef", to_string(c)}});
    return json{{"support", std::move(support)}};
}

inline InfinitesimalSeed seed_from_json(const json& j) {
    InfinitesimalSeed s;
    try {
        std::size_t i = 0;
        for (const auto& entry : j.at("support")) {
            const std::string where = "support[" + std::to_string(i++) + "]";
            Word w = word_from_json(entry.at("word"), where);
            const Rational c = parse_rational(entry.at("coef").get<std::string>());
            if (!s.support.emplace(std::move(w), c).second)
                fail(errc::parse_error, where + ": duplicate word");
        }
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("seed: ") + e.what());
    }
    return s;
}

inline json to_json(const BlockQuotient& q) {
    json words = json::array();
    for (const auto& w : q.block.words) words.push_back(to_json(w));
    json reps = json::array();
    for (const auto& w : q.representatives) reps.push_back(to_json(w));
    json lits = json::array();
    for (const auto& w : q.literal_class) lits.push_back(to_json(w));
    json multiset = json::array();
    for (Letter k : q.block.multiset) multiset.push_back(k);
    json j{{"multiset", std::move(multiset)},
           {"words", std::move(words)},
           {"dim_v", q.dim_v},
           {"dim_u", q.dim_u},
           {"quotient_dim", q.quotient_dim},
           {"representatives", std::move(reps)},
           {"class", q.class_label},
           {"literal_class", std::move(lits)},
           {"all_permutations_singular", q.all_permutations_singular},
           {"discrepancy", q.discrepancy}};
    if (!q.note.empty()) j["note"] = q.note;
    return j;
}

inline json to_json(const BasisReport& r, bool include_trivial_blocks = false) {
    json blocks = json::array();
    for (const auto& b : r.blocks)
        if (include_trivial_blocks || b.quotient_dim > 0 || b.discrepancy)
            blocks.push_back(to_json(b));
    return json{{"depth", r.depth},
                {"letters_min", r.lo},
                {"letters_max", r.hi},
                {"total_quotient_dim", r.total_quotient_dim},
                {"discrepancies", r.discrepancy_count},
                {"blocks", std::move(blocks)}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::usage_error, "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(errc::parse_error, path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail(errc::usage_error, "cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

} // namespace mzvrg
