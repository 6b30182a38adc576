// mzvrg: exact calculator for the quasi-shuffle Hopf algebra of words and
// the renormalisation group of multiple zeta values at integer arguments.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mzvrg/json_io.hpp"
#include "mzvrg/selftest.hpp"

using namespace mzvrg;

namespace {

bool g_compact = false;

void emit(const json& j) {
    if (g_compact)
        std::cout << j.dump() << "\n";
    else
        std::cout << j.dump(2) << "\n";
}

int exit_code_for(const error& e) {
    switch (e.code()) {
        case errc::usage_error:
        case errc::parse_error:
            return 2;
        case errc::invalid_solution:
        case errc::invalid_transfer:
            return 1;
        default:
            return 3;
    }
}

json tensor_to_json(const TensorSum& ts) {
    json terms = json::array();
    for (const auto& t : ts)
        terms.push_back(json{{"left", to_json(t.left)},
                             {"right", to_json(t.right)},
                             {"coef", to_string(t.coef)}});
    return json{{"terms", std::move(terms)}};
}

SchemeKernel scheme_from(const std::string& name, const std::string& t, bool flip) {
    SchemeKernel s;
    if (name == "gz")
        s = SchemeKernel::gz();
    else if (name == "ems")
        s = SchemeKernel::ems(parse_rational(t));
    else
        fail(errc::usage_error, "unknown scheme '" + name + "' (expected gz or ems)");
    return s.flipped(flip);
}

Alphabet alphabet_from(const std::string& name) {
    if (name == "strictly-negative") return Alphabet::StrictlyNegative;
    if (name == "non-positive") return Alphabet::NonPositive;
    fail(errc::usage_error, "unknown alphabet '" + name + "'");
}

// Optional persistent memo for regularised series, content-addressed by
// scheme key and word (MZVRG_CACHE_DIR).
std::optional<std::string> cache_path(const SchemeKernel& s, const Word& w) {
    const char* dir = std::getenv("MZVRG_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    std::string key = s.cache_key() + "_w" + w.str();
    for (auto& c : key)
        if (c == '/' || c == ':' || c == ',') c = '_';
    return std::string(dir) + "/" + key + ".json";
}

TruncatedLaurent cached_series(const Word& w, const SchemeKernel& s, std::optional<Exp> window) {
    const auto path = cache_path(s, w);
    const Exp requested = window.value_or(pole_budget(w) + 1) + 1;
    if (path && std::filesystem::exists(*path)) {
        const json j = load_json_file(*path);
        if (j.value("trunc", json(nullptr)).is_number() && j["trunc"].get<Exp>() >= requested) {
            std::vector<Rational> coefs;
            for (const auto& c : j["coefs"]) coefs.push_back(parse_rational(c.get<std::string>()));
            return TruncatedLaurent::window(j["min_exp"].get<Exp>(), std::move(coefs),
                                            j["trunc"].get<Exp>())
                .truncated(requested);
        }
    }
    const TruncatedLaurent series = regularised_mzv(w, s, window);
    if (path) {
        std::filesystem::create_directories(std::filesystem::path(*path).parent_path());
        save_json_file(*path, to_json(series));
    }
    return series;
}

int cmd_hopf(const std::string& op, const std::string& word1, const std::string& word2,
             const std::string& mode_name, const std::string& antipode_mode) {
    const ProductMode mode =
        mode_name == "shuffle" ? ProductMode::Shuffle : ProductMode::QuasiShuffle;
    if (mode_name != "quasi" && mode_name != "shuffle")
        fail(errc::usage_error, "--mode must be quasi or shuffle");
    const Word w = parse_word(word1);

    if (op == "product") {
        emit(to_json(product(mode, LinComb(w), LinComb(parse_word(word2)))));
    } else if (op == "coproduct") {
        emit(tensor_to_json(coproduct(w)));
    } else if (op == "antipode") {
        const AntipodeMode am =
            antipode_mode == "recursive" ? AntipodeMode::Recursive : AntipodeMode::ClosedForm;
        emit(to_json(antipode(w, am)));
    } else if (op == "exp") {
        emit(to_json(hoffman_exp(w)));
    } else if (op == "log") {
        emit(to_json(hoffman_log(w)));
    } else if (op == "pi1") {
        emit(to_json(eulerian_idempotent(w, mode)));
    } else {
        fail(errc::usage_error, "unknown hopf operation '" + op + "'");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quasi-shuffle Hopf algebra and MZV renormalisation toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    app.add_flag("--json", g_compact, "compact single-line JSON output");

    // hopf
    auto* hopf = app.add_subcommand("hopf", "algebra operations on words");
    std::string hopf_op, hopf_w1, hopf_w2, hopf_mode = "quasi", hopf_anti = "closed";
    hopf->add_option("op", hopf_op, "product|coproduct|antipode|exp|log|pi1")->required();
    hopf->add_option("word", hopf_w1, "word, comma-separated letters")->required();
    hopf->add_option("word2", hopf_w2, "second word (product only)");
    hopf->add_option("--mode", hopf_mode, "quasi|shuffle (default quasi)");
    hopf->add_option("--antipode-mode", hopf_anti, "closed|recursive");

    // singular
    auto* singular = app.add_subcommand("singular", "singularity verdict for a word");
    std::string singular_word;
    singular->add_option("word", singular_word)->required();

    // zeta
    auto* zeta = app.add_subcommand("zeta", "meromorphic continuation value (depth <= 2)");
    std::string zeta_word;
    zeta->add_option("word", zeta_word)->required();

    // renorm
    auto* renorm = app.add_subcommand("renorm", "regularised series and renormalised values");
    std::string rn_scheme = "gz", rn_t = "1", rn_word, rn_out, rn_alphabet = "strictly-negative";
    bool rn_flip = false, rn_series = false;
    int rn_window = -1;
    std::size_t rn_max_length = 3;
    Letter rn_max_weight = -1;
    renorm->add_option("--scheme", rn_scheme, "gz|ems")->required();
    renorm->add_option("--t", rn_t, "EMS family parameter, rational P/Q (default 1)");
    renorm->add_flag("--flip-lambda", rn_flip, "use the lambda -> -lambda convention");
    renorm->add_option("--word", rn_word, "single word to evaluate");
    renorm->add_flag("--series", rn_series, "dump the raw Laurent series before subtraction");
    renorm->add_option("--window", rn_window, "series coefficients through lambda^window");
    renorm->add_option("--max-length", rn_max_length, "table bound: maximum length");
    renorm->add_option("--max-weight", rn_max_weight, "table bound: maximum abs weight");
    renorm->add_option("--alphabet", rn_alphabet, "strictly-negative|non-positive");
    renorm->add_option("-o,--output", rn_out, "write the table to this file");

    // verify
    auto* verify = app.add_subcommand("verify", "check a table against the solution axioms");
    std::string verify_file;
    verify->add_option("table", verify_file)->required();

    // transfer
    auto* transfer = app.add_subcommand("transfer", "transfer character between two solutions");
    std::string tr_a, tr_b, tr_out;
    transfer->add_option("alpha", tr_a)->required();
    transfer->add_option("beta", tr_b)->required();
    transfer->add_option("-o,--output", tr_out, "write the report to this file");

    // orbit
    auto* orbit = app.add_subcommand("orbit", "apply a transfer character to a solution");
    std::string orb_seed_file, orb_apply, orb_out, orb_transfer_out;
    std::uint64_t orb_seed = 0;
    bool orb_seed_set = false;
    orbit->add_option("--seed-file", orb_seed_file, "infinitesimal seed JSON");
    orbit->add_option("--seed", orb_seed, "generate a random seed from this PRNG seed")
        ->each([&](const std::string&) { orb_seed_set = true; });
    orbit->add_option("--apply", orb_apply, "solution table JSON")->required();
    orbit->add_option("-o,--output", orb_out, "write the moved table here")->required();
    orbit->add_option("--transfer-out", orb_transfer_out, "also dump the projected seed/values");

    // basis
    auto* basis = app.add_subcommand("basis", "W' quotient basis report");
    unsigned basis_depth = 3;
    Letter basis_min = -5, basis_max = 5;
    std::string basis_out;
    bool basis_all = false;
    basis->add_option("--depth", basis_depth, "1, 2 or 3")->required();
    basis->add_option("--min", basis_min, "smallest letter")->required();
    basis->add_option("--max", basis_max, "largest letter")->required();
    basis->add_option("-o,--output", basis_out, "write the report to this file");
    basis->add_flag("--all-blocks", basis_all, "include blocks with trivial quotient");

    // selftest
    auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance criteria");
    std::string st_level = "full", st_dir = ".";
    selftest_cmd->add_option("--level", st_level, "quick|full (default full)");
    selftest_cmd->add_option("--artifact-dir", st_dir, "where to write report artifacts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*hopf) return cmd_hopf(hopf_op, hopf_w1, hopf_w2, hopf_mode, hopf_anti);

        if (*singular) {
            emit(to_json(is_non_singular(parse_word(singular_word))));
            return 0;
        }

        if (*zeta) {
            emit(json{{"value", to_string(continuation_value(parse_word(zeta_word)))}});
            return 0;
        }

        if (*renorm) {
            const SchemeKernel scheme = scheme_from(rn_scheme, rn_t, rn_flip);
            const std::optional<Exp> window =
                rn_window >= 0 ? std::optional<Exp>(rn_window) : std::nullopt;
            if (!rn_word.empty()) {
                const Word w = parse_word(rn_word);
                if (rn_series) {
                    emit(to_json(cached_series(w, scheme, window)));
                } else {
                    emit(json{{"value", to_string(renormalised_value(w, scheme))}});
                }
                return 0;
            }
            if (rn_max_weight < 0)
                fail(errc::usage_error, "table generation needs --max-weight (or pass --word)");
            const CharacterTable t = renormalised_character(
                scheme, alphabet_from(rn_alphabet), {rn_max_length, rn_max_weight});
            const json j = to_json(t);
            if (!rn_out.empty()) {
                save_json_file(rn_out, j);
                json note{{"written", rn_out}, {"words", t.values.size()}};
                if (t.ems_compat)
                    note["ems_depth1_compatibility"] = to_json(*t.ems_compat);
                emit(note);
            } else {
                emit(j);
            }
            return 0;
        }

        if (*verify) {
            const CharacterTable t = table_from_json(load_json_file(verify_file));
            const SolutionReport rep = verify_solution(t);
            emit(to_json(rep));
            return rep.passed ? 0 : 1;
        }

        if (*transfer) {
            const CharacterTable a = table_from_json(load_json_file(tr_a));
            const CharacterTable b = table_from_json(load_json_file(tr_b));
            if (!a.missing_words().empty() || !b.missing_words().empty()) {
                // partial data (e.g. published MP values): pointwise comparison only
                json diffs = json::array();
                for (const auto& [w, va] : a.values) {
                    auto it = b.values.find(w);
                    if (it == b.values.end()) continue;
                    diffs.push_back(json{{"word", to_json(w)},
                                         {"alpha", to_string(va)},
                                         {"beta", to_string(it->second)},
                                         {"difference", to_string(va - it->second)}});
                }
                emit(json{{"mode", "pointwise-compare"},
                          {"note", "at least one table is incomplete on its bound; "
                                   "no transfer character can be formed"},
                          {"common_words", diffs.size()},
                          {"values", std::move(diffs)}});
                return 0;
            }
            const auto res = transfer_between(a, b);
            const Bound common{std::min(a.bound.max_length, b.bound.max_length),
                               std::min(a.bound.max_abs_weight, b.bound.max_abs_weight)};
            json values = json::array();
            for (const Word& w : enumerate_alphabet_words(a.alphabet, common))
                values.push_back(json{{"word", to_json(w)}, {"value", to_string(res.phi(w))}});
            json out{{"mode", "transfer"},
                     {"report", to_json(res.report)},
                     {"values", std::move(values)}};
            if (!tr_out.empty()) save_json_file(tr_out, out);
            emit(out);
            return res.report.in_group ? 0 : 1;
        }

        if (*orbit) {
            const CharacterTable alpha = table_from_json(load_json_file(orb_apply));
            InfinitesimalSeed seed;
            if (!orb_seed_file.empty())
                seed = seed_from_json(load_json_file(orb_seed_file));
            else if (orb_seed_set)
                seed = random_seed(alpha.alphabet, alpha.bound, orb_seed);
            else
                fail(errc::usage_error, "orbit needs --seed-file or --seed");
            const auto tr = make_transfer(seed, alpha.alphabet, alpha.bound);
            const CharacterTable moved = act(tr.phi, alpha);
            save_json_file(orb_out, to_json(moved));
            json note{{"written", orb_out}, {"projected_seed", to_json(tr.projected)}};
            if (!orb_transfer_out.empty()) {
                json tvals = json::array();
                for (const Word& w : enumerate_alphabet_words(alpha.alphabet, alpha.bound))
                    tvals.push_back(json{{"word", to_json(w)}, {"value", to_string(tr.phi(w))}});
                save_json_file(orb_transfer_out,
                               json{{"projected_seed", to_json(tr.projected)},
                                    {"values", std::move(tvals)}});
                note["transfer_written"] = orb_transfer_out;
            }
            emit(note);
            return 0;
        }

        if (*basis) {
            const BasisReport rep = wprime_basis(basis_depth, basis_min, basis_max);
            const json j = to_json(rep, basis_all);
            if (!basis_out.empty()) {
                save_json_file(basis_out, j);
                emit(json{{"written", basis_out},
                          {"total_quotient_dim", rep.total_quotient_dim},
                          {"discrepancies", rep.discrepancy_count}});
            } else {
                emit(j);
            }
            return 0;
        }

        if (*selftest_cmd) {
            using namespace mzvrg::selftest;
            if (st_level != "quick" && st_level != "full")
                fail(errc::usage_error, "--level must be quick or full");
            const auto results =
                run_acceptance(st_level == "quick" ? Level::Quick : Level::Full, st_dir);
            bool all = true;
            for (const auto& r : results) {
                all &= r.pass;
                std::printf("[%s] %2d %-68s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                            r.name.c_str(), r.seconds);
                if (!r.detail.empty()) std::printf("          %s\n", r.detail.c_str());
            }
            std::printf("%zu criteria, %s\n", results.size(), all ? "all passed" : "FAILURES");
            return all ? 0 : 1;
        }
    } catch (const error& e) {
        std::cerr << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
