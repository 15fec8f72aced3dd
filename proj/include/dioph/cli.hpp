#pragma once

// Command-line front end: verify, classify, extend, pell, obstruct.
//
// Exit codes: 0 pass / extended, 1 property failure or irregular,
// 2 usage or invalid input, 3 certified non-extendable, 4 bounded search only.

#include "arith.hpp"
#include "certificate_check.hpp"
#include "extension.hpp"
#include "integer.hpp"
#include "pell.hpp"
#include "tuples.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace dioph::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
    kPass = 0,
    kPropertyFail = 1,
    kUsage = 2,
    kCertified = 3,
    kBounded = 4,
};

enum class OutputFormat { text, json };

struct CliConfig {
    std::string set;
    std::string k = "";
    std::size_t bound_index = kDefaultPellIndex;
    std::uint64_t max_m = 1'000'000;
    std::uint64_t max_modulus = kMaxCertificateModulus;
    OutputFormat output = OutputFormat::text;
    std::string strategy = "pell";
    // pell
    std::string d;
    std::string n = "1";
    std::size_t count = 5;
    // obstruct
    std::string prime;
    bool assume_prime = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer parse_integer_arg(const std::string& text, const char* what) {
    auto v = parse_integer(text);
    if (!v) throw UsageError(std::string("invalid integer for ") + what + ": '" + text + "'");
    return *v;
}

/// Comma-separated list of at least two distinct positive integers.
inline std::vector<Integer> parse_set(const std::string& text) {
    std::vector<Integer> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto v = parse_integer(item);
        if (!v || *v <= 0) throw UsageError("--set: '" + item + "' is not a positive integer");
        out.push_back(*v);
    }
    if (!text.empty() && text.back() == ',') throw UsageError("--set: trailing comma");
    if (out.size() < 2) throw UsageError("--set: at least two elements are required");
    return out;
}

inline DiophTuple parse_tuple(const CliConfig& cfg) {
    if (cfg.set.empty()) throw UsageError("--set is required");
    if (cfg.k.empty()) throw UsageError("--k is required");
    const Integer k = parse_integer_arg(cfg.k, "--k");
    if (k == 0) throw UsageError("--k must be nonzero");
    try {
        return DiophTuple(parse_set(cfg.set), k);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

inline Json json_int(const Integer& v) { return to_string(v); }

inline Json json_set(const DiophTuple& t) {
    Json out = Json::array();
    for (const Integer& e : t.elements()) out.push_back(json_int(e));
    return out;
}

inline std::string text_set(const DiophTuple& t) {
    std::string s = "{";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += to_string(t[i]);
    }
    return s + "}";
}

inline Json pairs_json(const DiophTuple& t, const VerificationReport& rep) {
    Json pairs = Json::array();
    for (const PairCheck& p : rep.pairs) {
        pairs.push_back(Json{{"a", json_int(t[p.i])},
                             {"b", json_int(t[p.j])},
                             {"product", json_int(p.product)},
                             {"shifted", json_int(p.shifted)},
                             {"root", p.root ? json_int(*p.root) : Json(nullptr)}});
    }
    return pairs;
}

inline void pairs_text(std::ostream& out, const DiophTuple& t, const VerificationReport& rep) {
    for (const PairCheck& p : rep.pairs) {
        out << "pair " << t[p.i] << "*" << t[p.j] << ": product " << p.product << ", shifted " << p.shifted;
        if (p.root)
            out << ", root " << *p.root << "\n";
        else
            out << ", not a square\n";
    }
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline int cmd_verify(const CliConfig& cfg, std::ostream& out) {
    const DiophTuple t = parse_tuple(cfg);
    const VerificationReport rep = verify(t);
    if (cfg.output == OutputFormat::json) {
        emit(out, Json{{"command", "verify"},
                       {"set", json_set(t)},
                       {"k", json_int(t.k())},
                       {"verdict", rep.holds ? "pass" : "fail"},
                       {"pairs", pairs_json(t, rep)}});
    } else {
        out << "set " << text_set(t) << ", k = " << t.k() << "\n";
        pairs_text(out, t, rep);
        if (rep.holds) {
            out << "verdict: pass, property D(" << t.k() << ") holds\n";
        } else {
            const PairCheck* f = rep.first_failure();
            out << "verdict: fail, first failing pair " << t[f->i] << "*" << t[f->j] << "\n";
        }
    }
    return rep.holds ? kPass : kPropertyFail;
}

inline int cmd_classify(const CliConfig& cfg, std::ostream& out) {
    const DiophTuple t = parse_tuple(cfg);
    if (t.size() != 3) throw UsageError("classify: exactly three elements are required");
    const bool regular = is_regular(t);
    const Integer lhs = (t[2] - t[1] - t[0]) * (t[2] - t[1] - t[0]);
    const Integer rhs = 4 * (t[0] * t[1] + t.k());
    const bool property = has_property(t);
    if (cfg.output == OutputFormat::json) {
        emit(out, Json{{"command", "classify"},
                       {"set", json_set(t)},
                       {"k", json_int(t.k())},
                       {"verdict", regular ? "regular" : "irregular"},
                       {"lhs", json_int(lhs)},
                       {"rhs", json_int(rhs)},
                       {"property_holds", property}});
    } else {
        out << "set " << text_set(t) << ", k = " << t.k() << "\n";
        out << "(c-b-a)^2 = " << lhs << ", 4(ab+k) = " << rhs << "\n";
        if (!property) out << "note: the set does not have property D(" << t.k() << ")\n";
        out << "verdict: " << (regular ? "regular" : "irregular") << "\n";
    }
    return regular ? kPass : kPropertyFail;
}

inline Json certificate_json(const std::optional<ModularCertificate>& cert) {
    if (!cert) return nullptr;
    Json sets = Json::array();
    for (const auto& s : cert->allowed_residues) sets.push_back(s);
    return Json{{"modulus", cert->modulus}, {"allowed_residues", sets}};
}

inline int cmd_extend(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const DiophTuple t = parse_tuple(cfg);
    if (t.size() != 3) throw UsageError("extend: exactly three elements are required");
    const VerificationReport check = verify(t);
    if (!check.holds) {
        const PairCheck* f = check.first_failure();
        err << "error: not a D(" << t.k() << ") triple, pair " << t[f->i] << "*" << t[f->j] << " + " << t.k()
            << " = " << f->shifted << " is not a square\n";
        return kUsage;
    }
    if (cfg.strategy != "pell" && cfg.strategy != "brute") throw UsageError("--strategy must be pell or brute");

    SearchReport rep = cfg.strategy == "pell" ? pell_extension_search(t, cfg.bound_index)
                                              : brute_force_search(t, Integer(cfg.max_m));
    rep = certify(std::move(rep), cfg.max_modulus);
    if (rep.certificate && !verify_certificate(*rep.certificate, t))
        throw std::logic_error("extend: certificate failed independent verification");

    if (cfg.output == OutputFormat::json) {
        Json cands = Json::array();
        for (const auto& c : rep.candidates) {
            Json roots = Json::array();
            for (const auto& w : c.witnesses) roots.push_back(w ? json_int(w->root) : Json(nullptr));
            cands.push_back(Json{{"m", json_int(c.m)}, {"complete", c.complete}, {"roots", roots}});
        }
        Json hits = Json::array();
        for (const auto& h : rep.self_hits) hits.push_back(json_int(h));
        emit(out, Json{{"command", "extend"},
                       {"set", json_set(t)},
                       {"k", json_int(t.k())},
                       {"strategy", to_string(rep.strategy)},
                       {"bound", json_int(rep.bound)},
                       {"verdict", to_string(rep.verdict)},
                       {"candidates", cands},
                       {"self_hits", hits},
                       {"certificate", certificate_json(rep.certificate)}});
    } else {
        out << "set " << text_set(t) << ", k = " << t.k() << "\n";
        out << "strategy " << to_string(rep.strategy) << ", bound " << rep.bound << "\n";
        for (const auto& c : rep.candidates) {
            out << "candidate m = " << c.m << (c.complete ? " (complete)" : "") << ":";
            for (const auto& w : c.witnesses) {
                if (w)
                    out << " " << w->element << "*m+k = " << w->root << "^2;";
                else
                    out << " third condition fails;";
            }
            out << "\n";
        }
        for (const auto& h : rep.self_hits) out << "self-hit m = " << h << " (already an element)\n";
        switch (rep.verdict) {
            case Verdict::extended: {
                out << "verdict: extended by";
                for (const auto& m : rep.complete_values()) out << " " << m;
                out << "\n";
                break;
            }
            case Verdict::certified_non_extendable:
                out << "verdict: certified non-extendable, modulus " << rep.certificate->modulus << "\n";
                break;
            case Verdict::no_extension_below_bound:
                out << "verdict: no extension below bound (no certificate up to modulus " << cfg.max_modulus
                    << ")\n";
                break;
        }
    }
    switch (rep.verdict) {
        case Verdict::extended: return kPass;
        case Verdict::certified_non_extendable: return kCertified;
        case Verdict::no_extension_below_bound: return kBounded;
    }
    return kBounded;
}

inline Json solution_json(const Integer& x, const Integer& y) { return Json{{"x", json_int(x)}, {"y", json_int(y)}}; }

inline int cmd_pell(const CliConfig& cfg, std::ostream& out) {
    if (cfg.d.empty()) throw UsageError("--d is required");
    const Integer d = parse_integer_arg(cfg.d, "--d");
    const Integer n = parse_integer_arg(cfg.n, "--n");
    if (cfg.count == 0) throw UsageError("--count must be positive");
    if (d < 2 || is_perfect_square(d)) throw UsageError("--d must be a non-square integer >= 2");
    if (n == 0) throw UsageError("--n must be nonzero");

    const pell::PellSolution fund = pell::fundamental_solution(d);
    const Integer coef = 2 * fund.x();
    Json j{{"command", "pell"},
           {"d", json_int(d)},
           {"n", json_int(n)},
           {"fundamental", solution_json(fund.x(), fund.y())},
           {"coefficient", json_int(coef)}};
    std::ostringstream text;
    text << "x^2 - " << d << " y^2 = " << n << "\n";
    text << "fundamental solution (" << fund.x() << ", " << fund.y() << "), recurrence coefficient " << coef << "\n";

    if (n == 1) {
        Json sols = Json::array();
        for (const auto& s : pell::unit_sequence(d, cfg.count)) {
            sols.push_back(solution_json(s.x(), s.y()));
            text << "(" << s.x() << ", " << s.y() << ")\n";
        }
        j["solutions"] = sols;
    } else {
        const pell::PellProblem problem(d, n);
        const auto classes = pell::solve_general(problem);
        Json cls = Json::array();
        if (classes.empty()) text << "no solutions\n";
        for (const auto& c : classes) {
            const auto [rx, ry] = c.representative();
            text << "class of (" << rx << ", " << ry << "):";
            Json members = Json::array();
            for (std::size_t i = 0; i < cfg.count; ++i) {
                const auto [x, y] = c.member(d, i);
                members.push_back(solution_json(x, y));
                text << " (" << x << ", " << y << ")";
            }
            text << "\n";
            cls.push_back(Json{{"base", solution_json(c.base.x(), c.base.y())},
                               {"x_sign", c.x_sign},
                               {"members", members}});
        }
        j["classes"] = cls;
    }
    if (cfg.output == OutputFormat::json)
        emit(out, j);
    else
        out << text.str();
    return kPass;
}

inline int cmd_obstruct(const CliConfig& cfg, std::ostream& out) {
    if (cfg.k.empty()) throw UsageError("--k is required");
    if (cfg.prime.empty()) throw UsageError("--prime is required");
    const Integer k = parse_integer_arg(cfg.k, "--k");
    const Integer p = parse_integer_arg(cfg.prime, "--prime");
    if (k == 0) throw UsageError("--k must be nonzero");
    int symbol = 0;
    try {
        symbol = legendre(k, p, cfg.assume_prime);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--prime: ") + e.what());
    }
    const bool excluded = symbol == -1;
    const bool mod4 = mod4_quadruple_obstruction(k);
    if (cfg.output == OutputFormat::json) {
        emit(out, Json{{"command", "obstruct"},
                       {"k", json_int(k)},
                       {"prime", json_int(p)},
                       {"legendre", symbol},
                       {"excluded", excluded},
                       {"mod4_quadruple_obstruction", mod4}});
    } else {
        out << "(" << k << "/" << p << ") = " << symbol << "\n";
        if (excluded)
            out << "excluded: no P_" << k << " set contains a positive multiple of " << p << "\n";
        else
            out << "not excluded: multiples of " << p << " are not ruled out\n";
        out << "k mod 4 = " << mod_floor(k, 4) << ": "
            << (mod4 ? "no P_k set of size 4 exists" : "no mod 4 quadruple obstruction") << "\n";
    }
    return kPass;
}

/// Parses argv and runs one subcommand; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Diophantine m-tuple verification, extension search and certificates", "dioph"};
    app.require_subcommand(1);
    CliConfig cfg;

    const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::text}, {"json", OutputFormat::json}};
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output", cfg.output, "Output format")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };
    auto add_set = [&](CLI::App* sub) {
        sub->add_option("--set", cfg.set, "Comma-separated positive integers")->required();
        sub->add_option("--k", cfg.k, "Shift k (nonzero)")->required();
    };

    auto* verify_cmd = app.add_subcommand("verify", "Check that a_i a_j + k is a square for every pair");
    add_set(verify_cmd);
    add_output(verify_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "Regular or irregular triple");
    add_set(classify_cmd);
    add_output(classify_cmd);

    auto* extend_cmd = app.add_subcommand("extend", "Search for a fourth element, then for a certificate");
    add_set(extend_cmd);
    extend_cmd->add_option("--bound-index", cfg.bound_index, "Pell index bound")->check(CLI::PositiveNumber);
    extend_cmd->add_option("--max-m", cfg.max_m, "Brute-force bound on m")->check(CLI::PositiveNumber);
    extend_cmd->add_option("--max-modulus", cfg.max_modulus, "Largest certificate modulus")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{3'000'000'000ull}));
    extend_cmd->add_option("--strategy", cfg.strategy, "pell or brute")->check(CLI::IsMember({"pell", "brute"}));
    add_output(extend_cmd);

    auto* pell_cmd = app.add_subcommand("pell", "Solve x^2 - D y^2 = N");
    pell_cmd->add_option("--d", cfg.d, "Non-square D >= 2")->required();
    pell_cmd->add_option("--n", cfg.n, "Right-hand side N (default 1)");
    pell_cmd->add_option("--count", cfg.count, "Solutions (or members per class) to print")
        ->check(CLI::PositiveNumber);
    add_output(pell_cmd);

    auto* obstruct_cmd = app.add_subcommand("obstruct", "Residue and mod 4 obstructions for k");
    obstruct_cmd->add_option("--k", cfg.k, "Shift k (nonzero)")->required();
    obstruct_cmd->add_option("--prime", cfg.prime, "Odd prime p")->required();
    obstruct_cmd->add_flag("--assume-prime", cfg.assume_prime, "Skip the trial-division bound on p");
    add_output(obstruct_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (verify_cmd->parsed()) return cmd_verify(cfg, out);
        if (classify_cmd->parsed()) return cmd_classify(cfg, out);
        if (extend_cmd->parsed()) return cmd_extend(cfg, out, err);
        if (pell_cmd->parsed()) return cmd_pell(cfg, out);
        if (obstruct_cmd->parsed()) return cmd_obstruct(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << app.help();
    return kUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"dioph"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dioph::cli
