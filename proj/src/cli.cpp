#include "easyqg/cli.hpp"

#include "easyqg/category.hpp"
#include "easyqg/cumulants.hpp"
#include "easyqg/errors.hpp"
#include "easyqg/models.hpp"
#include "easyqg/verify.hpp"
#include "easyqg/weingarten.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace easyqg::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv };

std::string csv_field(const std::string& s) {
    return s.find_first_of(",\"") == std::string::npos ? s : "\"" + s + "\"";
}

Json strings(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

template <typename T>
Json matrix_json(const Matrix<T>& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(x.get_str());
        out.push_back(std::move(r));
    }
    return out;
}

Json partition_list(const std::vector<SetPartition>& parts) {
    Json out = Json::array();
    for (const auto& p : parts) out.push_back(p.to_string());
    return out;
}

template <typename T>
std::string matrix_csv(const std::vector<SetPartition>& parts, const Matrix<T>& m) {
    std::string s = "pi,sigma,value\n";
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = 0; b < parts.size(); ++b)
            s += csv_field(parts[a].to_string()) + "," + csv_field(parts[b].to_string()) + "," +
                 m[a][b].get_str() + "\n";
    return s;
}

Json gap_json(const GapResult& g) {
    return Json{{"lhs", to_string(g.lhs)}, {"rhs", to_string(g.rhs)}, {"gap", to_string(g.gap)}};
}

std::string render(const Json& j) { return j.dump() + "\n"; }

Json error_json(const std::string& code, const std::string& message) {
    return Json{{"error", Json{{"code", code}, {"message", message}}}};
}

// Restores the global size limit after an invocation that overrode it.
struct KMaxGuard {
    int saved = k_max();
    ~KMaxGuard() { set_k_max(saved); }
};

WordFunction read_word_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ParseError("expected a JSON object mapping words to \"p/q\"");
    WordFunction f;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_string()) throw ParseError("values must be \"p/q\" strings");
        Word w = parse_word(it.key());
        if (w.empty()) continue;  // the empty word is fixed to 1
        f.order_max = std::max(f.order_max, static_cast<int>(w.size()));
        f.values.emplace(std::move(w), parse_rational(it.value().get<std::string>()));
    }
    return f;
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
    CLI::App app{"Exact Weingarten calculus, cumulants and de Finetti gaps for easy quantum groups",
                 "wg"};
    app.require_subcommand(1);

    std::string format_text = "json";
    std::optional<int> kmax;
    app.add_option("--format", format_text, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--kmax", kmax, "override the enumeration size limit (env WG_KMAX)");

    std::string cat_text, species_text, direction_text, moments_text, file_text;
    std::string i_text = "1,1", j_text = "1,1", word_text, values_text, group_text;
    int k = 0, order = 6;
    long n = 0, nmax = 64;
    std::size_t samples = 100000;
    std::optional<std::uint64_t> seed;
    bool all_flag = false;

    auto* partitions = app.add_subcommand("partitions", "enumerate a partition family");
    partitions->add_option("--cat", cat_text, "category tag; omit for all of P(k)");
    partitions->add_option("--k", k)->required();

    auto* gram_cmd = app.add_subcommand("gram", "Gram matrix n^{|pi v sigma|} over D(k)");
    auto* invert = app.add_subcommand("invert", "exact Weingarten table");
    for (auto* sub : {gram_cmd, invert}) {
        sub->add_option("--cat", cat_text)->required();
        sub->add_option("--k", k)->required();
        sub->add_option("--n", n)->required();
    }

    auto* integrate = app.add_subcommand("integrate", "Haar integral of u_{i1 j1}...u_{ik jk}");
    integrate->add_option("--cat", cat_text)->required();
    integrate->add_option("--n", n)->required();
    integrate->add_option("--i", i_text)->required();
    integrate->add_option("--j", j_text)->required();

    auto* transform = app.add_subcommand("transform", "moment <-> cumulant transforms");
    transform->add_option("--species", species_text)->required();
    transform->add_option("--direction", direction_text)
        ->required()
        ->check(CLI::IsMember({"m2c", "c2m"}));
    auto* seq_opt = transform->add_option("--moments", moments_text,
                                          "single-variable values at orders 1..m");
    auto* file_opt = transform->add_option("--file", file_text,
                                           "JSON map word -> \"p/q\" (multivariate)");
    seq_opt->excludes(file_opt);

    auto* oracle = app.add_subcommand("oracle", "exact average over S_n or H_n");
    oracle->add_option("--group", group_text)->required()->check(CLI::IsMember({"S", "H"}));
    oracle->add_option("--n", n)->required();
    oracle->add_option("--i", i_text)->required();
    oracle->add_option("--j", j_text)->required();

    auto* mc = app.add_subcommand("mc", "Monte Carlo Haar average over O_n or B_n");
    mc->add_option("--group", group_text)->required()->check(CLI::IsMember({"O", "B"}));
    mc->add_option("--n", n)->required();
    mc->add_option("--i", i_text)->capture_default_str();
    mc->add_option("--j", j_text)->capture_default_str();
    mc->add_option("--samples", samples)->capture_default_str();
    mc->add_option("--seed", seed)->required();

    auto* gap = app.add_subcommand("gap", "finite de Finetti gaps");
    gap->require_subcommand(1);
    auto* urn = gap->add_subcommand("urn", "sampling without replacement vs i.i.d.");
    urn->add_option("--values", values_text)->required();
    urn->add_option("--word", word_text)->required();
    auto* sphere = gap->add_subcommand("sphere", "uniform sphere point vs i.i.d. Gaussian");
    sphere->add_option("--n", n)->required();
    sphere->add_option("--word", word_text)->required();

    auto* ck = app.add_subcommand("ck", "scan of the constant C_k over n <= nmax");
    ck->add_option("--cat", cat_text)->required();
    ck->add_option("--k", k)->required();
    ck->add_option("--nmax", nmax)->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run an invariant suite; exit 1 on violation");
    verify->require_subcommand(1);
    auto* v_west = verify->add_subcommand("west", "Weingarten asymptotics on a doubling grid");
    v_west->add_option("--cat", cat_text)->required();
    v_west->add_option("--k", k)->required();
    v_west->add_option("--nmax", nmax)->capture_default_str();
    auto* v_moebius = verify->add_subcommand("moebius", "family vs ambient Moebius function");
    v_moebius->add_option("--cat", cat_text);
    v_moebius->add_option("--k", k)->required();
    v_moebius->add_flag("--all", all_flag, "all ten categories");
    auto* v_inverse = verify->add_subcommand("inverse", "W * G = identity");
    v_inverse->add_option("--cat", cat_text)->required();
    v_inverse->add_option("--k", k)->required();
    v_inverse->add_option("--n", n)->required();
    auto* v_fixed = verify->add_subcommand("fixedpoint", "integrated fixed-point identity");
    v_fixed->add_option("--cat", cat_text)->required();
    v_fixed->add_option("--k", k)->required();
    v_fixed->add_option("--n", n)->required();
    auto* v_semi = verify->add_subcommand("semimodular", "|pi|+|sigma| <= |pi v sigma|+|pi ^ sigma|");
    v_semi->add_option("--k", k)->required();
    auto* v_half = verify->add_subcommand("half", "half-independence model vs cumulants");
    v_half->add_option("--order", order)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {0, app.help()};
    } catch (const CLI::ParseError& e) {
        return {2, render(error_json("usage", e.what()))};
    }

    KMaxGuard guard;
    const Format format = format_text == "csv" ? Format::Csv : Format::Json;
    try {
        if (kmax) set_k_max(*kmax);

        if (partitions->parsed()) {
            const auto parts = cat_text.empty() ? enumerate_all(k)
                                                : enumerate_family(parse_category(cat_text), k);
            if (format == Format::Csv) {
                std::string s = "partition\n";
                for (const auto& p : parts) s += csv_field(p.to_string()) + "\n";
                return {0, s};
            }
            Json j{{"category", cat_text.empty() ? "P" : cat_text},
                   {"k", k},
                   {"count", parts.size()},
                   {"partitions", partition_list(parts)}};
            return {0, render(j)};
        }

        if (gram_cmd->parsed()) {
            const Category c = parse_category(cat_text);
            const auto parts = enumerate_family(c, k);
            const auto g = gram(c, k, n);
            if (format == Format::Csv) return {0, matrix_csv(parts, g)};
            Json j{{"category", cat_text}, {"k", k}, {"n", n}, {"partitions", partition_list(parts)},
                   {"gram", matrix_json(g)}};
            return {0, render(j)};
        }

        if (invert->parsed()) {
            const auto t = weingarten_table(parse_category(cat_text), k, n);
            if (format == Format::Csv) return {0, matrix_csv(t->partitions, t->weingarten)};
            Json mob = Json::array();
            for (const auto& row : t->mobius) mob.push_back(row);
            Json j{{"category", cat_text},       {"k", k},
                   {"n", n},                     {"partitions", partition_list(t->partitions)},
                   {"gram", matrix_json(t->gram)}, {"weingarten", matrix_json(t->weingarten)},
                   {"mobius", mob}};
            return {0, render(j)};
        }

        if (integrate->parsed()) {
            const Rational v = haar_integral(parse_category(cat_text), n, parse_word(i_text),
                                             parse_word(j_text));
            if (format == Format::Csv) return {0, "value\n" + to_string(v) + "\n"};
            return {0, render(Json{{"value", to_string(v)}})};
        }

        if (transform->parsed()) {
            const Species s = parse_species(species_text);
            const bool m2c = direction_text == "m2c";
            WordFunction input;
            if (!file_text.empty()) {
                input = read_word_file(file_text);
            } else {
                if (moments_text.empty()) throw ParseError("--moments or --file is required");
                input = WordFunction::from_sequence(parse_rational_list(moments_text));
            }
            WordFunction result;
            if (m2c) {
                MomentFunctional m;
                static_cast<WordFunction&>(m) = input;
                result = moments_to_cumulants(s, m);
            } else {
                CumulantFamily c;
                static_cast<WordFunction&>(c) = input;
                c.species = s;
                result = cumulants_to_moments(c);
            }
            const char* key = m2c ? "cumulants" : "moments";
            if (format == Format::Csv) {
                std::string out = "word,value\n";
                for (const auto& [w, v] : result.values)
                    out += csv_field(to_string(w)) + "," + to_string(v) + "\n";
                return {0, out};
            }
            Json j{{"species", species_text}, {"direction", direction_text}};
            if (input.single_variable) {
                j[key] = strings(result.sequence());
            } else {
                Json map = Json::object();
                for (const auto& [w, v] : result.values) map[to_string(w)] = to_string(v);
                j[key] = map;
            }
            return {0, render(j)};
        }

        if (oracle->parsed()) {
            const FiniteGroupSpec spec{group_text == "S" ? FiniteFamily::S : FiniteFamily::H,
                                       static_cast<int>(n)};
            const Rational v = group_integral_exact(spec, parse_word(i_text), parse_word(j_text));
            return {0, render(Json{{"group", group_text}, {"n", n}, {"value", to_string(v)}})};
        }

        if (mc->parsed()) {
            MCConfig cfg;
            cfg.samples = samples;
            cfg.seed = *seed;
            const Word i = parse_word(i_text), j = parse_word(j_text);
            const auto family = group_text == "O" ? ContinuousFamily::O : ContinuousFamily::B;
            const auto est = group_integral_mc(family, static_cast<int>(n), i, j, cfg);
            const Rational exact =
                haar_integral(group_text == "O" ? Category::O : Category::B, n, i, j);
            Json out{{"group", group_text},     {"n", n},
                     {"i", i_text},             {"j", j_text},
                     {"estimate", est.estimate}, {"std_error", est.std_error},
                     {"samples", samples},      {"seed", *seed},
                     {"exact", to_string(exact)}};
            return {0, render(out)};
        }

        if (urn->parsed())
            return {0, render(gap_json(urn_definetti_gap(parse_rational_list(values_text),
                                                          parse_word(word_text))))};
        if (sphere->parsed())
            return {0, render(gap_json(sphere_definetti_gap(static_cast<int>(n),
                                                             parse_word(word_text))))};

        if (ck->parsed()) {
            const auto r = ck_constant(parse_category(cat_text), k, nmax);
            if (format == Format::Csv) {
                std::string s = "n,value\n";
                for (const auto& step : r.trace)
                    s += std::to_string(step.n) + "," + (step.value ? to_string(*step.value) : "singular") + "\n";
                return {0, s};
            }
            Json trace = Json::array();
            for (const auto& step : r.trace) {
                Json e{{"n", step.n}};
                if (step.value)
                    e["value"] = to_string(*step.value);
                else
                    e["singular"] = true;
                trace.push_back(std::move(e));
            }
            return {0, render(Json{{"ck", to_string(r.ck)}, {"argmax_n", r.argmax_n}, {"trace", trace}})};
        }

        if (verify->parsed()) {
            VerifyReport report;
            if (v_west->parsed())
                report = verify_west(parse_category(cat_text), k, nmax);
            else if (v_moebius->parsed()) {
                if (all_flag || cat_text.empty())
                    report = verify_moebius_all(k);
                else
                    report = verify_moebius(parse_category(cat_text), k);
            } else if (v_inverse->parsed())
                report = verify_inverse(parse_category(cat_text), k, n);
            else if (v_fixed->parsed())
                report = verify_fixed_point(parse_category(cat_text), k, n);
            else if (v_semi->parsed())
                report = verify_semimodular(k);
            else
                report = verify_half_model(order);
            Json violations = Json::array();
            for (const auto& v : report.violations) violations.push_back(v);
            Json out{{"suite", report.suite},
                     {"ok", report.ok()},
                     {"checks", report.checks},
                     {"violations", violations}};
            return {report.ok() ? 0 : 1, render(out)};
        }
    } catch (const Error& e) {
        return {2, render(error_json(e.code(), e.what()))};
    }
    return {2, render(error_json("usage", "no subcommand"))};
}

}  // namespace easyqg::cli
