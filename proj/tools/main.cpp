#include <cmath>
#include <cstdint>
#include <limits>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <randgroup/blocks.hpp>
#include <randgroup/json_io.hpp>
#include <randgroup/order.hpp>
#include <randgroup/sampler.hpp>
#include <randgroup/stats.hpp>

#include "manifest.hpp"

namespace {

using namespace randgroup;
using randgroup::cli::ManifestBuilder;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoCertificate = 3;
constexpr int kExitBudget = 4;

struct GlobalFlags {
    std::uint64_t seed = 0;
    int threads = 1;  // accepted for forward compatibility; results never depend on it
    int json_indent = 2;
};

std::string fmt_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_rat(const BigRat& x) { return fmt_double(to_double(x)); }

/// Print a result object to stdout, or save it (with a manifest) when an
/// output path was chosen.
void deliver(const Json& result, const std::string& out_path, ManifestBuilder& manifest,
             int indent) {
    if (out_path.empty()) {
        std::cout << json_text(result, indent);
    } else {
        manifest.write_output(out_path, json_text(result, indent));
        manifest.save();
        std::cout << "wrote " << out_path << "\n";
    }
}

SignVector parse_signs(const std::string& text) {
    SignVector signs;
    for (char c : text) {
        if (c == '+')
            signs.push_back(1);
        else if (c == '-')
            signs.push_back(-1);
        else if (c != ',' && c != ' ')
            throw std::invalid_argument("signs: expected only '+' and '-' characters");
    }
    if (signs.empty()) throw std::invalid_argument("signs: empty pattern");
    return signs;
}

// ---- sample -----------------------------------------------------------------

struct SampleArgs {
    int n = 0;
    double d = 0.0;
    int L = 0;
    std::optional<std::uint64_t> count;
    std::string out;
};

int run_sample(const SampleArgs& args, const GlobalFlags& global) {
    Alphabet alphabet(args.n);
    std::uint64_t count =
        args.count ? *args.count : compute_relator_count(args.n, args.d, args.L);
    Presentation p;
    p.generators = args.n;
    p.length = args.L;
    p.density = args.d;
    p.seed = global.seed;
    p.relators = sample_words(alphabet, args.L, count, global.seed);

    Json params{{"n", args.n}, {"d", args.d}, {"L", args.L}, {"count", count}};
    ManifestBuilder manifest("sample", params);
    manifest.set_seed(global.seed);
    manifest.write_output(args.out, json_text(presentation_to_json(p), global.json_indent));
    manifest.save();
    std::cout << "wrote " << count << " relators to " << args.out << "\n";
    return kExitOk;
}

// ---- certify ----------------------------------------------------------------

struct CertifyArgs {
    std::string in;
    std::string route = "scan";
    std::string emit_witnesses;
};

int run_certify(const CertifyArgs& args, const GlobalFlags& global) {
    std::vector<std::string> warnings;
    Presentation p = presentation_from_json(load_json_file(args.in), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    CertifyRoute route;
    if (args.route == "scan")
        route = CertifyRoute::scan;
    else if (args.route == "language")
        route = CertifyRoute::language;
    else
        throw std::invalid_argument("certify: route must be 'scan' or 'language'");

    CertifyResult result = certify_obstruction(p, route);
    Json params{{"in", args.in}, {"route", args.route}};
    if (result.certified()) {
        Json cert = certificate_to_json(*result.certificate);
        cert["certified"] = true;
        if (!args.emit_witnesses.empty()) {
            ManifestBuilder manifest("certify", params);
            manifest.record_input(args.in);
            manifest.write_output(args.emit_witnesses, json_text(cert, global.json_indent));
            manifest.save();
        }
        std::cout << json_text(cert, global.json_indent);
        return kExitOk;
    }
    Json report;
    report["certified"] = false;
    report["first_failure"] = first_failure_to_json(*result.first_failure);
    std::cout << json_text(report, global.json_indent);
    return kExitNoCertificate;
}

// ---- automaton --------------------------------------------------------------

struct AutomatonSource {
    std::string in;      // automaton JSON file
    std::string signs;   // or a sign automaton given inline:
    int index = 1;       //   A_{eps,i} over n generators
    int n = 0;
};

BAutomaton load_automaton(const AutomatonSource& source, ManifestBuilder* manifest) {
    if (!source.in.empty()) {
        if (manifest) manifest->record_input(source.in);
        return automaton_from_json(load_json_file(source.in));
    }
    if (source.signs.empty())
        throw std::invalid_argument("automaton: give either --in or --signs/--i/--n");
    SignVector signs = parse_signs(source.signs);
    int n = source.n ? source.n : static_cast<int>(signs.size());
    return make_sign_automaton(n, signs, source.index);
}

Json automaton_source_params(const AutomatonSource& s) {
    Json out = Json::object();
    if (!s.in.empty()) out["in"] = s.in;
    if (!s.signs.empty()) {
        out["signs"] = s.signs;
        out["i"] = s.index;
        if (s.n) out["n"] = s.n;
    }
    return out;
}

int run_automaton_count(const AutomatonSource& source, int L, const std::string& out,
                        const GlobalFlags& global) {
    Json params = automaton_source_params(source);
    params["L"] = L;
    ManifestBuilder manifest("automaton count", params);
    BAutomaton a = load_automaton(source, &manifest);
    Json result;
    result["n"] = a.n;
    result["L"] = L;
    result["words"] = count_language_words(a, L).str();
    result["reduced"] = count_language_reduced(a, L).str();
    deliver(result, out, manifest, global.json_indent);
    return kExitOk;
}

int run_automaton_accepts(const AutomatonSource& source, const std::string& word_text,
                          const std::string& out, const GlobalFlags& global) {
    Json params = automaton_source_params(source);
    params["word"] = word_text;
    ManifestBuilder manifest("automaton accepts", params);
    BAutomaton a = load_automaton(source, &manifest);
    Word w = word_from_text(word_text, Alphabet(a.n));
    Json result;
    result["word"] = word_to_json(w);
    result["accepted"] = accepts(a, w);
    deliver(result, out, manifest, global.json_indent);
    return kExitOk;
}

int run_automaton_largeness(const AutomatonSource& source, const std::string& lambda_text,
                            const std::string& out, const GlobalFlags& global) {
    Json params = automaton_source_params(source);
    params["lambda"] = lambda_text;
    ManifestBuilder manifest("automaton largeness", params);
    BAutomaton a = load_automaton(source, &manifest);
    Fraction lambda = fraction_from_string(lambda_text);
    Json result;
    result["lambda"] = lambda_text;
    result["large"] = is_lambda_large(a, lambda);
    deliver(result, out, manifest, global.json_indent);
    return kExitOk;
}

// ---- blocks -----------------------------------------------------------------

struct BlocksArgs {
    int B = 0;
    std::optional<int> P;
    std::string in;
    std::string out;
    std::optional<std::size_t> r1, r2;  // for the pair subcommand
};

Presentation load_presentation_input(const std::string& path, ManifestBuilder& manifest) {
    manifest.record_input(path);
    std::vector<std::string> warnings;
    Presentation p = presentation_from_json(load_json_file(path), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return p;
}

int run_blocks(const std::string& mode, const BlocksArgs& args, const GlobalFlags& global) {
    Json params{{"B", args.B}, {"in", args.in}};
    if (args.P) params["P"] = *args.P;
    ManifestBuilder manifest("blocks " + mode, params);
    Presentation p = load_presentation_input(args.in, manifest);
    BlockAlphabet ba(Alphabet(p.generators), args.B);

    AssociatedSet set;
    if (mode == "pair") {
        if (!args.r1 || !args.r2)
            throw std::invalid_argument("blocks pair: need --r1 and --r2 relator indices");
        if (*args.r1 >= p.relators.size() || *args.r2 >= p.relators.size())
            throw std::invalid_argument("blocks pair: relator index out of range");
        int shift = args.P.value_or(
            static_cast<int>(p.relators[*args.r1].size() % static_cast<std::size_t>(args.B)));
        Word paired = pair_relators(ba, p.relators[*args.r1], p.relators[*args.r2], shift);
        set.block_length = args.B;
        set.shift = shift;
        set.hat_length = static_cast<int>(paired.size());
        set.relators.push_back(std::move(paired));
    } else {
        set = build_associated_set(ba, p.relators);
        if (mode == "associate" && set.shift != 0)
            throw std::invalid_argument(
                "blocks associate: relator length is not a multiple of the block length; "
                "use 'blocks build' for the paired construction");
        if (args.P && *args.P != set.shift)
            throw std::invalid_argument("blocks: --P disagrees with relator length mod B");
    }

    Json result = associated_set_to_json(set, ba);
    manifest.write_output(args.out, json_text(result, global.json_indent));
    manifest.save();
    std::cout << "wrote " << set.relators.size() << " block relators to " << args.out << "\n";
    return kExitOk;
}

// ---- stats ------------------------------------------------------------------

const char* kStatsHeader =
    "L,c_L,a_L,b_L,mean_exact,var_exact,cheb_bound,empirical_in_window,"
    "q_exact,q_bernoulli,hits_distinct_mean,envelope_ratio";

std::string stats_csv_row(int L, const ConcentrationReport& r, double envelope_ratio) {
    std::ostringstream row;
    row << L << ',' << r.params.population.str() << ',' << r.params.marked.str() << ','
        << r.params.draws.str() << ',' << fmt_rat(r.mean_exact) << ',' << fmt_rat(r.var_exact)
        << ',' << fmt_rat(r.chebyshev_bound) << ',' << fmt_double(r.empirical_in_window) << ','
        << fmt_rat(r.q_exact) << ',' << fmt_rat(r.q_bernoulli) << ','
        << fmt_double(r.hits_distinct_mean) << ',' << fmt_double(envelope_ratio) << '\n';
    return std::move(row).str();
}

struct StatsCommonArgs {
    int trials = 1000;
    std::string csv;
    std::string epsilon = "1/2";
};

void deliver_csv(const std::string& body, const std::string& csv_path, ManifestBuilder& manifest) {
    if (csv_path.empty()) {
        std::cout << body;
    } else {
        manifest.write_output(csv_path, body);
        manifest.save();
        std::cout << "wrote " << csv_path << "\n";
    }
}

int run_stats_concentration(long long a, long long b, long long c, const StatsCommonArgs& args,
                            const GlobalFlags& global) {
    HitModelParams params;
    params.population = c;
    params.marked = a;
    params.draws = b;
    Fraction eps = fraction_from_string(args.epsilon);
    params.epsilon = BigRat(eps.num, eps.den);

    Json manifest_params{{"a", a}, {"b", b}, {"c", c},
                         {"epsilon", args.epsilon}, {"trials", args.trials}};
    ManifestBuilder manifest("stats concentration", manifest_params);
    manifest.set_seed(global.seed);
    auto report = run_concentration_experiment(params, args.trials, global.seed);
    // no length context in the abstract model: L is 0 and the envelope is undefined
    std::string body = std::string(kStatsHeader) + "\n" +
                       stats_csv_row(0, report, std::numeric_limits<double>::quiet_NaN());
    deliver_csv(body, args.csv, manifest);
    return kExitOk;
}

int run_stats_distinct(long long b, long long c, const StatsCommonArgs& args,
                       const GlobalFlags& global) {
    // the all-marked model: every draw hits, so the report isolates collisions
    HitModelParams params;
    params.population = c;
    params.marked = c;
    params.draws = b;
    Fraction eps = fraction_from_string(args.epsilon);
    params.epsilon = BigRat(eps.num, eps.den);

    Json manifest_params{{"b", b}, {"c", c}, {"epsilon", args.epsilon}, {"trials", args.trials}};
    ManifestBuilder manifest("stats distinct", manifest_params);
    manifest.set_seed(global.seed);
    auto report = run_concentration_experiment(params, args.trials, global.seed);
    std::string body = std::string(kStatsHeader) + "\n" +
                       stats_csv_row(0, report, std::numeric_limits<double>::quiet_NaN());
    std::cerr << "all-distinct fraction: " << fmt_double(report.all_distinct_fraction)
              << " (exact " << fmt_rat(report.q_exact) << ", lower bound "
              << fmt_rat(report.q_bernoulli) << ")\n";
    deliver_csv(body, args.csv, manifest);
    return kExitOk;
}

int run_stats_intersect(const AutomatonSource& source, double d,
                        const std::vector<int>& lengths, const StatsCommonArgs& args,
                        const GlobalFlags& global) {
    Json manifest_params = automaton_source_params(source);
    manifest_params["d"] = d;
    manifest_params["L"] = lengths;
    manifest_params["epsilon"] = args.epsilon;
    manifest_params["trials"] = args.trials;
    ManifestBuilder manifest("stats intersect", manifest_params);
    manifest.set_seed(global.seed);
    BAutomaton fixed_set = load_automaton(source, &manifest);

    IntersectionConfig config;
    config.generators = fixed_set.n;
    config.density = d;
    config.lengths = lengths;
    config.trials = args.trials;
    config.seed = global.seed;
    config.epsilon = fraction_from_string(args.epsilon);
    auto result = run_intersection_experiment(fixed_set, config);

    std::cerr << "measured fixed-set density d' = " << fmt_double(result.d_prime) << "\n";
    if (!result.meets_growth_hypothesis)
        std::cerr << "warning: d + d' <= 1, outside the intersection hypothesis\n";
    if (!result.meets_distinct_hypothesis)
        std::cerr << "warning: d >= 1/2, distinct-entries claim not guaranteed\n";

    std::string body(kStatsHeader);
    body += "\n";
    for (const auto& row : result.rows)
        body += stats_csv_row(row.length, row.report, row.envelope_ratio);
    deliver_csv(body, args.csv, manifest);
    return kExitOk;
}

// ---- pipeline ---------------------------------------------------------------

struct PipelineConfig {
    int n = 0;
    double d = -1.0;
    std::vector<int> lengths;
    int trials = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::optional<int> B;
    CertifyRoute route = CertifyRoute::scan;
};

PipelineConfig parse_pipeline_config(const std::string& text) {
    PipelineConfig config;
    std::istringstream in(text);
    std::string line;
    int line_number = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("config line " + std::to_string(line_number) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_number;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string stripped = strip(line);
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        std::string key = strip(stripped.substr(0, eq));
        std::string value = strip(stripped.substr(eq + 1));
        if (value.empty()) fail("missing value for '" + key + "'");
        try {
            if (key == "n") {
                config.n = std::stoi(value);
            } else if (key == "d") {
                config.d = std::stod(value);
            } else if (key == "L") {
                std::istringstream items(value);
                std::string item;
                while (std::getline(items, item, ',')) config.lengths.push_back(std::stoi(item));
            } else if (key == "trials") {
                config.trials = std::stoi(value);
            } else if (key == "seed") {
                config.seed = std::stoull(value);
                config.seed_given = true;
            } else if (key == "B") {
                config.B = std::stoi(value);
            } else if (key == "route") {
                if (value == "scan")
                    config.route = CertifyRoute::scan;
                else if (value == "language")
                    config.route = CertifyRoute::language;
                else
                    fail("route must be 'scan' or 'language'");
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            fail("cannot parse value '" + value + "' for '" + key + "'");
        }
    }
    if (config.n < 1) throw std::invalid_argument("config: need n >= 1");
    if (config.d < 0.0 || config.d > 1.0) throw std::invalid_argument("config: need 0 <= d <= 1");
    if (config.lengths.empty()) throw std::invalid_argument("config: need a non-empty L list");
    if (config.trials < 1) throw std::invalid_argument("config: need trials >= 1");
    return config;
}

/// Fraction of (sign pattern, index) pairs that have a witness relator.
double pair_coverage(const Presentation& p, CertifyRoute route) {
    if (p.generators > 20) throw BudgetError("pair coverage: more than 2^20 sign patterns");
    const std::uint64_t masks = std::uint64_t(1) << p.generators;
    std::uint64_t hits = 0;
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        SignVector signs = sign_vector_from_mask(p.generators, mask);
        for (int i = 1; i <= p.generators; ++i)
            if (find_positive_relator(p, signs, i, route)) ++hits;
    }
    return static_cast<double>(hits) /
           (static_cast<double>(masks) * static_cast<double>(p.generators));
}

int run_pipeline(const std::string& config_path, const std::string& csv_path,
                 const GlobalFlags& global) {
    ManifestBuilder manifest("pipeline", Json{{"config", config_path}, {"csv", csv_path}});
    manifest.record_input(config_path);
    PipelineConfig config = parse_pipeline_config(randgroup::cli::read_file_bytes(config_path));
    std::uint64_t seed = config.seed_given ? config.seed : global.seed;
    manifest.set_seed(seed);

    std::optional<BlockAlphabet> blocks;
    if (config.B) {
        blocks.emplace(Alphabet(config.n), *config.B);
        if (blocks->generators() > 20)
            throw BudgetError("pipeline: block alphabet too large to certify over");
    }

    Alphabet alphabet(config.n);
    std::string body =
        "L,trial,b_L,certified,pair_coverage,hat_certified,hat_pair_coverage\n";
    constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
    for (int L : config.lengths) {
        std::uint64_t b = compute_relator_count(config.n, config.d, L);
        std::uint64_t row_seed = derive_subseed(seed, static_cast<std::uint64_t>(L));
        double sum_certified = 0, sum_coverage = 0, sum_hat_certified = 0, sum_hat_coverage = 0;
        for (int trial = 0; trial < config.trials; ++trial) {
            Presentation p;
            p.generators = config.n;
            p.length = L;
            p.relators = sample_words(alphabet, L, b,
                                      derive_subseed(row_seed, static_cast<std::uint64_t>(trial)));
            double coverage = pair_coverage(p, config.route);
            bool certified = coverage == 1.0;
            double hat_coverage = kNan;
            bool hat_certified = false;
            if (blocks) {
                Presentation hat = hat_presentation(*blocks, p);
                hat_coverage = hat.relators.empty() ? 0.0 : pair_coverage(hat, config.route);
                hat_certified = hat_coverage == 1.0;
                sum_hat_certified += hat_certified ? 1.0 : 0.0;
                sum_hat_coverage += hat_coverage;
            }
            std::ostringstream row;
            row << L << ',' << trial << ',' << b << ',' << (certified ? 1 : 0) << ','
                << fmt_double(coverage) << ','
                << (blocks ? std::string(1, hat_certified ? '1' : '0') : "nan") << ','
                << fmt_double(hat_coverage) << '\n';
            body += std::move(row).str();
            sum_certified += certified ? 1.0 : 0.0;
            sum_coverage += coverage;
        }
        // aggregate row: trial = -1, means over this length's trials
        double t = config.trials;
        std::ostringstream agg;
        agg << L << ",-1," << b << ',' << fmt_double(sum_certified / t) << ','
            << fmt_double(sum_coverage / t) << ','
            << (blocks ? fmt_double(sum_hat_certified / t) : "nan") << ','
            << (blocks ? fmt_double(sum_hat_coverage / t) : "nan") << '\n';
        body += std::move(agg).str();
    }
    manifest.write_output(csv_path, body);
    manifest.save();
    std::cout << "wrote " << csv_path << "\n";
    return kExitOk;
}

void add_automaton_source(CLI::App* cmd, AutomatonSource& source) {
    cmd->add_option("--in", source.in, "automaton JSON file");
    cmd->add_option("--signs", source.signs,
                    "sign pattern like '+-+' selecting the cone automaton");
    cmd->add_option("--i", source.index, "distinguished generator index (with --signs)");
    cmd->add_option("--n", source.n, "generator count (defaults to the pattern length)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiments with random group presentations, letter automata,\n"
                 "and left-order obstruction certificates"};
    app.require_subcommand(1);
    GlobalFlags global;
    app.add_option("--seed", global.seed, "base seed for all randomized work")
        ->capture_default_str();
    app.add_option("--threads", global.threads,
                   "worker threads (reserved; outputs never depend on it)")
        ->check(CLI::PositiveNumber);
    app.add_option("--json-indent", global.json_indent, "indentation for JSON output")
        ->check(CLI::Range(0, 8))
        ->capture_default_str();

    // sample
    auto* sample = app.add_subcommand("sample", "draw a random relator set at a density");
    sample->fallthrough();
    SampleArgs sample_args;
    sample->add_option("--n", sample_args.n, "generator count")->required();
    sample->add_option("--d", sample_args.d, "density in [0, 1]")->required();
    sample->add_option("--L", sample_args.L, "relator length")->required();
    std::uint64_t sample_count_override = 0;
    auto* count_opt = sample->add_option("--count", sample_count_override,
                                         "override the relator count from the density");
    sample->add_option("--out", sample_args.out, "output presentation JSON")->required();

    // certify
    auto* certify = app.add_subcommand("certify", "search for a non-orderability certificate");
    certify->fallthrough();
    CertifyArgs certify_args;
    certify->add_option("--in", certify_args.in, "presentation JSON file")->required();
    certify->add_option("--route", certify_args.route, "witness search route: scan | language")
        ->capture_default_str();
    certify->add_option("--emit-witnesses", certify_args.emit_witnesses,
                        "also write the certificate to this file");

    // automaton
    auto* automaton = app.add_subcommand("automaton", "letter-automaton queries");
    automaton->require_subcommand(1);
    automaton->fallthrough();
    AutomatonSource automaton_source;
    int automaton_L = 1;
    std::string automaton_word, automaton_lambda = "1/2", automaton_out;
    auto* a_count = automaton->add_subcommand("count", "count language words by length");
    a_count->fallthrough();
    add_automaton_source(a_count, automaton_source);
    a_count->add_option("--L", automaton_L, "word length")->required();
    a_count->add_option("--out", automaton_out, "write the result JSON here");
    auto* a_accepts = automaton->add_subcommand("accepts", "test one word for membership");
    a_accepts->fallthrough();
    add_automaton_source(a_accepts, automaton_source);
    a_accepts->add_option("--word", automaton_word, "word in text form, e.g. 'a1 A2'")
        ->required();
    a_accepts->add_option("--out", automaton_out, "write the result JSON here");
    auto* a_large = automaton->add_subcommand("largeness", "test the largeness threshold");
    a_large->fallthrough();
    add_automaton_source(a_large, automaton_source);
    a_large->add_option("--lambda", automaton_lambda, "threshold fraction, e.g. '1/2'")
        ->capture_default_str();
    a_large->add_option("--out", automaton_out, "write the result JSON here");

    // blocks
    auto* blocks = app.add_subcommand("blocks", "block-alphabet constructions");
    blocks->require_subcommand(1);
    blocks->fallthrough();
    BlocksArgs blocks_args;
    int blocks_P = 0;
    std::size_t blocks_r1 = 0, blocks_r2 = 0;
    std::vector<CLI::App*> blocks_modes;
    for (const char* name : {"associate", "pair", "build"}) {
        auto* mode = blocks->add_subcommand(
            name, name == std::string("associate") ? "blockwise images of whole relators"
            : name == std::string("pair")          ? "glue two relators at a shift"
                                                   : "assemble the full associated set");
        mode->fallthrough();
        mode->add_option("--B", blocks_args.B, "block length")->required();
        auto* p_opt = mode->add_option("--P", blocks_P, "expected length residue mod B");
        mode->add_option("--in", blocks_args.in, "presentation JSON file")->required();
        mode->add_option("--out", blocks_args.out, "output associated-set JSON")->required();
        if (name == std::string("pair")) {
            mode->add_option("--r1", blocks_r1, "first relator index")->required();
            mode->add_option("--r2", blocks_r2, "second relator index")->required();
        }
        mode->parse_complete_callback([&blocks_args, p_opt, &blocks_P] {
            if (p_opt->count()) blocks_args.P = blocks_P;
        });
        blocks_modes.push_back(mode);
    }

    // stats
    auto* stats = app.add_subcommand("stats", "hit-count experiments and reports");
    stats->require_subcommand(1);
    stats->fallthrough();
    StatsCommonArgs stats_common;
    long long stats_a = 0, stats_b = 0, stats_c = 0;
    auto add_stats_common = [&](CLI::App* cmd) {
        cmd->fallthrough();
        cmd->add_option("--trials", stats_common.trials, "simulation trials")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--epsilon", stats_common.epsilon, "relative window, e.g. '1/2'")
            ->capture_default_str();
        cmd->add_option("--csv", stats_common.csv, "write the report CSV here");
    };
    auto* s_conc = stats->add_subcommand("concentration", "hit counts around their mean");
    add_stats_common(s_conc);
    s_conc->add_option("--a", stats_a, "distinguished count")->required();
    s_conc->add_option("--b", stats_b, "draws per trial")->required();
    s_conc->add_option("--c", stats_c, "population size")->required();
    auto* s_dist = stats->add_subcommand("distinct", "collision rate among the draws");
    add_stats_common(s_dist);
    s_dist->add_option("--b", stats_b, "draws per trial")->required();
    s_dist->add_option("--c", stats_c, "population size")->required();
    auto* s_int = stats->add_subcommand("intersect", "sampled relators against a fixed language");
    add_stats_common(s_int);
    AutomatonSource stats_source;
    add_automaton_source(s_int, stats_source);
    double stats_d = 0.5;
    std::vector<int> stats_lengths;
    s_int->add_option("--d", stats_d, "density in [0, 1]")->required();
    s_int->add_option("--L", stats_lengths, "relator lengths, comma separated")
        ->required()
        ->delimiter(',');

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "config-driven sweep to a CSV report");
    pipeline->fallthrough();
    std::string pipeline_config, pipeline_csv;
    pipeline->add_option("--config", pipeline_config, "key = value sweep configuration")
        ->required();
    pipeline->add_option("--csv", pipeline_csv, "output CSV path")->required();

    try {
        app.parse(argc, argv);

        if (sample->parsed()) {
            if (count_opt->count()) sample_args.count = sample_count_override;
            return run_sample(sample_args, global);
        }
        if (certify->parsed()) return run_certify(certify_args, global);
        if (automaton->parsed()) {
            if (a_count->parsed())
                return run_automaton_count(automaton_source, automaton_L, automaton_out, global);
            if (a_accepts->parsed())
                return run_automaton_accepts(automaton_source, automaton_word, automaton_out,
                                             global);
            return run_automaton_largeness(automaton_source, automaton_lambda, automaton_out,
                                           global);
        }
        if (blocks->parsed()) {
            blocks_args.r1 = blocks_r1;
            blocks_args.r2 = blocks_r2;
            for (auto* mode : blocks_modes)
                if (mode->parsed()) return run_blocks(mode->get_name(), blocks_args, global);
        }
        if (stats->parsed()) {
            if (s_conc->parsed())
                return run_stats_concentration(stats_a, stats_b, stats_c, stats_common, global);
            if (s_dist->parsed()) return run_stats_distinct(stats_b, stats_c, stats_common, global);
            return run_stats_intersect(stats_source, stats_d, stats_lengths, stats_common,
                                       global);
        }
        if (pipeline->parsed()) return run_pipeline(pipeline_config, pipeline_csv, global);
        std::cerr << "no subcommand given (try --help)\n";
        return kExitInput;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    } catch (const SizeLimitError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
