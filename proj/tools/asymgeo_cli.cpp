// asymgeo: command-line front end to the asymgeo library.
//
// Exit codes: 0 success, 1 verification failure, 2 bad input (parse errors,
// unknown options or kinds), 3 domain errors raised by a computation.

#include <asymgeo/asymgeo.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace asymgeo;
using nlohmann::json;

/// Twelve significant digits; zero prints as "0.0" and infinities as "inf".
std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0.0)
        return "0.0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s(buf);
    if (s.find_first_of(".e") == std::string::npos)
        s += ".0";
    return s;
}

/// JSON number rounded to twelve significant digits. JSON has no infinity,
/// so infinite values become the string "inf".
json jnum(double v)
{
    if (!std::isfinite(v))
        return num(v);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

json jnums(std::span<const double> v)
{
    json a = json::array();
    for (double e : v)
        a.push_back(jnum(e));
    return a;
}

struct Globals
{
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::string output;
    bool verbose = false;
};

struct Settings
{
    SolverConfig cfg;
    FileFormat format = FileFormat::json;
    std::string output;
    bool verbose = false;
};

FileFormat parse_format(const std::string& s)
{
    if (s == "json")
        return FileFormat::json;
    if (s == "csv")
        return FileFormat::csv;
    throw InputError("format must be json or csv, got '" + s + "'");
}

/// key=value lines; '#' starts a comment.
void apply_config_file(const std::string& path, Settings& st)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("ASYMGEO_CONFIG: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto eq = line.find('=');
        const auto trimmed = std::string(detail::trim(line));
        if (trimmed.empty())
            continue;
        if (eq == std::string::npos)
            throw InputError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key(detail::trim(std::string_view(line).substr(0, eq)));
        const std::string val(detail::trim(std::string_view(line).substr(eq + 1)));
        try {
            if (key == "tol")
                st.cfg.abs_tol = std::stod(val);
            else if (key == "max_iter")
                st.cfg.max_iter = std::stoi(val);
            else if (key == "seed")
                st.cfg.rng_seed = std::stoull(val);
            else if (key == "bracket_growth")
                st.cfg.bracket_growth = std::stod(val);
            else if (key == "quad_tol")
                st.cfg.quad_tol = std::stod(val);
            else if (key == "inf_conv_tol")
                st.cfg.inf_conv_tol = std::stod(val);
            else if (key == "format")
                st.format = parse_format(val);
            else
                throw InputError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        catch (const std::logic_error&) {
            throw InputError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
}

Settings resolve(const Globals& g)
{
    Settings st;
    if (const char* env = std::getenv("ASYMGEO_CONFIG"); env && *env)
        apply_config_file(env, st);
    if (g.tol)
        st.cfg.abs_tol = *g.tol;
    if (g.max_iter)
        st.cfg.max_iter = *g.max_iter;
    if (g.seed)
        st.cfg.rng_seed = *g.seed;
    if (g.format)
        st.format = parse_format(*g.format);
    st.output = g.output;
    st.verbose = g.verbose;
    try {
        st.cfg.validate();
    }
    catch (const DomainError& e) {
        throw InputError(e.what());
    }
    return st;
}

/// Writes to -o when given, stdout otherwise.
void emit(const Settings& st, const std::string& text)
{
    if (st.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(st.output, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + st.output + "'");
    out << text;
}

Measure load_measure_auto(const std::string& path, const SpacePtr& space = nullptr)
{
    return load_measure(path, format_from_path(path), space);
}

RandomVariable load_rv_auto(const std::string& path, const SpacePtr& space = nullptr)
{
    return load_random_variable(path, format_from_path(path), space);
}

std::vector<double> parse_list(const std::string& s, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(detail::parse_number(item));
        }
        catch (const ParseError&) {
            throw InputError(std::string(what) + ": '" + item + "' is not a number");
        }
    }
    if (out.empty())
        throw InputError(std::string(what) + ": empty list");
    return out;
}

// ---------------------------------------------------------------------------

struct DivergenceArgs
{
    std::string y, z, dual, integrand = "kl";
};

int cmd_divergence(const DivergenceArgs& a, const Settings& st)
{
    const auto z = load_measure_auto(a.z);
    const auto y = load_measure_auto(a.y, z.space());
    const auto f = integrand_by_name(a.integrand);
    const auto d = a.integrand == "kl" ? kl_divergence(y, z) : bregman_divergence(f, y, z);
    std::string out = num(d.value) + "\n";
    if (!a.dual.empty()) {
        const auto x = load_rv_auto(a.dual, z.space());
        out += num(dual_kl_divergence(x, z)) + "\n";
    }
    emit(st, out);
    return 0;
}

struct NormArgs
{
    std::string x, z, kind = "gauge";
    bool both = false;
};

void note_status(const NormResult& r, const Settings& st)
{
    if (!st.verbose)
        return;
    switch (r.status) {
    case NormStatus::ok: break;
    case NormStatus::degenerate:
        std::cerr << "note: input is supported on z-null outcomes only\n";
        break;
    case NormStatus::capped: std::cerr << "note: unit ball truncated by the positive cone\n"; break;
    case NormStatus::unreachable: std::cerr << "note: no positive multiple lies in the unit ball\n"; break;
    }
}

int cmd_norm(const NormArgs& a, const Settings& st)
{
    const NormContext ctx(load_measure_auto(a.z), st.cfg);
    const auto x = load_rv_auto(a.x, ctx.base.space());
    const auto kind = norm_kind_from(a.kind);
    const auto r = norm_of(kind, x.values(), ctx);
    note_status(r, st);
    std::string out = num(r.value) + "\n";
    if (a.both) {
        const auto rn = norm_of(kind, (-x).values(), ctx);
        note_status(rn, st);
        out += num(rn.value) + "\n";
    }
    emit(st, out);
    return 0;
}

struct BallArgs
{
    std::string z, kind = "gauge";
    int count = 64;
};

int cmd_ball(const BallArgs& a, const Settings& st)
{
    const NormContext ctx(load_measure_auto(a.z), st.cfg);
    const auto kind = norm_kind_from(a.kind);
    const auto sample = ball_boundary_sample(ctx, kind, a.count);
    const std::size_t n = ctx.size();

    std::ostringstream out;
    out << "# kind=" << to_string(kind) << " z=";
    for (std::size_t i = 0; i < n; ++i)
        out << (i ? ";" : "") << num(ctx.base[i]);
    out << " tol=" << num(st.cfg.abs_tol) << " max_iter=" << st.cfg.max_iter << " count=" << a.count
        << " omitted=" << sample.omitted_angles.size() << "\n";
    out << (n == 2 ? "angle,px,py\n" : "angle,px,py,pz\n");
    for (const auto& p : sample.points) {
        out << num(p.angle);
        for (double c : p.point)
            out << ',' << num(c);
        out << '\n';
    }
    emit(st, out.str());
    return 0;
}

struct OptimizeArgs
{
    std::string x, q, direction = "max";
    double lambda = 0.0;
};

int cmd_optimize(const OptimizeArgs& a, const Settings& st)
{
    const ProbabilityMeasure q(load_measure_auto(a.q), 1e-9);
    const auto x = load_rv_auto(a.x, q.space());
    const auto sol = a.direction == "max" ? solve_max_expectation(x, q, a.lambda, st.cfg)
                                          : solve_min_expectation(x, q, a.lambda, st.cfg);
    const double residual = sol.constraint_slack ? 0.0 : std::abs(sol.divergence - a.lambda);

    if (st.format == FileFormat::csv) {
        std::cerr << "# beta=" << num(sol.beta) << " value=" << num(sol.value)
                  << " divergence=" << num(sol.divergence) << " constraint_residual=" << num(residual)
                  << (sol.constraint_slack ? " constraint_slack" : "") << "\n";
        std::string csv;
        for (std::size_t i = 0; i < sol.p.size(); ++i)
            csv += sol.p.space()->label(i) + "," + num(sol.p[i]) + "\n";
        emit(st, csv);
        return 0;
    }
    json j;
    j["space"] = sol.p.space()->labels();
    j["weights"] = jnums(sol.p.weights());
    j["direction"] = a.direction;
    j["lambda"] = jnum(a.lambda);
    j["beta"] = jnum(sol.beta);
    j["value"] = jnum(sol.value);
    j["divergence"] = jnum(sol.divergence);
    j["constraint_residual"] = jnum(residual);
    j["constraint_slack"] = sol.constraint_slack;
    emit(st, j.dump(2) + "\n");
    return 0;
}

struct ChannelArgs
{
    std::string cost = "hamming", q, p, grid = "-1,-0.5,0,0.5,1";
    int length = 3, alphabet = 2;
    std::optional<double> lambda, beta;
    bool joint = false;
};

int cmd_channel(const ChannelArgs& a, const Settings& st)
{
    RandomVariable cost = a.cost == "hamming" ? hamming_cost(a.length, a.alphabet)
                                              : squared_euclidean_cost(parse_list(a.grid, "--grid"));
    // The cost lives on A x A; recover A from the number of outcomes.
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(cost.size()))));
    SpacePtr base = a.cost == "hamming" ? sequence_space(a.length, a.alphabet)
                                        : grid_space(parse_list(a.grid, "--grid"));
    auto uniform = [&] { return ProbabilityMeasure(Measure(base, std::vector<double>(side, 1.0 / side)), 1e-9); };
    const ProbabilityMeasure q = a.q.empty() ? uniform() : ProbabilityMeasure(load_measure_auto(a.q, base), 1e-9);
    const ProbabilityMeasure p = a.p.empty() ? uniform() : ProbabilityMeasure(load_measure_auto(a.p, base), 1e-9);
    const auto utility = -cost;

    auto solve = [&]() -> ChannelSolution {
        if (!a.beta)
            return solve_channel(utility, q, p, *a.lambda, st.cfg);
        const auto ref = product_measure(q, p);
        auto fam = tilt(utility, ref, *a.beta);
        const double d = kl_divergence(fam.member, ref).value;
        const double eu = pairing(utility, fam.member);
        auto hist = histogram(utility, fam.member);
        return {std::move(fam.member), *a.beta, d, eu, false, std::move(hist)};
    };
    const auto sol = solve();

    json j;
    j["cost"] = a.cost;
    j["beta"] = jnum(sol.beta);
    j["divergence"] = jnum(sol.divergence);
    j["expected_cost"] = jnum(-sol.expected_utility);
    j["constraint_slack"] = sol.constraint_slack;
    if (a.lambda) {
        j["lambda"] = jnum(*a.lambda);
        j["constraint_residual"] = jnum(sol.constraint_slack ? 0.0 : std::abs(sol.divergence - *a.lambda));
    }
    json hist = json::array();
    for (auto it = sol.utility_histogram.rbegin(); it != sol.utility_histogram.rend(); ++it)
        hist.push_back({{"cost", jnum(it->first == 0.0 ? 0.0 : -it->first)}, {"mass", jnum(it->second)}});
    j["histogram"] = hist;
    if (a.joint)
        j["joint"] = {{"space", sol.joint.space()->labels()}, {"weights", jnums(sol.joint.weights())}};
    emit(st, j.dump(2) + "\n");
    return 0;
}

struct LotteryArgs
{
    double h = 0.5, base = 2.0;
    int n = 40;
    std::string betas = "-1,-0.1,-0.01,0,0.01,0.1";
};

int cmd_lottery(const LotteryArgs& a, const Settings& st)
{
    TruncatedLottery lot{a.n, a.h, a.base};
    const auto rep = st_petersburg_report(lot, parse_list(a.betas, "--betas"));
    json j;
    j["h"] = jnum(a.h);
    j["N"] = a.n;
    j["base"] = jnum(a.base);
    j["expectation_raw"] = jnum(rep.expectation_raw);
    j["expectation_conditioned"] = jnum(rep.expectation_conditioned);
    j["defect_mass"] = jnum(rep.defect_mass);
    json table = json::array();
    for (const auto& e : rep.psi_table)
        table.push_back({{"beta", jnum(e.beta)},
                         {"N", e.truncation},
                         {"value", jnum(e.value)},
                         {"verdict", to_string(e.verdict)},
                         {"conditioned", e.conditioned}});
    j["psi_table"] = table;
    emit(st, j.dump(2) + "\n");
    return 0;
}

struct VerifyArgs
{
    std::string suite = "all";
    int trials = 200;
    bool inject_fault = false;
};

int cmd_verify(const VerifyArgs& a, const Settings& st)
{
    std::vector<Suite> suites;
    if (a.suite == "all")
        suites = {Suite::polar, Suite::bregman, Suite::norms, Suite::expfam};
    else
        for (auto s : {Suite::polar, Suite::bregman, Suite::norms, Suite::expfam})
            if (a.suite == to_string(s))
                suites.push_back(s);
    if (a.trials == 0)
        std::cerr << "warning: --trials 0 draws no random instances; random properties pass vacuously\n";

    VerifyOptions opt;
    opt.seed = st.cfg.rng_seed;
    opt.trials = a.trials;
    opt.inject_fault = a.inject_fault;
    opt.cfg = st.cfg;
    const auto results = run_suites(suites, opt);

    std::ostringstream out;
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.passed;
        out << (r.passed ? "PASS" : "FAIL") << "  " << r.suite << "  " << r.name << "  worst=" << num(r.worst)
            << "  tol=" << num(r.tolerance) << "  trials=" << r.trials << "\n";
    }
    out << (all_pass ? "all properties passed" : "some properties FAILED") << " (seed " << opt.seed << ")\n";
    emit(st, out.str());
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Asymmetric information geometry on finite sample spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "asymgeo 0.1.0");

    Globals g;
    app.add_option("--tol", g.tol, "Absolute tolerance of the root finders")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", g.max_iter, "Bracket growth step limit")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Random seed (default 20160901)");
    app.add_option("--format", g.format, "Output format for measures")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("-o,--output", g.output, "Write the result to this file");
    app.add_flag("-v,--verbose", g.verbose, "Print solver notes to stderr");

    auto fallthrough = [](CLI::App* sub) { sub->fallthrough(); };

    DivergenceArgs div;
    auto* c_div = app.add_subcommand("divergence", "KL (or Bregman) divergence D[y, z]");
    c_div->add_option("y", div.y, "Measure file y")->required();
    c_div->add_option("z", div.z, "Measure file z")->required();
    c_div->add_option("--dual", div.dual, "Also print the dual divergence D*[x, z] for this random variable");
    c_div->add_option("--integrand", div.integrand, "Separable integrand")
        ->check(CLI::IsMember({"kl", "phi", "phistar", "quadratic", "abs"}));
    fallthrough(c_div);

    NormArgs nrm;
    std::vector<std::string> kinds;
    for (auto k : all_norm_kinds)
        kinds.emplace_back(to_string(k));
    auto* c_norm = app.add_subcommand("norm", "Asymmetric norm of x at base measure z");
    c_norm->add_option("x", nrm.x, "Random variable file x")->required();
    c_norm->add_option("z", nrm.z, "Base measure file z")->required();
    c_norm->add_option("--kind", nrm.kind, "Norm kind")->check(CLI::IsMember(kinds));
    c_norm->add_flag("--both", nrm.both, "Also print the norm of -x");
    fallthrough(c_norm);

    BallArgs ball;
    auto* c_ball = app.add_subcommand("ball", "Unit-ball boundary points as CSV");
    c_ball->add_option("z", ball.z, "Base measure file z (2 or 3 outcomes)")->required();
    c_ball->add_option("--kind", ball.kind, "Norm kind")->check(CLI::IsMember(kinds));
    c_ball->add_option("--count", ball.count, "Number of directions")->check(CLI::Range(8, 100000));
    fallthrough(c_ball);

    OptimizeArgs opt;
    auto* c_opt = app.add_subcommand("optimize", "Extremal expectation over a KL ball around q");
    c_opt->add_option("x", opt.x, "Random variable file x")->required();
    c_opt->add_option("q", opt.q, "Reference probability file q")->required();
    c_opt->add_option("--lambda", opt.lambda, "Radius of the KL ball")->required()->check(CLI::NonNegativeNumber);
    c_opt->add_option("--direction", opt.direction, "max or min")->check(CLI::IsMember({"max", "min"}));
    fallthrough(c_opt);

    ChannelArgs ch;
    auto* c_ch = app.add_subcommand("channel", "Tilted joint law of a cost-constrained channel");
    c_ch->add_option("--cost", ch.cost, "hamming or sqeuclid")->check(CLI::IsMember({"hamming", "sqeuclid"}));
    c_ch->add_option("--length", ch.length, "Sequence length (hamming)")->check(CLI::Range(1, 20));
    c_ch->add_option("--alphabet", ch.alphabet, "Alphabet size (hamming)")->check(CLI::Range(2, 36));
    c_ch->add_option("--grid", ch.grid, "Comma-separated grid (sqeuclid)");
    c_ch->add_option("--q", ch.q, "Input marginal file (default uniform)");
    c_ch->add_option("--p", ch.p, "Output marginal file (default uniform)");
    auto* o_lambda = c_ch->add_option("--lambda", ch.lambda, "Mutual-information budget")
                         ->check(CLI::NonNegativeNumber);
    auto* o_beta = c_ch->add_option("--beta", ch.beta, "Tilt the product directly at this inverse temperature");
    o_lambda->excludes(o_beta);
    c_ch->add_flag("--joint", ch.joint, "Include the joint law in the output");
    fallthrough(c_ch);

    LotteryArgs lot;
    auto* c_lot = app.add_subcommand("lottery", "Truncated St. Petersburg lottery report");
    // "--h" is the head probability here, so help is long-form only.
    c_lot->set_help_flag("--help", "Print this help message and exit");
    c_lot->add_option("--h", lot.h, "Probability of heads");
    c_lot->add_option("--N", lot.n, "Truncation");
    c_lot->add_option("--base", lot.base, "Payoff base");
    c_lot->add_option("--betas", lot.betas, "Comma-separated beta grid for the domain probe");
    fallthrough(c_lot);

    VerifyArgs ver;
    auto* c_ver = app.add_subcommand("verify", "Randomized property suites");
    c_ver->add_option("--suite", ver.suite, "Suite to run")
        ->check(CLI::IsMember({"polar", "bregman", "norms", "expfam", "all"}));
    c_ver->add_option("--trials", ver.trials, "Random trials per property")->check(CLI::NonNegativeNumber);
    c_ver->add_flag("--inject-fault", ver.inject_fault)->group("");
    fallthrough(c_ver);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (c_ch->parsed() && !ch.lambda && !ch.beta) {
        std::cerr << "error: channel needs --lambda or --beta\n";
        return 2;
    }

    try {
        const Settings st = resolve(g);
        if (c_div->parsed())
            return cmd_divergence(div, st);
        if (c_norm->parsed())
            return cmd_norm(nrm, st);
        if (c_ball->parsed())
            return cmd_ball(ball, st);
        if (c_opt->parsed())
            return cmd_optimize(opt, st);
        if (c_ch->parsed())
            return cmd_channel(ch, st);
        if (c_lot->parsed())
            return cmd_lottery(lot, st);
        if (c_ver->parsed())
            return cmd_verify(ver, st);
    }
    catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const BracketFailure& e) {
        std::cerr << "error: solver could not bracket the root: " << e.what() << "\n";
        return 3;
    }
    catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
