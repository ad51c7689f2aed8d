#include "varj/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "varj/bounds.hpp"
#include "varj/error.hpp"
#include "varj/fixtures.hpp"
#include "varj/genfun.hpp"
#include "varj/gof.hpp"
#include "varj/order_stats.hpp"
#include "varj/render.hpp"

namespace varj {

namespace {

using json = nlohmann::ordered_json;

double default_tol() {
    if (const char* env = std::getenv("VARJ_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0)) {
            fail("usage-error", std::string("invalid VARJ_TOL value '") + env + "'");
        }
        return v;
    }
    return kDefaultTol;
}

json jnum(double v) { return json(round_sig10(v)); }

json measure_json(const MeasureReport& m) {
    json j;
    j["value"] = jnum(m.value);
    j["abs_error"] = jnum(m.abs_error);
    j["weighted"] = m.weighted;
    j["method"] = method_name(m.method);
    return j;
}

json measures_json(const std::vector<MeasureReport>& ms) {
    json j = json::object();
    for (const MeasureReport& m : ms) j[m.name] = measure_json(m);
    return j;
}

void emit(const RunConfig& cfg, const json& doc, const std::string& text) {
    std::string body;
    if (cfg.format == OutputFormat::json) {
        body = doc.dump(2) + "\n";
    } else if (cfg.format == OutputFormat::csv) {
        std::ostringstream os;
        os << "key,value\n";
        const json flat = doc.flatten();
        for (auto it = flat.begin(); it != flat.end(); ++it) {
            std::string v = it.value().is_string() ? it.value().get<std::string>()
                                                   : it.value().dump();
            os << '"' << it.key() << "\"," << v << "\n";
        }
        body = os.str();
    } else {
        body = text;
    }
    if (cfg.output.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(cfg.output);
        if (!out) fail("io-error", "cannot open '" + cfg.output + "' for writing");
        out << body;
        if (!out) fail("io-error", "failed to write '" + cfg.output + "'");
    }
}

std::string fmt_measure_rows(const std::vector<MeasureReport>& ms) {
    std::ostringstream os;
    for (const MeasureReport& m : ms) {
        os << "  " << m.name;
        for (std::size_t i = m.name.size(); i < 14; ++i) os << ' ';
        os << format_sig10(m.value) << "   (err<=" << format_sig10(m.abs_error) << ", "
           << method_name(m.method) << ")\n";
    }
    return os.str();
}

// ---- sampling cross-check for the measures verb ---------------------------

double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

json mc_cross_check(const Distribution& dx, const Distribution* dy, bool weighted, long draws,
                    long seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::vector<double> xs(static_cast<std::size_t>(draws));
    for (double& x : xs) x = dx.quantile(uniform01(rng));

    auto stats = [&](auto&& h) {
        double mean = 0.0;
        for (double x : xs) mean += h(x);
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) {
            const double c = h(x) - mean;
            var += c * c;
        }
        var /= static_cast<double>(xs.size());
        return std::pair<double, double>(mean, var);
    };

    json out = json::object();
    {
        auto [m, v] = stats([&](double x) { return -0.5 * dx.density(x); });
        out["J(X)"] = jnum(m);
        out["VarJ(X)"] = jnum(v);
    }
    if (weighted) {
        auto [m, v] = stats([&](double x) { return -0.5 * x * dx.density(x); });
        out["J^w(X)"] = jnum(m);
        out["VarJ^w(X)"] = jnum(v);
    }
    {
        auto [m, v] = stats([&](double x) { return -std::log(dx.density(x)); });
        out["H(X)"] = jnum(m);
        out["V(X)"] = jnum(v);
    }
    if (dy) {
        auto [mi, vi] = stats([&](double x) { return -0.5 * dy->density(x); });
        out["J(X,Y)"] = jnum(mi);
        out["VarJ(X,Y)"] = jnum(vi);
        auto [md, vd] = stats([&](double x) { return 0.5 * (dx.density(x) - dy->density(x)); });
        out["J(X|Y)"] = jnum(md);
        out["VarJ(X|Y)"] = jnum(vd);
        auto [mk, vk] = stats([&](double x) { return std::log(dx.density(x) / dy->density(x)); });
        out["K(X,Y)"] = jnum(mk);
        out["VarK(X,Y)"] = jnum(vk);
        if (weighted) {
            auto [mwi, vwi] = stats([&](double x) { return -0.5 * x * dy->density(x); });
            out["J^w(X,Y)"] = jnum(mwi);
            out["VarJ^w(X,Y)"] = jnum(vwi);
        }
    }
    return out;
}

// ---- verbs ----------------------------------------------------------------

int run_measures(const RunConfig& cfg) {
    const Distribution dx = parse_distribution_spec(cfg.x_spec);
    std::optional<Distribution> dy;
    if (!cfg.y_spec.empty()) dy = parse_distribution_spec(cfg.y_spec);

    std::vector<MeasureReport> ms;
    ms.push_back(extropy(dx, false, cfg.tol));
    ms.push_back(varextropy(dx, false, cfg.tol));
    if (cfg.weighted) {
        ms.push_back(extropy(dx, true, cfg.tol));
        ms.push_back(varextropy(dx, true, cfg.tol));
    }
    ms.push_back(entropy(dx, cfg.tol));
    ms.push_back(varentropy(dx, cfg.tol));
    if (dy) {
        ms.push_back(inaccuracy(dx, *dy, false, cfg.tol));
        ms.push_back(discrimination(dx, *dy, false, cfg.tol));
        ms.push_back(varj_inaccuracy(dx, *dy, false, cfg.tol));
        ms.push_back(varj_divergence(dx, *dy, cfg.tol));
        ms.push_back(kl_divergence(dx, *dy, cfg.tol));
        ms.push_back(var_kl(dx, *dy, cfg.tol));
        if (cfg.weighted) {
            ms.push_back(inaccuracy(dx, *dy, true, cfg.tol));
            ms.push_back(discrimination(dx, *dy, true, cfg.tol));
            ms.push_back(varj_inaccuracy(dx, *dy, true, cfg.tol));
        }
    }

    json doc;
    doc["command"] = "measures";
    doc["x"] = dx.describe();
    if (dy) doc["y"] = dy->describe();
    doc["tol"] = jnum(cfg.tol);
    doc["measures"] = measures_json(ms);

    std::ostringstream text;
    text << "measures for X ~ " << dx.describe();
    if (dy) text << ", Y ~ " << dy->describe();
    text << "\n" << fmt_measure_rows(ms);
    if (cfg.mc_draws > 0) {
        doc["mc"] = mc_cross_check(dx, dy ? &*dy : nullptr, cfg.weighted, cfg.mc_draws, cfg.seed);
        doc["mc_draws"] = cfg.mc_draws;
        doc["seed"] = cfg.seed;
        text << "sampling cross-check (" << cfg.mc_draws << " draws, seed " << cfg.seed << ")\n";
        for (auto it = doc["mc"].begin(); it != doc["mc"].end(); ++it) {
            text << "  " << it.key();
            for (std::size_t i = it.key().size(); i < 14; ++i) text << ' ';
            text << it.value().dump() << "\n";
        }
    }
    emit(cfg, doc, text.str());
    return 0;
}

int run_bounds(const RunConfig& cfg) {
    const Distribution dx = parse_distribution_spec(cfg.x_spec);
    const Distribution dy = parse_distribution_spec(cfg.y_spec);

    const MeasureReport exact = varj_inaccuracy(dx, dy, false, cfg.tol);
    json doc;
    doc["command"] = "bounds";
    doc["x"] = dx.describe();
    doc["y"] = dy.describe();
    doc["VarJ(X,Y)"] = jnum(exact.value);

    std::ostringstream text;
    text << "lower bounds for VarJ(X,Y), X ~ " << dx.describe() << ", Y ~ " << dy.describe()
         << "\n  VarJ(X,Y)      " << format_sig10(exact.value) << "\n";

    if (dx.family() == Family::exponential && dy.family() == Family::exponential) {
        const BoundResult b = series_bound_exponential(dx.params()[0], dy.params()[0], cfg.series_n);
        doc["series"] = {{"n", cfg.series_n}, {"value", jnum(b.value)}};
        text << "  series (n=" << cfg.series_n << ")  " << format_sig10(b.value) << "\n";
    } else if (dx.family() == Family::power && dy.family() == Family::power) {
        const BoundResult b = series_bound_power(dx.params()[0], dy.params()[0], cfg.series_n);
        doc["series"] = {{"n", cfg.series_n}, {"value", jnum(b.value)}};
        text << "  series (n=" << cfg.series_n << ")  " << format_sig10(b.value) << "\n";
    }
    if (cfg.cheb_eps) {
        const BoundResult c = chebyshev_bound(dx, dy, *cfg.cheb_eps);
        doc["chebyshev"] = {{"eps", jnum(*cfg.cheb_eps)},
                            {"value", jnum(c.value)},
                            {"valid", c.valid}};
        text << "  chebyshev (eps=" << format_sig10(*cfg.cheb_eps) << ")  "
             << format_sig10(c.value) << (c.valid ? "" : "  [inverse argument saturated]") << "\n";
    }
    emit(cfg, doc, text.str());
    return 0;
}

int run_genfun(const RunConfig& cfg) {
    const Distribution dx = parse_distribution_spec(cfg.x_spec);
    std::optional<Distribution> dy;
    if (!cfg.y_spec.empty()) dy = parse_distribution_spec(cfg.y_spec);

    json doc;
    doc["command"] = "genfun";
    doc["x"] = dx.describe();
    std::ostringstream text;
    text << "extropy generating function, X ~ " << dx.describe() << "\n";

    json gj = json::object();
    for (double t : cfg.t_values) {
        const double g = extropy_genfun(dx, t);
        gj[format_sig10(t)] = jnum(g);
        text << "  G(" << format_sig10(t) << ") = " << format_sig10(g) << "\n";
    }
    doc["G"] = gj;

    const GenFunMoments mom = extropy_moments(dx, cfg.tol);
    doc["moments"] = {{"j", jnum(mom.j)},
                      {"varj", jnum(mom.varj)},
                      {"skewj", jnum(mom.skewj)},
                      {"kurtj", jnum(mom.kurtj)},
                      {"raw", {jnum(mom.raw[0]), jnum(mom.raw[1]), jnum(mom.raw[2]), jnum(mom.raw[3])}}};
    text << "  J = " << format_sig10(mom.j) << ", VarJ = " << format_sig10(mom.varj)
         << ", SkewJ = " << format_sig10(mom.skewj) << ", KurtJ = " << format_sig10(mom.kurtj)
         << "\n";

    const double d1 = genfun_derivative_check(dx, 1);
    const double d2 = genfun_derivative_check(dx, 2);
    doc["log_derivatives"] = {{"k1", jnum(d1)}, {"k2", jnum(d2)}};
    text << "  d/dt   ln G|0 = " << format_sig10(d1) << "  (J)\n";
    text << "  d2/dt2 ln G|0 = " << format_sig10(d2) << "  (VarJ)\n";

    if (dy) {
        doc["y"] = dy->describe();
        json dgj = json::object();
        for (double t : cfg.t_values) {
            const double g = divergence_genfun(dx, *dy, t);
            dgj[format_sig10(t)] = jnum(g);
            text << "  G_div(" << format_sig10(t) << ") = " << format_sig10(g) << "\n";
        }
        doc["G_divergence"] = dgj;
        const double h = 1e-4;
        const double slope = (divergence_genfun(dx, *dy, h) - divergence_genfun(dx, *dy, -h)) / (2.0 * h);
        doc["divergence_slope_at_0"] = jnum(slope);
        text << "  d/dt G_div|0 = " << format_sig10(slope) << "  (J(X|Y))\n";
    }
    emit(cfg, doc, text.str());
    return 0;
}

int run_order_stats(const RunConfig& cfg) {
    const Distribution parent = parse_distribution_spec(cfg.parent_spec);
    const OrderStatSpec spec{parent, cfg.order_i, cfg.order_n};
    const OrderStatDensity osd(spec);

    const MeasureReport inacc = varj_inaccuracy_order(spec, cfg.tol);
    const MeasureReport diver = varj_divergence_order(spec, cfg.tol);
    // Direct-quadrature forms of the same quantities.
    const double direct_inacc =
        variance_under(parent, [&osd](double x) { return -0.5 * osd.density(x); }, cfg.tol).value;
    const double direct_diver = varj_divergence(osd, parent, cfg.tol).value;

    json doc;
    doc["command"] = "order-stats";
    doc["parent"] = parent.describe();
    doc["i"] = cfg.order_i;
    doc["n"] = cfg.order_n;
    doc["VarJ(Xi:n,X)"] = {{"beta_formula", jnum(inacc.value)},
                           {"direct", jnum(direct_inacc)},
                           {"abs_diff", jnum(std::fabs(inacc.value - direct_inacc))}};
    doc["VarJ(Xi:n|X)"] = {{"beta_formula", jnum(diver.value)},
                           {"direct", jnum(direct_diver)},
                           {"abs_diff", jnum(std::fabs(diver.value - direct_diver))}};

    std::ostringstream text;
    text << "order statistic i=" << cfg.order_i << " of n=" << cfg.order_n << ", parent "
         << parent.describe() << "\n"
         << "  VarJ(Xi:n,X)  beta formula " << format_sig10(inacc.value) << "  direct "
         << format_sig10(direct_inacc) << "\n"
         << "  VarJ(Xi:n|X)  beta formula " << format_sig10(diver.value) << "  direct "
         << format_sig10(direct_diver) << "\n";
    emit(cfg, doc, text.str());
    return 0;
}

json comparison_json(const std::string& command, const std::string& dataset,
                     const ComparisonReport& rep) {
    json doc;
    doc["command"] = command;
    doc["dataset"] = dataset;
    doc["n"] = rep.sample_n;
    doc["kde"] = {{"bandwidth", jnum(rep.bandwidth)}, {"gridpoints", rep.gridpoints}};
    doc["candidates"] = json::array();
    for (const CandidateResult& c : rep.candidates) {
        json cj;
        cj["family"] = family_name(c.family);
        cj["label"] = c.label;
        if (!c.ok()) {
            cj["error"] = c.error;
            doc["candidates"].push_back(cj);
            continue;
        }
        cj["fitted"] = c.fitted;
        cj["params"] = json::array();
        for (double p : c.params) cj["params"].push_back(jnum(p));
        cj["log_likelihood"] = jnum(c.log_likelihood);
        cj["ks"] = {{"statistic", jnum(c.ks.statistic)},
                    {"p_value", jnum(c.ks.p_value)},
                    {"p_value_exact", jnum(c.ks.p_value_exact)}};
        cj["ad"] = {{"statistic", jnum(c.ad)}, {"p_value", jnum(c.ad_p)}};
        cj["ic"] = {{"aic", jnum(c.ic.aic)},
                    {"caic", jnum(c.ic.caic)},
                    {"bic", jnum(c.ic.bic)},
                    {"hqic", jnum(c.ic.hqic)}};
        cj["measures"] = measures_json(c.measures);
        doc["candidates"].push_back(cj);
    }
    doc["decisions"] = json::array();
    for (const CriterionOutcome& d : rep.decisions) {
        doc["decisions"].push_back(
            {{"rule", d.rule},
             {"y1", rep.candidates[d.first].label},
             {"y2", rep.candidates[d.second].label},
             {"residual", jnum(d.decision.residual)},
             {"regime", d.decision.rule_applies ? "defined" : "undefined-negative-divergence"},
             {"preferred", rep.candidates[d.preferred].label}});
    }
    return doc;
}

std::string comparison_text(const ComparisonReport& rep) {
    std::ostringstream os;
    os << "model comparison over " << rep.sample_n << " observations (kde bandwidth "
       << format_sig10(rep.bandwidth) << ", " << rep.gridpoints << " grid points)\n\n";
    int idx = 1;
    for (const CandidateResult& c : rep.candidates) {
        os << "Y" << idx << ": " << c.label;
        if (!c.ok()) {
            os << "  FAILED: " << c.error << "\n";
            ++idx;
            continue;
        }
        os << (c.fitted ? "  (MLE fit)" : "  (fixed parameters)") << "\n  params       ";
        for (double p : c.params) os << format_sig10(p) << " ";
        os << "\n  loglik       " << format_sig10(c.log_likelihood) << "\n"
           << "  KS           D=" << format_sig10(c.ks.statistic)
           << "  p=" << format_sig10(c.ks.p_value)
           << "  p_exact=" << format_sig10(c.ks.p_value_exact) << "\n"
           << "  AD           A2=" << format_sig10(c.ad) << "  p=" << format_sig10(c.ad_p) << "\n";
        os << fmt_measure_rows(c.measures);
        ++idx;
    }
    os << "\ninformation criteria\n";
    os << "  model            AIC        CAIC       BIC        HQIC\n";
    for (const CandidateResult& c : rep.candidates) {
        if (!c.ok()) continue;
        os << "  ";
        std::string label = c.label.substr(0, 15);
        os << label;
        for (std::size_t i = label.size(); i < 17; ++i) os << ' ';
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%-10.4f %-10.4f %-10.4f %-10.4f", c.ic.aic, c.ic.caic,
                      c.ic.bic, c.ic.hqic);
        os << buf << "\n";
    }
    os << "\ndecisions\n";
    for (const CriterionOutcome& d : rep.decisions) {
        os << "  " << d.rule << "-criterion: Y1=" << rep.candidates[d.first].label
           << " Y2=" << rep.candidates[d.second].label
           << "  residual=" << format_sig10(d.decision.residual) << "  prefer "
           << rep.candidates[d.preferred].label;
        if (!d.decision.rule_applies) os << "  (undefined regime: negative divergence; Y1 by default)";
        os << "\n";
    }
    return os.str();
}

void maybe_plot(const RunConfig& cfg, const Sample& s, const ComparisonReport& rep,
                const std::vector<Candidate>& candidates) {
    if (cfg.plot.empty()) return;
    const DensityEstimate est = kde(s, cfg.bandwidth, cfg.gridpoints);
    std::vector<std::pair<std::string, std::vector<double>>> curves;
    curves.emplace_back("kde", est.values());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!rep.candidates[i].ok()) continue;
        const Distribution d(candidates[i].family, rep.candidates[i].params);
        std::vector<double> ys;
        ys.reserve(est.grid().size());
        for (double x : est.grid()) ys.push_back(d.density(x));
        curves.emplace_back(rep.candidates[i].label, std::move(ys));
    }
    write_density_svg(cfg.plot, est.grid(), curves);
}

int run_compare(const RunConfig& cfg) {
    const Sample s = load_dataset(cfg.dataset);
    std::vector<Candidate> candidates;
    for (Family f : cfg.families) candidates.push_back({f, std::nullopt, family_name(f)});
    for (const std::string& spec : cfg.candidates) {
        const Distribution d = parse_distribution_spec(spec);
        candidates.push_back({d.family(), d.params(), d.describe()});
    }
    if (candidates.size() < 2) {
        fail("usage-error", "compare needs at least two candidates (--families/--candidates)");
    }
    CompareOptions opt;
    opt.bandwidth = cfg.bandwidth;
    opt.gridpoints = cfg.gridpoints;
    opt.tol = cfg.tol;
    const ComparisonReport rep = compare_models(s, candidates, opt);
    maybe_plot(cfg, s, rep, candidates);
    emit(cfg, comparison_json("compare", cfg.dataset, rep), comparison_text(rep));
    return 0;
}

int run_repro(const RunConfig& cfg) {
    const Sample s = fixture_sample(cfg.example);
    std::vector<Candidate> candidates;
    if (cfg.example == "locomotive") {
        candidates.push_back({Family::lognormal, std::nullopt, "lognormal-mle"});
        // Reference posterior-mean parameters for the second lognormal model.
        candidates.push_back({Family::lognormal,
                              std::vector<double>{4.427955, 0.4516975}, "lognormal-bayes"});
    } else {
        candidates.push_back({Family::weibull, std::nullopt, "weibull"});
        candidates.push_back({Family::gamma, std::nullopt, "gamma"});
    }
    CompareOptions opt;
    opt.bandwidth = cfg.bandwidth;
    opt.gridpoints = cfg.gridpoints;
    opt.tol = cfg.tol;
    const ComparisonReport rep = compare_models(s, candidates, opt);
    maybe_plot(cfg, s, rep, candidates);
    emit(cfg, comparison_json("repro", cfg.example, rep), comparison_text(rep));
    return 0;
}

}  // namespace

Distribution parse_distribution_spec(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= spec.size()) {
        fail("usage-error", "distribution spec must look like family:p1[,p2] (got '" + spec + "')");
    }
    const auto fam = family_from_name(spec.substr(0, colon));
    if (!fam) fail("usage-error", "unknown family '" + spec.substr(0, colon) + "'");
    std::vector<double> params;
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0') {
            fail("usage-error", "bad parameter '" + tok + "' in spec '" + spec + "'");
        }
        params.push_back(v);
    }
    try {
        return Distribution(*fam, params);
    } catch (const Error& e) {
        fail("usage-error", std::string("invalid spec '") + spec + "': " + e.what());
    }
}

Sample load_dataset(const std::string& source) {
    if (is_fixture(source)) return fixture_sample(source);
    std::ifstream in(source);
    if (!in) fail("io-error", "cannot open dataset '" + source + "'");
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (char& c : line) {
            if (c == ',') c = ' ';
        }
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0' || !std::isfinite(v)) {
                fail("parse-error",
                     "line " + std::to_string(lineno) + ": cannot parse '" + tok + "'");
            }
            values.push_back(v);
        }
    }
    if (values.empty()) fail("empty-dataset", "no values in '" + source + "'");
    return Sample::from_values(std::move(values));
}

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    cfg.tol = default_tol();

    CLI::App app{"varextropy-based information measures and goodness-of-fit toolkit"};
    app.require_subcommand(1);

    std::vector<std::string> family_names;
    std::string format = "text";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", cfg.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "output format: text|json|csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--output", cfg.output, "write the report to a file");
        sub->add_option("--seed", cfg.seed, "seed for sampling cross-checks");
    };

    CLI::App* m = app.add_subcommand("measures", "information measures of one or two laws");
    m->add_option("--x", cfg.x_spec, "distribution spec, e.g. exp:5")->required();
    m->add_option("--y", cfg.y_spec, "second distribution spec");
    m->add_flag("--weighted", cfg.weighted, "include the weighted variants");
    m->add_option("--mc-draws", cfg.mc_draws, "sampling cross-check draw count");
    add_common(m);

    CLI::App* c = app.add_subcommand("compare", "fit candidates to data and compare them");
    c->add_option("--data", cfg.dataset, "dataset path or fixture (locomotive, bearings)")
        ->required();
    c->add_option("--families", family_names, "families to fit by MLE")->delimiter(',');
    c->add_option("--candidates", cfg.candidates, "fixed-parameter specs family:p1,p2")
        ->delimiter(',');
    c->add_option("--bandwidth", [&cfg](const std::vector<std::string>& v) {
        char* end = nullptr;
        const double h = std::strtod(v.front().c_str(), &end);
        if (end == v.front().c_str() || *end != '\0' || !(h > 0.0)) return false;
        cfg.bandwidth = h;
        return true;
    }, "kde bandwidth override");
    c->add_option("--gridpoints", cfg.gridpoints, "kde grid size")->check(CLI::Range(16, 1 << 20));
    c->add_option("--plot", cfg.plot, "write a density-overlay SVG");
    add_common(c);

    CLI::App* b = app.add_subcommand("bounds", "lower bounds for VarJ(X,Y)");
    b->add_option("--x", cfg.x_spec)->required();
    b->add_option("--y", cfg.y_spec)->required();
    b->add_option("--series-n", cfg.series_n, "series bound order")->check(CLI::PositiveNumber);
    b->add_option("--cheb-eps", [&cfg](const std::vector<std::string>& v) {
        char* end = nullptr;
        const double eps = std::strtod(v.front().c_str(), &end);
        if (end == v.front().c_str() || *end != '\0' || !(eps > 0.0)) return false;
        cfg.cheb_eps = eps;
        return true;
    }, "Chebyshev bound epsilon");
    add_common(b);

    CLI::App* g = app.add_subcommand("genfun", "extropy generating function and moments");
    g->add_option("--x", cfg.x_spec)->required();
    g->add_option("--y", cfg.y_spec, "adds the divergence generating function");
    g->add_option("--t", cfg.t_values, "evaluation points")->delimiter(',');
    add_common(g);

    CLI::App* o = app.add_subcommand("order-stats", "order-statistic varextropy identities");
    o->add_option("--parent", cfg.parent_spec)->required();
    o->add_option("--i", cfg.order_i, "rank")->required();
    o->add_option("--n", cfg.order_n, "sample size")->required();
    add_common(o);

    CLI::App* r = app.add_subcommand("repro", "reproduce an embedded example analysis");
    r->add_option("--example", cfg.example, "locomotive or bearings")
        ->required()
        ->check(CLI::IsMember({"locomotive", "bearings"}));
    r->add_option("--bandwidth", [&cfg](const std::vector<std::string>& v) {
        char* end = nullptr;
        const double h = std::strtod(v.front().c_str(), &end);
        if (end == v.front().c_str() || *end != '\0' || !(h > 0.0)) return false;
        cfg.bandwidth = h;
        return true;
    }, "kde bandwidth override");
    r->add_option("--gridpoints", cfg.gridpoints)->check(CLI::Range(16, 1 << 20));
    r->add_option("--plot", cfg.plot, "write a density-overlay SVG");
    add_common(r);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream os;
        os << app.help();
        throw Error("help", os.str());
    } catch (const CLI::ParseError& e) {
        fail("usage-error", e.what());
    }

    if (m->parsed()) cfg.command = "measures";
    if (c->parsed()) cfg.command = "compare";
    if (b->parsed()) cfg.command = "bounds";
    if (g->parsed()) cfg.command = "genfun";
    if (o->parsed()) cfg.command = "order-stats";
    if (r->parsed()) cfg.command = "repro";

    if (format == "json") cfg.format = OutputFormat::json;
    else if (format == "csv") cfg.format = OutputFormat::csv;
    else cfg.format = OutputFormat::text;

    for (const std::string& name : family_names) {
        const auto fam = family_from_name(name);
        if (!fam) fail("usage-error", "unknown family '" + name + "'");
        cfg.families.push_back(*fam);
    }

    if (!(cfg.tol > 0.0)) fail("usage-error", "tol must be positive");
    if (cfg.gridpoints < 16) fail("usage-error", "gridpoints must be at least 16");
    if (cfg.t_values.empty()) cfg.t_values = {0.5, 1.0, 2.0};
    if (cfg.command == "order-stats" &&
        (cfg.order_i < 1 || cfg.order_n < 1 || cfg.order_i > cfg.order_n)) {
        fail("usage-error", "order-stats requires 1 <= i <= n");
    }
    return cfg;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        const RunConfig cfg = parse_args(args);
        if (cfg.command == "measures") return run_measures(cfg);
        if (cfg.command == "compare") return run_compare(cfg);
        if (cfg.command == "bounds") return run_bounds(cfg);
        if (cfg.command == "genfun") return run_genfun(cfg);
        if (cfg.command == "order-stats") return run_order_stats(cfg);
        if (cfg.command == "repro") return run_repro(cfg);
        fail("usage-error", "no command given");
    } catch (const Error& e) {
        if (e.category() == "help") {
            std::cout << e.what() + 6 << "\n";  // strip the "help: " prefix
            return 0;
        }
        std::cerr << "varj: error: " << e.what() << "\n";
        return e.category() == "usage-error" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "varj: error: internal: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace varj
