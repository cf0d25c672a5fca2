#include "possave/cli.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace possave::cli {

namespace {

using InJson = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config field '" + path + "': " + what);
}

void allow_only(const InJson& obj, const std::string& path, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) fail(path, "must be an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
    }
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number(const InJson& obj, const std::string& path, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(join(path, key), "is required");
    if (!it->is_number()) fail(join(path, key), "must be a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) fail(join(path, key), "must be finite");
    return v;
}

double number_or(const InJson& obj, const std::string& path, const std::string& key, double fallback) {
    return obj.contains(key) ? number(obj, path, key) : fallback;
}

std::int64_t integer(const InJson& obj, const std::string& path, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(join(path, key), "is required");
    if (!it->is_number_integer()) fail(join(path, key), "must be an integer");
    return it->get<std::int64_t>();
}

std::string text(const InJson& obj, const std::string& path, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(join(path, key), "is required");
    if (!it->is_string()) fail(join(path, key), "must be a string");
    return it->get<std::string>();
}

const InJson& object(const InJson& obj, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(key, "is required");
    if (!it->is_object()) fail(key, "must be an object");
    return *it;
}

std::pair<Utility, Json> parse_utility(const InJson& j) {
    const std::string kind = text(j, "utility", "kind");
    if (kind == "crra") {
        allow_only(j, "utility", {"kind", "gamma"});
        const double g = number(j, "utility", "gamma");
        return {Utility::crra_or_log(g), Json{{"kind", "crra"}, {"gamma", g}}};
    }
    if (kind == "log") {
        allow_only(j, "utility", {"kind"});
        return {Utility::log(), Json{{"kind", "log"}}};
    }
    if (kind == "cara") {
        allow_only(j, "utility", {"kind", "a"});
        const double a = number(j, "utility", "a");
        return {Utility::cara(a), Json{{"kind", "cara"}, {"a", a}}};
    }
    if (kind == "quadratic") {
        allow_only(j, "utility", {"kind", "b"});
        const double b = number(j, "utility", "b");
        return {Utility::quadratic(b), Json{{"kind", "quadratic"}, {"b", b}}};
    }
    fail("utility.kind", "unknown utility '" + kind + "' (expected crra, log, cara, quadratic)");
}

std::pair<WeightingFunction, Json> parse_weighting(const InJson& j) {
    const std::string kind = text(j, "weighting", "kind");
    if (kind == "uniform") {
        allow_only(j, "weighting", {"kind"});
        return {WeightingFunction::uniform(), Json{{"kind", "uniform"}}};
    }
    if (kind == "power") {
        allow_only(j, "weighting", {"kind", "p"});
        const double p = number_or(j, "weighting", "p", Defaults::weighting_exponent);
        if (p < 0.0) fail("weighting.p", "must be >= 0");
        return {WeightingFunction::power(p), Json{{"kind", "power"}, {"p", p}}};
    }
    fail("weighting.kind", "unknown weighting '" + kind + "' (expected uniform, power)");
}

std::pair<FuzzyNumber, Json> parse_fuzzy(const InJson& j) {
    const std::string shape = text(j, "fuzzy", "shape");
    if (shape == "crisp_point") {
        allow_only(j, "fuzzy", {"shape", "value"});
        const double v = number(j, "fuzzy", "value");
        return {FuzzyNumber::crisp_point(v), Json{{"shape", shape}, {"value", v}}};
    }
    if (shape == "crisp_interval") {
        allow_only(j, "fuzzy", {"shape", "lower", "upper"});
        const double lo = number(j, "fuzzy", "lower");
        const double hi = number(j, "fuzzy", "upper");
        return {FuzzyNumber::crisp_interval(lo, hi), Json{{"shape", shape}, {"lower", lo}, {"upper", hi}}};
    }
    if (shape == "triangular") {
        allow_only(j, "fuzzy", {"shape", "peak", "left", "right"});
        const double peak = number(j, "fuzzy", "peak");
        const double left = number(j, "fuzzy", "left");
        const double right = number(j, "fuzzy", "right");
        return {FuzzyNumber::triangular(peak, left, right),
                Json{{"shape", shape}, {"peak", peak}, {"left", left}, {"right", right}}};
    }
    if (shape == "trapezoidal") {
        allow_only(j, "fuzzy", {"shape", "core_lower", "core_upper", "left", "right"});
        const double cl = number(j, "fuzzy", "core_lower");
        const double cu = number(j, "fuzzy", "core_upper");
        const double left = number(j, "fuzzy", "left");
        const double right = number(j, "fuzzy", "right");
        return {FuzzyNumber::trapezoidal(cl, cu, left, right),
                Json{{"shape", shape}, {"core_lower", cl}, {"core_upper", cu}, {"left", left}, {"right", right}}};
    }
    if (shape == "sampled") {
        allow_only(j, "fuzzy", {"shape", "levels"});
        const auto it = j.find("levels");
        if (it == j.end() || !it->is_array()) fail("fuzzy.levels", "must be an array of [gamma, lower, upper]");
        std::vector<SampledLevel> rows;
        Json out = Json::array();
        for (const auto& row : *it) {
            if (!row.is_array() || row.size() != 3 || !row[0].is_number() || !row[1].is_number() ||
                !row[2].is_number())
                fail("fuzzy.levels", "each row must be [gamma, lower, upper]");
            const SampledLevel r{row[0].get<double>(), row[1].get<double>(), row[2].get<double>()};
            rows.push_back(r);
            out.push_back(Json::array({r.gamma, r.lower, r.upper}));
        }
        return {FuzzyNumber::sampled(std::move(rows)), Json{{"shape", shape}, {"levels", out}}};
    }
    fail("fuzzy.shape", "unknown shape '" + shape + "'");
}

std::pair<RandomReturn, Json> parse_distribution(const InJson& j) {
    const std::string kind = text(j, "distribution", "kind");
    if (kind == "uniform") {
        allow_only(j, "distribution", {"kind", "lower", "upper"});
        const double lo = number(j, "distribution", "lower");
        const double hi = number(j, "distribution", "upper");
        return {RandomReturn::uniform(lo, hi), Json{{"kind", kind}, {"lower", lo}, {"upper", hi}}};
    }
    if (kind == "discrete") {
        allow_only(j, "distribution", {"kind", "atoms"});
        const auto it = j.find("atoms");
        if (it == j.end() || !it->is_array()) fail("distribution.atoms", "must be an array of [value, probability]");
        std::vector<Atom> atoms;
        Json out = Json::array();
        for (const auto& row : *it) {
            if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
                fail("distribution.atoms", "each atom must be [value, probability]");
            const Atom a{row[0].get<double>(), row[1].get<double>()};
            atoms.push_back(a);
            out.push_back(Json::array({a.value, a.probability}));
        }
        return {RandomReturn::discrete(std::move(atoms)), Json{{"kind", kind}, {"atoms", out}}};
    }
    fail("distribution.kind", "unknown distribution '" + kind + "' (expected uniform, discrete)");
}

ModelKind parse_model(const std::string& name) {
    if (name == "certain") return ModelKind::certain;
    if (name == "probabilistic") return ModelKind::probabilistic;
    if (name == "possibilistic") return ModelKind::possibilistic;
    fail("model", "unknown model '" + name + "' (expected certain, probabilistic, possibilistic)");
}

// Interval shorthand [c, d]: crisp interval, uniform law and R = (c+d)/2.
std::pair<double, double> parse_example(const InJson& j) {
    allow_only(j, "example", {"c", "d", "center", "spread"});
    double c = 0.0;
    double d = 0.0;
    if (j.contains("c") || j.contains("d")) {
        if (j.contains("center") || j.contains("spread")) fail("example", "give either {c, d} or {center, spread}");
        c = number(j, "example", "c");
        d = number(j, "example", "d");
    } else {
        const double center = number(j, "example", "center");
        const double spread = number(j, "example", "spread");
        c = center - 0.5 * spread;
        d = center + 0.5 * spread;
    }
    if (!(c < d)) fail("example", "requires c < d");
    if (!(c > 0.0)) fail("example", "requires c > 0");
    return {c, d};
}

SweepSpec parse_sweep(const InJson& j) {
    allow_only(j, "sweep", {"variable", "from", "to", "steps"});
    SweepSpec s{text(j, "sweep", "variable"), number(j, "sweep", "from"), number(j, "sweep", "to"),
                static_cast<int>(integer(j, "sweep", "steps"))};
    if (s.variable != "gamma" && s.variable != "spread" && s.variable != "y0" && s.variable != "R")
        fail("sweep.variable", "must be one of gamma, spread, y0, R");
    if (s.steps < 2) fail("sweep.steps", "must be >= 2");
    for (double v : s.grid())
        if (!std::isfinite(v)) fail("sweep", "grid contains non-finite values");
    return s;
}

} // namespace

std::vector<double> SweepSpec::grid() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
    for (int i = 0; i < steps; ++i) out.push_back(from + (to - from) * static_cast<double>(i) / (steps - 1));
    return out;
}

double RunConfig::mean_return() const {
    if (R) return *R;
    if (fuzzy) return possibilistic_mean(weighting, *fuzzy, rule);
    if (distribution) return mean(*distribution);
    throw ConfigError("config gives no mean return (R, fuzzy or distribution)");
}

SavingProblem RunConfig::problem(ModelKind kind) const {
    switch (kind) {
    case ModelKind::certain:
        if (!R) throw ConfigError("config field 'R': is required for the certain model");
        return SavingProblem::certain(y0, utility, *R, rule);
    case ModelKind::probabilistic:
        if (!distribution) throw ConfigError("config field 'distribution': is required for the probabilistic model");
        return SavingProblem::probabilistic(y0, utility, *distribution, rule);
    default:
        if (!fuzzy) throw ConfigError("config field 'fuzzy': is required for the possibilistic model");
        return SavingProblem::possibilistic(y0, utility, weighting, *fuzzy, rule);
    }
}

RunConfig parse_config(const InJson& input) {
    allow_only(input, "", {"y0", "R", "utility", "weighting", "example", "fuzzy", "distribution", "model", "numerics",
                           "sweep"});
    Json eff = Json::object();

    const double y0 = number(input, "", "y0");
    if (!(y0 > 0.0)) fail("y0", "must be > 0");
    eff["y0"] = y0;

    auto [utility, utility_json] = parse_utility(object(input, "utility"));
    eff["utility"] = utility_json;

    auto [weighting, weighting_json] = input.contains("weighting")
                                           ? parse_weighting(object(input, "weighting"))
                                           : parse_weighting(InJson{{"kind", "power"}});
    eff["weighting"] = weighting_json;

    std::optional<double> R;
    std::optional<FuzzyNumber> fuzzy;
    std::optional<RandomReturn> distribution;

    if (input.contains("example")) {
        for (const char* k : {"R", "fuzzy", "distribution"})
            if (input.contains(k)) fail(k, "cannot be combined with the 'example' shorthand");
        const auto [c, d] = parse_example(object(input, "example"));
        eff["example"] = Json{{"c", c}, {"d", d}};
        R = 0.5 * (c + d);
        fuzzy = FuzzyNumber::crisp_interval(c, d);
        distribution = RandomReturn::uniform(c, d);
    } else {
        if (input.contains("R")) {
            R = number(input, "", "R");
            if (!(*R > 0.0)) fail("R", "must be > 0");
            eff["R"] = *R;
        }
        if (input.contains("fuzzy")) {
            auto [a, j] = parse_fuzzy(object(input, "fuzzy"));
            fuzzy = std::move(a);
            eff["fuzzy"] = j;
        }
        if (input.contains("distribution")) {
            auto [x, j] = parse_distribution(object(input, "distribution"));
            distribution = std::move(x);
            eff["distribution"] = j;
        }
    }

    std::optional<ModelKind> model;
    if (input.contains("model")) {
        model = parse_model(text(input, "", "model"));
        eff["model"] = to_string(*model);
    }

    const InJson numerics = input.contains("numerics") ? object(input, "numerics") : InJson::object();
    allow_only(numerics, "numerics",
               {"nodes", "tol_s", "tol_f", "max_iter", "tie_band", "product_band", "saving_band", "mean_tolerance",
                "mc_samples", "seed"});
    const std::int64_t nodes =
        numerics.contains("nodes") ? integer(numerics, "numerics", "nodes") : std::int64_t{Defaults::nodes};
    if (nodes < 2 || nodes > 4096) fail("numerics.nodes", "must be in [2, 4096]");
    const std::int64_t max_iter =
        numerics.contains("max_iter") ? integer(numerics, "numerics", "max_iter") : std::int64_t{Defaults::max_iter};
    if (max_iter < 1) fail("numerics.max_iter", "must be >= 1");
    const std::int64_t mc_samples = numerics.contains("mc_samples")
                                        ? integer(numerics, "numerics", "mc_samples")
                                        : static_cast<std::int64_t>(Defaults::mc_samples);
    if (mc_samples < 2) fail("numerics.mc_samples", "must be >= 2");
    std::uint64_t seed = Defaults::seed;
    if (numerics.contains("seed")) {
        const auto& s = numerics["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
            fail("numerics.seed", "must be a non-negative integer");
        seed = s.get<std::uint64_t>();
    }

    AnalysisSettings settings;
    settings.solve.tol_s = number_or(numerics, "numerics", "tol_s", Defaults::tol_s);
    settings.solve.tol_f = number_or(numerics, "numerics", "tol_f", Defaults::tol_f);
    settings.solve.max_iter = static_cast<int>(max_iter);
    settings.prudence_band = number_or(numerics, "numerics", "tie_band", Defaults::tie_band);
    settings.product_band = number_or(numerics, "numerics", "product_band", Defaults::product_band);
    settings.saving_band = number_or(numerics, "numerics", "saving_band", Defaults::saving_band);
    settings.mean_tolerance = number_or(numerics, "numerics", "mean_tolerance", Defaults::mean_tolerance);
    for (double t : {settings.solve.tol_s, settings.solve.tol_f, settings.prudence_band, settings.product_band,
                     settings.saving_band, settings.mean_tolerance})
        if (t < 0.0) fail("numerics", "tolerances must be >= 0");

    eff["numerics"] = Json{{"nodes", nodes},
                           {"tol_s", settings.solve.tol_s},
                           {"tol_f", settings.solve.tol_f},
                           {"max_iter", max_iter},
                           {"tie_band", settings.prudence_band},
                           {"product_band", settings.product_band},
                           {"saving_band", settings.saving_band},
                           {"mean_tolerance", settings.mean_tolerance},
                           {"mc_samples", mc_samples},
                           {"seed", seed}};

    std::optional<SweepSpec> sweep;
    if (input.contains("sweep")) {
        sweep = parse_sweep(object(input, "sweep"));
        eff["sweep"] = Json{{"variable", sweep->variable}, {"from", sweep->from}, {"to", sweep->to}, {"steps", sweep->steps}};
    }

    return RunConfig{std::move(eff),
                     y0,
                     std::move(utility),
                     weighting,
                     R,
                     std::move(fuzzy),
                     std::move(distribution),
                     model,
                     std::move(sweep),
                     QuadratureRule(static_cast<std::size_t>(nodes)),
                     settings,
                     static_cast<std::size_t>(mc_samples),
                     seed};
}

RunConfig parse_config(const Json& effective) { return parse_config(InJson::parse(effective.dump())); }

RunConfig parse_config_text(const std::string& text) {
    InJson j;
    try {
        j = InJson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

Json with_parameter(const RunConfig& config, const std::string& variable, double value) {
    Json eff = config.effective;
    eff.erase("sweep");
    if (variable == "y0") {
        eff["y0"] = value;
    } else if (variable == "gamma") {
        const std::string kind = eff["utility"]["kind"].get<std::string>();
        if (kind != "crra" && kind != "log") throw ConfigError("gamma sweep needs a crra or log utility");
        eff["utility"] = Json{{"kind", "crra"}, {"gamma", value}};
    } else if (variable == "spread" || variable == "R") {
        if (!eff.contains("example"))
            throw ConfigError(variable + " sweep needs the 'example' interval shorthand");
        const double c = eff["example"]["c"].get<double>();
        const double d = eff["example"]["d"].get<double>();
        const double center = variable == "R" ? value : 0.5 * (c + d);
        const double spread = variable == "spread" ? value : d - c;
        eff["example"] = Json{{"c", center - 0.5 * spread}, {"d", center + 0.5 * spread}};
    } else {
        throw ConfigError("unknown sweep variable '" + variable + "'");
    }
    return eff;
}

} // namespace possave::cli
