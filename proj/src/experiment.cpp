#include "sofic/experiment.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <variant>

#include "sofic/embedding.hpp"
#include "sofic/entropy.hpp"
#include "sofic/error.hpp"
#include "sofic/gaussian.hpp"
#include "sofic/harmonic.hpp"
#include "sofic/json_io.hpp"
#include "sofic/parallel.hpp"
#include "sofic/rng.hpp"
#include "sofic/sofic_map.hpp"
#include "sofic/star_polynomial.hpp"

namespace sofic {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// field access

const json& field(const json& c, const char* key)
{
    if (!c.contains(key))
        throw ConfigError(std::string("missing field \"") + key + "\"");
    return c[key];
}

double number_field(const json& c, const char* key, std::optional<double> fallback = std::nullopt)
{
    if (!c.contains(key)) {
        if (fallback)
            return *fallback;
        throw ConfigError(std::string("missing field \"") + key + "\"");
    }
    if (!c[key].is_number())
        throw ConfigError(std::string("field \"") + key + "\" must be a number");
    return c[key].get<double>();
}

std::size_t count_field(const json& c, const char* key, std::optional<std::size_t> fallback = std::nullopt)
{
    if (!c.contains(key)) {
        if (fallback)
            return *fallback;
        throw ConfigError(std::string("missing field \"") + key + "\"");
    }
    if (!c[key].is_number_integer() || c[key].get<long long>() < 0)
        throw ConfigError(std::string("field \"") + key + "\" must be a non-negative integer");
    return c[key].get<std::size_t>();
}

std::vector<double> numbers_field(const json& c, const char* key)
{
    const json& v = field(c, key);
    if (v.is_number())
        return {v.get<double>()};
    if (!v.is_array())
        throw ConfigError(std::string("field \"") + key + "\" must be a number or a list of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number())
            throw ConfigError(std::string("field \"") + key + "\" must contain numbers only");
        out.push_back(x.get<double>());
    }
    return out;
}

void check_trials(std::size_t n, const char* what)
{
    if (n == 0)
        throw ConfigError(std::string(what) + " must be positive");
    if (n > kMaxTrials)
        throw ResourceError(std::string(what) + " " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kMaxTrials));
}

std::vector<std::size_t> degrees_field(const json& c)
{
    std::vector<std::size_t> out;
    if (c.contains("degrees")) {
        if (!c["degrees"].is_array() || c["degrees"].empty())
            throw ConfigError("field \"degrees\" must be a non-empty list");
        for (const auto& d : c["degrees"]) {
            if (!d.is_number_integer() || d.get<long long>() < 1)
                throw ConfigError("degrees must be positive integers");
            out.push_back(d.get<std::size_t>());
        }
    } else {
        const std::size_t d = count_field(c, "degree");
        if (d < 1)
            throw ConfigError("degree must be positive");
        out.push_back(d);
    }
    for (auto d : out)
        if (d > kMaxDegree)
            throw ResourceError("degree " + std::to_string(d) + " exceeds the cap of " + std::to_string(kMaxDegree));
    return out;
}

int word_cap_field(const json& c)
{
    return static_cast<int>(count_field(c, "word_cap", kDefaultWordCap));
}

std::string window_text(const GroupSpec& group, const std::vector<GroupElement>& w)
{
    std::string s = "{";
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? ", " : "") + group.format(w[i]);
    return s + "}";
}

// ---------------------------------------------------------------------------
// output

// Shortest text that reads back to the same double.
std::string num(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return json(x).dump();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s)
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

std::string csv_line(const std::vector<std::string>& cells)
{
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i)
        s += (i ? "," : "") + cells[i];
    return s + "\n";
}

// ---------------------------------------------------------------------------
// shared pieces

struct ProjectionSpec
{
    enum class Type { identity, zero, arcs } type = Type::identity;
    ArcProjectionSpec arcs;
};

ProjectionSpec projection_field(const json& c, const GroupSpec& group)
{
    ProjectionSpec p;
    if (!c.contains("projection"))
        return p;
    const json& j = c["projection"];
    const std::string type = j.is_object() && j.contains("type") && j["type"].is_string()
                                 ? j["type"].get<std::string>()
                                 : "";
    if (type == "identity")
        return p;
    if (type == "zero") {
        p.type = ProjectionSpec::Type::zero;
        return p;
    }
    if (type != "arcs")
        throw ConfigError("projection type must be \"identity\", \"zero\" or \"arcs\"");
    if (group.kind() != GroupKind::zpow || group.dim() != 1)
        throw ConfigError("arc projections need the group Z (zpow of dimension 1)");
    p.type = ProjectionSpec::Type::arcs;
    p.arcs.cutoff = static_cast<int>(count_field(j, "cutoff"));
    const json& arcs = field(j, "arcs");
    if (!arcs.is_array() || arcs.empty())
        throw ConfigError("field \"arcs\" must be a non-empty list");
    for (const auto& a : arcs) {
        const double length = number_field(a, "length");
        if (a.contains("center"))
            p.arcs.arcs.push_back(Arc::centered(number_field(a, "center"), length));
        else
            p.arcs.arcs.push_back({number_field(a, "start"), length});
    }
    if (!arc_projection_coeffs(p.arcs).is_real())
        throw ConfigError("arc projections must have real coefficients; use arcs symmetric about 0 or 1/2");
    return p;
}

GroupRingElement projection_coefficients(const ProjectionSpec& p, const GroupSpec& group)
{
    switch (p.type) {
    case ProjectionSpec::Type::identity:
        return GroupRingElement::delta(group, group.identity());
    case ProjectionSpec::Type::zero:
        return GroupRingElement(group);
    case ProjectionSpec::Type::arcs:
        break;
    }
    return arc_projection_coeffs(p.arcs);
}

GaussianSampler make_sampler(const ProjectionSpec& p, const SoficMap& sigma, std::uint64_t seed)
{
    const auto d = static_cast<Eigen::Index>(sigma.degree());
    switch (p.type) {
    case ProjectionSpec::Type::identity:
        return GaussianSampler::identity(d, seed);
    case ProjectionSpec::Type::zero:
        return GaussianSampler::zero(d, seed);
    case ProjectionSpec::Type::arcs:
        break;
    }
    const auto rounded = spectral_round(realify(sigma, arc_projection_coeffs(p.arcs)));
    if (!rounded.certificate_holds)
        throw NumericalError("spectral rounding certificate failed at d = " + std::to_string(d));
    return GaussianSampler(rounded.projection, seed);
}

FourierTestFunction test_function_field(const GroupSpec& group, const json& j)
{
    if (!j.is_object())
        throw ConfigError("test functions are objects with \"window\" and \"terms\"");
    FourierTestFunction f;
    f.window = json_io::elements_from_json(group, field(j, "window"));
    const json& terms = field(j, "terms");
    if (!terms.is_array() || terms.empty())
        throw ConfigError("field \"terms\" must be a non-empty list");
    for (const auto& t : terms) {
        FourierTerm term;
        const json& freq = field(t, "t");
        if (!freq.is_array())
            throw ConfigError("term frequencies \"t\" must be a list");
        for (const auto& x : freq) {
            if (!x.is_number())
                throw ConfigError("term frequencies must be numbers");
            term.t.push_back(x.get<double>());
        }
        term.theta = Complex(number_field(t, "re", 1.0), number_field(t, "im", 0.0));
        f.terms.push_back(std::move(term));
    }
    try {
        f.validate();
    } catch (const ArgumentError& e) {
        throw ConfigError(e.what());
    }
    return f;
}

std::vector<SoficMap> sofic_maps(const GroupSpec& group, const std::vector<std::size_t>& degrees,
                                 std::uint64_t seed, int word_cap)
{
    std::vector<SoficMap> out;
    for (auto d : degrees)
        out.push_back(SoficMap::build(group, d, seed, word_cap));
    return out;
}

// ---------------------------------------------------------------------------
// jobs

struct SoficJob
{
    GroupSpec group = GroupSpec::free(1);
    std::size_t degree = 0;
    int word_cap = kDefaultWordCap;
    std::vector<GroupElement> elements;
    bool spectral = false;
};

struct EmbedJob
{
    GroupSpec group = GroupSpec::free(1);
    std::vector<std::size_t> degrees;
    int word_cap = kDefaultWordCap;
    std::string poly_text;
    StarPolynomial poly = StarPolynomial::constant(0.0);
    std::vector<GroupRingElement> args;
    std::optional<GroupRingElement> rounding;
    bool norms = false;
};

struct GaussJob
{
    GroupSpec group = GroupSpec::free(1);
    std::vector<std::size_t> degrees;
    int word_cap = kDefaultWordCap;
    ProjectionSpec projection;
    FourierTestFunction f;
    std::vector<GroupElement> window;
    std::size_t trials = 0;
    std::vector<double> deltas;
};

struct EntropyJob
{
    GroupSpec group = GroupSpec::free(1);
    std::vector<std::size_t> degrees;
    int word_cap = kDefaultWordCap;
    ProjectionSpec projection;
    MapParams params;
    std::vector<double> epsilons;
    std::size_t n_samples = 0;
    double R = kDefaultBallConstant;
};

struct HarmonicJob
{
    std::size_t trials = 0;
    int max_size = 12;
};

using Job = std::variant<SoficJob, EmbedJob, GaussJob, EntropyJob, HarmonicJob>;

GroupSpec group_field(const json& c)
{
    return json_io::group_from_json(field(c, "group"));
}

SoficJob parse_sofic(const json& c)
{
    SoficJob job;
    job.group = group_field(c);
    const auto degrees = degrees_field(c);
    if (degrees.size() != 1)
        throw ConfigError("sofic experiments take a single degree");
    job.degree = degrees.front();
    job.word_cap = word_cap_field(c);
    if (c.contains("elements"))
        job.elements = json_io::elements_from_json(job.group, c["elements"]);
    else
        job.elements = job.group.ball(static_cast<int>(count_field(c, "radius", 2)));
    if (job.elements.size() < 2)
        throw ConfigError("sofic experiments need at least two elements");
    if (c.contains("spectral_gap")) {
        if (!c["spectral_gap"].is_boolean())
            throw ConfigError("field \"spectral_gap\" must be a boolean");
        job.spectral = c["spectral_gap"].get<bool>();
    }
    return job;
}

EmbedJob parse_embed(const json& c)
{
    EmbedJob job;
    job.group = group_field(c);
    job.degrees = degrees_field(c);
    job.word_cap = word_cap_field(c);
    const json& p = field(c, "polynomial");
    if (!p.is_string())
        throw ConfigError("field \"polynomial\" must be a string such as \"X1*X1^*\"");
    job.poly_text = p.get<std::string>();
    job.poly = StarPolynomial::parse(job.poly_text);
    const json& args = field(c, "args");
    if (!args.is_array())
        throw ConfigError("field \"args\" must be a list of group ring elements");
    for (const auto& a : args)
        job.args.push_back(json_io::ring_from_json(job.group, a));
    if (job.args.empty() || static_cast<int>(job.args.size()) < job.poly.arity())
        throw ConfigError("polynomial uses " + std::to_string(job.poly.arity()) + " variables but " +
                          std::to_string(job.args.size()) + " arguments were given");
    if (c.contains("rounding")) {
        const json& r = c["rounding"];
        if (r.is_object() && r.contains("element")) {
            job.rounding = json_io::ring_from_json(job.group, r["element"]);
        } else {
            json wrapper = {{"projection", r}};
            if (r.is_object() && !r.contains("type"))
                wrapper["projection"]["type"] = "arcs";
            job.rounding = projection_coefficients(projection_field(wrapper, job.group), job.group);
        }
        if (!job.rounding->is_real())
            throw ConfigError("rounding needs real coefficients; use arcs symmetric about 0 or 1/2");
    }
    if (c.contains("matrix_norms")) {
        if (!c["matrix_norms"].is_boolean())
            throw ConfigError("field \"matrix_norms\" must be a boolean");
        job.norms = c["matrix_norms"].get<bool>();
    }
    return job;
}

std::vector<double> positive_deltas(const json& c, const char* key)
{
    auto d = numbers_field(c, key);
    for (double x : d)
        if (!(x > 0.0))
            throw ConfigError("delta must be positive");
    return d;
}

GaussJob parse_gauss(const json& c)
{
    GaussJob job;
    job.group = group_field(c);
    job.degrees = degrees_field(c);
    job.word_cap = word_cap_field(c);
    job.projection = projection_field(c, job.group);
    job.f = test_function_field(job.group, field(c, "test_function"));
    if (c.contains("window")) {
        job.window = json_io::elements_from_json(job.group, c["window"]);
        bool has_e = false;
        for (const auto& g : job.window)
            has_e = has_e || g == job.group.identity();
        if (!has_e)
            throw ConfigError("microstate window E = " + window_text(job.group, job.window) +
                              " must contain the identity");
        for (const auto& g : job.f.window)
            if (std::find(job.window.begin(), job.window.end(), g) == job.window.end())
                throw ConfigError("test function window F = " + window_text(job.group, job.f.window) +
                                  " is not contained in microstate window E = " +
                                  window_text(job.group, job.window));
    } else {
        job.window = {job.group.identity()};
        for (const auto& g : job.f.window)
            if (std::find(job.window.begin(), job.window.end(), g) == job.window.end())
                job.window.push_back(g);
    }
    job.trials = count_field(c, "trials");
    check_trials(job.trials, "trials");
    job.deltas = positive_deltas(c, "deltas");
    return job;
}

EntropyJob parse_entropy(const json& c)
{
    EntropyJob job;
    job.group = group_field(c);
    job.degrees = degrees_field(c);
    job.word_cap = word_cap_field(c);
    job.projection = projection_field(c, job.group);
    job.epsilons = numbers_field(c, "epsilon");
    for (double e : job.epsilons)
        if (!(e > 0.0 && e < 1.0))
            throw ConfigError("epsilon must lie in (0, 1)");
    job.n_samples = count_field(c, "n_samples");
    check_trials(job.n_samples, "n_samples");
    job.R = number_field(c, "R", kDefaultBallConstant);
    if (!(job.R > 0.0))
        throw ConfigError("R must be positive");

    MapParams& p = job.params;
    p.delta = number_field(c, "delta");
    if (!(p.delta > 0.0))
        throw ConfigError("delta must be positive");
    if (c.contains("F"))
        p.F = json_io::elements_from_json(job.group, c["F"]);
    const auto p_hat = projection_coefficients(job.projection, job.group);
    if (c.contains("test_functions")) {
        if (!c["test_functions"].is_array())
            throw ConfigError("field \"test_functions\" must be a list");
        for (const auto& f : c["test_functions"]) {
            p.L.push_back(test_function_field(job.group, f));
            p.targets.push_back(gaussian_target(p_hat, p.L.back()));
        }
    }
    if (c.contains("box")) {
        const json& b = c["box"];
        BoxFilter filter;
        filter.eta = number_field(b, "eta");
        if (!(filter.eta > 0.0))
            throw ConfigError("eta must be positive");
        const json& bounds = field(b, "bounds");
        if (!bounds.is_array() || bounds.empty())
            throw ConfigError("field \"bounds\" must be a non-empty list");
        for (const auto& e : bounds) {
            BoxBound bb{json_io::element_from_json(job.group, field(e, "g")), number_field(e, "M")};
            if (!(bb.bound > 0.0))
                throw ConfigError("box bounds M must be positive");
            filter.box.push_back(bb);
        }
        p.filter = filter;
    }
    p.validate();
    return job;
}

HarmonicJob parse_harmonic(const json& c, const RunOptions& options)
{
    HarmonicJob job;
    job.trials = options.trials ? *options.trials : count_field(c, "trials", 10000);
    check_trials(job.trials, "trials");
    job.max_size = options.max_size ? *options.max_size : static_cast<int>(count_field(c, "max_size", 12));
    if (job.max_size < 1 || job.max_size > 24)
        throw ConfigError("max_size must lie in [1, 24]");
    return job;
}

Job parse_job(ExperimentKind kind, const json& c, const RunOptions& options)
{
    if (!c.is_object())
        throw ConfigError("config must be a JSON object");
    if (c.contains("kind")) {
        const auto k = config_kind(c);
        if (k != kind)
            throw ConfigError("config kind \"" + kind_name(k) + "\" does not match the requested \"" +
                              kind_name(kind) + "\"");
    }
    if (c.contains("seed") && !c["seed"].is_number_unsigned() &&
        !(c["seed"].is_number_integer() && c["seed"].get<long long>() >= 0))
        throw ConfigError("field \"seed\" must be a non-negative integer");
    switch (kind) {
    case ExperimentKind::sofic:
        return parse_sofic(c);
    case ExperimentKind::embed:
        return parse_embed(c);
    case ExperimentKind::gauss:
        return parse_gauss(c);
    case ExperimentKind::entropy:
        return parse_entropy(c);
    case ExperimentKind::harmonic:
        break;
    }
    return parse_harmonic(c, options);
}

// Checks that need the sofic maps themselves: degree shapes and word caps.
void check_maps(const Job& job)
{
    auto words = [](const SoficMap& s, const std::vector<GroupElement>& ws) {
        for (const auto& g : ws)
            s.evaluate(g);
    };
    std::visit(
        [&](const auto& j) {
            using T = std::decay_t<decltype(j)>;
            if constexpr (std::is_same_v<T, SoficJob>) {
                const auto s = SoficMap::build(j.group, j.degree, 0, j.word_cap);
                for (const auto& g : j.elements)
                    for (const auto& h : j.elements)
                        s.evaluate(s.group().multiply(g, h));
            } else if constexpr (std::is_same_v<T, EmbedJob>) {
                for (const auto& s : sofic_maps(j.group, j.degrees, 0, j.word_cap))
                    for (const auto& a : j.args)
                        for (const auto& [g, c] : a.support())
                            s.evaluate(g);
            } else if constexpr (std::is_same_v<T, GaussJob>) {
                for (const auto& s : sofic_maps(j.group, j.degrees, 0, j.word_cap))
                    words(s, j.window);
            } else if constexpr (std::is_same_v<T, EntropyJob>) {
                for (const auto& s : sofic_maps(j.group, j.degrees, 0, j.word_cap))
                    words(s, membership_window(j.group, j.params));
            }
        },
        job);
}

// ---------------------------------------------------------------------------
// runners

struct Output
{
    std::string data;
    json summary = json::object();
    json columns = json::array();
    json notes = json::array();
};

Output run_sofic(const SoficJob& job, std::uint64_t seed)
{
    const auto sigma = SoficMap::build(job.group, job.degree, seed, job.word_cap);
    const auto report = defect_report(sigma, job.elements);
    Output out;
    out.columns = {"g", "h", "mult_defect", "free_defect"};
    out.data = csv_line({"g", "h", "mult_defect", "free_defect"});
    for (const auto& p : report.pairs)
        out.data += csv_line({csv_field(job.group.format(p.g)), csv_field(job.group.format(p.h)),
                              num(p.multiplicativity), num(p.freeness)});
    out.summary = {{"d", job.degree},
                   {"pairs", report.pairs.size()},
                   {"max_mult_defect", report.max_multiplicativity()},
                   {"max_free_defect", report.max_freeness()},
                   {"mean_free_defect", report.mean_freeness()},
                   {"word_cap", job.word_cap}};
    if (job.spectral) {
        const auto gap = spectral_gap(sigma, job.group.generators());
        out.summary["spectral_gap"] = {{"gap", gap.gap},
                                       {"lambda_abs", gap.lambda_abs},
                                       {"lambda_top", gap.lambda_top},
                                       {"lambda_bottom", gap.lambda_bottom},
                                       {"dense", gap.dense},
                                       {"converged", gap.converged},
                                       {"ergodic", gap.gap >= kErgodicGapThreshold}};
        out.notes.push_back("ergodic means spectral gap >= " + num(kErgodicGapThreshold) +
                            " at this single degree; a convention, not a certificate");
    }
    return out;
}

Output run_embed(const EmbedJob& job, std::uint64_t seed)
{
    json rows = json::array();
    for (const auto& sigma : sofic_maps(job.group, job.degrees, seed, job.word_cap)) {
        const auto defect = embedding_defect(sigma, job.args, job.poly);
        json row = {{"d", sigma.degree()},
                    {"seed", seed},
                    {"poly_defect", defect.poly_defect},
                    {"trace_defect", defect.trace_defect},
                    {"norm2_drift", defect.norm2_drift}};
        if (job.norms) {
            std::vector<Eigen::MatrixXcd> images;
            for (const auto& a : job.args)
                images.push_back(linearize(sigma, a));
            const auto m = job.poly.evaluate(images, DenseOps{static_cast<Eigen::Index>(sigma.degree())});
            const auto n = matrix_norms(m);
            row["norm2"] = n.norm2;
            row["op_norm"] = n.op_norm;
        }
        if (job.rounding) {
            const auto r = spectral_round(realify(sigma, *job.rounding));
            row["rounding"] = {{"distance", r.distance},
                               {"bound", r.bound},
                               {"certificate_holds", r.certificate_holds},
                               {"distance_to_input", r.distance_to_input},
                               {"idempotence_error", r.idempotence_error},
                               {"symmetry_error", r.symmetry_error},
                               {"trace", r.trace},
                               {"rank", r.rank},
                               {"endpoint_warning", r.endpoint_warning}};
        }
        rows.push_back(row);
    }
    Output out;
    json doc = {{"schema_version", kSchemaVersion},
                {"kind", "embed"},
                {"group", json_io::group_to_json(job.group)},
                {"polynomial", job.poly.to_string()},
                {"rows", rows}};
    out.data = doc.dump(2) + "\n";
    out.columns = {"d", "seed", "poly_defect", "trace_defect", "norm2_drift"};
    return out;
}

Output run_gauss(const GaussJob& job, std::uint64_t seed)
{
    Output out;
    std::vector<std::string> header = {"d", "trial_count", "re_mean", "im_mean", "variance", "target"};
    for (std::size_t i = 0; i < job.deltas.size(); ++i)
        header.push_back("dev_frac_delta" + std::to_string(i + 1));
    header.insert(header.end(), {"target_im", "variance_se", "seed"});
    out.columns = header;
    out.data = csv_line(header);
    const auto p_hat = projection_coefficients(job.projection, job.group);
    for (const auto& sigma : sofic_maps(job.group, job.degrees, seed, job.word_cap)) {
        const auto sampler = make_sampler(job.projection, sigma, sampler_seed(seed));
        const auto r = concentration_experiment(sigma, sampler, p_hat, job.f, job.window, job.trials, job.deltas);
        std::vector<std::string> row = {std::to_string(sigma.degree()), std::to_string(r.trials), num(r.mean.real()),
                                        num(r.mean.imag()), num(r.variance), num(r.target.real())};
        for (double f : r.deviation_fraction)
            row.push_back(num(f));
        row.insert(row.end(), {num(r.target.imag()), num(r.variance_se), std::to_string(seed)});
        out.data += csv_line(row);
    }
    json deltas = json::object();
    for (std::size_t i = 0; i < job.deltas.size(); ++i)
        deltas["dev_frac_delta" + std::to_string(i + 1)] = job.deltas[i];
    out.summary = {{"deltas", deltas}, {"sampler_seed", sampler_seed(seed)}};
    return out;
}

Output run_entropy(const EntropyJob& job, std::uint64_t seed)
{
    Output out;
    out.columns = {"d", "epsilon", "n_samples", "members", "packed", "rate", "analytic_bound", "R_used", "seed"};
    out.data = csv_line({"d", "epsilon", "n_samples", "members", "packed", "rate", "analytic_bound", "R_used",
                         "seed"});
    for (const auto& sigma : sofic_maps(job.group, job.degrees, seed, job.word_cap)) {
        const auto sampler = make_sampler(job.projection, sigma, sampler_seed(seed));
        for (double eps : job.epsilons) {
            const auto est = entropy_estimate(sigma, sampler, job.params, eps, job.n_samples);
            out.data += csv_line({std::to_string(sigma.degree()), num(eps), std::to_string(est.samples),
                                  std::to_string(est.members), std::to_string(est.packed), num(est.rate),
                                  num(packing_lower_bound(eps, job.R)), num(job.R), std::to_string(seed)});
        }
    }
    out.summary = {{"sampler_seed", sampler_seed(seed)}};
    if (job.R == kDefaultBallConstant)
        out.notes.push_back("R = 2 pi e: limit of (1/n) log of the volume of the unit ball of l2 with normalised "
                            "counting measure, by Stirling");
    out.notes.push_back("rate is a sampling lower bound: greedy packing of sampled members, log(packed) / d");
    return out;
}

Output run_harmonic(const HarmonicJob& job, std::uint64_t seed)
{
    std::vector<PowersStormerTrial> trials(job.trials);
    parallel_for(job.trials, [&](std::size_t i) { trials[i] = powers_stormer_trial(seed, i, job.max_size); });
    Output out;
    out.columns = {"trial", "group_size", "lhs", "rhs", "holds"};
    out.data = csv_line({"trial", "group_size", "lhs", "rhs", "holds"});
    std::size_t failures = 0;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        failures += !t.result.holds;
        out.data += csv_line({std::to_string(i), std::to_string(t.group_size), num(t.result.lhs), num(t.result.rhs),
                              t.result.holds ? "1" : "0"});
    }
    out.summary = {{"trials", job.trials}, {"max_size", job.max_size}, {"failures", failures}};
    return out;
}

} // namespace

std::optional<ExperimentKind> parse_kind(std::string_view name)
{
    if (name == "sofic")
        return ExperimentKind::sofic;
    if (name == "embed")
        return ExperimentKind::embed;
    if (name == "gauss")
        return ExperimentKind::gauss;
    if (name == "entropy")
        return ExperimentKind::entropy;
    if (name == "harmonic")
        return ExperimentKind::harmonic;
    return std::nullopt;
}

std::string kind_name(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::sofic:
        return "sofic";
    case ExperimentKind::embed:
        return "embed";
    case ExperimentKind::gauss:
        return "gauss";
    case ExperimentKind::entropy:
        return "entropy";
    case ExperimentKind::harmonic:
        break;
    }
    return "harmonic";
}

ExperimentKind config_kind(const json& config)
{
    if (!config.is_object() || !config.contains("kind") || !config["kind"].is_string())
        throw ConfigError("config needs a string field \"kind\"");
    const auto k = parse_kind(config["kind"].get<std::string>());
    if (!k)
        throw ConfigError("unknown experiment kind \"" + config["kind"].get<std::string>() + "\"");
    return *k;
}

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t sampler_seed(std::uint64_t seed)
{
    return derive_seed(seed, 1);
}

std::vector<std::string> validate_config(const json& config, std::optional<ExperimentKind> kind)
{
    try {
        const ExperimentKind k = kind ? *kind : config_kind(config);
        check_maps(parse_job(k, config, {}));
    } catch (const Error& e) {
        return {e.what()};
    }
    return {};
}

Report run_experiment(ExperimentKind kind, const json& config, const RunOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    const Job job = parse_job(kind, config, options);

    std::uint64_t seed = 0;
    std::string source;
    if (options.seed) {
        seed = *options.seed;
        source = "command line";
    } else if (config.contains("seed")) {
        seed = config["seed"].get<std::uint64_t>();
        source = "config";
    } else {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        source = "generated";
    }

    Output out = std::visit(
        [&](const auto& j) -> Output {
            using T = std::decay_t<decltype(j)>;
            if constexpr (std::is_same_v<T, SoficJob>)
                return run_sofic(j, seed);
            else if constexpr (std::is_same_v<T, EmbedJob>)
                return run_embed(j, seed);
            else if constexpr (std::is_same_v<T, GaussJob>)
                return run_gauss(j, seed);
            else if constexpr (std::is_same_v<T, EntropyJob>)
                return run_entropy(j, seed);
            else
                return run_harmonic(j, seed);
        },
        job);

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char hash[32];
    std::snprintf(hash, sizeof hash, "fnv1a64:%016" PRIx64, fnv1a64(config.dump()));
    Report r;
    r.kind = kind;
    r.data = std::move(out.data);
    r.metadata = {{"schema_version", kSchemaVersion},
                  {"tool_version", kToolVersion},
                  {"kind", kind_name(kind)},
                  {"config_hash", hash},
                  {"seed", seed},
                  {"seed_source", source},
                  {"rng", kRngName},
                  {"threads", thread_count()},
                  {"wall_time_seconds", wall},
                  {"columns", out.columns},
                  {"summary", out.summary},
                  {"notes", out.notes}};
    return r;
}

} // namespace sofic
