// Command-line front end. Every physical number printed here comes straight
// from a library call; this file only parses flags and renders rows, so the
// binary can never drift from the library it ships with.
//
// Output formats: table (aligned, for eyes), csv, json. The default can be
// set with the ENTGUP_FORMAT environment variable.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "entgup/gup_models.hpp"
#include "entgup/kim_shih.hpp"
#include "entgup/minimal_uncertainty.hpp"
#include "entgup/pair_state.hpp"
#include "entgup/state_io.hpp"
#include "entgup/util.hpp"

namespace {

using entgup::format_sig12;

struct Cell {
    enum Kind { Num, Str, Boolean } kind;
    std::string text;
};

Cell num(double v) { return {Cell::Num, format_sig12(v)}; }
Cell num(int v) { return {Cell::Num, std::to_string(v)}; }
Cell str(std::string s) { return {Cell::Str, std::move(s)}; }
Cell boolean(bool b) { return {Cell::Boolean, b ? "true" : "false"}; }

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

std::string json_value(const Cell& c) {
    return c.kind == Cell::Str ? json_quote(c.text) : c.text;
}

std::string csv_field(const Cell& c) {
    if (c.text.find_first_of(",\"\n") == std::string::npos) return c.text;
    std::string out = "\"";
    for (char ch : c.text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

using KvRows = std::vector<std::pair<std::string, Cell>>;

void emit_kv(const KvRows& rows, const std::string& format) {
    if (format == "json") {
        std::cout << "{\n";
        for (size_t i = 0; i < rows.size(); ++i) {
            std::cout << "  " << json_quote(rows[i].first) << ": "
                      << json_value(rows[i].second)
                      << (i + 1 < rows.size() ? ",\n" : "\n");
        }
        std::cout << "}\n";
    } else if (format == "csv") {
        std::cout << "key,value\n";
        for (const auto& [key, cell] : rows) {
            std::cout << key << ',' << csv_field(cell) << '\n';
        }
    } else {
        size_t width = 0;
        for (const auto& [key, cell] : rows) width = std::max(width, key.size());
        for (const auto& [key, cell] : rows) {
            std::cout << key << std::string(width - key.size() + 2, ' ')
                      << cell.text << '\n';
        }
    }
}

void emit_rows(const std::vector<std::string>& headers,
               const std::vector<std::vector<Cell>>& rows,
               const std::string& format) {
    if (format == "json") {
        std::cout << "[\n";
        for (size_t r = 0; r < rows.size(); ++r) {
            std::cout << "  {";
            for (size_t c = 0; c < headers.size(); ++c) {
                std::cout << json_quote(headers[c]) << ": "
                          << json_value(rows[r][c])
                          << (c + 1 < headers.size() ? ", " : "");
            }
            std::cout << (r + 1 < rows.size() ? "},\n" : "}\n");
        }
        std::cout << "]\n";
    } else if (format == "csv") {
        for (size_t c = 0; c < headers.size(); ++c) {
            std::cout << headers[c] << (c + 1 < headers.size() ? "," : "\n");
        }
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                std::cout << csv_field(row[c])
                          << (c + 1 < row.size() ? "," : "\n");
            }
        }
    } else {
        std::vector<size_t> width(headers.size());
        for (size_t c = 0; c < headers.size(); ++c) width[c] = headers[c].size();
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                width[c] = std::max(width[c], row[c].text.size());
            }
        }
        auto pad = [&](const std::string& text, size_t c, bool right) {
            const std::string fill(width[c] - text.size(), ' ');
            return right ? fill + text : text + fill;
        };
        for (size_t c = 0; c < headers.size(); ++c) {
            std::cout << pad(headers[c], c, false)
                      << (c + 1 < headers.size() ? "  " : "\n");
        }
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                std::cout << pad(row[c].text, c, row[c].kind == Cell::Num)
                          << (c + 1 < row.size() ? "  " : "\n");
            }
        }
    }
}

// Shared --model/--beta/--alpha triple used by bound, minimize and curve.
struct ModelOpts {
    std::string name;
    std::optional<double> beta;
    std::optional<double> alpha;
};

void add_model_options(CLI::App* cmd, ModelOpts& o) {
    cmd->add_option("--model", o.name,
                    "deformation family: hup, kmm, adv, pedram, exp")
        ->required();
    cmd->add_option("--beta", o.beta,
                    "quadratic deformation parameter (kmm, pedram, exp)");
    cmd->add_option("--alpha", o.alpha,
                    "linear-plus-quadratic deformation parameter (adv)");
}

entgup::GupModel resolve_model(const ModelOpts& o) {
    const entgup::GupKind kind = entgup::gup_kind_from_string(o.name);
    if (kind == entgup::GupKind::Hup) {
        if (o.beta || o.alpha) {
            throw std::invalid_argument("hup takes no deformation parameter");
        }
        return entgup::GupModel::hup();
    }
    if (kind == entgup::GupKind::Adv) {
        if (!o.alpha || o.beta) {
            throw std::invalid_argument(
                "adv takes --alpha, not --beta");
        }
        return entgup::GupModel::adv(*o.alpha);
    }
    if (!o.beta || o.alpha) {
        throw std::invalid_argument(o.name + " takes --beta, not --alpha");
    }
    return entgup::GupModel::make(kind, *o.beta);
}

Cell model_param_cell(const entgup::GupModel& m) {
    return m.kind == entgup::GupKind::Hup ? str("-") : num(m.param);
}

struct BoundOpts {
    ModelOpts model;
    double dp = 1.0;
    double mean_p = 0.0;
    double hbar = 1.0;
    bool co_moving = false;
};

void run_bound(const BoundOpts& o, const std::string& format) {
    const entgup::GupModel model = resolve_model(o.model);
    const entgup::MomentumStats stats(o.dp, o.mean_p);
    const entgup::BoundContext ctx(model, stats, o.hbar, !o.co_moving);
    KvRows rows{
        {"model", str(entgup::to_string(model.kind))},
        {"parameter", model_param_cell(model)},
        {"dp", num(o.dp)},
        {"mean_p", num(o.mean_p)},
        {"hbar", num(o.hbar)},
        {"gamma", num(ctx.gamma())},
        {"pair_product_floor", num(entgup::entangled_pair_rhs(ctx))},
        {"single_product_floor",
         num(entgup::single_particle_rhs(model, stats, o.hbar))},
    };
    emit_kv(rows, format);
}

struct MinimizeOpts {
    ModelOpts model;
    double gamma = 0.0;
    double hbar = 1.0;
    double tol = 1e-10;
    bool separable = false;
    bool numeric = false;
    std::optional<int> particles;
};

void run_minimize(const MinimizeOpts& o, const std::string& format) {
    const entgup::GupModel model = resolve_model(o.model);
    if (o.particles) {
        if (o.gamma != 0.0 || o.separable || o.numeric) {
            throw std::invalid_argument(
                "--particles reports the shared-state floor and does not "
                "combine with --gamma, --separable or --numeric");
        }
        KvRows rows{
            {"model", str(entgup::to_string(model.kind))},
            {"parameter", model_param_cell(model)},
            {"particles", num(*o.particles)},
            {"effective_parameter",
             num(entgup::effective_parameter(model.param, *o.particles))},
            {"min_length",
             num(entgup::minimal_length(model, *o.particles, o.hbar))},
        };
        emit_kv(rows, format);
        return;
    }
    entgup::MinimalLengthQuery query{model};
    query.entangled = !o.separable;
    query.n_particles = o.separable ? 1 : 2;
    query.gamma = o.gamma;
    query.hbar = o.hbar;
    const entgup::MinimumResult res = o.numeric
                                          ? entgup::numeric_min(query, o.tol)
                                          : entgup::analytic_min(query);
    KvRows rows{
        {"model", str(entgup::to_string(model.kind))},
        {"parameter", model_param_cell(model)},
        {"state", str(o.separable ? "separable" : "entangled")},
        {"gamma", num(o.gamma)},
        {"hbar", num(o.hbar)},
        {"dq_min", num(res.dq_min)},
        {"dp_star", num(res.dp_star)},
        {"method",
         str(res.method == entgup::MinMethod::Analytic ? "analytic"
                                                       : "numeric")},
    };
    emit_kv(rows, format);
}

struct CurveOpts {
    ModelOpts model;
    double mean_p = 0.0;
    double hbar = 1.0;
    double dp_min = 0.0;
    double dp_max = 0.0;
    int points = 33;
};

void run_curve(const CurveOpts& o, const std::string& format) {
    const entgup::GupModel model = resolve_model(o.model);
    const auto curve = entgup::bound_curve(model, o.mean_p, o.hbar, o.dp_min,
                                           o.dp_max, o.points);
    std::vector<std::vector<Cell>> rows;
    rows.reserve(curve.size());
    for (const auto& pt : curve) {
        rows.push_back({num(pt.dp), num(pt.dq_lower)});
    }
    emit_rows({"dp", "dq_lower"}, rows, format);
}

void run_models(const std::string& format) {
    emit_rows(
        {"name", "commutator_factor", "parameter"},
        {
            {str("hup"), str("1"), str("-")},
            {str("kmm"), str("1 + beta p^2"), str("beta")},
            {str("adv"), str("1 - 2 alpha p + 4 alpha^2 p^2"), str("alpha")},
            {str("pedram"), str("1 / (1 - beta p^2)"), str("beta")},
            {str("exp"), str("exp(beta p^2)"), str("beta")},
        },
        format);
}

struct SimulateOpts {
    std::string state;
    std::optional<double> sigma;
    double sigma1 = 1.0, sigma2 = 1.0;
    double center1 = 0.0, center2 = 0.0;
    double k1 = 0.0, k2 = 0.0;
    double sigma_plus = 1.0, sigma_minus = 1.0;
    double k_total = 0.0;
    int grid_n = 256;
    double grid_min = -24.0, grid_max = 24.0;
    double hbar = 1.0;
    std::string state_file;
    std::string save_path;
};

entgup::PairState build_state(const SimulateOpts& o) {
    if (o.state == "file") {
        if (o.state_file.empty()) {
            throw std::invalid_argument("--state file needs --state-file");
        }
        return entgup::load_state(o.state_file);
    }
    const entgup::GridSpec grid(o.grid_min, o.grid_max, o.grid_n);
    if (o.state == "product") {
        const double s1 = o.sigma ? *o.sigma : o.sigma1;
        const double s2 = o.sigma ? *o.sigma : o.sigma2;
        return entgup::PairState::product(grid, o.center1, s1, o.k1,
                                          o.center2, s2, o.k2, o.hbar);
    }
    return entgup::PairState::correlated(grid, o.sigma_plus, o.sigma_minus,
                                         o.k_total, o.hbar);
}

void run_simulate(const SimulateOpts& o, const std::string& format) {
    const entgup::PairState state = build_state(o);
    if (!o.save_path.empty()) entgup::save_state(state, o.save_path);
    const entgup::Moments m = entgup::moments(state);
    const entgup::Qcf c = entgup::qcf(state);
    const entgup::UncertaintyReport r = entgup::check_inequalities(state);
    KvRows rows{
        {"grid_n", num(state.grid().n)},
        {"x_min", num(state.grid().x_min)},
        {"x_max", num(state.grid().x_max)},
        {"hbar", num(state.hbar())},
        {"mean_q1", num(m.mean_q1)},
        {"mean_q2", num(m.mean_q2)},
        {"var_q1", num(m.var_q1)},
        {"var_q2", num(m.var_q2)},
        {"mean_p1", num(m.mean_p1)},
        {"mean_p2", num(m.mean_p2)},
        {"var_p1", num(m.var_p1)},
        {"var_p2", num(m.var_p2)},
        {"dq1", num(r.dq1)},
        {"dq2", num(r.dq2)},
        {"dp1", num(r.dp1)},
        {"dp2", num(r.dp2)},
        {"cq", num(c.cq)},
        {"cp", num(c.cp)},
        {"schwarz_q_ok", boolean(r.schwarz_q_ok)},
        {"schwarz_p_ok", boolean(r.schwarz_p_ok)},
        {"pair_product", num(r.lhs_pair)},
        {"pair_product_floor", num(r.rhs_pair)},
        {"pair_product_ok", boolean(r.pair_product_ok)},
        {"symmetric_applicable", boolean(r.symmetric_applicable)},
        {"symmetric_product", num(r.lhs_symmetric)},
        {"symmetric_floor", num(r.rhs_symmetric)},
        {"symmetric_ok", boolean(r.symmetric_ok)},
    };
    emit_kv(rows, format);
}

struct EstimateOpts {
    std::string data_path;
    std::string method = "both";
};

void append_estimate(KvRows& rows, const std::string& prefix,
                     const entgup::BoundEstimate& est) {
    rows.emplace_back(prefix + "beta_max", num(est.beta_max));
    rows.emplace_back(prefix + "l_min_upper", num(est.l_min_upper));
    rows.emplace_back(prefix + "l_min_upper_m", num(est.l_min_upper_m));
    rows.emplace_back(prefix + "r_plus_at_max", num(est.roots_at_max.r_plus));
    rows.emplace_back(prefix + "r_minus_at_max",
                      num(est.roots_at_max.r_minus));
    rows.emplace_back(prefix + "limited_by_root_condition",
                      boolean(est.limited_by_root_condition));
    rows.emplace_back(prefix + "beyond_series_validity",
                      boolean(est.beyond_series_validity));
}

void run_estimate(const EstimateOpts& o, const std::string& format) {
    const entgup::ExperimentRecord record =
        o.data_path.empty() ? entgup::default_record()
                            : entgup::load_experiment(o.data_path);
    KvRows rows{
        {"slit_width", num(record.slit_width)},
        {"length_unit", str(record.length_unit)},
        {"ratio_ns_over_s", num(record.ratio_ns_over_s)},
        {"eta", num(record.eta)},
    };
    if (!record.source.empty()) rows.emplace_back("source", str(record.source));

    if (o.method == "both") {
        append_estimate(rows, "series.",
                        entgup::estimate_bound(record,
                                               entgup::RootMethod::Series));
        append_estimate(
            rows, "exact_quadratic.",
            entgup::estimate_bound(record, entgup::RootMethod::ExactQuadratic));
        rows.emplace_back(
            "note",
            str("the two methods weight the quadratic term of the slit "
                "relation differently, so their crossings differ while "
                "agreeing on the order of magnitude; the exact roots stop at "
                "the discriminant threshold, where the estimate saturates "
                "(limited_by_root_condition)"));
    } else {
        const entgup::RootMethod method =
            entgup::root_method_from_string(o.method);
        rows.emplace_back("method", str(entgup::to_string(method)));
        append_estimate(rows, "", entgup::estimate_bound(record, method));
    }
    emit_kv(rows, format);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uncertainty floors for entangled pairs under deformed "
                 "commutators"};
    app.require_subcommand(1);

    std::string format;
    if (const char* env = std::getenv("ENTGUP_FORMAT")) format = env;
    if (format.empty()) format = "table";
    app.add_option("--format", format,
                   "output format: table, csv, json (default from "
                   "ENTGUP_FORMAT, then 'table')");

    CLI::App* models_cmd =
        app.add_subcommand("models", "list the supported deformation families");

    BoundOpts bound;
    CLI::App* bound_cmd = app.add_subcommand(
        "bound", "uncertainty-product floors at a given momentum spread");
    add_model_options(bound_cmd, bound.model);
    bound_cmd->add_option("--dp", bound.dp, "momentum spread of one particle")
        ->required();
    bound_cmd->add_option("--mean-p", bound.mean_p, "mean momentum per particle");
    bound_cmd->add_option("--hbar", bound.hbar, "value of hbar");
    bound_cmd->add_flag("--co-moving", bound.co_moving,
                        "pair moves together instead of back to back "
                        "(affects adv only)");

    MinimizeOpts minimize;
    CLI::App* minimize_cmd = app.add_subcommand(
        "minimize", "smallest reachable position uncertainty");
    add_model_options(minimize_cmd, minimize.model);
    minimize_cmd->add_option("--gamma", minimize.gamma,
                             "extra averaged-deformation offset (needs --numeric)");
    minimize_cmd->add_option("--hbar", minimize.hbar, "value of hbar");
    minimize_cmd->add_flag("--separable", minimize.separable,
                           "unentangled pair instead of the entangled one");
    minimize_cmd->add_flag("--numeric", minimize.numeric,
                           "golden-section search instead of closed forms");
    minimize_cmd->add_option("--tol", minimize.tol,
                             "relative tolerance for --numeric");
    minimize_cmd->add_option(
        "--particles", minimize.particles,
        "shared-state floor for this many particles (1 or 2), with the "
        "deformation parameter rescaled accordingly");

    CurveOpts curve;
    CLI::App* curve_cmd = app.add_subcommand(
        "curve", "lower bound on dq across a momentum-spread range");
    add_model_options(curve_cmd, curve.model);
    curve_cmd->add_option("--mean-p", curve.mean_p, "mean momentum per particle");
    curve_cmd->add_option("--hbar", curve.hbar, "value of hbar");
    curve_cmd->add_option("--dp-min", curve.dp_min, "first momentum spread")
        ->required();
    curve_cmd->add_option("--dp-max", curve.dp_max, "last momentum spread")
        ->required();
    curve_cmd->add_option("--points", curve.points, "number of samples");

    SimulateOpts sim;
    CLI::App* simulate_cmd = app.add_subcommand(
        "simulate", "moments and inequality checks of a two-particle state");
    simulate_cmd
        ->add_option("--state", sim.state,
                     "state kind: product, correlated, file")
        ->required()
        ->check(CLI::IsMember({"product", "correlated", "file"}));
    simulate_cmd->add_option("--sigma", sim.sigma,
                             "width of both product packets");
    simulate_cmd->add_option("--sigma1", sim.sigma1, "width of packet 1");
    simulate_cmd->add_option("--sigma2", sim.sigma2, "width of packet 2");
    simulate_cmd->add_option("--center1", sim.center1, "center of packet 1");
    simulate_cmd->add_option("--center2", sim.center2, "center of packet 2");
    simulate_cmd->add_option("--k1", sim.k1, "carrier wavenumber of packet 1");
    simulate_cmd->add_option("--k2", sim.k2, "carrier wavenumber of packet 2");
    simulate_cmd->add_option("--sigma-plus", sim.sigma_plus,
                             "width along x1 + x2");
    simulate_cmd->add_option("--sigma-minus", sim.sigma_minus,
                             "width along x1 - x2");
    simulate_cmd->add_option("--k-total", sim.k_total,
                             "total carrier wavenumber");
    simulate_cmd->add_option("--grid-n", sim.grid_n,
                             "grid points per axis (power of two, >= 64)");
    simulate_cmd->add_option("--grid-min", sim.grid_min, "box lower edge");
    simulate_cmd->add_option("--grid-max", sim.grid_max, "box upper edge");
    simulate_cmd->add_option("--hbar", sim.hbar, "value of hbar");
    simulate_cmd->add_option("--state-file", sim.state_file,
                             "fixture to load for --state file");
    simulate_cmd->add_option("--save-state", sim.save_path,
                             "write the constructed state to this fixture");

    EstimateOpts est;
    CLI::App* estimate_cmd = app.add_subcommand(
        "estimate", "minimal-length bound from two-photon slit data");
    estimate_cmd->add_option("--data", est.data_path,
                             "experiment record file (defaults to the "
                             "published configuration)");
    estimate_cmd
        ->add_option("--method", est.method,
                     "series, exact-quadratic, or both")
        ->check(CLI::IsMember({"series", "exact-quadratic", "exact", "both"}));

    // lets --format appear after the subcommand name as well
    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (format != "table" && format != "csv" && format != "json") {
        std::cerr << "entgup: unknown format '" << format
                  << "' (supported: table, csv, json)\n";
        return 1;
    }

    const struct {
        CLI::App* cmd;
        const char* name;
        std::function<void()> run;
    } dispatch[] = {
        {models_cmd, "models", [&] { run_models(format); }},
        {bound_cmd, "bound", [&] { run_bound(bound, format); }},
        {minimize_cmd, "minimize", [&] { run_minimize(minimize, format); }},
        {curve_cmd, "curve", [&] { run_curve(curve, format); }},
        {simulate_cmd, "simulate", [&] { run_simulate(sim, format); }},
        {estimate_cmd, "estimate", [&] { run_estimate(est, format); }},
    };
    for (const auto& entry : dispatch) {
        if (!entry.cmd->parsed()) continue;
        try {
            entry.run();
        } catch (const std::exception& e) {
            std::cerr << "entgup " << entry.name << ": " << e.what() << '\n';
            return 1;
        }
        return 0;
    }
    return 0;
}
