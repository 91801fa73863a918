#include "entgup/kim_shih.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace entgup {

namespace {

void validate_record(const ExperimentRecord& r) {
    if (!std::isfinite(r.slit_width) || r.slit_width <= 0.0) {
        std::ostringstream msg;
        msg << "slit_width must be positive, got " << r.slit_width;
        throw std::invalid_argument(msg.str());
    }
    if (!std::isfinite(r.ratio_ns_over_s) || r.ratio_ns_over_s <= 0.0) {
        throw std::invalid_argument(
            "spread ratio ratio_ns/ratio_s must be positive");
    }
    if (!std::isfinite(r.eta) || r.eta < 1.0) {
        std::ostringstream msg;
        msg << "eta must be >= 1 (it is 1 + gamma), got " << r.eta;
        throw std::invalid_argument(msg.str());
    }
    length_unit_in_meters(r.length_unit);  // throws on unknown units
}

void validate_hbar(double hbar) {
    if (!std::isfinite(hbar) || hbar <= 0.0) {
        throw std::invalid_argument("hbar must be positive");
    }
}

double parse_number(const std::string& key, const std::string& text,
                    int line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << "line " << line_no << ": value for '" << key
            << "' is not a number: '" << text << "'";
        throw std::runtime_error(msg.str());
    }
    return v;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Largest beta at which the series r_plus stays positive. Multiplying
// r_plus(beta) > 0 through by beta gives c - b*beta - a*beta^2 > 0.
double series_positive_limit(const ExperimentRecord& r, double hbar) {
    const double two_w = 2.0 * r.slit_width;
    const double a = hbar * hbar * hbar * r.eta * r.eta /
                     (two_w * two_w * two_w);
    const double b = hbar * r.eta / two_w;
    const double c = two_w / hbar;
    return (-b + std::sqrt(b * b + 4.0 * a * c)) / (2.0 * a);
}

// The surviving-bound condition at a given beta: the measured no-slit product
// minus the pair bound along the slit root. Positive means the record is
// still compatible with the deformation.
double bound_margin(double beta, const ExperimentRecord& r, RootMethod method,
                    double hbar) {
    const SlitRoots roots = method == RootMethod::Series
                                ? slit_roots_series(beta, r, hbar)
                                : slit_roots_exact(beta, r, hbar);
    const double dp_ns = r.ratio_ns_over_s * roots.r_plus;
    const double lhs = r.slit_width * dp_ns;
    const double rhs =
        0.25 * hbar * (r.eta + beta * roots.r_plus * roots.r_plus);
    return lhs - rhs;
}

}  // namespace

ExperimentRecord default_record() {
    ExperimentRecord r;
    r.source = "Kim and Shih (1999) two-photon ghost imaging";
    return r;
}

double length_unit_in_meters(const std::string& unit) {
    static const std::map<std::string, double> table = {
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
    const auto it = table.find(unit);
    if (it == table.end()) {
        throw std::invalid_argument("unknown slit_width_unit '" + unit +
                                    "' (supported: m, cm, mm, um, nm)");
    }
    return it->second;
}

ExperimentRecord load_experiment(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected 'key = value', got '"
                << line << "'";
            throw std::runtime_error(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const bool known = key == "slit_width" || key == "slit_width_unit" ||
                           key == "ratio_ns" || key == "ratio_s" ||
                           key == "eta" || key == "source";
        if (!known) {
            std::ostringstream msg;
            msg << "line " << line_no << ": unknown key '" << key << "'";
            throw std::runtime_error(msg.str());
        }
        if (!kv.emplace(key, value).second) {
            std::ostringstream msg;
            msg << "line " << line_no << ": duplicate key '" << key << "'";
            throw std::runtime_error(msg.str());
        }
        if (key != "source" && value.empty()) {
            std::ostringstream msg;
            msg << "line " << line_no << ": empty value for '" << key << "'";
            throw std::runtime_error(msg.str());
        }
    }
    for (const char* required : {"slit_width", "ratio_ns", "ratio_s"}) {
        if (!kv.count(required)) {
            throw std::runtime_error(std::string(required) + " required");
        }
    }

    ExperimentRecord r;
    r.slit_width = parse_number("slit_width", kv.at("slit_width"), 0);
    if (kv.count("slit_width_unit")) r.length_unit = kv.at("slit_width_unit");
    const double ratio_ns = parse_number("ratio_ns", kv.at("ratio_ns"), 0);
    const double ratio_s = parse_number("ratio_s", kv.at("ratio_s"), 0);
    if (!(ratio_ns > 0.0) || !(ratio_s > 0.0)) {
        throw std::invalid_argument("ratio_ns and ratio_s must be positive");
    }
    r.ratio_ns_over_s = ratio_ns / ratio_s;
    if (kv.count("eta")) r.eta = parse_number("eta", kv.at("eta"), 0);
    if (kv.count("source")) r.source = kv.at("source");
    validate_record(r);
    return r;
}

ExperimentRecord load_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return load_experiment(in);
}

const char* to_string(RootMethod method) {
    return method == RootMethod::Series ? "series" : "exact-quadratic";
}

RootMethod root_method_from_string(const std::string& name) {
    if (name == "series") return RootMethod::Series;
    if (name == "exact-quadratic" || name == "exact") {
        return RootMethod::ExactQuadratic;
    }
    throw std::invalid_argument("unknown root method '" + name +
                                "' (expected series or exact-quadratic)");
}

SlitRoots slit_roots_series(double beta, const ExperimentRecord& record,
                            double hbar) {
    validate_record(record);
    validate_hbar(hbar);
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const double two_w = 2.0 * record.slit_width;
    const double lead = two_w / (hbar * beta);
    const double first = hbar * record.eta / two_w;
    const double second = beta * hbar * hbar * hbar * record.eta * record.eta /
                          (two_w * two_w * two_w);
    return {lead - first - second, first + second};
}

bool series_condition_ok(double beta, const ExperimentRecord& record,
                         double hbar) {
    validate_record(record);
    validate_hbar(hbar);
    return beta <= record.slit_width * record.slit_width /
                       (hbar * hbar * record.eta);
}

double exact_root_threshold(const ExperimentRecord& record, double hbar) {
    validate_record(record);
    validate_hbar(hbar);
    return record.slit_width * record.slit_width /
           (4.0 * hbar * hbar * record.eta);
}

SlitRoots slit_roots_exact(double beta, const ExperimentRecord& record,
                           double hbar) {
    validate_record(record);
    validate_hbar(hbar);
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const double w = record.slit_width;
    const double threshold = exact_root_threshold(record, hbar);
    double disc = w * w - 4.0 * hbar * hbar * beta * record.eta;
    if (beta > threshold) {
        std::ostringstream msg;
        msg << "no real slit roots: beta = " << beta
            << " exceeds the discriminant threshold w^2/(4 hbar^2 eta) = "
            << threshold;
        throw std::domain_error(msg.str());
    }
    disc = std::max(disc, 0.0);  // guard round-off exactly at the threshold
    const double sq = std::sqrt(disc);
    const double r_plus = (w + sq) / (4.0 * hbar * beta);
    const double r_minus = hbar * record.eta / (w + sq);
    return {r_plus, r_minus};
}

BoundEstimate estimate_bound(const ExperimentRecord& record, RootMethod method,
                             double hbar) {
    validate_record(record);
    validate_hbar(hbar);

    const double hi = method == RootMethod::Series
                          ? series_positive_limit(record, hbar)
                          : exact_root_threshold(record, hbar);
    const double lo = hi * 1e-12;
    const auto margin = [&](double beta) {
        return bound_margin(beta, record, method, hbar);
    };

    if (!(margin(lo) > 0.0)) {
        std::ostringstream msg;
        msg << "degenerate record: the pair bound fails already at the "
               "small-beta endpoint (beta = "
            << lo << "); the spread ratio " << record.ratio_ns_over_s
            << " is too small to carry an entanglement signal";
        throw std::domain_error(msg.str());
    }

    BoundEstimate est{};
    est.method = method;
    est.limited_by_root_condition = false;

    if (margin(hi) >= 0.0) {
        // Never crosses inside the domain. For the exact method that means
        // the real-root condition, not the pair bound, is what caps beta.
        if (method == RootMethod::Series) {
            throw std::logic_error(
                "series margin must be negative where r_plus vanishes");
        }
        est.beta_max = hi;
        est.limited_by_root_condition = true;
    } else {
        double a = lo;
        double b = hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (b - a <= 1e-13 * mid) break;
            (margin(mid) > 0.0 ? a : b) = mid;
        }
        est.beta_max = 0.5 * (a + b);
    }

    est.roots_at_max = method == RootMethod::Series
                           ? slit_roots_series(est.beta_max, record, hbar)
                           : slit_roots_exact(est.beta_max, record, hbar);
    est.beyond_series_validity =
        method == RootMethod::Series &&
        !series_condition_ok(est.beta_max, record, hbar);
    est.l_min_upper = hbar * std::sqrt(est.beta_max);
    est.l_min_upper_m =
        est.l_min_upper * length_unit_in_meters(record.length_unit);
    return est;
}

}  // namespace entgup
