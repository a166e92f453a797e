#include "lastrow/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lastrow {

using nlohmann::json;

namespace {

Extended parse_term(std::string s) {
    auto trim = [](std::string& x) {
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.erase(x.begin());
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
    };
    trim(s);
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.erase(s.begin());
        trim(s);
    }
    if (s.empty()) throw ConfigError("empty numeric expression");
    Extended v;
    if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(5, s.size() - 6);
        trim(inner);
        if (inner.empty() || !std::all_of(inner.begin(), inner.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ConfigError("sqrt() takes a non-negative integer: " + s);
        v = boost::multiprecision::sqrt(Extended(inner));
    } else {
        for (char c : s)
            if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' || c == '-' || c == '+'))
                throw ConfigError("unsupported numeric expression: " + s);
        try {
            v = Extended(s);
        } catch (const std::exception&) {
            throw ConfigError("bad decimal literal: " + s);
        }
    }
    return neg ? Extended(-v) : v;
}

Cx parse_complex(const json& v) {
    if (v.is_array()) {
        if (v.size() != 2) throw ConfigError("complex values are [re, im]");
        return {parse_real(v[0]), parse_real(v[1])};
    }
    if (v.is_object()) return {parse_real(v.value("re", json(0))), parse_real(v.value("im", json(0)))};
    return {parse_real(v), Extended(0)};
}

std::vector<Cx> parse_complex_list(const json& v, const char* what) {
    if (v.is_null()) return {};
    if (!v.is_array()) throw ConfigError(std::string(what) + " must be an array");
    std::vector<Cx> out;
    for (const auto& x : v) out.push_back(parse_complex(x));
    return out;
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const char* where) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
    for (const auto& [k, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ConfigError(std::string("unknown key '") + k + "' in " + where);
    }
}

std::vector<int> parse_n_range(const json& v) {
    std::vector<int> out;
    if (v.is_object()) {
        check_keys(v, {"from", "to", "step"}, "verify.n_range");
        const int from = get_or<int>(v, "from", 0), to = get_or<int>(v, "to", 0), step = get_or<int>(v, "step", 1);
        if (step < 1 || to < from || from < 0) throw ConfigError("verify.n_range: need 0 <= from <= to, step >= 1");
        for (int n = from; n <= to; n += step) out.push_back(n);
    } else if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_number_integer() || x.get<int>() < 0) throw ConfigError("verify.n_range entries must be integers >= 0");
            out.push_back(x.get<int>());
        }
    } else {
        throw ConfigError("verify.n_range must be an array or {from, to, step}");
    }
    if (out.empty()) throw ConfigError("verify.n_range is empty");
    return out;
}

}  // namespace

Extended parse_real(const json& v) {
    if (v.is_number()) {
        // integers and doubles: go through the decimal text so 0.1 means 1/10
        return Extended(v.dump());
    }
    if (!v.is_string()) throw ConfigError("expected a number or numeric string");
    std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_term(s);
    Extended den = parse_term(s.substr(slash + 1));
    if (den == 0) throw ConfigError("division by zero in " + s);
    return parse_term(s.substr(0, slash)) / den;
}

RunConfig parse_config(const json& doc) {
    RunConfig cfg;
    cfg.source = doc;
    check_keys(doc, {"model", "torus", "region", "orbit", "verify", "precision", "output"}, "config");
    if (!doc.contains("model")) throw ConfigError("config needs a 'model' section");

    const json& model = doc.at("model");
    check_keys(model, {"radius", "analytic_coeffs", "rational_numerator", "poles"}, "model");
    cfg.radius = to_double(parse_real(model.value("radius", json(2.0))));
    cfg.analytic = parse_complex_list(model.value("analytic_coeffs", json::array()), "model.analytic_coeffs");
    cfg.numerator = parse_complex_list(model.value("rational_numerator", json::array()), "model.rational_numerator");
    if (!model.contains("poles") || !model.at("poles").is_array() || model.at("poles").empty())
        throw ConfigError("model.poles must be a non-empty array");
    for (const auto& p : model.at("poles")) {
        check_keys(p, {"re", "im", "rho", "theta_turns", "mult"}, "model.poles[]");
        const bool cart = p.contains("re") || p.contains("im");
        const bool polar = p.contains("rho") || p.contains("theta_turns");
        if (cart == polar) throw ConfigError("each pole needs exactly one of {re, im} or {rho, theta_turns}");
        const int mult = get_or<int>(p, "mult", 1);
        if (mult < 1) throw ConfigError("pole multiplicity must be >= 1");
        if (cart) {
            cfg.poles.push_back(PoleSpec::cartesian(
                {parse_real(p.value("re", json(0))), parse_real(p.value("im", json(0)))}, mult));
        } else {
            if (!p.contains("theta_turns")) throw ConfigError("polar poles need theta_turns");
            cfg.poles.push_back(PoleSpec::polar(parse_real(p.value("rho", json(1))), parse_real(p.at("theta_turns")), mult));
        }
    }

    if (doc.contains("torus")) {
        const json& t = doc.at("torus");
        check_keys(t, {"independent", "relations"}, "torus");
        const bool indep = get_or<bool>(t, "independent", false);
        if (indep && t.contains("relations")) throw ConfigError("torus: give either independent or relations");
        cfg.rank = indep ? TorusSpec::Rank::IndependentOverQ : TorusSpec::Rank::Relations;
        if (t.contains("relations")) cfg.relations = get_or<std::vector<std::vector<long long>>>(t, "relations", {});
    }

    if (doc.contains("region")) {
        const json& r = doc.at("region");
        check_keys(r, {"box", "nx", "ny", "exclusion_radius"}, "region");
        if (r.contains("box")) {
            const auto b = get_or<std::vector<double>>(r, "box", {});
            if (b.size() != 4) throw ConfigError("region.box is [xmin, xmax, ymin, ymax]");
            cfg.box = Box{b[0], b[1], b[2], b[3]};
        }
        cfg.nx = get_or<int>(r, "nx", cfg.nx);
        cfg.ny = get_or<int>(r, "ny", cfg.ny);
        cfg.exclusion_radius = get_or<double>(r, "exclusion_radius", cfg.exclusion_radius);
        if (cfg.nx < 2 || cfg.ny < 2) throw ConfigError("region.nx and region.ny must be >= 2");
    }
    if (doc.contains("orbit")) {
        check_keys(doc.at("orbit"), {"samples"}, "orbit");
        cfg.orbit_samples = get_or<int>(doc.at("orbit"), "samples", cfg.orbit_samples);
        if (cfg.orbit_samples < 1) throw ConfigError("orbit.samples must be >= 1");
    }

    if (doc.contains("verify")) {
        const json& v = doc.at("verify");
        check_keys(v, {"n_range", "K", "subsequence"}, "verify");
        auto& vc = cfg.verify;
        if (v.contains("n_range")) vc.n_range = parse_n_range(v.at("n_range"));
        if (v.contains("K")) {
            const json& k = v.at("K");
            check_keys(k, {"points", "auto", "margin", "count", "against_n"}, "verify.K");
            vc.margin = get_or<double>(k, "margin", vc.margin);
            vc.k_count = get_or<int>(k, "count", vc.k_count);
            vc.margin_against_N = get_or<bool>(k, "against_n", false);
            if (k.contains("points")) {
                vc.k_auto = false;
                for (const auto& z : parse_complex_list(k.at("points"), "verify.K.points")) vc.k_points.push_back(to_cd(z));
                if (vc.k_points.empty()) throw ConfigError("verify.K.points is empty");
            } else {
                vc.k_auto = get_or<bool>(k, "auto", true);
            }
        }
        if (v.contains("subsequence")) {
            const json& s = v.at("subsequence");
            check_keys(s, {"tau0", "tau0_index", "eps", "count", "horizon", "n_min"}, "verify.subsequence");
            vc.subsequence = true;
            if (s.contains("tau0"))
                for (const auto& z : parse_complex_list(s.at("tau0"), "verify.subsequence.tau0")) vc.tau0.push_back(to_cd(z));
            vc.tau0_index = get_or<std::int64_t>(s, "tau0_index", 0);
            vc.eps = get_or<double>(s, "eps", vc.eps);
            vc.count = get_or<int>(s, "count", vc.count);
            vc.horizon = get_or<std::int64_t>(s, "horizon", vc.horizon);
            vc.n_min = get_or<std::int64_t>(s, "n_min", vc.n_min);
        }
    }

    if (doc.contains("precision")) {
        const auto p = get_or<std::string>(doc, "precision", "double");
        if (p == "double") cfg.precision = Precision::Double;
        else if (p == "extended") cfg.precision = Precision::Extended;
        else throw ConfigError("precision must be 'double' or 'extended'");
    }
    cfg.output_dir = get_or<std::string>(doc, "output", cfg.output_dir);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

MeromorphicModel RunConfig::build_model() const {
    return MeromorphicModel(radius, analytic, Poly<Extended>(numerator), poles);
}

StudyOptions RunConfig::study_options(std::uint64_t seed) const {
    StudyOptions o;
    o.rank = rank;
    o.relations = relations;
    o.box = box;
    o.nx = nx;
    o.ny = ny;
    o.region.exclusion_radius = exclusion_radius;
    o.orbit_samples = orbit_samples;
    o.roots.seed = seed;
    return o;
}

std::string config_hash(const RunConfig& cfg) {
    const std::string text = cfg.source.dump() + "|" + to_string(cfg.precision);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace lastrow
