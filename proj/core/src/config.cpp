#include "pbsim/config.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pbsim {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * M_PI;

// Reference operating point shared by the presets.
constexpr double kRefG = kTwoPi * 1.1;        // two-phonon coupling
constexpr double kRefGammaZ = kTwoPi * 10.0;  // spin dephasing
constexpr double kRefOmegaM = kTwoPi * 3.8e6;
constexpr double kRefNth = 54.0;
constexpr double kRefG0 = kTwoPi * 2.5e3;     // single-phonon coupling

double parse_frequency(const json& j, const std::string& field) {
    if (!j.contains(field)) throw std::invalid_argument("config: missing field '" + field + "'");
    const json& node = j.at(field);
    if (!node.is_object() || !node.contains("value") || !node.contains("unit"))
        throw std::invalid_argument("config: frequency field '" + field +
                                    "' requires {\"value\": ..., \"unit\": ...}");
    const double v = node.at("value").get<double>();
    const std::string unit = node.at("unit").get<std::string>();
    if (unit == "2pi_hz") return kTwoPi * v;
    if (unit == "rad_per_s") return v;
    throw std::invalid_argument("config: unknown frequency unit '" + unit + "' on '" + field +
                                "' (use 2pi_hz or rad_per_s)");
}

std::optional<double> parse_frequency_opt(const json& j, const std::string& field) {
    if (!j.contains(field)) return std::nullopt;
    return parse_frequency(j, field);
}

ModelSpec parse_model(const json& j) {
    ModelSpec m;
    m.g = parse_frequency(j, "g");
    m.r_p = j.value("r_p", 0.0);
    if (j.contains("eps_L")) m.eps_L = parse_frequency(j, "eps_L");
    m.eps_L_eff = parse_frequency_opt(j, "eps_L_eff");
    if (j.contains("delta")) m.delta = parse_frequency(j, "delta");
    m.delta_s = parse_frequency_opt(j, "delta_s");
    m.delta_ed = parse_frequency_opt(j, "delta_ed");
    m.gamma_z = parse_frequency(j, "gamma_z");
    m.gamma_m_eff = parse_frequency_opt(j, "gamma_m_eff");
    if (j.contains("Q")) m.Q = j.at("Q").get<double>();
    if (j.contains("omega_m")) m.omega_m = parse_frequency(j, "omega_m");
    m.n_th = j.value("n_th", m.n_th);
    m.fock_dim = j.value("fock_dim", m.fock_dim);
    return m;
}

SinglePhononSpec parse_single_phonon(const json& j) {
    SinglePhononSpec s;
    s.g0 = parse_frequency(j, "g0");
    s.r_p = j.value("r_p", 0.0);
    if (j.contains("eps_L")) s.eps_L = parse_frequency(j, "eps_L");
    s.gamma_z = parse_frequency(j, "gamma_z");
    s.gamma_m_eff = parse_frequency_opt(j, "gamma_m_eff");
    if (j.contains("Q")) s.Q = j.at("Q").get<double>();
    if (j.contains("omega_m")) s.omega_m = parse_frequency(j, "omega_m");
    s.n_th = j.value("n_th", s.n_th);
    s.delta = parse_frequency_opt(j, "delta");
    s.fock_dim = j.value("fock_dim", s.fock_dim);
    return s;
}

DeviceGeometry parse_device(const json& j) {
    DeviceGeometry g;
    g.length = j.value("length", g.length);
    g.width = j.value("width", g.width);
    g.thickness = j.value("thickness", g.thickness);
    g.magnet_radius = j.value("magnet_radius", g.magnet_radius);
    g.magnet_height = j.value("magnet_height", g.magnet_height);
    g.gap = j.value("gap", g.gap);
    g.mu0_Ms = j.value("mu0_Ms", g.mu0_Ms);
    g.youngs_modulus = j.value("youngs_modulus", g.youngs_modulus);
    g.density = j.value("density", g.density);
    g.temperature = j.value("temperature", g.temperature);
    validate_geometry(g);
    return g;
}

bool is_frequency_param(const std::string& p) {
    return p == "delta" || p == "eps_L" || p == "eps_L_eff" || p == "gamma_z" ||
           p == "gamma_m_eff" || p == "g" || p == "g0";
}

SweepAxis parse_axis(const json& j) {
    SweepAxis a;
    a.param = j.at("param").get<std::string>();
    a.min = j.at("min").get<double>();
    a.max = j.at("max").get<double>();
    a.count = j.at("count").get<int>();
    const std::string scale = j.value("scale", "linear");
    if (scale == "log") a.log = true;
    else if (scale != "linear")
        throw std::invalid_argument("config: axis scale must be linear or log");
    if (is_frequency_param(a.param)) {
        if (!j.contains("unit"))
            throw std::invalid_argument("config: frequency axis '" + a.param +
                                        "' requires a unit tag");
        const std::string unit = j.at("unit").get<std::string>();
        double f;
        if (unit == "2pi_hz") f = kTwoPi;
        else if (unit == "rad_per_s") f = 1.0;
        else throw std::invalid_argument("config: unknown axis unit '" + unit + "'");
        a.min *= f;
        a.max *= f;
    }
    if (a.count < 1) throw std::invalid_argument("config: axis count must be >= 1");
    return a;
}

}  // namespace

ModelParams resolve_model(const ModelSpec& spec) {
    ModelParams p;
    p.g = spec.g;
    p.squeeze = SqueezeTransform::from_r(spec.r_p);
    p.eps_L = spec.eps_L_eff ? *spec.eps_L_eff / p.squeeze.U : spec.eps_L;
    p.delta = spec.delta;
    p.delta_s = spec.delta_s.value_or(0.0);
    p.delta_ed = spec.delta_ed.value_or(2.0 * p.delta_s);
    p.gamma_z = spec.gamma_z;
    p.n_th = spec.n_th;
    p.fock_dim = spec.fock_dim;
    if (spec.gamma_m_eff) {
        p.gamma_m_eff = *spec.gamma_m_eff;
    } else if (spec.Q) {
        p.gamma_m_eff = q_to_gamma(*spec.Q, spec.n_th, spec.omega_m);
    } else {
        throw std::invalid_argument("config: model requires gamma_m_eff or Q");
    }
    validate_params(p);
    return p;
}

SinglePhononParams resolve_single_phonon(const SinglePhononSpec& spec) {
    SinglePhononParams p;
    p.g0 = spec.g0;
    p.squeeze = SqueezeTransform::from_r(spec.r_p);
    p.eps_L = spec.eps_L;
    p.gamma_z = spec.gamma_z;
    p.fock_dim = spec.fock_dim;
    if (spec.gamma_m_eff) {
        p.gamma_m_eff = *spec.gamma_m_eff;
    } else if (spec.Q) {
        p.gamma_m_eff = q_to_gamma(*spec.Q, spec.n_th, spec.omega_m);
    } else {
        throw std::invalid_argument("config: single_phonon requires gamma_m_eff or Q");
    }
    // Drive on the lower dressed branch |1,-> by default.
    p.delta = spec.delta.value_or(p.g_eff());
    // Squeezed-oscillator frequency in the RWA validity regime; only the
    // difference delta enters the rotated model.
    p.delta_s = 50.0 * spec.g0 * p.squeeze.V;
    p.delta_ed = p.delta_s;
    return p;
}

std::vector<double> axis_values(const SweepAxis& axis) {
    std::vector<double> v;
    v.reserve(axis.count);
    if (axis.count == 1) {
        v.push_back(axis.min);
        return v;
    }
    if (axis.log) {
        if (axis.min <= 0.0 || axis.max <= 0.0)
            throw std::invalid_argument("axis_values: log axis requires positive bounds");
        const double la = std::log(axis.min), lb = std::log(axis.max);
        for (int i = 0; i < axis.count; ++i)
            v.push_back(std::exp(la + (lb - la) * i / double(axis.count - 1)));
    } else {
        for (int i = 0; i < axis.count; ++i)
            v.push_back(axis.min + (axis.max - axis.min) * i / double(axis.count - 1));
    }
    return v;
}

void apply_axis_value(ModelSpec& spec, const std::string& param, double value) {
    if (param == "delta") spec.delta = value;
    else if (param == "eps_L") { spec.eps_L = value; spec.eps_L_eff.reset(); }
    else if (param == "eps_L_eff") spec.eps_L_eff = value;
    else if (param == "r_p") spec.r_p = value;
    else if (param == "Q") { spec.Q = value; spec.gamma_m_eff.reset(); }
    else if (param == "gamma_z") spec.gamma_z = value;
    else if (param == "gamma_m_eff") { spec.gamma_m_eff = value; spec.Q.reset(); }
    else if (param == "n_th") spec.n_th = value;
    else if (param == "g") spec.g = value;
    else throw std::invalid_argument("sweep: unknown model parameter '" + param + "'");
}

void apply_axis_value(SinglePhononSpec& spec, const std::string& param, double value) {
    if (param == "r_p") spec.r_p = value;
    else if (param == "Q") { spec.Q = value; spec.gamma_m_eff.reset(); }
    else if (param == "eps_L") spec.eps_L = value;
    else if (param == "g0") spec.g0 = value;
    else if (param == "gamma_z") spec.gamma_z = value;
    else if (param == "gamma_m_eff") { spec.gamma_m_eff = value; spec.Q.reset(); }
    else if (param == "n_th") spec.n_th = value;
    else throw std::invalid_argument("sweep: unknown single-phonon parameter '" + param + "'");
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    RunConfig c;
    if (j.contains("model")) c.model = parse_model(j.at("model"));
    if (j.contains("single_phonon")) c.single_phonon = parse_single_phonon(j.at("single_phonon"));
    if (j.contains("device")) c.device = parse_device(j.at("device"));
    if (j.contains("sweep")) {
        for (const auto& ax : j.at("sweep")) c.axes.push_back(parse_axis(ax));
        if (c.axes.size() > 2)
            throw std::invalid_argument("config: at most 2 sweep axes supported");
    }
    if (j.contains("g2tau")) {
        const json& t = j.at("g2tau");
        c.tau.max_gamma_tau = t.value("max_gamma_tau", c.tau.max_gamma_tau);
        c.tau.count = t.value("count", c.tau.count);
        if (t.contains("r_p_values"))
            c.rp_list = t.at("r_p_values").get<std::vector<double>>();
    }
    if (j.contains("validate")) {
        const json& v = j.at("validate");
        c.b1_evolve_time = v.value("b1_evolve_time", c.b1_evolve_time);
        c.b1_delta_ed_over_geff = v.value("b1_delta_ed_over_geff", c.b1_delta_ed_over_geff);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        c.out_path = o.value("path", "");
        const std::string fmt = o.value("format", "csv");
        if (fmt == "json") c.format = OutputFormat::json;
        else if (fmt != "csv") throw std::invalid_argument("config: format must be csv or json");
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

ModelSpec fig5_spec() {
    ModelSpec m;
    m.g = kRefG;
    m.r_p = 2.0;
    m.gamma_z = kRefGammaZ;
    m.gamma_m_eff = 2.0 * kRefG;
    m.n_th = kRefNth;
    m.omega_m = kRefOmegaM;
    const double geff = kRefG * std::pow(std::cosh(2.0), 2);
    m.eps_L_eff = geff / 20.0;
    m.delta = 0.0;
    m.fock_dim = 15;
    return m;
}

ModelSpec point_spec(double Q, double eps_over_g) {
    ModelSpec m;
    m.g = kRefG;
    m.r_p = 3.0;
    m.gamma_z = kRefGammaZ;
    m.Q = Q;
    m.n_th = kRefNth;
    m.omega_m = kRefOmegaM;
    m.eps_L = eps_over_g * kRefG;
    m.delta = 0.0;
    m.fock_dim = 15;
    return m;
}

SinglePhononSpec figa2_spec(double r_p) {
    SinglePhononSpec s;
    s.g0 = kRefG0;
    s.r_p = r_p;
    s.eps_L = 0.01 * kRefG0;
    s.gamma_z = kRefGammaZ;
    s.Q = 1e7;
    s.n_th = kRefNth;
    s.omega_m = kRefOmegaM;
    s.fock_dim = 15;
    return s;
}

}  // namespace

RunConfig preset_config(const std::string& name) {
    RunConfig c;
    c.preset = name;
    const double geff5 = kRefG * std::pow(std::cosh(2.0), 2);
    const double gamma5 = 2.0 * kRefG;
    if (name == "fig5-delta0") {
        c.model = fig5_spec();
    } else if (name == "fig5a") {
        c.model = fig5_spec();
        c.axes.push_back({"delta", -4.0 * geff5, 4.0 * geff5, 161, false});
    } else if (name == "fig5g") {
        c.model = fig5_spec();
        c.axes.push_back({"eps_L_eff", 0.05 * gamma5, 2.0 * gamma5, 40, false});
    } else if (name == "pointA") {
        c.model = point_spec(8e7, 0.05);
    } else if (name == "pointB") {
        c.model = point_spec(2e7, 0.2);
    } else if (name == "fig6a-q1e7") {
        c.model = point_spec(1e7, 0.2);
        c.axes.push_back({"r_p", 0.0, 3.0, 31, false});
    } else if (name == "fig6ab") {
        c.model = point_spec(1e7, 0.2);
        c.axes.push_back({"r_p", 0.0, 3.0, 41, false});
        c.axes.push_back({"Q", 1e7, 1e8, 41, true});
    } else if (name == "fig6cd") {
        c.model = point_spec(8e7, 0.05);
        c.axes.push_back({"Q", 1e7, 1e8, 41, true});
        c.axes.push_back({"eps_L", 0.005 * kRefG, 0.5 * kRefG, 41, true});
    } else if (name == "fig7a") {
        c.model = point_spec(8e7, 0.05);
        c.axes.push_back({"gamma_z", kTwoPi * 1.0, kTwoPi * 1500.0, 41, true});
    } else if (name == "fig7b") {
        c.model = point_spec(8e7, 0.05);
        c.axes.push_back({"n_th", 1.0, 200.0, 41, true});
    } else if (name == "fig8") {
        c.model = point_spec(8e7, 0.05);
        c.axes.push_back({"eps_L", 0.01 * kRefG, 1.0 * kRefG, 41, true});
    } else if (name == "figA2") {
        c.single_phonon = figa2_spec(1.5);
        c.axes.push_back({"r_p", 0.0, 1.5, 31, false});
        c.axes.push_back({"Q", 1e7, 1e8, 41, true});
    } else if (name == "figA2-rp15") {
        c.single_phonon = figa2_spec(1.5);
        c.axes.push_back({"Q", 1e7, 1e8, 41, true});
    } else if (name == "figA3") {
        c.model = point_spec(8e7, 0.05);
        c.rp_list = {1.0, 2.0, 3.0};
    } else if (name == "device-ref") {
        c.device = DeviceGeometry{};
    } else if (name == "validate-fig5") {
        c.model = fig5_spec();
    } else {
        std::string known;
        for (const auto& n : preset_names()) known += n + " ";
        throw std::invalid_argument("unknown preset '" + name + "'; available: " + known);
    }
    return c;
}

std::vector<std::string> preset_names() {
    return {"fig5-delta0", "fig5a", "fig5g", "pointA", "pointB", "fig6a-q1e7",
            "fig6ab", "fig6cd", "fig7a", "fig7b", "fig8", "figA2", "figA2-rp15",
            "figA3", "device-ref", "validate-fig5"};
}

}  // namespace pbsim
