#include "abraham/config.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "abraham/errors.hpp"

namespace abraham {
namespace {

constexpr std::array<const char*, 22> kKnownKeys = {
    "grid.n",          "grid.length",      "charge.kind",       "charge.sigma",
    "external.kind",   "external.b",       "external.axis",     "external.params",
    "body.q0",         "body.v0",          "body.omega0",       "body.self_field",
    "sim.dt",          "sim.t_end",        "sim.force_scale",   "sim.resume_prefix",
    "sim.resume_step", "output.stride",    "output.prefix",     "output.csv",
    "output.trajectory", "output.snapshots",
};

bool known_key(const std::string& k) {
    if (k == "threads") return true;
    return std::find_if(kKnownKeys.begin(), kKnownKeys.end(),
                        [&](const char* s) { return k == s; }) != kKnownKeys.end();
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a number");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + v + "' as an integer");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("key '" + key + "': cannot parse '" + v + "' as a boolean");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    return out;
}

Vec3 parse_vec3(const std::string& key, const std::string& v) {
    const std::vector<double> xs = parse_list(key, v);
    if (xs.size() != 3)
        throw ConfigError("key '" + key + "': expected three comma-separated numbers, got '" + v +
                          "'");
    return {xs[0], xs[1], xs[2]};
}

int parse_axis(const std::string& key, const std::string& v) {
    if (v == "x" || v == "0") return 0;
    if (v == "y" || v == "1") return 1;
    if (v == "z" || v == "2") return 2;
    throw ConfigError("key '" + key + "': axis must be x, y or z");
}

}  // namespace

SimConfig config_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
    SimConfig cfg;
    ExternalKind ext_kind = ExternalKind::zero;
    std::vector<double> ext_params;
    int ext_axis = 2;
    bool have_b = false;
    double ext_b = 0.0;

    for (const auto& [key, raw] : pairs) {
        const std::string v = trim(raw);
        if (!known_key(key)) throw ConfigError("unknown configuration key '" + key + "'");
        if (key == "grid.n")
            cfg.grid.n = static_cast<int>(parse_long(key, v));
        else if (key == "grid.length")
            cfg.grid.L = parse_double(key, v);
        else if (key == "charge.kind")
            cfg.charge_kind = ChargeProfile::kind_from_string(v);
        else if (key == "charge.sigma")
            cfg.sigma = parse_double(key, v);
        else if (key == "external.kind")
            ext_kind = ExternalField::kind_from_string(v);
        else if (key == "external.b") {
            ext_b = parse_double(key, v);
            have_b = true;
        } else if (key == "external.axis")
            ext_axis = parse_axis(key, v);
        else if (key == "external.params")
            ext_params = parse_list(key, v);
        else if (key == "body.q0")
            cfg.q0 = parse_vec3(key, v);
        else if (key == "body.v0")
            cfg.v0 = parse_vec3(key, v);
        else if (key == "body.omega0")
            cfg.w0 = parse_vec3(key, v);
        else if (key == "body.self_field")
            cfg.self_field = parse_bool(key, v);
        else if (key == "sim.dt")
            cfg.dt = parse_double(key, v);
        else if (key == "sim.t_end")
            cfg.t_end = parse_double(key, v);
        else if (key == "sim.force_scale")
            cfg.force_scale = parse_double(key, v);
        else if (key == "sim.resume_prefix")
            cfg.resume_prefix = v;
        else if (key == "sim.resume_step")
            cfg.resume_step = parse_long(key, v);
        else if (key == "output.stride")
            cfg.output_stride = static_cast<int>(parse_long(key, v));
        else if (key == "output.prefix")
            cfg.output_prefix = v;
        else if (key == "output.csv")
            cfg.csv_path = v;
        else if (key == "output.trajectory")
            cfg.trajectory_path = v;
        else if (key == "output.snapshots")
            cfg.write_snapshots = parse_bool(key, v);
        else if (key == "threads")
            cfg.threads = static_cast<int>(parse_long(key, v));
    }

    if (ext_kind == ExternalKind::uniform_b && have_b && ext_params.empty()) ext_params = {ext_b};
    cfg.external = ExternalField(ext_kind, ext_params, ext_axis);
    return cfg;
}

SimConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::vector<std::pair<std::string, std::string>> pairs;
    if (!path.empty()) {
        std::ifstream is(path);
        if (!is) throw IoError("cannot open config file '" + path + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
            pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override '" + ov + "' is not of the form key=value");
        pairs.emplace_back(trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
    }
    return config_from_pairs(pairs);
}

std::string config_schema_hash() {
    std::vector<std::string> keys(kKnownKeys.begin(), kKnownKeys.end());
    keys.push_back("threads");
    std::sort(keys.begin(), keys.end());
    std::uint64_t h = 14695981039346656037ull;
    for (const std::string& k : keys) {
        for (char c : k) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        h ^= '\n';
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace abraham
