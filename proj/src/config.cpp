#include "fssm/config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace fssm {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double x = 0;
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || p != end) throw ConfigError("invalid number for " + key + ": '" + v + "'");
    return x;
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(no) + ": expected key = value");
        const std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (k.empty()) throw ConfigError("line " + std::to_string(no) + ": empty key");
        if (c.kv_.count(k)) throw ConfigError("duplicate key: " + k);
        c.kv_[k] = v;
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string Config::str(const std::string& key, const std::string& def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

double Config::num(const std::string& key, double def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : to_double(key, it->second);
}

long Config::integer(const std::string& key, long def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    long x = 0;
    const auto& v = it->second;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError("invalid integer for " + key + ": '" + v + "'");
    return x;
}

bool Config::flag(const std::string& key, bool def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw ConfigError("invalid boolean for " + key + ": '" + it->second + "'");
}

std::vector<double> Config::nums(const std::string& key, const std::vector<double>& def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    return out;
}

std::string Config::require(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required key: " + key);
    return it->second;
}

void Config::check_keys(const std::set<std::string>& known) const {
    std::string bad;
    for (auto& [k, v] : kv_)
        if (!known.count(k)) bad += (bad.empty() ? "" : ", ") + k;
    if (!bad.empty()) throw ConfigError("unknown config keys: " + bad);
}

std::string Config::canonical() const {
    std::string s;
    for (auto& [k, v] : kv_) s += k + "=" + v + "\n";
    return s;
}

std::string Config::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : canonical()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const std::set<std::string>& pendulum_keys() {
    static const std::set<std::string> k{"m", "l", "r_arm", "g", "J_p", "J_a", "b1", "b2", "N_motor", "K_emf"};
    return k;
}

const std::set<std::string>& controller_keys() {
    static const std::set<std::string> k{"K_P", "K_D", "K_phiD", "K_I", "dt_sample", "r_delay", "h_quant", "observable"};
    return k;
}

PendulumParams Config::pendulum() const {
    PendulumParams p;
    p.m = num("m", p.m);
    p.l = num("l", p.l);
    p.r_arm = num("r_arm", p.r_arm);
    p.g = num("g", p.g);
    p.J_p = num("J_p", p.J_p);
    p.J_a = num("J_a", p.J_a);
    p.b1 = num("b1", p.b1);
    p.b2 = num("b2", p.b2);
    p.N_motor = num("N_motor", p.N_motor);
    p.K_emf = num("K_emf", p.K_emf);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return p;
}

ControllerConfig Config::controller() const {
    ControllerConfig c;
    c.K_P = num("K_P", c.K_P);
    c.K_D = num("K_D", c.K_D);
    c.K_phiD = num("K_phiD", c.K_phiD);
    c.K_I = num("K_I", c.K_I);
    c.dt_sample = num("dt_sample", c.dt_sample);
    c.r_delay = static_cast<int>(integer("r_delay", c.r_delay));
    if (has("h_quant") && str("h_quant", "") != "none") c.h_quant = num("h_quant", 0);
    c.observable = str("observable", c.observable);
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

}  // namespace fssm
