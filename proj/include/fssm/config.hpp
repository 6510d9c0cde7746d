#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fssm/sim.hpp"

namespace fssm {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Plain-text `key = value` configuration. `#` starts a comment. Keys are
/// case-sensitive; list values are comma separated.
class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    std::string str(const std::string& key, const std::string& def) const;
    double num(const std::string& key, double def) const;
    long integer(const std::string& key, long def) const;
    bool flag(const std::string& key, bool def) const;
    std::vector<double> nums(const std::string& key, const std::vector<double>& def) const;
    std::string require(const std::string& key) const;

    /// Throws ConfigError naming every key not in `known`.
    void check_keys(const std::set<std::string>& known) const;

    /// Canonical `key=value` lines, sorted by key.
    std::string canonical() const;
    /// 64-bit FNV-1a of the canonical text, hex encoded.
    std::string hash() const;

    PendulumParams pendulum() const;
    ControllerConfig controller() const;

private:
    std::map<std::string, std::string> kv_;
};

const std::set<std::string>& pendulum_keys();
const std::set<std::string>& controller_keys();

}  // namespace fssm
