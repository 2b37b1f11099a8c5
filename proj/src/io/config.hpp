#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bo::io {

// Experiment configs are single `key = value` text files; '#' starts a
// comment, blank lines are ignored. Parsing is strict -- malformed lines,
// duplicate keys, unparseable numbers, and (once the consumer has taken
// everything it understands) leftover keys all raise config_error naming
// the offending key -- so a config can never silently drive a different
// experiment than the one it describes.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);  // config_error on io failure

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    // take_* consume the key; plain take is required, _or takes a default.
    // Doubles accept inf/-inf; bools accept true/false/1/0/yes/no.
    std::string take(const std::string& key);
    std::string take_or(const std::string& key, std::string def);
    double take_double(const std::string& key);
    double take_double_or(const std::string& key, double def);
    long take_int_or(const std::string& key, long def);
    bool take_bool_or(const std::string& key, bool def);
    // comma-separated double list
    std::vector<double> take_doubles_or(const std::string& key,
                                        std::vector<double> def);

    // after all takes: any key never consumed is an error
    void reject_unknown() const;

    const std::map<std::string, std::string>& raw() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
    std::set<std::string> used_;
};

// strict scalar parses, error messages name the key
double parse_double(const std::string& text, const std::string& key);
long parse_int(const std::string& text, const std::string& key);

} // namespace bo::io
