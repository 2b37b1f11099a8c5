#include "io/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace bo::io {

namespace {

std::string trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

} // namespace

Config Config::parse(const std::string& text)
{
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) +
                               ": expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error("line " + std::to_string(lineno) + ": empty key");
        if (!c.kv_.emplace(key, val).second)
            throw config_error("duplicate key: " + key);
    }
    return c;
}

Config Config::load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Config::take(const std::string& key)
{
    const auto it = kv_.find(key);
    if (it == kv_.end())
        throw config_error("missing required key: " + key);
    used_.insert(key);
    return it->second;
}

std::string Config::take_or(const std::string& key, std::string def)
{
    const auto it = kv_.find(key);
    if (it == kv_.end())
        return def;
    used_.insert(key);
    return it->second;
}

double Config::take_double(const std::string& key)
{
    return parse_double(take(key), key);
}

double Config::take_double_or(const std::string& key, double def)
{
    const auto it = kv_.find(key);
    if (it == kv_.end())
        return def;
    used_.insert(key);
    return parse_double(it->second, key);
}

long Config::take_int_or(const std::string& key, long def)
{
    const auto it = kv_.find(key);
    if (it == kv_.end())
        return def;
    used_.insert(key);
    return parse_int(it->second, key);
}

bool Config::take_bool_or(const std::string& key, bool def)
{
    const auto it = kv_.find(key);
    if (it == kv_.end())
        return def;
    used_.insert(key);
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw config_error("key " + key + ": expected a boolean, got '" + v + "'");
}

std::vector<double> Config::take_doubles_or(const std::string& key,
                                            std::vector<double> def)
{
    const auto it = kv_.find(key);
    if (it == kv_.end())
        return def;
    used_.insert(key);
    std::vector<double> out;
    std::istringstream ss(it->second);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(parse_double(cell, key));
    if (out.empty())
        throw config_error("key " + key + ": expected a comma-separated list");
    return out;
}

void Config::reject_unknown() const
{
    std::string bad;
    for (const auto& [k, v] : kv_)
        if (used_.count(k) == 0)
            bad += bad.empty() ? k : ", " + k;
    if (!bad.empty())
        throw config_error("unknown key: " + bad);
}

double parse_double(const std::string& text, const std::string& key)
{
    const std::string t = [&] {
        std::string s;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                s += ch;
        return s;
    }();
    if (t == "inf")
        return std::numeric_limits<double>::infinity();
    if (t == "-inf")
        return -std::numeric_limits<double>::infinity();
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw config_error("key " + key + ": expected a number, got '" + text + "'");
    return v;
}

long parse_int(const std::string& text, const std::string& key)
{
    errno = 0;
    char* end = nullptr;
    const std::string t = trim(text);
    const long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw config_error("key " + key + ": expected an integer, got '" + text + "'");
    return v;
}

} // namespace bo::io
