#include "eop/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

namespace eop {

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& raw, const std::string& what)
{
    std::string s = trim(raw);
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size())
        throw Error(Err::Usage, "cannot read " + what + " from '" + raw + "'");
    return v;
}

int to_int(const std::string& raw, const std::string& what)
{
    std::string s = trim(raw);
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size())
        throw Error(Err::Usage, "cannot read " + what + " from '" + raw + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

} // namespace

cplx parse_tau(const std::string& raw)
{
    std::string s;
    for (char ch : raw)
        if (ch != ' ')
            s += ch;
    if (s.find(',') != std::string::npos) {
        auto p = split(s, ',');
        if (p.size() != 2)
            throw Error(Err::Usage, "tau must be RE,IM: '" + raw + "'");
        return {to_double(p[0], "Re tau"), to_double(p[1], "Im tau")};
    }
    static const std::regex re(R"(^([+-]?[0-9.eE]+(?:[eE][+-]?[0-9]+)?)?(?:([+-])([0-9.eE]*)i)?$)");
    static const std::regex im_only(R"(^([+-]?)([0-9.]*(?:[eE][+-]?[0-9]+)?)i$)");
    std::smatch m;
    if (std::regex_match(s, m, im_only)) {
        double v = m[2].str().empty() ? 1.0 : to_double(m[2].str(), "Im tau");
        return {0.0, m[1].str() == "-" ? -v : v};
    }
    if (std::regex_match(s, m, re) && m[1].matched) {
        double a = to_double(m[1].str(), "Re tau");
        double b = 0;
        if (m[2].matched) {
            b = m[3].str().empty() ? 1.0 : to_double(m[3].str(), "Im tau");
            if (m[2].str() == "-")
                b = -b;
        }
        return {a, b};
    }
    throw Error(Err::Usage, "cannot read tau from '" + raw + "'");
}

std::pair<double, double> parse_range(const std::string& s)
{
    auto p = split(s, ',');
    if (p.size() != 2)
        throw Error(Err::Usage, "range must be a,b: '" + s + "'");
    return {to_double(p[0], "range"), to_double(p[1], "range")};
}

std::pair<int, int> parse_grid(const std::string& s)
{
    auto x = s.find_first_of("xX");
    if (x == std::string::npos)
        throw Error(Err::Usage, "grid must be NxM: '" + s + "'");
    return {to_int(s.substr(0, x), "grid"), to_int(s.substr(x + 1), "grid")};
}

std::vector<int> parse_int_list(const std::string& s)
{
    std::vector<int> out;
    for (auto& p : split(s, ','))
        out.push_back(to_int(p, "integer list"));
    if (out.empty())
        throw Error(Err::Usage, "empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& s)
{
    std::vector<double> out;
    for (auto& p : split(s, ','))
        out.push_back(to_double(p, "number list"));
    if (out.empty())
        throw Error(Err::Usage, "empty list");
    return out;
}

std::pair<std::string, double> parse_tol(const std::string& s)
{
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
        throw Error(Err::Usage, "tolerance must be NAME=VAL: '" + s + "'");
    double v = to_double(s.substr(eq + 1), "tolerance");
    if (!(v > 0))
        throw Error(Err::Usage, "tolerance " + s.substr(0, eq) + " must be positive");
    return {trim(s.substr(0, eq)), v};
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Err::Usage, "cannot open config file " + path);
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
            throw Error(Err::Usage, path + ":" + std::to_string(no) + ": expected key=value");
        kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return kv;
}

std::vector<std::string> merge_config(const std::vector<std::string>& args)
{
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty())
        return args;
    auto present = [&](const std::string& key) {
        std::string flag = "--" + key;
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    std::vector<std::string> out = args;
    for (auto& [k, v] : read_config(path)) {
        if (k == "config")
            throw Error(Err::Usage, path + ": nested config is not supported");
        if (present(k))
            continue;
        // bare flags: key=true
        if (v == "true") {
            out.push_back("--" + k);
            continue;
        }
        out.push_back("--" + k + "=" + v);
    }
    return out;
}

} // namespace eop
