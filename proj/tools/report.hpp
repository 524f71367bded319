#pragma once

#include <hprod/digraph.hpp>

#include <json.hpp>

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hprod::cli {

using Json = nlohmann::ordered_json;

inline std::string fnv1a(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

template <class Seq>
std::string braces(const Seq & values)
{
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto & v : values) {
        out << (first ? "" : ", ") << v;
        first = false;
    }
    out << '}';
    return out.str();
}

struct Check {
    std::string name;
    bool pass = false;
    std::string expected;
    std::string actual;
};

/// Everything a subcommand prints. Text and JSON renderings carry the same content.
class RunReport {
public:
    explicit RunReport(std::string subcommand) : subcommand_(std::move(subcommand)) {}

    void input(const std::string & path, std::string_view content) { inputs_.emplace_back(path, fnv1a(content)); }
    void output(const std::string & path, std::string_view content) { outputs_.emplace_back(path, fnv1a(content)); }

    /// Free-form result line; value also recorded under key in JSON.
    void note(const std::string & key, const std::string & value) { notes_.emplace_back(key, value); }
    void data(const std::string & key, Json value) { data_[key] = std::move(value); }

    void check(std::string name, bool pass, std::string expected, std::string actual)
    {
        checks_.push_back({std::move(name), pass, std::move(expected), std::move(actual)});
    }

    template <class T>
    void check_equal(std::string name, const T & expected, const T & actual)
    {
        std::ostringstream e, a;
        e << expected;
        a << actual;
        check(std::move(name), expected == actual, e.str(), a.str());
    }

    bool ok() const
    {
        for (const auto & c : checks_)
            if (!c.pass)
                return false;
        return true;
    }

    std::string text() const
    {
        std::ostringstream out;
        out << "hprod " << subcommand_ << '\n';
        for (const auto & [path, digest] : inputs_)
            out << "input " << path << ' ' << digest << '\n';
        for (const auto & [key, value] : notes_)
            out << key << ": " << value << '\n';
        for (const auto & c : checks_) {
            out << (c.pass ? "PASS " : "FAIL ") << c.name;
            if (c.pass)
                out << " (" << c.actual << ")\n";
            else
                out << ": expected " << c.expected << ", actual " << c.actual << '\n';
        }
        for (const auto & [path, digest] : outputs_)
            out << "output " << path << ' ' << digest << '\n';
        out << "result: " << (ok() ? "PASS" : "FAIL") << '\n';
        return out.str();
    }

    std::string json() const
    {
        Json j;
        j["subcommand"] = subcommand_;
        j["inputs"] = Json::array();
        for (const auto & [path, digest] : inputs_)
            j["inputs"].push_back({{"path", path}, {"digest", digest}});
        j["notes"] = Json::object();
        for (const auto & [key, value] : notes_)
            j["notes"][key] = value;
        j["data"] = data_.is_null() ? Json::object() : data_;
        j["checks"] = Json::array();
        for (const auto & c : checks_)
            j["checks"].push_back(
                {{"name", c.name}, {"status", c.pass ? "PASS" : "FAIL"}, {"expected", c.expected}, {"actual", c.actual}});
        j["outputs"] = Json::array();
        for (const auto & [path, digest] : outputs_)
            j["outputs"].push_back({{"path", path}, {"digest", digest}});
        j["result"] = ok() ? "PASS" : "FAIL";
        return j.dump(2) + "\n";
    }

private:
    std::string subcommand_;
    std::vector<std::pair<std::string, std::string>> inputs_, outputs_, notes_;
    std::vector<Check> checks_;
    Json data_;
};

} // namespace hprod::cli
