#include "scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace tic {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> to_number(const std::string& s) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

std::optional<bool> to_bool(const std::string& s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    return std::nullopt;
}

using Setter = std::function<bool(Scenario&, const std::string&)>;

Setter number(std::function<void(Scenario&, double)> f) {
    return [f](Scenario& sc, const std::string& v) {
        auto x = to_number(v);
        if (!x) return false;
        f(sc, *x);
        return true;
    };
}

Preferences& prefs(Scenario& sc) {
    if (!sc.prefs) sc.prefs = Preferences{};
    return *sc.prefs;
}

std::map<std::string, Setter> setters() {
    std::map<std::string, Setter> m;
    m["params.alpha_A"] = number([](Scenario& s, double x) { s.params.alpha_a = x; });
    m["params.alpha_B"] = number([](Scenario& s, double x) { s.params.alpha_b = x; });
    m["params.delta"] = number([](Scenario& s, double x) { s.params.delta = x; });
    m["params.v"] = number([](Scenario& s, double x) { s.params.v = x; });
    for (Country c : kCountries) {
        const std::string p = std::string("policy.") + name(c) + ".";
        m[p + "tau"] = number([c](Scenario& s, double x) { s.policy[c].tau = x; });
        m[p + "e"] = number([c](Scenario& s, double x) { s.policy[c].e = x; });
        m[p + "s"] = number([c](Scenario& s, double x) { s.policy[c].s = x; });
        m[p + "beta"] = number([c](Scenario& s, double x) { s.policy[c].beta = x; });
        const std::string t = std::string("tic.") + name(c) + ".";
        m[t + "enabled"] = [c](Scenario& s, const std::string& v) {
            auto b = to_bool(v);
            if (!b) return false;
            s.tic[c].enabled = *b;
            return true;
        };
        m[t + "eta"] = number([c](Scenario& s, double x) { s.tic[c].eta = x; });
        m[t + "phi"] = number([c](Scenario& s, double x) { s.tic[c].phi = x; });
    }
    m["prefs.X_bar_A"] = number([](Scenario& s, double x) { prefs(s).target_a = x; });
    m["prefs.gamma_B"] = number([](Scenario& s, double x) { prefs(s).gamma_b = x; });
    m["prefs.lambda_A"] = [](Scenario& s, const std::string& v) {
        if (v == "hard") {
            prefs(s).lambda_a.reset();
            return true;
        }
        auto x = to_number(v);
        if (!x) return false;
        prefs(s).lambda_a = *x;
        return true;
    };
    m["sweep.e_B.min"] = number([](Scenario& s, double x) { s.sweep.min = x; });
    m["sweep.e_B.max"] = number([](Scenario& s, double x) { s.sweep.max = x; });
    m["sweep.e_B.step"] = number([](Scenario& s, double x) { s.sweep.step = x; });
    m["oracle.M"] = number([](Scenario& s, double x) {
        s.oracle_size = x >= 1.0 && x == std::floor(x) ? static_cast<std::size_t>(x) : 0;
    });
    m["oligopoly.N"] = [](Scenario& s, const std::string& v) {
        std::vector<int> firms;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto x = to_number(trim(item));
            if (!x || *x < 1.0 || *x != std::floor(*x) || *x > 1e6) return false;
            firms.push_back(static_cast<int>(*x));
        }
        if (firms.empty()) return false;
        s.oligopoly_firms = std::move(firms);
        return true;
    };
    return m;
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
    static const std::map<std::string, Setter> table = setters();
    Scenario sc;
    sc.params = ModelParams::make(0.3, 0.7);
    std::vector<std::string> issues;
    std::set<std::string> seen;
    bool delta_given = false;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back(where + "expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = table.find(key);
        if (it == table.end()) {
            issues.push_back(where + "unknown key " + key);
            continue;
        }
        if (!seen.insert(key).second) issues.push_back(where + "duplicate key " + key);
        if (!it->second(sc, value)) issues.push_back(where + "bad value for " + key + ": " + value);
        if (key == "params.delta") delta_given = true;
    }
    if (!delta_given) sc.params.delta = sc.params.alpha_a + sc.params.alpha_b;
    if (sc.sweep.step <= 0.0 || sc.sweep.max < sc.sweep.min)
        issues.push_back("sweep.e_B: need min <= max and step > 0");
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return sc;
}

Scenario parse_scenario_text(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open scenario file " + path);
    return parse_scenario(in);
}

}  // namespace tic
