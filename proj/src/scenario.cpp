#include "ccm/scenario.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace ccm {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& s) {
    std::size_t h = s.find('#');
    return h == std::string::npos ? s : s.substr(0, h);
}

// "key=value key=value ..." fields on provider/job/racer lines
std::map<std::string, std::string> parse_fields(int line, const std::string& body) {
    std::map<std::string, std::string> out;
    std::istringstream in(body);
    std::string tok;
    while (in >> tok) {
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ScenarioError(line, "expected key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq);
        if (out.count(key)) throw ScenarioError(line, "duplicate field '" + key + "'");
        out[key] = tok.substr(eq + 1);
    }
    return out;
}

int parse_int(int line, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ScenarioError(line, key + ": bad integer '" + v + "'");
    }
}

std::uint64_t parse_u64(int line, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        std::uint64_t x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ScenarioError(line, key + ": bad unsigned integer '" + v + "'");
    }
}

double parse_double(int line, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ScenarioError(line, key + ": bad number '" + v + "'");
    }
}

Money parse_money_f(int line, const std::string& key, const std::string& v) {
    try {
        return parse_money(v);
    } catch (const std::exception& e) {
        throw ScenarioError(line, key + ": " + e.what());
    }
}

bool parse_onoff(int line, const std::string& key, const std::string& v) {
    if (v == "on" || v == "true") return true;
    if (v == "off" || v == "false") return false;
    throw ScenarioError(line, key + ": expected on/off, got '" + v + "'");
}

ValueFn parse_value(int line, const std::string& v, int deadline) {
    try {
        if (v.rfind("power:", 0) == 0) {
            // power:a=3.0,gamma=0.6[,support=N]
            double a = 0, gamma = 0;
            int support = deadline;
            std::istringstream in(v.substr(6));
            std::string part;
            while (std::getline(in, part, ',')) {
                std::size_t eq = part.find('=');
                if (eq == std::string::npos) throw std::invalid_argument("expected k=v in power spec");
                std::string k = part.substr(0, eq), val = part.substr(eq + 1);
                if (k == "a") a = std::stod(val);
                else if (k == "gamma") gamma = std::stod(val);
                else if (k == "support") support = std::stoi(val);
                else throw std::invalid_argument("unknown power field '" + k + "'");
            }
            return ValueFn::power(a * kTicksPerUnit, gamma, support);
        }
        // comma-separated v(0),v(1),... money units per entry
        std::vector<std::int64_t> table;
        std::istringstream in(v);
        std::string part;
        while (std::getline(in, part, ',')) table.push_back(parse_money(part).ticks);
        return ValueFn::from_table(std::move(table));
    } catch (const ScenarioError&) {
        throw;
    } catch (const std::exception& e) {
        throw ScenarioError(line, std::string("value: ") + e.what());
    }
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
    Scenario sc;
    sc.params.pricing.kind = PricingKind::linear_capped;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    bool have_race = false;
    RaceConfig race;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ScenarioError(line, "unterminated section header");
            section = s.substr(1, s.size() - 2);
            if (section != "market" && section != "pricing" && section != "providers" &&
                section != "jobs" && section != "race")
                throw ScenarioError(line, "unknown section [" + section + "]");
            if (section == "race") have_race = true;
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) throw ScenarioError(line, "expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty()) throw ScenarioError(line, "expected key = value");

        if (section == "market") {
            if (key == "floor") sc.params.pricing.floor = parse_money_f(line, key, val);
            else if (key == "cap") sc.params.pricing.cap = parse_money_f(line, key, val);
            else if (key == "horizon") sc.params.horizon = parse_int(line, key, val);
            else if (key == "algo") {
                if (val == "gcm") sc.params.algo = Algo::gcm;
                else if (val == "gsm") sc.params.algo = Algo::gsm;
                else if (val == "cfm") sc.params.algo = Algo::cfm;
                else throw ScenarioError(line, "algo: expected gcm|gsm|cfm");
            } else if (key == "gsm_fallback") {
                if (val == "reject") sc.params.gsm_fallback = GsmFallback::reject;
                else if (val == "longest") sc.params.gsm_fallback = GsmFallback::longest;
                else throw ScenarioError(line, "gsm_fallback: expected reject|longest");
            } else if (key == "floor_update") sc.params.floor_update = parse_onoff(line, key, val);
            else if (key == "floor_window") sc.params.floor_window = parse_int(line, key, val);
            else if (key == "reoptimize") sc.params.reoptimize = parse_onoff(line, key, val);
            else if (key == "seed") sc.params.seed = parse_u64(line, key, val);
            else throw ScenarioError(line, "unknown market key '" + key + "'");
        } else if (section == "pricing") {
            if (key == "kind") {
                if (val == "linear_capped") sc.params.pricing.kind = PricingKind::linear_capped;
                else if (val == "concave_power") sc.params.pricing.kind = PricingKind::concave_power;
                else if (val == "tabulated") sc.params.pricing.kind = PricingKind::tabulated;
                else throw ScenarioError(line, "kind: expected linear_capped|concave_power|tabulated");
            } else if (key == "slope") sc.params.pricing.slope = parse_money_f(line, key, val);
            else if (key == "gamma") sc.params.pricing.gamma = parse_double(line, key, val);
            else if (key == "knots") {
                // "alpha:price, alpha:price, ..."
                sc.params.pricing.knots.clear();
                std::istringstream ks(val);
                std::string part;
                while (std::getline(ks, part, ',')) {
                    part = trim(part);
                    std::size_t colon = part.find(':');
                    if (colon == std::string::npos)
                        throw ScenarioError(line, "knots: expected alpha:price");
                    sc.params.pricing.knots.emplace_back(
                        parse_double(line, "knots", trim(part.substr(0, colon))),
                        parse_money_f(line, "knots", trim(part.substr(colon + 1))));
                }
            } else throw ScenarioError(line, "unknown pricing key '" + key + "'");
        } else if (section == "providers") {
            if (key != "provider") throw ScenarioError(line, "unknown providers key '" + key + "'");
            auto f = parse_fields(line, val);
            ProviderRecord p;
            p.id = static_cast<int>(sc.providers.size());
            for (const auto& [k, v] : f) {
                if (k == "cost") { p.reported_cost = parse_money_f(line, k, v); }
                else if (k == "true_cost") p.true_cost = parse_money_f(line, k, v);
                else if (k == "tau") p.tau0 = parse_int(line, k, v);
                else if (k == "arrival") p.arrival = parse_int(line, k, v);
                else if (k == "restake") {
                    if (v == "none") p.restake = RestakeMode::none;
                    else if (v == "cyclic") p.restake = RestakeMode::cyclic;
                    else throw ScenarioError(line, "restake: expected none|cyclic");
                } else throw ScenarioError(line, "unknown provider field '" + k + "'");
            }
            if (!f.count("cost")) throw ScenarioError(line, "provider: missing cost");
            if (!f.count("true_cost")) p.true_cost = p.reported_cost;
            sc.providers.push_back(std::move(p));
        } else if (section == "jobs") {
            if (key != "job") throw ScenarioError(line, "unknown jobs key '" + key + "'");
            auto f = parse_fields(line, val);
            JobSpec d;
            d.id = static_cast<int>(sc.jobs.size());
            if (!f.count("budget")) throw ScenarioError(line, "job: missing budget");
            if (!f.count("value")) throw ScenarioError(line, "job: missing value");
            d.budget = parse_money_f(line, "budget", f["budget"]);
            if (d.budget.ticks < 0) throw ScenarioError(line, "budget: must be >= 0");
            if (f.count("deadline")) d.deadline = parse_int(line, "deadline", f["deadline"]);
            if (f.count("min_run")) d.min_run = parse_int(line, "min_run", f["min_run"]);
            if (f.count("arrival")) d.arrival = parse_int(line, "arrival", f["arrival"]);
            d.value = parse_value(line, f["value"], d.deadline);
            for (const auto& [k, v] : f) {
                (void)v;
                if (k != "budget" && k != "value" && k != "deadline" && k != "min_run" && k != "arrival")
                    throw ScenarioError(line, "unknown job field '" + k + "'");
            }
            sc.jobs.push_back(std::move(d));
        } else if (section == "race") {
            if (key == "epsilon") race.epsilon = parse_int(line, key, val);
            else if (key == "stake") race.stake = parse_money_f(line, key, val);
            else if (key == "price") race.price = parse_money_f(line, key, val);
            else if (key == "window") {
                if (val == "two_sided") race.one_sided = false;
                else if (val == "one_sided") race.one_sided = true;
                else throw ScenarioError(line, "window: expected two_sided|one_sided");
            } else if (key == "racer") {
                auto f = parse_fields(line, val);
                Racer r;
                r.id = static_cast<int>(race.racers.size());
                if (!f.count("t")) throw ScenarioError(line, "racer: missing t");
                r.t_true = parse_int(line, "t", f["t"]);
                if (f.count("quote")) r.quote = parse_int(line, "quote", f["quote"]);
                for (const auto& [k, v] : f) {
                    (void)v;
                    if (k != "t" && k != "quote")
                        throw ScenarioError(line, "unknown racer field '" + k + "'");
                }
                race.racers.push_back(r);
            } else throw ScenarioError(line, "unknown race key '" + key + "'");
        } else {
            throw ScenarioError(line, "key outside any section");
        }
    }

    if (have_race) sc.race = std::move(race);
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

}  // namespace ccm
