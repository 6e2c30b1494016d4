#include "dfcalc/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "dfcalc/error.hpp"

namespace dfcalc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    for (std::size_t pos; (pos = s.find(sep)) != std::string_view::npos; s.remove_prefix(pos + 1))
        out.push_back(trim(s.substr(0, pos)));
    out.push_back(trim(s));
    return out;
}

int parse_int(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    int v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size())
        throw InvalidArgument("expected an integer, got '" + std::string(s) + "'");
    return v;
}

Weight parse_coords(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '{') {
        if (s.back() != '}') throw InvalidArgument("unbalanced braces in '" + std::string(s) + "'");
        s = s.substr(1, s.size() - 2);
    }
    std::vector<int> c;
    for (auto part : split(s, ',')) c.push_back(parse_int(part));
    return Weight(std::move(c));
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return out;
}

}  // namespace

ParabolicMarking parse_marking(std::string_view text) {
    text = trim(text);
    const auto open = text.find('[');
    if (open == std::string_view::npos || text.back() != ']')
        throw InvalidArgument("expected a marking like A3[x..], got '" + std::string(text) + "'");
    return ParabolicMarking::from_mask(make_cartan(trim(text.substr(0, open))),
                                       text.substr(open + 1, text.size() - open - 2));
}

ParabolicMarking parse_marking(std::string_view text, const CartanPtr& cartan) {
    text = trim(text);
    if (text.find('[') == std::string_view::npos) return ParabolicMarking::from_mask(cartan, text);
    auto m = parse_marking(text);
    if (!(m.cartan() == *cartan))
        throw InvalidArgument("marking " + to_string(m) + " is not of type " + cartan->name());
    return ParabolicMarking(cartan, [&] {
        std::vector<bool> crossed;
        for (int i = 0; i < m.rank(); ++i) crossed.push_back(m.crossed(i));
        return crossed;
    }());
}

BundleLabel parse_label(std::string_view text) {
    text = trim(text);
    const auto close = text.find(']');
    if (close == std::string_view::npos)
        throw InvalidArgument("expected a label like A3[x..]{1,0,1}, got '" + std::string(text) + "'");
    return BundleLabel(parse_marking(text.substr(0, close + 1)), parse_coords(text.substr(close + 1)));
}

BundleLabel parse_label(std::string_view text, const ParabolicMarking& implied) {
    text = trim(text);
    if (!text.empty() && std::isalpha(static_cast<unsigned char>(text.front()))) {
        auto b = parse_label(text);
        if (b.marking() != implied)
            throw InvalidArgument("label " + to_string(b) + " does not live on " + to_string(implied));
        return BundleLabel(implied, b.weight());
    }
    return BundleLabel(implied, parse_coords(text));
}

LabelRange parse_range(std::string_view text) {
    LabelRange r;
    for (auto part : split(trim(text), ',')) {
        const auto dots = part.find("..");
        if (dots == std::string_view::npos) {
            const int v = parse_int(part);
            r.bounds.emplace_back(v, v);
            continue;
        }
        const int lo = parse_int(part.substr(0, dots)), hi = parse_int(part.substr(dots + 2));
        if (lo > hi) throw InvalidArgument("empty range " + std::string(part));
        r.bounds.emplace_back(lo, hi);
    }
    long long points = 1;
    for (const auto& [lo, hi] : r.bounds) {
        points *= static_cast<long long>(hi) - lo + 1;
        if (points > 1000000) throw InvalidArgument("range '" + std::string(text) + "' has too many points");
    }
    return r;
}

std::string to_string(const LabelRange& r) {
    std::string out;
    for (std::size_t i = 0; i < r.bounds.size(); ++i) {
        const auto [lo, hi] = r.bounds[i];
        out += (i ? "," : "") + (lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi));
    }
    return out;
}

std::vector<Weight> expand(const LabelRange& r, const ParabolicMarking& m) {
    if (static_cast<int>(r.bounds.size()) != m.rank())
        throw InvalidArgument("range '" + to_string(r) + "' has wrong length for " + to_string(m));
    std::vector<Weight> out;
    Weight w(r.bounds.size());
    for (std::size_t i = 0; i < w.rank(); ++i) w[i] = r.bounds[i].first;
    while (true) {
        if (levi_dominant(m, w)) out.push_back(w);
        std::size_t i = w.rank();
        while (i > 0 && w[i - 1] == r.bounds[i - 1].second) {
            w[i - 1] = r.bounds[i - 1].first;
            --i;
        }
        if (i == 0) break;
        ++w[i - 1];
    }
    return out;
}

// Scenario configs

namespace {

CycleKind cycle_kind_from(std::string_view s) {
    const auto v = lower(trim(s));
    if (v == "parabolic") return CycleKind::Parabolic;
    if (v == "reductive") return CycleKind::Reductive;
    throw InvalidArgument("cycle_kind must be parabolic or reductive, got '" + std::string(s) + "'");
}

bool bool_from(std::string_view s) {
    const auto v = lower(trim(s));
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw InvalidArgument("expected true or false, got '" + std::string(s) + "'");
}

std::vector<int> letters_from(std::string_view s) {
    std::vector<int> out;
    std::string t(trim(s));
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    for (std::string tok; is >> tok;)
        if (tok != "e") out.push_back(parse_int(tok));
    return out;
}

// Line of the first mention of a key, for JSON diagnostics.
int line_of_key(std::string_view text, const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

// Checks the structural invariants; reports the first offending field.
void validate(const ScenarioConfig& cfg, const std::map<std::string, int>& lines) {
    auto fail = [&](const std::string& field, const std::string& what) {
        const auto it = lines.find(field);
        throw ParseError(what, it == lines.end() ? 0 : it->second, field);
    };
    if (cfg.type.empty()) fail("type", "missing Cartan type");
    CartanPtr c;
    try {
        c = make_cartan(cfg.type);
    } catch (const std::exception& e) {
        fail("type", e.what());
    }
    std::optional<ParabolicMarking> source;
    for (const auto& [field, mask] : {std::pair{"source", cfg.source}, std::pair{"cycle", cfg.cycle}}) {
        if (mask.empty()) fail(field, "missing marking");
        try {
            auto m = ParabolicMarking::from_mask(c, mask);
            if (std::string(field) == "source") source = m;
        } catch (const std::exception& e) {
            fail(field, e.what());
        }
    }
    for (int l : cfg.transport)
        if (l < 1 || l > c->rank()) fail("transport", "node " + std::to_string(l) + " does not exist");
    for (const auto& b : cfg.bundles) {
        try {
            BundleLabel(*source, b);
        } catch (const std::exception& e) {
            fail("bundle", e.what());
        }
    }
    for (const auto& r : cfg.ranges)
        if (static_cast<int>(r.bounds.size()) != c->rank())
            fail("range", "range '" + to_string(r) + "' has wrong length for " + cfg.type);
}

ScenarioConfig parse_key_value(std::string_view text) {
    ScenarioConfig cfg;
    std::map<std::string, int> lines;
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
        const std::string key = lower(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        lines.emplace(key, line_no);
        try {
            if (key == "name")
                cfg.name = value;
            else if (key == "type")
                cfg.type = value;
            else if (key == "source")
                cfg.source = value;
            else if (key == "cycle")
                cfg.cycle = value;
            else if (key == "cycle_kind")
                cfg.cycle_kind = cycle_kind_from(value);
            else if (key == "transport")
                cfg.transport = letters_from(value);
            else if (key == "hermitian")
                cfg.hermitian = bool_from(value);
            else if (key == "bundle")
                cfg.bundles.push_back(parse_coords(value));
            else if (key == "range")
                cfg.ranges.push_back(parse_range(value));
            else
                throw InvalidArgument("unknown key");
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), line_no, key);
        }
        // Later repeats of a scalar key win; diagnostics point at the latest one.
        lines[key] = line_no;
    }
    validate(cfg, lines);
    return cfg;
}

ScenarioConfig parse_json_config(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto upto = std::min<std::size_t>(e.byte, text.size());
        const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
        throw ParseError("malformed JSON", line);
    }
    if (!j.is_object()) throw ParseError("scenario JSON must be an object", 1);
    ScenarioConfig cfg;
    std::map<std::string, int> lines;
    static const std::set<std::string> known{"name",      "type",      "source",  "cycle", "cycle_kind",
                                             "transport", "hermitian", "bundles", "ranges"};
    for (const auto& [key, value] : j.items()) {
        const int line = line_of_key(text, key);
        lines[key == "bundles" ? "bundle" : key == "ranges" ? "range" : key] = line;
        try {
            if (!known.count(key)) throw InvalidArgument("unknown key");
            if (key == "name")
                cfg.name = value.get<std::string>();
            else if (key == "type")
                cfg.type = value.get<std::string>();
            else if (key == "source")
                cfg.source = value.get<std::string>();
            else if (key == "cycle")
                cfg.cycle = value.get<std::string>();
            else if (key == "cycle_kind")
                cfg.cycle_kind = cycle_kind_from(value.get<std::string>());
            else if (key == "transport")
                cfg.transport = value.is_string() ? letters_from(value.get<std::string>()) : value.get<std::vector<int>>();
            else if (key == "hermitian")
                cfg.hermitian = value.is_string() ? bool_from(value.get<std::string>()) : value.get<bool>();
            else if (key == "bundles")
                for (const auto& b : value)
                    cfg.bundles.push_back(b.is_string() ? parse_coords(b.get<std::string>()) : Weight(b.get<std::vector<int>>()));
            else if (key == "ranges")
                for (const auto& r : value) cfg.ranges.push_back(parse_range(r.get<std::string>()));
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line, key);
        }
    }
    validate(cfg, lines);
    return cfg;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
    const auto t = trim(text);
    if (!t.empty() && t.front() == '{') return parse_json_config(text);
    return parse_key_value(text);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read scenario file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    auto cfg = parse_config(ss.str());
    if (cfg.name.empty()) cfg.name = path;
    return cfg;
}

Json config_to_json(const ScenarioConfig& cfg) {
    Json bundles = Json::array(), ranges = Json::array();
    for (const auto& b : cfg.bundles) bundles.push_back(to_json(b));
    for (const auto& r : cfg.ranges) ranges.push_back(to_string(r));
    return Json{{"name", cfg.name},
                {"type", cfg.type},
                {"source", cfg.source},
                {"cycle", cfg.cycle},
                {"cycle_kind", cfg.cycle_kind == CycleKind::Parabolic ? "parabolic" : "reductive"},
                {"transport", cfg.transport},
                {"hermitian", cfg.hermitian},
                {"bundles", bundles},
                {"ranges", ranges}};
}

std::vector<std::string> bundled_scenario_names() {
    return {"twistor-pp", "grassmann-pm"};
}

std::optional<ScenarioConfig> bundled_scenario(std::string_view name) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.type = "A3";
    if (name == "twistor-pp") {
        cfg.source = "x..";
        cfg.cycle = ".x.";
        cfg.hermitian = true;
        cfg.bundles = {{1, 0, 1}, {0, 0, 0}, {-2, 0, 0}, {-3, 0, 0}, {-4, 0, 0}, {-6, 0, 1}};
        return cfg;
    }
    if (name == "grassmann-pm") {
        cfg.source = ".x.";
        cfg.cycle = ".x.";
        cfg.cycle_kind = CycleKind::Reductive;
        cfg.transport = {2};
        cfg.bundles = {{0, 0, 0}, {0, 1, 0}, {1, 0, 1}, {0, -4, 0}, {1, -6, 1}};
        return cfg;
    }
    return std::nullopt;
}

ScenarioConfig resolve_scenario(const std::string& name_or_path) {
    if (auto cfg = bundled_scenario(name_or_path)) return *cfg;
    std::ifstream probe(name_or_path);
    if (!probe) throw ParseError("no bundled scenario or readable file named '" + name_or_path + "'");
    return load_config(name_or_path);
}

FibrationSpec build_fibration(const ScenarioConfig& cfg) {
    auto c = make_cartan(cfg.type);
    std::vector<int> letters;
    for (int l : cfg.transport) letters.push_back(l - 1);
    return FibrationSpec::make(cfg.name, ParabolicMarking::from_mask(c, cfg.source),
                               ParabolicMarking::from_mask(c, cfg.cycle), cfg.cycle_kind, WeylWord(letters), cfg.hermitian);
}

std::vector<Weight> scenario_bundles(const ScenarioConfig& cfg, const ParabolicMarking& source) {
    std::vector<Weight> out;
    std::set<Weight> seen;
    auto push = [&](const Weight& w) {
        if (seen.insert(w).second) out.push_back(w);
    };
    for (const auto& b : cfg.bundles) push(BundleLabel(source, b).weight());
    for (const auto& r : cfg.ranges)
        for (const auto& w : expand(r, source)) push(w);
    return out;
}

std::vector<Weight> random_labels(const ParabolicMarking& m, int count, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-6, 6);
    std::vector<Weight> out;
    for (int k = 0; k < count; ++k) {
        Weight w(static_cast<std::size_t>(m.rank()));
        for (int i = 0; i < m.rank(); ++i) {
            w[i] = coord(rng);
            if (!m.crossed(i)) w[i] = std::abs(w[i]);
        }
        out.push_back(w);
    }
    return out;
}

// Runs

BbwReport run_bbw(const BundleLabel& b, const ParabolicMarking& base) {
    return BbwReport{b, base, direct_image(b.marking(), base, b)};
}

PageReport make_page_report(const FibrationSpec& f, const BundleLabel& e, E1Page page) {
    PageReport r{f.name(), e.weight(), std::move(page), {}, std::nullopt};
    r.classification = classify(r.page);
    const auto v = r.classification.value;
    if (v != Concentration::None) {
        const bool zero = v == Concentration::StrictDegreeZero || v == Concentration::DegreeZero;
        RowComplex c{zero ? 0 : r.page.s(), {}};
        for (int p = 0; p <= r.page.d(); ++p) c.terms.push_back(r.page.labels(p, c.q));
        r.complex = std::move(c);
    }
    return r;
}

BundleReport run_bundle(const FibrationSpec& f, const BundleLabel& e) {
    auto page = assemble_e1(f, e);
    BundleReport r{e.weight(), make_page_report(f, e, page), std::nullopt, std::nullopt, check_duality(f, e),
                   std::nullopt, std::nullopt};
    if (!page.flags().empty()) r.discounted = make_page_report(f, e, discount(page));
    if (f.hermitian_holomorphic()) {
        r.bgg = make_page_report(f, e, assemble_e1_bgg(f, e));
        r.bgg_duality = check_bgg_duality(f, e);
        r.prediction = hermitian_criterion(f, e);
    }
    return r;
}

bool ScenarioReport::all_dualities_hold() const {
    return std::all_of(bundles.begin(), bundles.end(), [](const BundleReport& b) {
        return b.duality.holds && (!b.bgg_duality || b.bgg_duality->holds);
    });
}

ScenarioReport run_scenario(const ScenarioConfig& cfg, const std::vector<Weight>& bundles) {
    const auto f = build_fibration(cfg);
    ScenarioReport r{cfg, f.d(), f.s(), {}};
    r.config.bundles = bundles;
    r.config.ranges.clear();
    for (const auto& w : bundles) r.bundles.push_back(run_bundle(f, BundleLabel(f.source(), w)));
    return r;
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
    const auto f = build_fibration(cfg);
    return run_scenario(cfg, scenario_bundles(cfg, f.source()));
}

namespace {

SweepRow sweep_one(const FibrationSpec& f, const Weight& w) {
    const BundleLabel e(f.source(), w);
    const auto page = assemble_e1(f, e);
    SweepRow row{w, dominance_prediction(f, e), classify(discount(page)).value, static_cast<int>(page.flags().size()),
                 true};
    if (row.predicted == Prediction::DegreeZero) row.agrees = row.computed == Concentration::StrictDegreeZero;
    if (row.predicted == Prediction::TopDegree) row.agrees = row.computed == Concentration::StrictTopDegree;
    return row;
}

}  // namespace

SweepReport sweep(const FibrationSpec& f, const std::vector<LabelRange>& ranges, int threads) {
    std::set<Weight> labels;
    for (const auto& r : ranges)
        for (const auto& w : expand(r, f.source())) labels.insert(w);
    const std::vector<Weight> todo(labels.begin(), labels.end());

    SweepReport out{f.name(), f.hermitian_holomorphic(), ranges, std::vector<SweepRow>(todo.size()), {}};
    if (threads <= 0) threads = static_cast<int>(std::clamp(std::thread::hardware_concurrency(), 1u, 8u));
    threads = std::max(1, std::min<int>(threads, static_cast<int>(todo.size())));
    // Rows land at their label's index, so completion order never shows in the output.
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < todo.size(); i += threads) out.rows[i] = sweep_one(f, todo[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    for (const auto& row : out.rows)
        if (!row.agrees) out.mismatches.push_back(row.bundle);
    return out;
}

bool DualityRun::holds() const {
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.holds; });
}

// JSON

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError("missing field", 0, key);
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const Json::exception& e) {
        throw ParseError(e.what(), 0, key);
    }
}

Json weights_json(const std::vector<Weight>& ws) {
    Json a = Json::array();
    for (const auto& w : ws) a.push_back(to_json(w));
    return a;
}

std::vector<Weight> weights_from(const Json& j, const char* key) {
    std::vector<Weight> out;
    for (const auto& w : field(j, key)) out.push_back(weight_from_json(w));
    return out;
}

Json word_json(const WeylWord& w) {
    Json a = Json::array();
    for (int l : w.letters()) a.push_back(l + 1);
    return a;
}

WeylWord word_from(const Json& j) {
    std::vector<int> letters;
    for (const auto& l : j) letters.push_back(l.get<int>() - 1);
    return WeylWord(std::move(letters));
}

PageKind page_kind_from(const std::string& s) {
    if (s == to_string(PageKind::DeRham)) return PageKind::DeRham;
    if (s == to_string(PageKind::Bgg)) return PageKind::Bgg;
    throw ParseError("unknown page kind '" + s + "'", 0, "kind");
}

Prediction prediction_from(const std::string& s) {
    for (auto p : {Prediction::DegreeZero, Prediction::TopDegree, Prediction::Unknown})
        if (to_string(p) == s) return p;
    throw ParseError("unknown prediction '" + s + "'", 0, "prediction");
}

Concentration class_value_from(const Json& j, const char* key) {
    try {
        return concentration_from_string(get<std::string>(j, key));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), 0, key);
    }
}

template <class F>
auto wrap(const char* key, F f) {
    try {
        return f();
    } catch (const ParseError& e) {
        throw ParseError(e.what(), 0, key);
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), 0, key);
    }
}

}  // namespace

Json to_json(const Weight& w) {
    return Json(w.coords());
}

Weight weight_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("weight must be an integer array");
    try {
        return Weight(j.get<std::vector<int>>());
    } catch (const Json::exception& e) {
        throw ParseError(e.what());
    }
}

Json to_json(const E1Page& page) {
    Json cells = Json::array();
    for (int q = 0; q <= page.s(); ++q)
        for (int p = 0; p <= page.d(); ++p) {
            if (page.empty(p, q)) continue;
            Json entries = Json::array();
            for (const auto& e : page.cell(p, q))
                entries.push_back(Json{{"label", to_json(e.label)}, {"source", to_json(e.source)}, {"degree", e.degree}});
            cells.push_back(Json{{"p", p}, {"q", q}, {"entries", entries}});
        }
    Json flags = Json::array();
    for (const auto& f : page.flags())
        flags.push_back(Json{{"p", f.p}, {"q", f.q}, {"upper", f.upper}, {"lower", f.lower}});
    return Json{{"kind", to_string(page.kind())}, {"base", to_string(page.base())}, {"d", page.d()},
                {"s", page.s()},     {"discounted", page.discounted()},        {"cells", cells},
                {"flags", flags}};
}

E1Page page_from_json(const Json& j) {
    E1Page page(wrap("base", [&] { return parse_marking(get<std::string>(j, "base")); }), get<int>(j, "d"),
                get<int>(j, "s"), page_kind_from(get<std::string>(j, "kind")));
    wrap("cells", [&] {
        for (const auto& c : field(j, "cells"))
            for (const auto& e : field(c, "entries"))
                page.add(get<int>(c, "p"), get<int>(c, "q"),
                         PageEntry{weight_from_json(field(e, "label")), weight_from_json(field(e, "source")),
                                   get<int>(e, "degree")});
        return 0;
    });
    std::vector<CancellationFlag> flags;
    for (const auto& f : field(j, "flags"))
        flags.push_back(CancellationFlag{get<int>(f, "p"), get<int>(f, "q"), get<std::size_t>(f, "upper"),
                                         get<std::size_t>(f, "lower")});
    wrap("flags", [&] {
        page.set_flags(flags);
        return 0;
    });
    if (get<bool>(j, "discounted")) page.mark_discounted();
    return page;
}

Json to_json(const ConcentrationClass& c) {
    Json w = Json::array();
    for (const auto& [p, q] : c.witnesses) w.push_back(Json::array({p, q}));
    return Json{{"class", to_string(c.value)}, {"zero", c.zero}, {"strict_zero", c.strict_zero},
                {"top", c.top},                {"strict_top", c.strict_top}, {"witnesses", w}};
}

ConcentrationClass class_from_json(const Json& j) {
    ConcentrationClass c;
    c.value = class_value_from(j, "class");
    c.zero = get<bool>(j, "zero");
    c.strict_zero = get<bool>(j, "strict_zero");
    c.top = get<bool>(j, "top");
    c.strict_top = get<bool>(j, "strict_top");
    for (const auto& w : field(j, "witnesses")) c.witnesses.emplace_back(w.at(0).get<int>(), w.at(1).get<int>());
    return c;
}

Json to_json(const DualityReport& r) {
    Json cells = Json::array();
    for (const auto& c : r.cells)
        cells.push_back(Json{{"p", c.p}, {"q", c.q}, {"lhs", weights_json(c.lhs)}, {"rhs", weights_json(c.rhs)},
                             {"equal", c.equal}});
    return Json{{"fibration", r.fibration},
                {"kind", to_string(r.kind)},
                {"bundle", to_json(r.bundle)},
                {"dual_bundle", to_json(r.dual_bundle)},
                {"bundle_class", to_string(r.bundle_class)},
                {"dual_class", to_string(r.dual_class)},
                {"classes_reflect", r.classes_reflect},
                {"holds", r.holds},
                {"cells", cells}};
}

DualityReport duality_from_json(const Json& j) {
    DualityReport r;
    r.fibration = get<std::string>(j, "fibration");
    r.kind = page_kind_from(get<std::string>(j, "kind"));
    r.bundle = weight_from_json(field(j, "bundle"));
    r.dual_bundle = weight_from_json(field(j, "dual_bundle"));
    r.bundle_class = class_value_from(j, "bundle_class");
    r.dual_class = class_value_from(j, "dual_class");
    r.classes_reflect = get<bool>(j, "classes_reflect");
    r.holds = get<bool>(j, "holds");
    for (const auto& c : field(j, "cells"))
        r.cells.push_back(CellComparison{get<int>(c, "p"), get<int>(c, "q"), weights_from(c, "lhs"),
                                         weights_from(c, "rhs"), get<bool>(c, "equal")});
    return r;
}

Json to_json(const BGGComplex& c) {
    Json terms = Json::array();
    for (const auto& row : c.terms) {
        Json a = Json::array();
        for (const auto& t : row) a.push_back(Json{{"word", word_json(t.word)}, {"label", to_json(t.label)}});
        terms.push_back(a);
    }
    return Json{{"marking", to_string(c.marking)}, {"terms", terms}};
}

BGGComplex bgg_complex_from_json(const Json& j) {
    BGGComplex c{wrap("marking", [&] { return parse_marking(get<std::string>(j, "marking")); }), {}};
    for (const auto& row : field(j, "terms")) {
        c.terms.emplace_back();
        for (const auto& t : row)
            c.terms.back().push_back(BGGTerm{word_from(field(t, "word")), weight_from_json(field(t, "label"))});
    }
    return c;
}

Json to_json(const BbwReport& r) {
    Json j{{"bundle", to_string(r.bundle)}, {"base", to_string(r.base)}, {"vanishes", r.result.is_vanishing()}};
    if (r.result) {
        j["degree"] = r.result.degree();
        j["image"] = to_json(r.result.image().weight());
    }
    return j;
}

BbwReport bbw_from_json(const Json& j) {
    auto b = wrap("bundle", [&] { return parse_label(get<std::string>(j, "bundle")); });
    auto base = wrap("base", [&] { return parse_marking(get<std::string>(j, "base"), b.marking().cartan_ptr()); });
    if (get<bool>(j, "vanishes")) return BbwReport{b, base, DirectImageResult::vanishes()};
    return BbwReport{b, base,
                     DirectImageResult(get<int>(j, "degree"),
                                       wrap("image", [&] { return BundleLabel(base, weight_from_json(field(j, "image"))); }))};
}

Json to_json(const PageReport& r) {
    Json c = nullptr;
    if (r.complex) {
        Json terms = Json::array();
        for (const auto& t : r.complex->terms) terms.push_back(weights_json(t));
        c = Json{{"q", r.complex->q}, {"terms", terms}};
    }
    return Json{{"fibration", r.fibration}, {"bundle", to_json(r.bundle)}, {"page", to_json(r.page)},
                {"classification", to_json(r.classification)}, {"complex", c}};
}

PageReport page_report_from_json(const Json& j) {
    PageReport r{get<std::string>(j, "fibration"), weight_from_json(field(j, "bundle")),
                 wrap("page", [&] { return page_from_json(field(j, "page")); }),
                 wrap("classification", [&] { return class_from_json(field(j, "classification")); }), std::nullopt};
    const auto& c = field(j, "complex");
    if (!c.is_null()) {
        RowComplex rc{get<int>(c, "q"), {}};
        for (const auto& t : field(c, "terms")) {
            rc.terms.emplace_back();
            for (const auto& w : t) rc.terms.back().push_back(weight_from_json(w));
        }
        r.complex = std::move(rc);
    }
    return r;
}

Json to_json(const BundleReport& r) {
    Json j{{"bundle", to_json(r.bundle)}, {"de_rham", to_json(r.de_rham)}};
    j["discounted"] = r.discounted ? to_json(*r.discounted) : Json(nullptr);
    j["bgg"] = r.bgg ? to_json(*r.bgg) : Json(nullptr);
    j["duality"] = to_json(r.duality);
    j["bgg_duality"] = r.bgg_duality ? to_json(*r.bgg_duality) : Json(nullptr);
    j["prediction"] = r.prediction ? Json(to_string(*r.prediction)) : Json(nullptr);
    return j;
}

BundleReport bundle_report_from_json(const Json& j) {
    BundleReport r{weight_from_json(field(j, "bundle")),
                   wrap("de_rham", [&] { return page_report_from_json(field(j, "de_rham")); }),
                   std::nullopt,
                   std::nullopt,
                   wrap("duality", [&] { return duality_from_json(field(j, "duality")); }),
                   std::nullopt,
                   std::nullopt};
    if (!field(j, "discounted").is_null())
        r.discounted = wrap("discounted", [&] { return page_report_from_json(j.at("discounted")); });
    if (!field(j, "bgg").is_null()) r.bgg = wrap("bgg", [&] { return page_report_from_json(j.at("bgg")); });
    if (!field(j, "bgg_duality").is_null())
        r.bgg_duality = wrap("bgg_duality", [&] { return duality_from_json(j.at("bgg_duality")); });
    if (!field(j, "prediction").is_null()) r.prediction = prediction_from(get<std::string>(j, "prediction"));
    return r;
}

Json to_json(const ScenarioReport& r) {
    Json bundles = Json::array();
    for (const auto& b : r.bundles) bundles.push_back(to_json(b));
    return Json{{"scenario", config_to_json(r.config)}, {"d", r.d}, {"s", r.s}, {"bundles", bundles}};
}

ScenarioReport scenario_from_json(const Json& j) {
    ScenarioReport r{wrap("scenario", [&] { return parse_config(field(j, "scenario").dump()); }), get<int>(j, "d"),
                     get<int>(j, "s"), {}};
    for (const auto& b : field(j, "bundles")) r.bundles.push_back(bundle_report_from_json(b));
    return r;
}

Json to_json(const SweepReport& r) {
    Json ranges = Json::array(), rows = Json::array();
    for (const auto& x : r.ranges) ranges.push_back(to_string(x));
    std::map<Concentration, int> counts;
    for (const auto& row : r.rows) {
        ++counts[row.computed];
        rows.push_back(Json{{"bundle", to_json(row.bundle)},
                            {"predicted", to_string(row.predicted)},
                            {"computed", to_string(row.computed)},
                            {"flags", row.flags},
                            {"agrees", row.agrees}});
    }
    Json summary = Json::object();
    for (const auto& [c, n] : counts) summary[to_string(c)] = n;
    return Json{{"fibration", r.fibration}, {"in_scope", r.in_scope},
                {"ranges", ranges},         {"summary", summary},
                {"rows", rows},             {"mismatches", weights_json(r.mismatches)}};
}

SweepReport sweep_from_json(const Json& j) {
    SweepReport r{get<std::string>(j, "fibration"), get<bool>(j, "in_scope"), {}, {}, weights_from(j, "mismatches")};
    for (const auto& x : field(j, "ranges"))
        r.ranges.push_back(wrap("ranges", [&] { return parse_range(x.get<std::string>()); }));
    for (const auto& row : field(j, "rows"))
        r.rows.push_back(SweepRow{weight_from_json(field(row, "bundle")),
                                  prediction_from(get<std::string>(row, "predicted")),
                                  class_value_from(row, "computed"), get<int>(row, "flags"), get<bool>(row, "agrees")});
    return r;
}

Json to_json(const DualityRun& r) {
    Json reports = Json::array();
    for (const auto& x : r.reports) reports.push_back(to_json(x));
    return Json{{"fibration", r.fibration}, {"holds", r.holds()}, {"reports", reports}};
}

DualityRun duality_run_from_json(const Json& j) {
    DualityRun r{get<std::string>(j, "fibration"), {}};
    for (const auto& x : field(j, "reports")) r.reports.push_back(duality_from_json(x));
    return r;
}

// Rendering

Format parse_format(std::string_view s) {
    if (s == "json") return Format::Json;
    if (s == "text") return Format::Text;
    throw InvalidArgument("unknown format '" + std::string(s) + "' (expected json or text)");
}

namespace {

bool flat(const Json& j) {
    return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
}

// Like dump(2), but arrays of scalars stay on one line.
void write_json(std::string& out, const Json& j, int indent) {
    const std::string in(static_cast<std::size_t>(indent + 2), ' '), here(static_cast<std::size_t>(indent), ' ');
    if (flat(j)) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
        out += ']';
    } else if (j.is_array()) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += in;
            write_json(out, j[i], indent + 2);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += here + "]";
    } else if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [k, v] : j.items()) {
            out += in + Json(k).dump() + ": ";
            write_json(out, v, indent + 2);
            out += ++i < j.size() ? ",\n" : "\n";
        }
        out += here + "}";
    } else {
        out += j.dump();
    }
}

}  // namespace

std::string render_json(const Json& j) {
    std::string out;
    write_json(out, j, 0);
    return out + "\n";
}

namespace {

std::string join(const std::vector<Weight>& ws, const char* sep) {
    if (ws.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? sep : "") + to_string(ws[i]);
    return out;
}

std::string pad(const std::string& s, std::size_t width) {
    return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

std::string word_text(const WeylWord& w) {
    if (w.empty()) return "e";
    std::string out;
    for (int l : w.letters()) out += "s" + std::to_string(l + 1);
    return out;
}

}  // namespace

std::string render_text(const E1Page& page) {
    const int d = page.d(), s = page.s();
    std::vector<std::vector<std::string>> grid(s + 1, std::vector<std::string>(d + 1));
    std::vector<std::size_t> width(d + 1, 0);
    for (int q = 0; q <= s; ++q)
        for (int p = 0; p <= d; ++p) {
            grid[q][p] = join(page.labels(p, q), " + ");
            width[p] = std::max({width[p], grid[q][p].size(), ("p=" + std::to_string(p)).size()});
        }
    std::ostringstream os;
    os << "E1 " << to_string(page.kind()) << (page.discounted() ? " (discounted)" : "") << " over "
       << to_string(page.base()) << ", d=" << d << " s=" << s << "\n";
    const std::size_t qw = ("q=" + std::to_string(s)).size();
    for (int q = s; q >= 0; --q) {
        std::string line = pad("q=" + std::to_string(q), qw);
        for (int p = 0; p <= d; ++p) line += " | " + pad(grid[q][p], width[p]);
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << "\n";
    }
    std::string footer(qw, ' ');
    for (int p = 0; p <= d; ++p) footer += "   " + pad("p=" + std::to_string(p), width[p]);
    while (!footer.empty() && footer.back() == ' ') footer.pop_back();
    os << footer << "\n";
    for (const auto& f : page.flags()) {
        const auto& up = page.cell(f.p, f.q)[f.upper];
        const auto& lo = page.cell(f.p, f.q - 1)[f.lower];
        os << "flag (" << f.p << "," << f.q << ")/(" << f.p << "," << f.q - 1 << "): " << to_string(up.label)
           << " from " << to_string(up.source) << " and " << to_string(lo.source) << "\n";
    }
    return os.str();
}

std::string render_text(const BbwReport& r) {
    std::string out = to_string(r.bundle) + " -> " + to_string(r.base) + ": ";
    if (!r.result) return out + "vanishes\n";
    return out + "degree " + std::to_string(r.result.degree()) + ", " + braces(r.result.image().weight()) + "\n";
}

std::string render_text(const PageReport& r) {
    std::ostringstream os;
    os << r.fibration << " E=" << to_string(r.bundle) << "\n" << render_text(r.page);
    os << "class: " << to_string(r.classification.value);
    if (!r.classification.witnesses.empty()) {
        os << " (witness cells";
        for (const auto& [p, q] : r.classification.witnesses) os << " (" << p << "," << q << ")";
        os << ")";
    }
    os << "\n";
    if (r.complex) {
        os << "complex q=" << r.complex->q << ":";
        for (std::size_t p = 0; p < r.complex->terms.size(); ++p)
            os << (p ? " -> " : " ") << join(r.complex->terms[p], " + ");
        os << "\n";
    }
    return os.str();
}

std::string render_text(const DualityReport& r) {
    std::ostringstream os;
    os << "duality " << to_string(r.kind) << " " << r.fibration << " E=" << to_string(r.bundle)
       << " dual=" << to_string(r.dual_bundle) << ": " << (r.holds ? "holds" : "FAILS") << "; classes "
       << to_string(r.bundle_class) << " / " << to_string(r.dual_class) << (r.classes_reflect ? "" : " (not reflected)")
       << "\n";
    for (const auto& c : r.cells)
        if (!c.equal)
            os << "  cell (" << c.p << "," << c.q << "): " << join(c.lhs, " + ") << " vs " << join(c.rhs, " + ") << "\n";
    return os.str();
}

std::string render_text(const BGGComplex& c) {
    std::ostringstream os;
    os << "BGG complex on " << to_string(c.marking) << "\n";
    for (std::size_t r = 0; r < c.terms.size(); ++r) {
        os << "r=" << r << ":";
        for (std::size_t k = 0; k < c.terms[r].size(); ++k)
            os << (k ? " +" : "") << " " << word_text(c.terms[r][k].word) << ":" << braces(c.terms[r][k].label);
        os << "\n";
    }
    return os.str();
}

std::string render_text(const ScenarioReport& r) {
    std::ostringstream os;
    os << "scenario " << r.config.name << ": " << r.config.type << " Q=[" << r.config.source << "] M=["
       << r.config.cycle << "] " << (r.config.cycle_kind == CycleKind::Parabolic ? "parabolic" : "reductive");
    if (!r.config.transport.empty()) {
        std::vector<int> letters;
        for (int l : r.config.transport) letters.push_back(l - 1);
        os << " transport " << word_text(WeylWord(letters));
    }
    os << (r.config.hermitian ? " hermitian" : "") << ", d=" << r.d << " s=" << r.s << "\n";
    for (const auto& b : r.bundles) {
        os << "\n== E=" << to_string(b.bundle) << "\n" << render_text(b.de_rham);
        if (b.discounted) os << render_text(*b.discounted);
        if (b.bgg) os << render_text(*b.bgg);
        if (b.prediction) os << "prediction: " << to_string(*b.prediction) << "\n";
        os << render_text(b.duality);
        if (b.bgg_duality) os << render_text(*b.bgg_duality);
    }
    return os.str();
}

std::string render_text(const SweepReport& r) {
    std::ostringstream os;
    os << "sweep " << r.fibration << " over";
    for (const auto& x : r.ranges) os << " " << to_string(x);
    os << (r.in_scope ? "" : " (conjectural, mismatches reported only)") << "\n";
    std::size_t width = 0;
    for (const auto& row : r.rows) width = std::max(width, to_string(row.bundle).size());
    std::map<Concentration, int> counts;
    for (const auto& row : r.rows) {
        ++counts[row.computed];
        std::string line = pad(to_string(row.bundle), width) + "  " + pad(to_string(row.predicted), 10) + "  " +
                           pad(to_string(row.computed), 16) + "  flags=" + std::to_string(row.flags) +
                           (row.agrees ? "" : "  MISMATCH");
        os << line << "\n";
    }
    for (const auto& [c, n] : counts) os << to_string(c) << ": " << n << "\n";
    os << "mismatches: " << r.mismatches.size() << "\n";
    return os.str();
}

std::string render_text(const DualityRun& r) {
    std::string out;
    for (const auto& x : r.reports) out += render_text(x);
    out += std::to_string(std::count_if(r.reports.begin(), r.reports.end(), [](const auto& x) { return x.holds; })) +
           "/" + std::to_string(r.reports.size()) + " hold\n";
    return out;
}

}  // namespace dfcalc
