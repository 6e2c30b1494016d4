#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dfcalc/bbw.hpp"
#include "dfcalc/bgg.hpp"

namespace dfcalc {

using Json = nlohmann::ordered_json;

// "A3[x..]"
ParabolicMarking parse_marking(std::string_view text);
// "A3[x..]{1,0,1}"
BundleLabel parse_label(std::string_view text);
// Also accepts "{1,0,1}" or "1,0,1" on the implied marking.
BundleLabel parse_label(std::string_view text, const ParabolicMarking& implied);
// Mask alone ("x..") or a full marking; must have the given type.
ParabolicMarking parse_marking(std::string_view text, const CartanPtr& cartan);

// Inclusive bounds per coordinate: "-6..6,0..3,2" (a bare integer is a one-point range).
struct LabelRange {
    std::vector<std::pair<int, int>> bounds;
    bool operator==(const LabelRange&) const = default;
};
LabelRange parse_range(std::string_view text);
std::string to_string(const LabelRange& r);
// Levi-dominant points of the box in lexicographic order; others are skipped.
std::vector<Weight> expand(const LabelRange& r, const ParabolicMarking& m);

struct ScenarioConfig {
    std::string name;
    std::string type;  // Cartan type, "A3"
    std::string source, cycle;  // masks
    CycleKind cycle_kind = CycleKind::Parabolic;
    std::vector<int> transport;  // 1-based letters, last acts first
    bool hermitian = false;
    std::vector<Weight> bundles;
    std::vector<LabelRange> ranges;
    bool operator==(const ScenarioConfig&) const = default;
};

// Key-value lines ("source = x..") or a JSON object, detected by the first character.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);
Json config_to_json(const ScenarioConfig& cfg);
// "twistor-pp", "grassmann-pm"
std::optional<ScenarioConfig> bundled_scenario(std::string_view name);
std::vector<std::string> bundled_scenario_names();
// Bundled name or path to a config file.
ScenarioConfig resolve_scenario(const std::string& name_or_path);

FibrationSpec build_fibration(const ScenarioConfig& cfg);
// Explicit bundles first, then each range, without repeats.
std::vector<Weight> scenario_bundles(const ScenarioConfig& cfg, const ParabolicMarking& source);
// Deterministic Levi-dominant labels with coordinates in [-6, 6].
std::vector<Weight> random_labels(const ParabolicMarking& m, int count, unsigned long long seed);

struct BbwReport {
    BundleLabel bundle;
    ParabolicMarking base;
    DirectImageResult result;
    bool operator==(const BbwReport&) const = default;
};
BbwReport run_bbw(const BundleLabel& b, const ParabolicMarking& base);

// A concentrated row read as a complex of bundles on the cycle space, p ascending.
struct RowComplex {
    int q = 0;
    std::vector<std::vector<Weight>> terms;
    bool operator==(const RowComplex&) const = default;
};

struct PageReport {
    std::string fibration;
    Weight bundle;
    E1Page page;
    ConcentrationClass classification;
    std::optional<RowComplex> complex;
    bool operator==(const PageReport&) const = default;
};
PageReport make_page_report(const FibrationSpec& f, const BundleLabel& e, E1Page page);

struct BundleReport {
    Weight bundle;
    PageReport de_rham;
    std::optional<PageReport> discounted;  // present when flags were raised
    std::optional<PageReport> bgg;
    DualityReport duality;
    std::optional<DualityReport> bgg_duality;
    std::optional<Prediction> prediction;  // Hermitian-holomorphic fibrations only
    bool operator==(const BundleReport&) const = default;
};

struct ScenarioReport {
    ScenarioConfig config;
    int d = 0, s = 0;
    std::vector<BundleReport> bundles;
    bool all_dualities_hold() const;
    bool operator==(const ScenarioReport&) const = default;
};
BundleReport run_bundle(const FibrationSpec& f, const BundleLabel& e);
ScenarioReport run_scenario(const ScenarioConfig& cfg);
ScenarioReport run_scenario(const ScenarioConfig& cfg, const std::vector<Weight>& bundles);

struct SweepRow {
    Weight bundle;
    Prediction predicted = Prediction::Unknown;
    Concentration computed = Concentration::None;
    int flags = 0;
    bool agrees = true;
    bool operator==(const SweepRow&) const = default;
};

struct SweepReport {
    std::string fibration;
    bool in_scope = false;  // mismatches are failures only for Hermitian-holomorphic fibrations
    std::vector<LabelRange> ranges;
    std::vector<SweepRow> rows;  // sorted by bundle
    std::vector<Weight> mismatches;
    bool failed() const { return in_scope && !mismatches.empty(); }
    bool operator==(const SweepReport&) const = default;
};
// Classifies flag-discounted de Rham pages; a prediction claims the strict class.
SweepReport sweep(const FibrationSpec& f, const std::vector<LabelRange>& ranges, int threads = 0);

struct DualityRun {
    std::string fibration;
    std::vector<DualityReport> reports;
    bool holds() const;
    bool operator==(const DualityRun&) const = default;
};

Json to_json(const Weight& w);
Json to_json(const E1Page& page);
Json to_json(const ConcentrationClass& c);
Json to_json(const DualityReport& r);
Json to_json(const BGGComplex& c);
Json to_json(const BbwReport& r);
Json to_json(const PageReport& r);
Json to_json(const BundleReport& r);
Json to_json(const ScenarioReport& r);
Json to_json(const SweepReport& r);
Json to_json(const DualityRun& r);

// Inverses of to_json; throw ParseError with the offending field.
Weight weight_from_json(const Json& j);
E1Page page_from_json(const Json& j);
ConcentrationClass class_from_json(const Json& j);
DualityReport duality_from_json(const Json& j);
BGGComplex bgg_complex_from_json(const Json& j);
BbwReport bbw_from_json(const Json& j);
PageReport page_report_from_json(const Json& j);
BundleReport bundle_report_from_json(const Json& j);
ScenarioReport scenario_from_json(const Json& j);
SweepReport sweep_from_json(const Json& j);
DualityRun duality_run_from_json(const Json& j);

enum class Format { Json, Text };
Format parse_format(std::string_view s);

// Byte-stable renderings. JSON is indented by two spaces, scalar arrays inline, trailing newline.
std::string render_json(const Json& j);
std::string render_text(const E1Page& page);
std::string render_text(const BbwReport& r);
std::string render_text(const PageReport& r);
std::string render_text(const DualityReport& r);
std::string render_text(const BGGComplex& c);
std::string render_text(const ScenarioReport& r);
std::string render_text(const SweepReport& r);
std::string render_text(const DualityRun& r);

template <class Report>
std::string render(const Report& r, Format f) {
    return f == Format::Json ? render_json(to_json(r)) : render_text(r);
}

}  // namespace dfcalc
