#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dfcalc/error.hpp"
#include "dfcalc/report.hpp"

using namespace dfcalc;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

// Prints to stdout; with DFCALC_OUT_DIR set, also writes <dir>/<stem>.<json|txt>.
void emit(const std::string& body, const std::string& stem, Format format) {
    std::cout << body;
    const char* dir = std::getenv("DFCALC_OUT_DIR");
    if (!dir || !*dir) return;
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / (stem + (format == Format::Json ? ".json" : ".txt"));
    std::ofstream out(path, std::ios::binary);
    out << body;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string stem_of(std::string s) {
    for (auto& ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double fibration transform calculator: BBW direct images, E1 pages, duality and BGG checks"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format_name = "text";
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "text"}));

    auto* bbw = app.add_subcommand("bbw", "Direct image of a bundle along G/P -> G/P'");
    std::string bbw_label, bbw_base;
    bbw->add_option("label", bbw_label, "Bundle, e.g. A3[xx.]{-3,1,1}")->required();
    bbw->add_option("--base", bbw_base, "Base marking or mask (default: a point)");

    std::string fib, label;
    bool use_bgg = false, discount_flags = false;

    auto* e1 = app.add_subcommand("e1", "E1 page of the double fibration spectral sequence");
    e1->add_option("fibration", fib, "Bundled scenario name or config file")->required();
    e1->add_option("label", label, "Bundle on the source, e.g. {1,0,1}")->required();
    e1->add_flag("--bgg", use_bgg, "Use the BGG-resolved page");
    e1->add_flag("--discount-flags", discount_flags, "Drop flagged absorption pairs");

    auto* duality = app.add_subcommand("duality", "Serre-duality check on E1 pages");
    int random_count = 0;
    unsigned long long seed = 1;
    duality->add_option("fibration", fib, "Bundled scenario name or config file")->required();
    duality->add_option("label", label, "Bundle on the source");
    duality->add_option("--random", random_count, "Check N seeded random labels instead")->check(CLI::PositiveNumber);
    duality->add_option("--seed", seed, "Seed for --random");
    duality->add_flag("--bgg", use_bgg, "Compare BGG pages");

    auto* bggc = app.add_subcommand("bgg-complex", "Relative BGG complex of a pulled-back bundle");
    bggc->add_option("fibration", fib, "Bundled scenario name or config file")->required();
    bggc->add_option("label", label, "Bundle on the source")->required();

    auto* sw = app.add_subcommand("sweep", "Predicted versus computed concentration over label boxes");
    std::vector<std::string> ranges;
    int threads = 0;
    sw->add_option("fibration", fib, "Bundled scenario name or config file")->required();
    sw->add_option("--range", ranges, "Box such as -6..6,0..3,0..3 (repeatable; default: the config ranges)");
    sw->add_option("--threads", threads, "Worker threads (0: hardware)");

    auto* sc = app.add_subcommand("scenario", "Full report for a bundled or configured scenario");
    std::vector<std::string> bundles;
    sc->add_option("scenario", fib, "Bundled scenario name or config file")->required();
    sc->add_option("--bundle", bundles, "Override the bundle list (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const Format format = parse_format(format_name);
        if (bbw->parsed()) {
            const auto b = parse_label(bbw_label);
            const auto base = bbw_base.empty()
                                  ? ParabolicMarking(b.marking().cartan_ptr(), std::vector<bool>(b.marking().rank(), false))
                                  : parse_marking(bbw_base, b.marking().cartan_ptr());
            emit(render(run_bbw(b, base), format), "bbw", format);
            return kOk;
        }

        const auto cfg = resolve_scenario(fib);
        const auto f = build_fibration(cfg);

        if (e1->parsed()) {
            const auto e = parse_label(label, f.source());
            if (use_bgg && discount_flags) throw InvalidArgument("--bgg pages carry no flags to discount");
            auto page = use_bgg ? assemble_e1_bgg(f, e) : assemble_e1(f, e);
            if (discount_flags) page = discount(page);
            emit(render(make_page_report(f, e, std::move(page)), format), stem_of("e1-" + f.name()), format);
            return kOk;
        }
        if (duality->parsed()) {
            std::vector<Weight> labels;
            if (random_count > 0) {
                if (!label.empty()) throw InvalidArgument("give either a label or --random, not both");
                labels = random_labels(f.source(), random_count, seed);
            } else {
                if (label.empty()) throw InvalidArgument("duality needs a label or --random N");
                labels.push_back(parse_label(label, f.source()).weight());
            }
            DualityRun run{f.name(), {}};
            for (const auto& w : labels) {
                const BundleLabel e(f.source(), w);
                run.reports.push_back(use_bgg ? check_bgg_duality(f, e) : check_duality(f, e));
            }
            emit(render(run, format), stem_of("duality-" + f.name()), format);
            return run.holds() ? kOk : kCheckFailed;
        }
        if (bggc->parsed()) {
            const auto c = bgg_complex(f, parse_label(label, f.source()));
            emit(render(c, format), stem_of("bgg-complex-" + f.name()), format);
            return kOk;
        }
        if (sw->parsed()) {
            std::vector<LabelRange> boxes;
            for (const auto& r : ranges) boxes.push_back(parse_range(r));
            if (boxes.empty()) boxes = cfg.ranges;
            if (boxes.empty()) throw InvalidArgument("sweep needs --range or ranges in the config");
            const auto report = sweep(f, boxes, threads);
            emit(render(report, format), stem_of("sweep-" + f.name()), format);
            return report.failed() ? kCheckFailed : kOk;
        }
        if (sc->parsed()) {
            std::vector<Weight> ws;
            for (const auto& b : bundles) ws.push_back(parse_label(b, f.source()).weight());
            const auto report = bundles.empty() ? run_scenario(cfg) : run_scenario(cfg, ws);
            emit(render(report, format), stem_of("scenario-" + cfg.name), format);
            return report.all_dualities_hold() ? kOk : kCheckFailed;
        }
    } catch (const ParseError& e) {
        std::cerr << "dfcalc: config error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "dfcalc: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "dfcalc: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "dfcalc: internal error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kUsage;
}
