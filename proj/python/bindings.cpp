#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dfcalc/error.hpp"
#include "dfcalc/report.hpp"

namespace py = pybind11;
using namespace dfcalc;

namespace {

FibrationSpec fibration(const std::string& name_or_path) {
    return build_fibration(resolve_scenario(name_or_path));
}

std::string bbw(const std::string& label, const std::string& base, const std::string& format) {
    const auto b = parse_label(label);
    const auto m = base.empty() ? ParabolicMarking(b.marking().cartan_ptr(), std::vector<bool>(b.marking().rank(), false))
                                : parse_marking(base, b.marking().cartan_ptr());
    return render(run_bbw(b, m), parse_format(format));
}

std::string e1(const std::string& fib, const std::string& label, bool bgg, bool discount_flags,
               const std::string& format) {
    const auto f = fibration(fib);
    const auto e = parse_label(label, f.source());
    auto page = bgg ? assemble_e1_bgg(f, e) : assemble_e1(f, e);
    if (discount_flags) page = discount(page);
    return render(make_page_report(f, e, std::move(page)), parse_format(format));
}

std::string duality(const std::string& fib, const std::string& label, int random, unsigned long long seed, bool bgg,
                    const std::string& format) {
    const auto f = fibration(fib);
    if (random > 0 && !label.empty()) throw InvalidArgument("give either a label or random, not both");
    if (random <= 0 && label.empty()) throw InvalidArgument("duality needs a label or random > 0");
    const auto labels =
        random > 0 ? random_labels(f.source(), random, seed) : std::vector<Weight>{parse_label(label, f.source()).weight()};
    DualityRun run{f.name(), {}};
    for (const auto& w : labels) {
        const BundleLabel e(f.source(), w);
        run.reports.push_back(bgg ? check_bgg_duality(f, e) : check_duality(f, e));
    }
    return render(run, parse_format(format));
}

std::string bgg(const std::string& fib, const std::string& label, const std::string& format) {
    const auto f = fibration(fib);
    return render(bgg_complex(f, parse_label(label, f.source())), parse_format(format));
}

std::string run_sweep(const std::string& fib, const std::vector<std::string>& ranges, int threads,
                      const std::string& format) {
    const auto cfg = resolve_scenario(fib);
    std::vector<LabelRange> boxes;
    for (const auto& r : ranges) boxes.push_back(parse_range(r));
    if (boxes.empty()) boxes = cfg.ranges;
    if (boxes.empty()) throw InvalidArgument("sweep needs ranges");
    return render(sweep(build_fibration(cfg), boxes, threads), parse_format(format));
}

std::string scenario(const std::string& name, const std::vector<std::string>& bundles, const std::string& format) {
    const auto cfg = resolve_scenario(name);
    if (bundles.empty()) return render(run_scenario(cfg), parse_format(format));
    const auto f = build_fibration(cfg);
    std::vector<Weight> ws;
    for (const auto& b : bundles) ws.push_back(parse_label(b, f.source()).weight());
    return render(run_scenario(cfg, ws), parse_format(format));
}

}  // namespace

PYBIND11_MODULE(_dfcalc, m) {
    m.doc() = "Exact E1 pages, duality and BGG checks for double fibrations of flag manifolds";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);

    m.def("bbw", &bbw, py::arg("label"), py::arg("base") = "", py::arg("format") = "json");
    m.def("e1", &e1, py::arg("fibration"), py::arg("label"), py::arg("bgg") = false, py::arg("discount_flags") = false,
          py::arg("format") = "json");
    m.def("duality", &duality, py::arg("fibration"), py::arg("label") = "", py::arg("random") = 0, py::arg("seed") = 1,
          py::arg("bgg") = false, py::arg("format") = "json");
    m.def("bgg_complex", &bgg, py::arg("fibration"), py::arg("label"), py::arg("format") = "json");
    m.def("sweep", &run_sweep, py::arg("fibration"), py::arg("ranges") = std::vector<std::string>{},
          py::arg("threads") = 0, py::arg("format") = "json");
    m.def("scenario", &scenario, py::arg("name"), py::arg("bundles") = std::vector<std::string>{},
          py::arg("format") = "json");
    m.def("scenarios", &bundled_scenario_names);
}
