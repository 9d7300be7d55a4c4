#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "charcyc/duality.hpp"
#include "charcyc/report.hpp"

namespace py = pybind11;
using namespace charcyc;

namespace {

std::string validate(const std::string& path) { return to_json(validate_dataset(load_dataset(path))).dump(); }

std::string solve_report(const std::string& path) {
    auto p = run_pipeline(load_dataset(path));
    ojson j = to_json(p.report);
    if (p.localization) j["localization"] = to_json(*p.localization);
    return j.dump();
}

std::string packets(const std::string& path) {
    Dataset ds = load_dataset(path);
    auto p = run_pipeline(ds);
    ojson micro = ojson::object();
    for (const auto& o : ds.poset.orbits) micro[o.id] = to_json(micro_packet(p.report, ds.catalog, o.id));
    auto basic = basic_arthur_packet(p.report, ds.catalog);
    ojson j{{"micro", micro}, {"basic", to_json(basic.packet)}, {"basic_matches_micro", basic.agrees}};
    if (!ds.special_piece.empty()) j["weak"] = to_json(weak_arthur_packet(ds, ds.catalog));
    j["simplified_arthur_parameters"] = to_json(simplified_arthur_parameters(ds));
    return j.dump();
}

std::string verify(const std::string& path) {
    Dataset ds = load_dataset(path);
    auto p = run_pipeline(ds);
    auto violations = validate_dataset(ds);
    ojson j{{"violations", to_json(violations)}};
    auto w = verify_weak_equals_union(ds, p.report, ds.catalog);
    j["weak_equals_union"] = to_json(w);
    j["az_micro"] = to_json(verify_az_micro_compatibility(p.report, ds.catalog, ds.duality, w.anchors));
    return j.dump();
}

bool halfinteger(const std::vector<std::string>& roots) {
    std::vector<Rational> r;
    for (const auto& s : roots) r.push_back(parse_rational(s));
    return check_halfinteger_roots(r);
}

}  // namespace

PYBIND11_MODULE(_charcyc, m) {
    py::register_exception<DatasetError>(m, "DatasetError", PyExc_ValueError);
    py::register_exception<InconsistentSystemError>(m, "InconsistentSystemError", PyExc_ArithmeticError);
    m.def("validate", &validate, py::arg("path"));
    m.def("solve", &solve_report, py::arg("path"));
    m.def("packets", &packets, py::arg("path"));
    m.def("verify", &verify, py::arg("path"));
    m.def("check_halfinteger_roots", &halfinteger, py::arg("roots"));
}
