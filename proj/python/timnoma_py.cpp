// Python bindings for the core library.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "timnoma/analytics.hpp"
#include "timnoma/channel.hpp"
#include "timnoma/error.hpp"
#include "timnoma/harness.hpp"
#include "timnoma/modem.hpp"
#include "timnoma/precoding.hpp"
#include "timnoma/receiver.hpp"
#include "timnoma/topology.hpp"

namespace py = pybind11;
using namespace timnoma;

namespace {

FadingRealization fading_or_unit(const std::optional<std::vector<cplx>>& fading, std::size_t users) {
    if (!fading) return FadingRealization::unit(users);
    if (fading->size() != users) {
        throw ValidationError(ErrorCode::DimensionMismatch, "need one fading coefficient per user");
    }
    return FadingRealization{*fading};
}

// Evaluates `fn` on a fully assembled rate context for one realization.
template <class Fn>
auto with_context(const Topology& topology, double total_power, double noise_variance,
                  const std::optional<std::vector<cplx>>& fading, OrderMode order, Fn fn) {
    const auto h = fading_or_unit(fading, topology.user_count());
    const auto groups = assign_groups(topology);
    const auto power = allocate_power(topology, total_power);
    const auto basis = make_basis(topology.group_count());
    const NoiseModel noise(noise_variance);
    const RateContext ctx{topology, h, power, groups, basis, noise, order};
    return fn(ctx);
}

} // namespace

PYBIND11_MODULE(_timnoma, m) {
    m.doc() = "Hybrid TIM-NOMA downlink simulator";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ConfigParseError>(m, "ConfigParseError", PyExc_ValueError);
    py::register_exception<ConfigValidationError>(m, "ConfigValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::enum_<OrderMode>(m, "OrderMode")
        .value("DISTANCE", OrderMode::Distance)
        .value("INSTANTANEOUS", OrderMode::Instantaneous);
    py::enum_<Coherence>(m, "Coherence").value("FRAME", Coherence::Frame).value("BLOCK", Coherence::Block);
    py::enum_<Experiment>(m, "Experiment")
        .value("BER", Experiment::Ber)
        .value("BER_SINGLE_USER", Experiment::BerSingleUser)
        .value("RATE", Experiment::Rate)
        .value("RATE_SINGLE_USER", Experiment::RateSingleUser)
        .value("RATIO", Experiment::Ratio);

    py::class_<Topology>(m, "Topology")
        .def(py::init<std::vector<double>, double, double, std::size_t>(), py::arg("distances_km"),
             py::arg("cell_radius_km") = 5.0, py::arg("path_loss_exponent") = 3.0, py::arg("groups") = 2)
        .def_property_readonly("user_count", &Topology::user_count)
        .def_property_readonly("group_count", &Topology::group_count)
        .def_property_readonly("cell_radius", &Topology::cell_radius)
        .def_property_readonly("path_loss_exponent", &Topology::path_loss_exponent)
        .def_property_readonly("distances",
                               [](const Topology& t) {
                                   return std::vector<double>(t.distances().begin(), t.distances().end());
                               })
        .def("path_loss", [](const Topology& t, std::size_t k) { return path_loss(t, k); }, py::arg("user"));

    py::class_<GroupAssignment>(m, "GroupAssignment")
        .def_readonly("group_of", &GroupAssignment::group_of)
        .def_readonly("members", &GroupAssignment::members);
    m.def("assign_groups", &assign_groups, py::arg("topology"));

    m.def("allocate_power", [](const Topology& t, double total) { return allocate_power(t, total).per_user; },
          py::arg("topology"), py::arg("total_power"), "Per-user powers in watts.");

    py::class_<PrecodingBasis>(m, "PrecodingBasis")
        .def_property_readonly("matrix", &PrecodingBasis::matrix, "Columns are the precoding vectors.")
        .def_property_readonly("dimension", &PrecodingBasis::dimension);
    m.def("make_basis", &make_basis, py::arg("groups"));

    m.def(
        "assemble_transmit",
        [](const std::vector<cplx>& symbols, const std::vector<double>& powers,
           const GroupAssignment& groups, const PrecodingBasis& basis) {
            return assemble_transmit(symbols, powers, groups, basis);
        },
        py::arg("symbols"), py::arg("powers"), py::arg("groups"), py::arg("basis"));

    m.def(
        "qpsk_modulate", [](int b0, int b1) { return qpsk_modulate(b0 & 1, b1 & 1); }, py::arg("b0"),
        py::arg("b1"));
    m.def(
        "qpsk_demodulate",
        [](cplx s) {
            const auto b = qpsk_demodulate(s);
            return py::make_tuple(int(b.first), int(b.second));
        },
        py::arg("symbol"));

    m.def(
        "hybrid_rates",
        [](const Topology& t, double total_power, double noise_variance,
           std::optional<std::vector<cplx>> fading, OrderMode order) {
            return with_context(t, total_power, noise_variance, fading, order,
                                [](const RateContext& c) { return hybrid_rates(c).per_user; });
        },
        py::arg("topology"), py::arg("total_power") = 40.0, py::arg("noise_variance") = 1.0,
        py::arg("fading") = py::none(), py::arg("order") = OrderMode::Distance,
        "Per-user hybrid rates in bits per slot for one fading realization (unit fading if omitted).");
    m.def(
        "single_user_rates",
        [](const Topology& t, double total_power, double noise_variance,
           std::optional<std::vector<cplx>> fading) {
            return with_context(t, total_power, noise_variance, fading, OrderMode::Distance,
                                [](const RateContext& c) { return single_user_rates(c).per_user; });
        },
        py::arg("topology"), py::arg("total_power") = 40.0, py::arg("noise_variance") = 1.0,
        py::arg("fading") = py::none());
    m.def(
        "tdma_sum_rate",
        [](const Topology& t, double total_power, double noise_variance,
           std::optional<std::vector<cplx>> fading) {
            const auto h = fading_or_unit(fading, t.user_count());
            return tdma_sum_rate(t, h, NoiseModel(noise_variance), total_power);
        },
        py::arg("topology"), py::arg("total_power") = 40.0, py::arg("noise_variance") = 1.0,
        py::arg("fading") = py::none());
    m.def(
        "dof_total",
        [](std::size_t users, std::size_t groups) {
            const auto r = dof_total(users, groups);
            return py::make_tuple(r.numerator, r.denominator);
        },
        py::arg("users"), py::arg("groups"), "Reduced (numerator, denominator) of K/T.");
    m.def("rate_ratio", &rate_ratio, py::arg("hybrid_sum"), py::arg("tdma_sum"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("distances_km", &SimConfig::distances_km)
        .def_readwrite("cell_radius_km", &SimConfig::cell_radius_km)
        .def_readwrite("path_loss_exponent", &SimConfig::path_loss_exponent)
        .def_readwrite("groups", &SimConfig::groups)
        .def_readwrite("total_power_w", &SimConfig::total_power_w)
        .def_readwrite("frames", &SimConfig::frames)
        .def_readwrite("bits_per_frame", &SimConfig::bits_per_frame)
        .def_readwrite("realizations", &SimConfig::realizations)
        .def_readwrite("snr_grid_db", &SimConfig::snr_grid_db)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("decoding_order", &SimConfig::decoding_order)
        .def_readwrite("coherence", &SimConfig::coherence)
        .def_readwrite("experiment", &SimConfig::experiment);

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("snr_db", &ResultRow::snr_db)
        .def_readonly("entity", &ResultRow::entity)
        .def_readonly("metric", &ResultRow::metric)
        .def_readonly("value", &ResultRow::value)
        .def_readonly("samples", &ResultRow::samples)
        .def_readonly("stderr", &ResultRow::stderr_)
        .def("__repr__", [](const ResultRow& r) {
            return "ResultRow(" + std::to_string(r.snr_db) + ", '" + r.entity + "', '" + r.metric + "', " +
                   std::to_string(r.value) + ")";
        });
    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("rows", &ExperimentResult::rows)
        .def("to_csv", [](const ExperimentResult& r) { return to_csv(r); })
        .def("write_csv", [](const ExperimentResult& r, const std::filesystem::path& p) { emit_csv(r, p); },
             py::arg("path"));

    m.def("validate", &validate, py::arg("config"));
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("load_config", &load_config, py::arg("path"));
    m.def("parse_snr_grid", &parse_snr_grid, py::arg("text"));
    m.def("run_experiment", &run_experiment, py::arg("config"), py::arg("workers") = 0,
          py::call_guard<py::gil_scoped_release>());
}
