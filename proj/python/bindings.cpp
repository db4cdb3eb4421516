#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "glpm/diagnostics.hpp"
#include "glpm/errors.hpp"
#include "glpm/model.hpp"
#include "glpm/network.hpp"
#include "glpm/samplers.hpp"
#include "glpm/synthgen.hpp"

namespace py = pybind11;
using namespace glpm;

namespace {

Network make_network(std::int32_t n,
                     const std::vector<std::pair<std::int32_t, std::int32_t>>& edges) {
  std::vector<Dyad> dyads;
  dyads.reserve(edges.size());
  for (const auto& [i, j] : edges) dyads.push_back(make_dyad(i, j));
  return Network(n, dyads, {}, 1, {});
}

SamplerConfig config_from_kwargs(const std::string& kind, double epsilon,
                                 int leaps, double delta, double tau_step,
                                 std::int32_t categories) {
  SamplerConfig cfg;
  cfg.kind = sampler_kind_from_string(kind);
  cfg.hmc.epsilon = epsilon;
  cfg.hmc.leap_count = leaps;
  cfg.mwg.delta = delta;
  if (cfg.kind != SamplerKind::split_hmc_flymc)
    cfg.tau_steps.assign(categories, tau_step);
  return cfg;
}

py::dict chain_to_dict(const ChainOutput& chain) {
  py::dict out;
  out["kind"] = to_string(chain.kind);
  out["positions"] = chain.position_draws;
  out["tau"] = chain.tau_draws;
  out["gamma2"] = chain.gamma2_draws;
  out["position_acceptance"] = chain.position_stats.acceptance_rate();
  out["tau_acceptance"] = chain.tau_stats.acceptance_rate();
  out["total_seconds"] = chain.total_seconds;
  out["singular_rejects"] = chain.singular_rejects;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "samplers for Gaussian latent position network models";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<Network>(m, "Network")
      .def_property_readonly("n", &Network::n)
      .def_property_readonly("num_categories", &Network::num_categories)
      .def_property_readonly("edge_count", &Network::edge_count)
      .def("is_edge",
           [](const Network& net, std::int32_t i, std::int32_t j) {
             return net.is_edge(make_dyad(i, j));
           })
      .def("category",
           [](const Network& net, std::int32_t i, std::int32_t j) {
             return net.category(make_dyad(i, j));
           })
      .def("edges", [](const Network& net) {
        std::vector<std::pair<std::int32_t, std::int32_t>> out;
        out.reserve(net.edges().size());
        for (const Dyad& d : net.edges()) out.emplace_back(d.i, d.j);
        return out;
      });

  m.def("network_from_edges", &make_network, py::arg("n"), py::arg("edges"),
        "Build a single-category fully observed network from 0-based edges");
  m.def("load_network", &load_network, py::arg("edge_list"),
        py::arg("covariates") = "", py::arg("mask") = "");

  m.def(
      "generate_network",
      [](std::int32_t n, std::int32_t d, const std::vector<double>& tau,
         double gamma2, std::uint64_t seed) {
        SynthSpec spec;
        spec.n = n;
        spec.d = d;
        spec.tau = tau;
        spec.gamma2 = gamma2;
        if (tau.size() > 1) spec.covariate_rule = SynthSpec::CovariateRule::uniform;
        SynthResult res = generate_network(spec, seed);
        return py::make_tuple(std::move(res.network), res.true_positions);
      },
      py::arg("n"), py::arg("d"), py::arg("tau"), py::arg("gamma2"),
      py::arg("seed"));

  m.def("expected_edge_prob", &expected_edge_prob, py::arg("tau"),
        py::arg("gamma2"), py::arg("d"));
  m.def(
      "link_prob",
      [](double tau, double sq_dist) { return link_prob(tau, sq_dist); },
      py::arg("tau"), py::arg("sq_dist"));

  m.def(
      "run_sampler",
      [](const Network& net, const std::string& kind, std::int64_t iterations,
         std::int64_t thin, std::uint64_t seed, std::int32_t d, double epsilon,
         int leaps, double delta, double tau_step) {
        const PriorSpec prior = default_prior(net.n(), net.num_categories(), d);
        const SamplerConfig cfg = config_from_kwargs(
            kind, epsilon, leaps, delta, tau_step, net.num_categories());
        return chain_to_dict(
            run_sampler(net, prior, cfg, iterations, thin, seed));
      },
      py::arg("network"), py::arg("kind"), py::arg("iterations"),
      py::arg("thin") = 1, py::arg("seed") = 1, py::arg("d") = 2,
      py::arg("epsilon") = 0.2, py::arg("leaps") = 10, py::arg("delta") = 0.1,
      py::arg("tau_step") = 0.1);

  m.def(
      "effective_sample_size",
      [](const std::vector<double>& series) {
        return effective_sample_size(series).ess;
      },
      py::arg("series"));

  m.def(
      "dyad_log_prob",
      [](const Eigen::MatrixXd& positions, const std::vector<double>& tau,
         std::int32_t i, std::int32_t j, std::int32_t category) {
        return dyad_log_prob(positions, tau, make_dyad(i, j), category);
      },
      py::arg("positions"), py::arg("tau"), py::arg("i"), py::arg("j"),
      py::arg("category") = 1);
}
