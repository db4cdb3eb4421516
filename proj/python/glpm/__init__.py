"""Python interface to the latent position network samplers."""

try:
    from glpm._core import (
        Network,
        NumericError,
        ValidationError,
        dyad_log_prob,
        effective_sample_size,
        expected_edge_prob,
        generate_network,
        link_prob,
        load_network,
        network_from_edges,
        run_sampler,
    )
except ImportError:  # extension on the path directly (in-tree builds)
    from _core import (
        Network,
        NumericError,
        ValidationError,
        dyad_log_prob,
        effective_sample_size,
        expected_edge_prob,
        generate_network,
        link_prob,
        load_network,
        network_from_edges,
        run_sampler,
    )

__all__ = [
    "Network",
    "NumericError",
    "ValidationError",
    "dyad_log_prob",
    "effective_sample_size",
    "expected_edge_prob",
    "generate_network",
    "link_prob",
    "load_network",
    "network_from_edges",
    "run_sampler",
]
