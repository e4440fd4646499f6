"""Bundled example networks."""

from importlib import resources

from .netio import parse_network

NAMES = ("mckeithan", "extended_mckeithan", "g1", "g2", "lotka_volterra")


def network_text(name: str) -> str:
    return resources.files("crnkit").joinpath("data").joinpath(f"{name}.crn").read_text()


def load(name: str):
    """Load a bundled network by name (see ``NAMES``)."""
    return parse_network(network_text(name))
